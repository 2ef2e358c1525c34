#pragma once

#include <complex>
#include <vector>

#include "slicereg/matrix_operator.hpp"

namespace slicereg {

// Quadratic pencil Delta_q(A) = A^2 - 2 Re(q) A + |q|^2 Id as a real
// embedding. Only the slice invariants of q enter, so Delta is constant on
// each sphere re + s * S. Throws if q is outside the quadratic cone.
Eigen::MatrixXd spherical_delta(const MatrixOperator& a, const Element& q);
Eigen::MatrixXd spherical_delta(const MatrixOperator& a, double re, double norm_sq);

// Smallest singular value of the pencil: zero exactly on the spherical
// spectrum.
double delta_min_singular(const MatrixOperator& a, const Element& q);
double delta_min_singular(const MatrixOperator& a, double re, double norm_sq);

// Pseudo-resolvent Q_q(A) = Delta_q(A)^{-1}. Throws SingularDelta when the
// smallest singular value is below rel_band times the largest.
Eigen::MatrixXd pseudo_resolvent(const MatrixOperator& a, const Element& q,
                                 double rel_band = 1e-13);
Eigen::MatrixXd pseudo_resolvent(const MatrixOperator& a, double re, double norm_sq,
                                 double rel_band = 1e-13);

// Spherical resolvent C_q(A): x -> Q_q(A)(conj(q) x) - A(Q_q(A) x).
Eigen::MatrixXd spherical_resolvent(const MatrixOperator& a, const Element& q,
                                    double rel_band = 1e-13);

// One-slice resolvent of A acting on the complex space X_j, where z * x is
// x * (re z + im z * j): inverse of right_action(slice_point(j, lambda)) - A.
// Throws SingularSystem near the slice spectrum.
Eigen::MatrixXd complex_resolvent(const MatrixOperator& a, const Element& j,
                                  std::complex<double> lambda, double rel_band = 1e-13);

// Smallest singular value of the one-slice system at lambda.
double slice_system_min_singular(const MatrixOperator& a, const Element& j,
                                 std::complex<double> lambda);

// Smallest singular value of the pointwise shift system x -> q x - A(x)
// (left scalar multiplication). Its singular set is the left eigenvalue set,
// which does not coincide with the spherical spectrum; kept for comparisons.
double left_shift_min_singular(const MatrixOperator& a, const Element& q);

// Spherical spectrum as (re, s >= 0) sphere parameters: eigenvalues of the
// real embedding folded to the closed upper half-plane and clustered.
struct SpectrumPoint {
    double re = 0.0;
    double s = 0.0;
};
std::vector<SpectrumPoint> spherical_spectrum(const MatrixOperator& a,
                                              double cluster_tol = 1e-8);

// A right eigenpair A x = x * (re + s * axis) on the sphere (re, s), built
// from the kernel of the one-slice system on the given axis (the sphere
// always meets the chosen slice in lambda or conj(lambda)).
struct RightEigenPair {
    Element lambda;
    ModuleVector x;
    double residual = 0.0;
};
RightEigenPair right_eigenpair(const MatrixOperator& a, double re, double s,
                               const Element& axis);

// Factorization of the pseudo-resolvent through one-slice resolvents at
// lambda and conj(lambda), plus the membership equivalence between the
// spherical and one-slice resolvent sets.
struct ResolventFactorization {
    bool q_regular = false;        // pencil invertible at the band
    bool lambda_regular = false;   // one-slice system invertible at lambda
    bool conj_regular = false;     // and at conj(lambda)
    bool membership_equivalent = false;
    double residual = -1.0;        // relative, only when all systems are regular
};
ResolventFactorization verify_resolvent_factorization(const MatrixOperator& a, const Element& j,
                                                      std::complex<double> lambda,
                                                      double band = 1e-6);

// Relative defect of the vertex-shift rules Delta_q(A - w) = Delta_{q+w}(A)
// and C_q(A - w) = C_{q+w}(A) for real w.
double vertex_shift_residual(const MatrixOperator& a, double omega, const Element& q);

// Ray probe of spherical sectoriality with vertex omega: checks that the
// pencil stays regular on rays arg(q - omega) in {0, +-angle} with
// angle = pi/2 + delta - slack, over log-spaced radii and sampled axes, and
// estimates K = sup |q - omega| * ||C_q(A)|| with the certified upper norm.
struct SectorProbeRow {
    double re = 0.0;
    double s = 0.0;
    double min_singular = 0.0;
    double resolvent_norm = 0.0;   // certified upper bound
    double k_product = 0.0;        // |q - omega| * resolvent_norm
    bool regular = false;
};
struct SectorProbe {
    bool sectorial = false;
    bool spectrum_in_sector = false;  // every spectral sphere lies past the opening angle
    double k_estimate = 0.0;
    double largest_pass_angle = 0.0;  // over a fixed angle grid up to pi
    std::vector<SectorProbeRow> rows;
};
struct SectorProbeOptions {
    double slack = 1e-2;       // shaved off the sector opening angle
    double radius_min = 1e-2;
    double radius_max = 1e3;
    int radius_count = 13;
    int axis_count = 3;
    std::uint64_t seed = 2024;
    double singular_band = 1e-8;  // relative
};
SectorProbe sectorial_probe(const MatrixOperator& a, double omega, double delta,
                            const SectorProbeOptions& opts = {});

// Certified upper bound of the module operator norm for a real embedding:
// reconstructs the entry matrix and takes the norm bracket upper edge.
double embedded_norm_upper(const ModuleSpace& space, const Eigen::MatrixXd& emb);

double min_singular(const Eigen::MatrixXd& m);

}  // namespace slicereg
