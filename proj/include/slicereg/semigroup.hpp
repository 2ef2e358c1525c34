#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "slicereg/contour.hpp"
#include "slicereg/matrix_operator.hpp"
#include "slicereg/report.hpp"
#include "slicereg/resolvent.hpp"
#include "slicereg/stem.hpp"

namespace slicereg {

// Exponential series sum_n A^n / n! composed with right cone powers of q,
// as a real embedding: sum_n emb(A)^n / n! * L(q^n). At real q = t this is
// the matrix exponential of t * emb(A). Throws Error at the term cap.
Eigen::MatrixXd exp_semigroup(const MatrixOperator& a, const Element& q,
                              double tol = 1e-14, int max_terms = 600);

// The same series as an operator-valued stem in the cone variable.
StemPtr<OperatorValue> semigroup_stems(const MatrixOperator& a, double tol = 1e-14);

// k-fold slice product of the resolvent stem with itself, induced at q.
// For real q this is the ordinary k-th power of the resolvent matrix.
Eigen::MatrixXd resolvent_slice_power(const MatrixOperator& a, const Element& q,
                                      int k, double rel_band = 1e-13);

// Semigroup evaluator t -> T(t) embedding; an empty function means the
// matrix exponential of the embedding.
using SemigroupProvider = std::function<Eigen::MatrixXd(double)>;

// Integral of T(t) * L(t^{k-1} e^{-t q} / (k-1)!) over [0, infinity).
// Requires re(q) beyond the spectral bound of A; throws Error otherwise.
Eigen::MatrixXd laplace_transform(const MatrixOperator& a, const Element& q, int k,
                                  const SemigroupProvider& provider = {},
                                  const QuadratureOptions& opt = {});

// Checks ||T(t)|| <= M e^{omega t} on the t grid, then the resolvent power
// bound ||C_q^k|| <= M / (re q - omega)^k at the sampled q for k <= k_max,
// all with the certified upper norm. Violations are reported, not thrown.
SemigroupReport laplace_norm_bound_check(const MatrixOperator& a, double omega, double m_bound,
                                         const std::vector<Element>& q_samples, int k_max,
                                         const std::vector<double>& t_grid = {0.25, 0.5, 1.0, 2.0});

// Bounded approximant k * A * C_k(A) at a real regular point k > 0.
MatrixOperator yosida_approximant(const MatrixOperator& a, double k);

// Semigroup at real t >= 0 through the sector contour: the line integral of
// C_alpha(A) (-axis) e^{t alpha} dalpha over vertex + contour, divided by
// 2 pi. T(0) is the identity by convention, never by quadrature.
Eigen::MatrixXd contour_semigroup(const MatrixOperator& a, const ContourSpec& spec, double t);

// Two-argument extension: the scalar weight is replaced by the left-slice
// exponential with shift p evaluated at the cone point q. Reduces to
// contour_semigroup at p = 0, q = t.
Eigen::MatrixXd contour_semigroup_slice(const MatrixOperator& a, const ContourSpec& spec,
                                        const Element& p, const Element& q);

// Value of sum_k phi_axis(z)^k w_k / k! at w = q, where w_k is the k-th
// power of (p + w) expanded with p kept left of the cone powers of w. The
// left powers stay on the axis slice; p and q may live on other slices.
// Evaluated in closed form, stable for large |z|.
Element noncommutative_exp(const Element& axis, std::complex<double> z,
                           const Element& p, const Element& q);

// Evaluates T(p+q) against the slice product (T odot T(q))(p) for commuting
// p, q, and records the pointwise product defect ||T(p+q) - T(p) T(q)|| as a
// diagnostic. Throws Error when p and q do not commute.
SemigroupReport semigroup_law_check(const MatrixOperator& a, const Element& p,
                                    const Element& q, double tol);

// Richardson extrapolation of (T(h) x - x) / h along a decreasing positive
// h grid. Throws Error when the extrapolation fails to settle.
ModuleVector generator_estimate(const ModuleSpace& space, const SemigroupProvider& provider,
                                const ModuleVector& x, const std::vector<double>& h_grid);

// Sweeps ||T(q)|| e^{-omega re(q)} over sector samples with opening
// delta_prime and the given radii, reporting the sup as the growth constant
// estimate. A clearly divergent sweep fails its summary record.
SemigroupReport growth_bound_check(const MatrixOperator& a, double delta_prime, double omega,
                                   const std::vector<double>& radii, int axis_count = 2,
                                   std::uint64_t seed = 7);

// Converse direction diagnostics: the pseudo-resolvent identity
// Q_p = (C_{conj p} - C_p) L((2 Im p)^{-1}) on nonreal cone samples, the
// sweep K = sup |q - omega| ||C_q||, and the half-plane resolvent bound.
SemigroupReport converse_sectoriality_check(const MatrixOperator& a, double omega,
                                            const std::vector<double>& radii,
                                            double eta_prime = 0.3, int axis_count = 2,
                                            std::uint64_t seed = 5);

}  // namespace slicereg
