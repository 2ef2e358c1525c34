#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "slicereg/algebra.hpp"

namespace slicereg {

inline constexpr double kMembershipTol = 1e-10;

// One element of a Clifford algebra: a real coefficient per basis blade.
class Element {
public:
    static Element zero(const AlgebraPtr& algebra);
    static Element scalar(const AlgebraPtr& algebra, double value);
    static Element basis(const AlgebraPtr& algebra, unsigned blade);
    static Element from_coeffs(const AlgebraPtr& algebra, std::vector<double> coeffs);

    const AlgebraPtr& algebra() const { return algebra_; }
    int dim() const { return algebra_->dim(); }

    double coeff(unsigned blade) const { return coeffs_[blade]; }
    void set_coeff(unsigned blade, double value) { coeffs_[blade] = value; }
    const std::vector<double>& coeffs() const { return coeffs_; }

    Element operator+(const Element& rhs) const;
    Element operator-(const Element& rhs) const;
    Element operator-() const;
    Element operator*(const Element& rhs) const;  // Clifford product
    Element operator*(double s) const;
    friend Element operator*(double s, const Element& x) { return x * s; }
    Element& operator+=(const Element& rhs);
    Element& operator-=(const Element& rhs);

    Element conj() const;        // Clifford conjugation
    Element real_part() const;   // (q + conj(q)) / 2
    Element imag_part() const;   // (q - conj(q)) / 2
    double scalar_coeff() const { return coeffs_[0]; }
    bool is_scalar(double tol = kMembershipTol) const;
    bool is_zero(double tol = 0.0) const;

    double euclid_norm() const;
    double max_abs_coeff() const;
    // Operator norm of left multiplication: sup of |x a| over unit a. Equals
    // the largest singular value of left_matrix(); coincides with
    // euclid_norm() exactly on the quadratic cone.
    double clifford_norm() const;

    Eigen::VectorXd coeff_vector() const;
    static Element from_coeff_vector(const AlgebraPtr& algebra, const Eigen::VectorXd& v);
    Eigen::MatrixXd left_matrix() const;   // a  ->  (this * a)
    Eigen::MatrixXd right_matrix() const;  // a  ->  (a * this)

private:
    Element(AlgebraPtr algebra, std::vector<double> coeffs);

    AlgebraPtr algebra_;
    std::vector<double> coeffs_;
};

void require_same_algebra(const Element& a, const Element& b);
double dot(const Element& a, const Element& b);
Element commutator(const Element& a, const Element& b);

// Quadratic cone membership: every blade with square +1 must have zero
// coefficient and be orthogonal to x * e_K. Inside the cone an element has a
// real part, an imaginary part with real square norm, and a two-sided
// inverse whenever nonzero. For n = 1, 2 the predicate always holds.
bool in_quadratic_cone(const Element& q, double tol = kMembershipTol);

// Imaginary sphere: conj(q) = -q and q^2 = -1.
bool in_imaginary_sphere(const Element& q, double tol = kMembershipTol);

// q = re + s * axis with s >= 0 and axis on the imaginary sphere; axis is
// empty when q is real. Throws ConeMembershipError outside the cone.
struct ConeParts {
    double re = 0.0;
    double s = 0.0;
    std::optional<Element> axis;
};
ConeParts cone_decompose(const Element& q, double tol = kMembershipTol);

// conj(q) / (q conj(q)); throws on zero or outside the cone.
Element cone_inverse(const Element& q, double tol = kMembershipTol);

// Polar angle in [0, pi]: 0 on (0, inf), pi on (-inf, 0), the slice angle
// atan2(s, re) elsewhere. Throws on 0 or outside the cone.
double cone_arg(const Element& q, double tol = kMembershipTol);

// Exponential of a cone element by the one-slice closed form
// e^{re} (cos s + sin s * axis).
Element cone_exp(const Element& q, double tol = kMembershipTol);

// re(z) + im(z) * axis. The axis must lie on the imaginary sphere.
Element slice_point(const Element& axis, std::complex<double> z);

// Random elements of the imaginary sphere: unit 1-vectors, plus for n >= 3 a
// fixed leading roster of coordinate bivectors (grade-2 blades), which also
// square to -1 but are not 1-vectors.
std::vector<Element> sample_imaginary_sphere(const AlgebraPtr& algebra,
                                             std::uint64_t seed, int count);

}  // namespace slicereg
