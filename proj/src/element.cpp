#include "slicereg/element.hpp"

#include <algorithm>
#include <cmath>

#include "slicereg/errors.hpp"
#include "slicereg/rng.hpp"

namespace slicereg {

Element::Element(AlgebraPtr algebra, std::vector<double> coeffs)
    : algebra_(std::move(algebra)), coeffs_(std::move(coeffs)) {}

Element Element::zero(const AlgebraPtr& algebra) {
    return Element(algebra, std::vector<double>(algebra->dim(), 0.0));
}

Element Element::scalar(const AlgebraPtr& algebra, double value) {
    Element x = zero(algebra);
    x.coeffs_[0] = value;
    return x;
}

Element Element::basis(const AlgebraPtr& algebra, unsigned blade) {
    if (blade >= static_cast<unsigned>(algebra->dim())) {
        throw DimensionMismatch("blade index out of range");
    }
    Element x = zero(algebra);
    x.coeffs_[blade] = 1.0;
    return x;
}

Element Element::from_coeffs(const AlgebraPtr& algebra, std::vector<double> coeffs) {
    if (static_cast<int>(coeffs.size()) != algebra->dim()) {
        throw DimensionMismatch("coefficient count does not match algebra dimension");
    }
    return Element(algebra, std::move(coeffs));
}

void require_same_algebra(const Element& a, const Element& b) {
    if (a.algebra()->generators() != b.algebra()->generators()) {
        throw SignatureMismatch("operands live in different Clifford algebras");
    }
}

Element Element::operator+(const Element& rhs) const {
    require_same_algebra(*this, rhs);
    Element out = *this;
    for (int i = 0; i < dim(); ++i) out.coeffs_[i] += rhs.coeffs_[i];
    return out;
}

Element Element::operator-(const Element& rhs) const {
    require_same_algebra(*this, rhs);
    Element out = *this;
    for (int i = 0; i < dim(); ++i) out.coeffs_[i] -= rhs.coeffs_[i];
    return out;
}

Element& Element::operator+=(const Element& rhs) {
    require_same_algebra(*this, rhs);
    for (int i = 0; i < dim(); ++i) coeffs_[i] += rhs.coeffs_[i];
    return *this;
}

Element& Element::operator-=(const Element& rhs) {
    require_same_algebra(*this, rhs);
    for (int i = 0; i < dim(); ++i) coeffs_[i] -= rhs.coeffs_[i];
    return *this;
}

Element Element::operator-() const {
    Element out = *this;
    for (double& c : out.coeffs_) c = -c;
    return out;
}

Element Element::operator*(double s) const {
    Element out = *this;
    for (double& c : out.coeffs_) c *= s;
    return out;
}

Element Element::operator*(const Element& rhs) const {
    require_same_algebra(*this, rhs);
    const auto& alg = *algebra_;
    const int d = dim();
    std::vector<double> out(d, 0.0);
    for (int a = 0; a < d; ++a) {
        const double ca = coeffs_[a];
        if (ca == 0.0) continue;
        for (int b = 0; b < d; ++b) {
            const double cb = rhs.coeffs_[b];
            if (cb == 0.0) continue;
            out[a ^ b] += alg.product_sign(a, b) * ca * cb;
        }
    }
    return Element(algebra_, std::move(out));
}

Element Element::conj() const {
    Element out = *this;
    for (int a = 0; a < dim(); ++a) out.coeffs_[a] *= algebra_->conj_sign(a);
    return out;
}

Element Element::real_part() const {
    Element out = *this;
    for (int a = 0; a < dim(); ++a) {
        if (algebra_->conj_sign(a) < 0) out.coeffs_[a] = 0.0;
    }
    return out;
}

Element Element::imag_part() const {
    Element out = *this;
    for (int a = 0; a < dim(); ++a) {
        if (algebra_->conj_sign(a) > 0) out.coeffs_[a] = 0.0;
    }
    return out;
}

bool Element::is_scalar(double tol) const {
    for (int a = 1; a < dim(); ++a) {
        if (std::abs(coeffs_[a]) > tol) return false;
    }
    return true;
}

bool Element::is_zero(double tol) const {
    for (const double c : coeffs_) {
        if (std::abs(c) > tol) return false;
    }
    return true;
}

double Element::euclid_norm() const {
    double s = 0.0;
    for (const double c : coeffs_) s += c * c;
    return std::sqrt(s);
}

double Element::max_abs_coeff() const {
    double m = 0.0;
    for (const double c : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

Eigen::VectorXd Element::coeff_vector() const {
    Eigen::VectorXd v(dim());
    for (int i = 0; i < dim(); ++i) v[i] = coeffs_[i];
    return v;
}

Element Element::from_coeff_vector(const AlgebraPtr& algebra, const Eigen::VectorXd& v) {
    if (v.size() != algebra->dim()) {
        throw DimensionMismatch("coefficient vector does not match algebra dimension");
    }
    std::vector<double> c(static_cast<std::size_t>(v.size()));
    for (int i = 0; i < v.size(); ++i) c[static_cast<std::size_t>(i)] = v[i];
    return Element(algebra, std::move(c));
}

Eigen::MatrixXd Element::left_matrix() const {
    const int d = dim();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
    // column b holds the coefficients of (this * e_b)
    for (int a = 0; a < d; ++a) {
        const double ca = coeffs_[a];
        if (ca == 0.0) continue;
        for (int b = 0; b < d; ++b) {
            m(a ^ b, b) += algebra_->product_sign(a, b) * ca;
        }
    }
    return m;
}

Eigen::MatrixXd Element::right_matrix() const {
    const int d = dim();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
    // column a holds the coefficients of (e_a * this)
    for (int b = 0; b < d; ++b) {
        const double cb = coeffs_[b];
        if (cb == 0.0) continue;
        for (int a = 0; a < d; ++a) {
            m(a ^ b, a) += algebra_->product_sign(a, b) * cb;
        }
    }
    return m;
}

double Element::clifford_norm() const {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(left_matrix());
    return svd.singularValues()(0);
}

double dot(const Element& a, const Element& b) {
    require_same_algebra(a, b);
    double s = 0.0;
    for (int i = 0; i < a.dim(); ++i) s += a.coeff(i) * b.coeff(i);
    return s;
}

Element commutator(const Element& a, const Element& b) { return a * b - b * a; }

bool in_quadratic_cone(const Element& q, double tol) {
    const auto& alg = *q.algebra();
    const double scale = q.euclid_norm();
    const double coeff_tol = tol * std::max(1.0, scale);
    const double pair_tol = tol * std::max(1.0, scale * scale);
    for (unsigned a = 1; a < static_cast<unsigned>(alg.dim()); ++a) {
        if (alg.blade_square(a) < 0) continue;
        if (std::abs(q.coeff(a)) > coeff_tol) return false;
        if (std::abs(dot(q, q * Element::basis(q.algebra(), a))) > pair_tol) return false;
    }
    return true;
}

bool in_imaginary_sphere(const Element& q, double tol) {
    if ((q.conj() + q).max_abs_coeff() > tol) return false;
    Element sq = q * q;
    sq.set_coeff(0, sq.scalar_coeff() + 1.0);
    return sq.max_abs_coeff() <= tol;
}

ConeParts cone_decompose(const Element& q, double tol) {
    if (!in_quadratic_cone(q, tol)) {
        throw ConeMembershipError("element is not in the quadratic cone");
    }
    const double scale = std::max(1.0, q.euclid_norm());
    const Element re = q.real_part();
    if (!re.is_scalar(tol * scale)) {
        throw ConeMembershipError("real part is not a scalar at the given tolerance");
    }
    ConeParts parts;
    parts.re = re.scalar_coeff();
    const Element im = q.imag_part();
    const Element norm_sq = im * im.conj();
    if (!norm_sq.is_scalar(tol * std::max(1.0, scale * scale))) {
        throw ConeMembershipError("imaginary square norm is not real at the given tolerance");
    }
    parts.s = std::sqrt(std::max(norm_sq.scalar_coeff(), 0.0));
    if (parts.s > tol * scale) {
        parts.axis = im * (1.0 / parts.s);
    }
    return parts;
}

Element cone_inverse(const Element& q, double tol) {
    if (!in_quadratic_cone(q, tol)) {
        throw ConeMembershipError("element is not in the quadratic cone");
    }
    const Element qc = q.conj();
    const Element norm_sq = q * qc;
    const double nsq = norm_sq.scalar_coeff();
    if (!norm_sq.is_scalar(tol * std::max(1.0, nsq)) || nsq <= 0.0) {
        throw ConeMembershipError("element has no cone inverse");
    }
    return qc * (1.0 / nsq);
}

double cone_arg(const Element& q, double tol) {
    const ConeParts parts = cone_decompose(q, tol);
    if (parts.s == 0.0 && parts.re == 0.0) {
        throw ConeMembershipError("zero has no polar angle");
    }
    return std::atan2(parts.s, parts.re);
}

Element cone_exp(const Element& q, double tol) {
    const ConeParts parts = cone_decompose(q, tol);
    const double mag = std::exp(parts.re);
    Element out = Element::scalar(q.algebra(), mag * std::cos(parts.s));
    if (parts.axis) {
        out += *parts.axis * (mag * std::sin(parts.s));
    }
    return out;
}

Element slice_point(const Element& axis, std::complex<double> z) {
    if (!in_imaginary_sphere(axis, 1e-8)) {
        throw ConeMembershipError("slice axis is not on the imaginary sphere");
    }
    Element out = axis * z.imag();
    out.set_coeff(0, out.scalar_coeff() + z.real());
    return out;
}

std::vector<Element> sample_imaginary_sphere(const AlgebraPtr& algebra,
                                             std::uint64_t seed, int count) {
    std::vector<Element> out;
    if (count <= 0) return out;
    out.reserve(static_cast<std::size_t>(count));
    const int n = algebra->generators();
    if (n >= 3) {
        for (int k = 0; k < n && static_cast<int>(out.size()) < count; ++k) {
            for (int h = k + 1; h < n && static_cast<int>(out.size()) < count; ++h) {
                out.push_back(Element::basis(algebra, (1u << k) | (1u << h)));
            }
        }
    }
    Rng rng(seed);
    while (static_cast<int>(out.size()) < count) {
        Element v = Element::zero(algebra);
        double norm_sq = 0.0;
        for (int k = 0; k < n; ++k) {
            const double c = rng.normal();
            v.set_coeff(1u << k, c);
            norm_sq += c * c;
        }
        if (norm_sq < 1e-12) continue;
        out.push_back(v * (1.0 / std::sqrt(norm_sq)));
    }
    return out;
}

}  // namespace slicereg
