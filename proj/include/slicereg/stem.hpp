#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "slicereg/element.hpp"
#include "slicereg/errors.hpp"
#include "slicereg/matrix_operator.hpp"
#include "slicereg/module_space.hpp"
#include "slicereg/resolvent.hpp"

namespace slicereg {

// Operator sample tagged with its module space, so stem values can be added,
// composed, and right-scaled without re-deriving entry matrices.
struct OperatorValue {
    ModuleSpace space;
    Eigen::MatrixXd mat;

    OperatorValue operator+(const OperatorValue& rhs) const {
        require_same_space(space, rhs.space);
        return {space, mat + rhs.mat};
    }
    OperatorValue operator-(const OperatorValue& rhs) const {
        require_same_space(space, rhs.space);
        return {space, mat - rhs.mat};
    }
    OperatorValue operator*(const OperatorValue& rhs) const {
        require_same_space(space, rhs.space);
        return {space, mat * rhs.mat};
    }
    OperatorValue operator*(double s) const { return {space, mat * s}; }
};

// Value-type hooks shared by every stem: how to build the additive and
// multiplicative units of the codomain, how a value is multiplied by an
// algebra scalar on the right, and which norm controls truncation.
template <class V>
struct StemTraits;

template <>
struct StemTraits<Element> {
    static Element zero_like(const Element& model) { return Element::zero(model.algebra()); }
    static Element one_like(const Element& model) { return Element::scalar(model.algebra(), 1.0); }
    static Element right_scaled(const Element& v, const Element& q) { return v * q; }
    static double norm(const Element& v) { return v.clifford_norm(); }
};

template <>
struct StemTraits<OperatorValue> {
    static OperatorValue zero_like(const OperatorValue& model) {
        return {model.space, Eigen::MatrixXd::Zero(model.mat.rows(), model.mat.cols())};
    }
    static OperatorValue one_like(const OperatorValue& model) {
        return {model.space, Eigen::MatrixXd::Identity(model.mat.rows(), model.mat.cols())};
    }
    static OperatorValue right_scaled(const OperatorValue& v, const Element& q) {
        return {v.space, v.mat * left_action_matrix(v.space, q)};
    }
    static double norm(const OperatorValue& v) { return v.mat.norm(); }
};

template <class V>
struct StemPair {
    V f1;
    V f2;
};

// Holomorphic stem of a slice function: a pair (F1, F2), even and odd in
// Im z, inducing q = u + s*J -> F1(u, s) + F2(u, s) J on the quadratic cone.
template <class V>
class Stem {
public:
    virtual ~Stem() = default;
    virtual StemPair<V> eval(std::complex<double> z) const = 0;
};

template <class V>
using StemPtr = std::shared_ptr<const Stem<V>>;

template <class V>
class ConstantStem final : public Stem<V> {
public:
    explicit ConstantStem(V value) : value_(std::move(value)) {}
    StemPair<V> eval(std::complex<double>) const override {
        return {value_, StemTraits<V>::zero_like(value_)};
    }

private:
    V value_;
};

// Power series with left coefficients: q -> sum_k c_k q^k.
template <class V>
class PowerSeriesStem final : public Stem<V> {
public:
    explicit PowerSeriesStem(std::vector<V> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) throw Error("power series stem needs at least one coefficient");
    }
    StemPair<V> eval(std::complex<double> z) const override {
        V f1 = StemTraits<V>::zero_like(coeffs_.front());
        V f2 = f1;
        std::complex<double> zk(1.0, 0.0);
        for (const V& c : coeffs_) {
            f1 = f1 + c * zk.real();
            f2 = f2 + c * zk.imag();
            zk *= z;
        }
        return {f1, f2};
    }

private:
    std::vector<V> coeffs_;
};

// Slice product: pointwise product of the complexified pairs,
// (F1, F2) (G1, G2) = (F1 G1 - F2 G2, F1 G2 + F2 G1).
template <class V>
class ProductStem final : public Stem<V> {
public:
    ProductStem(StemPtr<V> lhs, StemPtr<V> rhs) : lhs_(std::move(lhs)), rhs_(std::move(rhs)) {
        if (!lhs_ || !rhs_) throw Error("product stem needs two factors");
    }
    StemPair<V> eval(std::complex<double> z) const override {
        const StemPair<V> f = lhs_->eval(z);
        const StemPair<V> g = rhs_->eval(z);
        return {f.f1 * g.f1 - f.f2 * g.f2, f.f1 * g.f2 + f.f2 * g.f1};
    }

private:
    StemPtr<V> lhs_;
    StemPtr<V> rhs_;
};

// Exponential with left coefficient x and shift p:
// q -> sum_k x^k (p + q)^k / k!, where the k-th power is the slice power.
// The complexified pair of (p + z)^k lives in the commutative ring R[p], so
// it follows the complex-number recurrence on (u, v).
template <class V>
class ExpStem final : public Stem<V> {
public:
    ExpStem(V x, Element p, double tol = 1e-14, int max_terms = 400)
        : x_(std::move(x)), p_(std::move(p)), tol_(tol), max_terms_(max_terms) {}

    StemPair<V> eval(std::complex<double> z) const override {
        using T = StemTraits<V>;
        const double im = z.imag();
        const Element w1 = p_ + Element::scalar(p_.algebra(), z.real());
        V sum1 = T::one_like(x_);
        V sum2 = T::zero_like(x_);
        Element u = Element::scalar(p_.algebra(), 1.0);
        Element v = Element::zero(p_.algebra());
        V xpow = x_;
        double inv_fact = 1.0;
        int calm = 0;
        for (int k = 1; k <= max_terms_; ++k) {
            const Element nu = u * w1 - v * im;
            const Element nv = u * im + v * w1;
            u = nu;
            v = nv;
            inv_fact /= static_cast<double>(k);
            const V t1 = T::right_scaled(xpow, u) * inv_fact;
            const V t2 = T::right_scaled(xpow, v) * inv_fact;
            sum1 = sum1 + t1;
            sum2 = sum2 + t2;
            const double term = std::max(T::norm(t1), T::norm(t2));
            const double scale = std::max({1.0, T::norm(sum1), T::norm(sum2)});
            if (term * 10.0 < tol_ * scale) {
                if (++calm >= 2) return {sum1, sum2};
            } else {
                calm = 0;
            }
            xpow = xpow * x_;
        }
        throw Error("exponential stem did not converge within the term cap");
    }

private:
    V x_;
    Element p_;
    double tol_;
    int max_terms_;
};

template <class V>
class FunctionStem final : public Stem<V> {
public:
    using Fn = std::function<StemPair<V>(std::complex<double>)>;
    explicit FunctionStem(Fn fn) : fn_(std::move(fn)) {}
    StemPair<V> eval(std::complex<double> z) const override { return fn_(z); }

private:
    Fn fn_;
};

// Spherical resolvent as an operator-valued stem:
// F1 = Re(z) Q - A Q, F2 = -Im(z) Q with Q the pseudo-resolvent on the
// sphere of z. Defined off the spherical spectrum.
class ResolventStem final : public Stem<OperatorValue> {
public:
    explicit ResolventStem(MatrixOperator a, double rel_band = 1e-13)
        : a_(std::move(a)), emb_(a_.embedding()), rel_band_(rel_band) {}

    StemPair<OperatorValue> eval(std::complex<double> z) const override {
        const Eigen::MatrixXd q = pseudo_resolvent(a_, z.real(), std::norm(z), rel_band_);
        return {{a_.space(), z.real() * q - emb_ * q}, {a_.space(), -z.imag() * q}};
    }

private:
    MatrixOperator a_;
    Eigen::MatrixXd emb_;
    double rel_band_;
};

// Integral of a stem-valued family over a finite parameter interval,
// evaluated by adaptive 16-point Gauss-Legendre bisection. Throws
// QuadratureError when the depth cap is reached before the tolerance.
template <class V>
class IntegralStem final : public Stem<V> {
public:
    using Integrand = std::function<StemPair<V>(double, std::complex<double>)>;
    IntegralStem(Integrand fn, double a, double b, double tol = 1e-12, int max_depth = 28)
        : fn_(std::move(fn)), a_(a), b_(b), tol_(tol), max_depth_(max_depth) {}

    StemPair<V> eval(std::complex<double> z) const override {
        return refine(z, a_, b_, panel(z, a_, b_), tol_, max_depth_);
    }

private:
    static constexpr double kNodes[8] = {0.0950125098376374, 0.2816035507792589,
                                         0.4580167776572274, 0.6178762444026438,
                                         0.7554044083550030, 0.8656312023878318,
                                         0.9445750230732326, 0.9894009349916499};
    static constexpr double kWeights[8] = {0.1894506104550685, 0.1826034150449236,
                                           0.1691565193950025, 0.1495959888165767,
                                           0.1246289712555339, 0.0951585116824928,
                                           0.0622535239386479, 0.0271524594117541};

    StemPair<V> panel(std::complex<double> z, double a, double b) const {
        const double mid = 0.5 * (a + b);
        const double half = 0.5 * (b - a);
        StemPair<V> first = fn_(mid + half * kNodes[0], z);
        V acc1 = first.f1 * (kWeights[0] * half);
        V acc2 = first.f2 * (kWeights[0] * half);
        {
            const StemPair<V> s = fn_(mid - half * kNodes[0], z);
            acc1 = acc1 + s.f1 * (kWeights[0] * half);
            acc2 = acc2 + s.f2 * (kWeights[0] * half);
        }
        for (int i = 1; i < 8; ++i) {
            for (const double sign : {1.0, -1.0}) {
                const StemPair<V> s = fn_(mid + sign * half * kNodes[i], z);
                acc1 = acc1 + s.f1 * (kWeights[i] * half);
                acc2 = acc2 + s.f2 * (kWeights[i] * half);
            }
        }
        return {acc1, acc2};
    }

    StemPair<V> refine(std::complex<double> z, double a, double b, StemPair<V> whole, double tol,
                       int depth) const {
        using T = StemTraits<V>;
        const double mid = 0.5 * (a + b);
        const StemPair<V> left = panel(z, a, mid);
        const StemPair<V> right = panel(z, mid, b);
        const V sum1 = left.f1 + right.f1;
        const V sum2 = left.f2 + right.f2;
        const double diff =
            std::max(T::norm(sum1 - whole.f1), T::norm(sum2 - whole.f2));
        const double scale = std::max({1.0, T::norm(sum1), T::norm(sum2)});
        if (diff <= std::max(tol, 1e-16 * scale)) return {sum1, sum2};
        if (depth <= 0) throw QuadratureError("stem integral did not reach tolerance");
        const StemPair<V> lr = refine(z, a, mid, left, 0.5 * tol, depth - 1);
        const StemPair<V> rr = refine(z, mid, b, right, 0.5 * tol, depth - 1);
        return {lr.f1 + rr.f1, lr.f2 + rr.f2};
    }

    Integrand fn_;
    double a_;
    double b_;
    double tol_;
    int max_depth_;
};

template <class V>
StemPtr<V> constant_stem(V value) {
    return std::make_shared<ConstantStem<V>>(std::move(value));
}

template <class V>
StemPtr<V> power_series_stem(std::vector<V> coeffs) {
    return std::make_shared<PowerSeriesStem<V>>(std::move(coeffs));
}

template <class V>
StemPtr<V> product_stem(StemPtr<V> lhs, StemPtr<V> rhs) {
    return std::make_shared<ProductStem<V>>(std::move(lhs), std::move(rhs));
}

template <class V>
StemPtr<V> exp_stem(V x, Element p, double tol = 1e-14, int max_terms = 400) {
    return std::make_shared<ExpStem<V>>(std::move(x), std::move(p), tol, max_terms);
}

template <class V>
StemPtr<V> function_stem(typename FunctionStem<V>::Fn fn) {
    return std::make_shared<FunctionStem<V>>(std::move(fn));
}

inline StemPtr<OperatorValue> resolvent_stem(MatrixOperator a, double rel_band = 1e-13) {
    return std::make_shared<ResolventStem>(std::move(a), rel_band);
}

template <class V>
StemPtr<V> integral_stem(typename IntegralStem<V>::Integrand fn, double a, double b,
                         double tol = 1e-12, int max_depth = 28) {
    return std::make_shared<IntegralStem<V>>(std::move(fn), a, b, tol, max_depth);
}

// Value of the induced slice function at a cone point q = u + s*J.
template <class V>
V induce(const Stem<V>& f, const Element& q) {
    const ConeParts parts = cone_decompose(q);
    const StemPair<V> pair = f.eval({parts.re, parts.s});
    if (parts.axis) return pair.f1 + StemTraits<V>::right_scaled(pair.f2, *parts.axis);
    return pair.f1;
}

template <class V>
V induce(const StemPtr<V>& f, const Element& q) {
    return induce(*f, q);
}

// Representation formula: recovers the value on the k slice from the two
// values on the j slice at z and conj(z).
template <class V>
V representation_combine(const V& at_j, const V& at_conj, const Element& j, const Element& k) {
    const V avg = (at_j + at_conj) * 0.5;
    const V diff = (at_j - at_conj) * 0.5;
    return avg - StemTraits<V>::right_scaled(diff, j * k);
}

// Centered finite-difference Cauchy-Riemann defect of the complexified pair
// at z, relative to the local value scale. Order h^2 for holomorphic stems.
template <class V>
double cr_residual(const Stem<V>& f, std::complex<double> z, double h = 1e-5) {
    using T = StemTraits<V>;
    const StemPair<V> base = f.eval(z);
    const StemPair<V> re_p = f.eval(z + std::complex<double>(h, 0.0));
    const StemPair<V> re_m = f.eval(z - std::complex<double>(h, 0.0));
    const StemPair<V> im_p = f.eval(z + std::complex<double>(0.0, h));
    const StemPair<V> im_m = f.eval(z - std::complex<double>(0.0, h));
    const double inv = 1.0 / (2.0 * h);
    const V du1 = (re_p.f1 - re_m.f1) * inv;
    const V du2 = (re_p.f2 - re_m.f2) * inv;
    const V dv1 = (im_p.f1 - im_m.f1) * inv;
    const V dv2 = (im_p.f2 - im_m.f2) * inv;
    const V cr1 = du1 - dv2;
    const V cr2 = dv1 + du2;
    const double scale = std::max({1.0, T::norm(base.f1), T::norm(base.f2)});
    return std::max(T::norm(cr1), T::norm(cr2)) / scale;
}

template <class V>
double cr_residual(const StemPtr<V>& f, std::complex<double> z, double h = 1e-5) {
    return cr_residual(*f, z, h);
}

// Finite-difference defect of the right Cauchy-Riemann operator
// d_u f + (d_v f) j for a raw function sampled on the j slice at u + v j.
// Exact (up to rounding) for functions affine in q.
Element slice_cr_defect(const std::function<Element(const Element&)>& f, const Element& j,
                        double u, double v, double h = 1e-5);

// Defect of the representation formula: f(u + v k) minus the combination of
// the two j-slice values.
Element slice_representation_defect(const std::function<Element(const Element&)>& f,
                                    const Element& j, const Element& k, double u, double v);

// Sampled verdict on whether a raw function is a right slice function:
// checks the right Cauchy-Riemann defect on several slices and the
// representation formula across slice pairs, and reports the worst witness.
struct SliceSampleReport {
    bool right_slice;
    double worst_defect;        // relative to max(1, |f|) at the sample
    Element worst_point;        // where the worst defect occurred
    Element worst_defect_value; // the defect element itself
};

SliceSampleReport is_right_slice(const std::function<Element(const Element&)>& f,
                                 const AlgebraPtr& algebra, std::uint64_t seed = 11,
                                 int axis_count = 4, int point_count = 6, double h = 1e-5,
                                 double tol = 1e-6);

// Extrapolated limit of g(t) = 2 t^{-2} (exp stem with shift tp at tq, minus
// the unshifted exp stem at t(p+q)) as t -> 0. For slice exponentials the
// limit is x^2 (pq - qp); it vanishes identically when p and q commute.
// p, q, and p + q must all lie in the quadratic cone (automatic for
// quaternions, and for imaginary parts spanned by the 1-vector grade).
Element exp_defect_limit(const Element& x, const Element& p, const Element& q);

}  // namespace slicereg
