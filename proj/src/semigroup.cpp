#include "slicereg/semigroup.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>

#include "slicereg/errors.hpp"
#include "slicereg/matrix_exp.hpp"

namespace slicereg {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string cone_label(const Element& q) {
    const ConeParts parts = cone_decompose(q);
    char buf[64];
    std::snprintf(buf, sizeof(buf), "(%.4g,%.4g)", parts.re, parts.s);
    return buf;
}

double spectral_bound(const MatrixOperator& a) {
    double bound = -kInf;
    for (const SpectrumPoint& pt : spherical_spectrum(a)) {
        if (pt.re > bound) bound = pt.re;
    }
    return bound;
}

}  // namespace

Eigen::MatrixXd exp_semigroup(const MatrixOperator& a, const Element& q,
                              double tol, int max_terms) {
    const ModuleSpace& space = a.space();
    cone_decompose(q);
    const Eigen::MatrixXd emb = a.embedding();
    Eigen::MatrixXd sum = Eigen::MatrixXd::Identity(emb.rows(), emb.cols());
    Eigen::MatrixXd apow = sum;
    Element qpow = Element::scalar(q.algebra(), 1.0);
    double inv_fact = 1.0;
    int calm = 0;
    for (int k = 1; k <= max_terms; ++k) {
        apow = apow * emb;
        qpow = qpow * q;
        inv_fact /= k;
        const Eigen::MatrixXd term = inv_fact * apow * left_action_matrix(space, qpow);
        sum += term;
        if (term.norm() <= tol * std::max(1.0, sum.norm())) {
            if (++calm >= 2) return sum;
        } else {
            calm = 0;
        }
    }
    throw Error("semigroup series did not converge within the term cap");
}

StemPtr<OperatorValue> semigroup_stems(const MatrixOperator& a, double tol) {
    const ModuleSpace& space = a.space();
    return exp_stem(OperatorValue{space, a.embedding()}, Element::zero(space.algebra), tol);
}

Eigen::MatrixXd resolvent_slice_power(const MatrixOperator& a, const Element& q,
                                      int k, double rel_band) {
    if (k < 1) throw Error("resolvent slice power needs k >= 1");
    const StemPtr<OperatorValue> factor = resolvent_stem(a, rel_band);
    StemPtr<OperatorValue> chain = factor;
    for (int i = 1; i < k; ++i) chain = product_stem(chain, factor);
    return induce(chain, q).mat;
}

Eigen::MatrixXd laplace_transform(const MatrixOperator& a, const Element& q, int k,
                                  const SemigroupProvider& provider,
                                  const QuadratureOptions& opt) {
    if (k < 1) throw Error("Laplace transform needs k >= 1");
    const ModuleSpace& space = a.space();
    const ConeParts parts = cone_decompose(q);
    const double bound = spectral_bound(a);
    if (!(parts.re > bound)) {
        throw Error("Laplace transform needs re(q) beyond the spectral bound");
    }
    const Eigen::MatrixXd emb = a.embedding();
    const SemigroupProvider at =
        provider ? provider
                 : SemigroupProvider([&emb](double t) { return real_matrix_exp(t * emb); });
    double inv_fact = 1.0;
    for (int i = 2; i < k; ++i) inv_fact /= i;
    const MatrixFn integrand = [&](double t) -> Eigen::MatrixXd {
        const Element weight = cone_exp(q * (-t)) * (std::pow(t, k - 1) * inv_fact);
        return at(t) * left_action_matrix(space, weight);
    };
    return halfline_integral(integrand, 0.0, opt);
}

SemigroupReport laplace_norm_bound_check(const MatrixOperator& a, double omega, double m_bound,
                                         const std::vector<Element>& q_samples, int k_max,
                                         const std::vector<double>& t_grid) {
    if (k_max < 1) throw Error("resolvent power bound check needs k_max >= 1");
    const ModuleSpace& space = a.space();
    SemigroupReport report;
    char buf[96];
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        const auto start = Clock::now();
        const double t = t_grid[i];
        const double norm = embedded_norm_upper(
            space, exp_semigroup(a, Element::scalar(space.algebra, t)));
        const double ratio = norm / (m_bound * std::exp(omega * t));
        std::snprintf(buf, sizeof(buf), "laplace.growth-t%zu", i);
        report.checks.push_back({buf, "semigroup-growth-envelope",
                                 "t=" + std::to_string(t), ratio, 1.0,
                                 ratio <= 1.0 + 1e-9, ms_since(start)});
    }
    for (std::size_t i = 0; i < q_samples.size(); ++i) {
        const ConeParts parts = cone_decompose(q_samples[i]);
        if (!(parts.re > omega)) {
            throw Error("resolvent power bound check needs re(q) > omega");
        }
        for (int k = 1; k <= k_max; ++k) {
            const auto start = Clock::now();
            const double upper =
                embedded_norm_upper(space, resolvent_slice_power(a, q_samples[i], k));
            const double allowed = m_bound / std::pow(parts.re - omega, k);
            const double ratio = upper / allowed;
            std::snprintf(buf, sizeof(buf), "laplace.bound-q%zu-k%d", i, k);
            report.checks.push_back({buf, "resolvent-power-bound",
                                     "q=" + cone_label(q_samples[i]) + " k=" + std::to_string(k),
                                     ratio, 1.0, ratio <= 1.0 + 1e-9, ms_since(start)});
        }
    }
    return report;
}

MatrixOperator yosida_approximant(const MatrixOperator& a, double k) {
    if (!(k > 0.0)) throw Error("Yosida approximant needs k > 0");
    const Eigen::MatrixXd q = pseudo_resolvent(a, k, k * k);
    const Eigen::MatrixXd emb = a.embedding();
    const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(emb.rows(), emb.cols());
    const Eigen::MatrixXd resolvent = q * (k * eye - emb);
    return MatrixOperator::from_embedding(a.space(), k * emb * resolvent);
}

Element noncommutative_exp(const Element& axis, std::complex<double> z,
                           const Element& p, const Element& q) {
    const ConeParts pp = cone_decompose(p);
    const ConeParts qq = cone_decompose(q);
    const std::complex<double> i(0.0, 1.0);
    // Powers (p + w)^k in the commutative ring R[p][w] stay in span{1, p}:
    // (A, B) with A_k + B_k p obey a linear two-term recurrence, so the
    // series sum_k z^k (A_k, B_k) / k! is the exponential of a 2x2 matrix
    // with eigenvalue exponents z (w + re p +- i s p). Those are exactly the
    // decay rates on contour rays, so this form is stable for large |z|.
    const auto series = [&](std::complex<double> w) {
        const std::complex<double> lam = z * (w + pp.re);
        const std::complex<double> zs = z * pp.s;
        const std::complex<double> ep = std::exp(lam + i * zs);
        const std::complex<double> em = std::exp(lam - i * zs);
        const std::complex<double> cosine = 0.5 * (ep + em);
        std::complex<double> sinc;
        if (std::abs(zs) < 1e-6) {
            sinc = std::exp(lam) * (1.0 - zs * zs / 6.0);
        } else {
            sinc = (ep - em) / (2.0 * i * zs);
        }
        const std::complex<double> sa = cosine - sinc * z * pp.re;
        const std::complex<double> sb = sinc * z;
        return std::pair<std::complex<double>, std::complex<double>>(sa, sb);
    };
    const std::complex<double> w(qq.re, qq.s);
    const auto [sa, sb] = series(w);
    const auto [sa_c, sb_c] = series(std::conj(w));
    const std::complex<double> a1 = 0.5 * (sa + sa_c);
    const std::complex<double> a2 = (sa - sa_c) / (2.0 * i);
    const std::complex<double> b1 = 0.5 * (sb + sb_c);
    const std::complex<double> b2 = (sb - sb_c) / (2.0 * i);
    Element value = slice_point(axis, a1) + slice_point(axis, b1) * p;
    if (qq.axis) {
        value = value + slice_point(axis, a2) * (*qq.axis);
        value = value + slice_point(axis, b2) * (p * (*qq.axis));
    }
    return value;
}

Eigen::MatrixXd contour_semigroup(const MatrixOperator& a, const ContourSpec& spec, double t) {
    if (t < 0.0) throw Error("contour semigroup needs t >= 0");
    const ModuleSpace& space = a.space();
    const int dim = space.real_dim();
    if (t == 0.0) return Eigen::MatrixXd::Identity(dim, dim);
    const OperatorFn f = [&](std::complex<double> z) {
        return spherical_resolvent(a, slice_point(spec.axis, z));
    };
    const SliceValueFn g = [&](std::complex<double> z) {
        return slice_point(spec.axis, std::complex<double>(0.0, -1.0) * std::exp(t * z));
    };
    return line_integral(space, f, g, spec) / (2.0 * kPi);
}

Eigen::MatrixXd contour_semigroup_slice(const MatrixOperator& a, const ContourSpec& spec,
                                        const Element& p, const Element& q) {
    const ModuleSpace& space = a.space();
    const int dim = space.real_dim();
    cone_decompose(p);
    cone_decompose(q);
    if (p.max_abs_coeff() == 0.0 && q.max_abs_coeff() == 0.0) {
        return Eigen::MatrixXd::Identity(dim, dim);
    }
    const Element minus_axis = slice_point(spec.axis, std::complex<double>(0.0, -1.0));
    const OperatorFn f = [&](std::complex<double> z) {
        return spherical_resolvent(a, slice_point(spec.axis, z));
    };
    const SliceValueFn g = [&](std::complex<double> z) {
        return minus_axis * noncommutative_exp(spec.axis, z, p, q);
    };
    return line_integral(space, f, g, spec) / (2.0 * kPi);
}

SemigroupReport semigroup_law_check(const MatrixOperator& a, const Element& p,
                                    const Element& q, double tol) {
    const ModuleSpace& space = a.space();
    const Element comm = p * q - q * p;
    const double scale = p.clifford_norm() * q.clifford_norm();
    if (comm.clifford_norm() > 1e-12 * std::max(1.0, scale)) {
        throw Error("semigroup law check needs commuting arguments");
    }
    SemigroupReport report;
    const std::string operands = "p=" + cone_label(p) + " q=" + cone_label(q);

    auto start = Clock::now();
    const Eigen::MatrixXd at_sum = exp_semigroup(a, p + q);
    const Eigen::MatrixXd at_q = exp_semigroup(a, q);
    const StemPtr<OperatorValue> law =
        product_stem(semigroup_stems(a), constant_stem(OperatorValue{space, at_q}));
    const Eigen::MatrixXd slice_side = induce(law, p).mat;
    const double denom = std::max(at_sum.norm(), 1e-30);
    const double law_residual = (at_sum - slice_side).norm() / denom;
    report.checks.push_back({"law.slice-product", "semigroup-law", operands,
                             law_residual, tol, law_residual <= tol, ms_since(start)});

    start = Clock::now();
    const Eigen::MatrixXd at_p = exp_semigroup(a, p);
    const double defect = (at_sum - at_p * at_q).norm() / denom;
    report.checks.push_back({"law.pointwise-defect", "semigroup-law", operands,
                             defect, kInf, true, ms_since(start)});
    return report;
}

ModuleVector generator_estimate(const ModuleSpace& space, const SemigroupProvider& provider,
                                const ModuleVector& x, const std::vector<double>& h_grid) {
    const std::size_t n = h_grid.size();
    if (n < 2) throw Error("generator estimate needs at least two step sizes");
    for (std::size_t i = 0; i < n; ++i) {
        if (!(h_grid[i] > 0.0) || (i > 0 && h_grid[i] >= h_grid[i - 1])) {
            throw Error("generator estimate needs a decreasing positive step grid");
        }
    }
    const Eigen::VectorXd flat = x.flat();
    std::vector<Eigen::VectorXd> table(n);
    for (std::size_t i = 0; i < n; ++i) {
        table[i] = (provider(h_grid[i]) * flat - flat) / h_grid[i];
    }
    Eigen::VectorXd previous = table[0];
    for (std::size_t m = 1; m < n; ++m) {
        if (m == n - 1) previous = table[0];
        for (std::size_t i = 0; i + m < n; ++i) {
            const double hi = h_grid[i];
            const double hm = h_grid[i + m];
            table[i] = (table[i] * (-hm) + table[i + 1] * hi) * (1.0 / (hi - hm));
        }
    }
    const double settle = (table[0] - previous).norm();
    if (settle > 1e-2 * (1.0 + table[0].norm())) {
        throw Error("generator extrapolation did not settle");
    }
    return ModuleVector::from_flat(space, table[0]);
}

SemigroupReport growth_bound_check(const MatrixOperator& a, double delta_prime, double omega,
                                   const std::vector<double>& radii, int axis_count,
                                   std::uint64_t seed) {
    if (!(delta_prime >= 0.0) || !(delta_prime < kPi / 2)) {
        throw Error("growth bound sweep needs an opening in [0, pi/2)");
    }
    if (radii.empty()) throw Error("growth bound sweep needs at least one radius");
    const ModuleSpace& space = a.space();
    const std::vector<Element> axes =
        sample_imaginary_sphere(space.algebra, seed, axis_count);
    const double angles[3] = {0.0, 0.5 * delta_prime, delta_prime};
    SemigroupReport report;
    char buf[64];
    double sup = 0.0;
    std::vector<double> per_radius;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        const auto start = Clock::now();
        const double r = radii[i];
        double worst = 0.0;
        for (const double theta : angles) {
            const double re = r * std::cos(theta);
            const double s = r * std::sin(theta);
            for (const Element& axis : axes) {
                const Element q = Element::scalar(space.algebra, re) + axis * s;
                const double norm = embedded_norm_upper(space, exp_semigroup(a, q));
                worst = std::max(worst, norm * std::exp(-omega * re));
                if (theta == 0.0) break;
            }
        }
        per_radius.push_back(worst);
        sup = std::max(sup, worst);
        std::snprintf(buf, sizeof(buf), "growth.radius-%zu", i);
        report.checks.push_back({buf, "growth-bound", "r=" + std::to_string(r),
                                 worst, kInf, true, ms_since(start)});
    }
    bool diverging = false;
    if (per_radius.size() >= 3) {
        const std::size_t last = per_radius.size() - 1;
        diverging = per_radius[last] > 2.0 * per_radius[last - 1] &&
                    per_radius[last - 1] > 2.0 * per_radius[last - 2];
    }
    report.checks.push_back({"growth.sup", "growth-bound", "sweep", sup, kInf,
                             !diverging, 0.0});
    return report;
}

SemigroupReport converse_sectoriality_check(const MatrixOperator& a, double omega,
                                            const std::vector<double>& radii,
                                            double eta_prime, int axis_count,
                                            std::uint64_t seed) {
    if (radii.empty()) throw Error("converse check needs at least one radius");
    if (!(eta_prime >= 0.0) || !(eta_prime < kPi / 2)) {
        throw Error("converse check needs eta_prime in [0, pi/2)");
    }
    const ModuleSpace& space = a.space();
    const std::vector<Element> axes =
        sample_imaginary_sphere(space.algebra, seed, axis_count);
    SemigroupReport report;
    char buf[64];

    // Pseudo-resolvent from the two conjugate resolvents at nonreal samples
    // strictly right of the vertex.
    for (std::size_t i = 0; i < radii.size(); ++i) {
        const auto start = Clock::now();
        const double r = radii[i] / std::sqrt(2.0);
        const Element& axis = axes[i % axes.size()];
        const Element p = Element::scalar(space.algebra, omega + r) + axis * r;
        const Element pc = Element::scalar(space.algebra, omega + r) - axis * r;
        const Eigen::MatrixXd lhs = pseudo_resolvent(a, p);
        const Eigen::MatrixXd rhs =
            (spherical_resolvent(a, pc) - spherical_resolvent(a, p)) *
            left_action_matrix(space, cone_inverse(p - pc));
        const double residual = (lhs - rhs).norm() / std::max(1.0, lhs.norm());
        std::snprintf(buf, sizeof(buf), "converse.q-identity-%zu", i);
        report.checks.push_back({buf, "resolvent-from-pseudo", "p=" + cone_label(p),
                                 residual, 1e-10, residual <= 1e-10, ms_since(start)});
    }

    // K = sup |q - omega| * ||C_q|| over rays past the imaginary axis.
    const double angles[3] = {0.0, 0.5 * (kPi / 2 + eta_prime), kPi / 2 + eta_prime};
    double k_sup = 0.0;
    // Growth constant in the euclidean norm on a dense grid. The half-plane
    // bound is checked in that norm because it is computable exactly, while
    // the module-norm bracket upper edge can be loose on generic operators.
    const Eigen::MatrixXd emb = a.embedding();
    double m_est = 0.0;
    for (int i = 0; i <= 64; ++i) {
        const double t = 0.125 * i;
        m_est = std::max(m_est, spectral_norm(real_matrix_exp(t * emb)) * std::exp(-omega * t));
    }
    for (std::size_t i = 0; i < radii.size(); ++i) {
        const auto start = Clock::now();
        const double r = radii[i];
        double worst = 0.0;
        for (const double theta : angles) {
            const double re = omega + r * std::cos(theta);
            const double s = r * std::sin(theta);
            for (const Element& axis : axes) {
                const Element q = Element::scalar(space.algebra, re) + axis * s;
                const double norm = embedded_norm_upper(space, spherical_resolvent(a, q));
                worst = std::max(worst, r * norm);
                if (theta == 0.0) break;
            }
        }
        k_sup = std::max(k_sup, worst);
        std::snprintf(buf, sizeof(buf), "converse.k-sweep-r%zu", i);
        report.checks.push_back({buf, "resolvent-sector-bound", "r=" + std::to_string(r),
                                 worst, kInf, true, ms_since(start)});

        // Half-plane bound at k = 1 along the real ray, where the Laplace
        // integral gives ||C_q|| <= M / (re q - omega).
        const auto hp_start = Clock::now();
        const Element q = Element::scalar(space.algebra, omega + r);
        const double ratio =
            spectral_norm(spherical_resolvent(a, q)) * r / m_est;
        std::snprintf(buf, sizeof(buf), "converse.halfplane-%zu", i);
        report.checks.push_back({buf, "resolvent-halfplane-bound", "q=" + cone_label(q),
                                 ratio, 1.02, ratio <= 1.02, ms_since(hp_start)});
    }
    report.checks.push_back({"converse.k-sup", "resolvent-sector-bound", "sweep",
                             k_sup, kInf, true, 0.0});
    return report;
}

}  // namespace slicereg
