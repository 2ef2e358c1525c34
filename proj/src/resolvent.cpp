#include "slicereg/resolvent.hpp"

#include <algorithm>
#include <cmath>

#include "slicereg/errors.hpp"

namespace slicereg {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

struct SliceInvariants {
    double re;
    double norm_sq;
};

SliceInvariants slice_invariants(const Element& q) {
    const ConeParts parts = cone_decompose(q);
    return {parts.re, parts.re * parts.re + parts.s * parts.s};
}

}  // namespace

double min_singular(const Eigen::MatrixXd& m) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& sv = svd.singularValues();
    return sv.size() > 0 ? sv(sv.size() - 1) : 0.0;
}

Eigen::MatrixXd spherical_delta(const MatrixOperator& a, double re, double norm_sq) {
    const Eigen::MatrixXd emb = a.embedding();
    const int d = emb.rows();
    return emb * emb - 2.0 * re * emb + norm_sq * Eigen::MatrixXd::Identity(d, d);
}

Eigen::MatrixXd spherical_delta(const MatrixOperator& a, const Element& q) {
    const auto inv = slice_invariants(q);
    return spherical_delta(a, inv.re, inv.norm_sq);
}

double delta_min_singular(const MatrixOperator& a, double re, double norm_sq) {
    return min_singular(spherical_delta(a, re, norm_sq));
}

double delta_min_singular(const MatrixOperator& a, const Element& q) {
    return min_singular(spherical_delta(a, q));
}

namespace {

Eigen::MatrixXd checked_inverse(const Eigen::MatrixXd& m, double rel_band, const char* what) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double smax = sv(0);
    const double smin = sv(sv.size() - 1);
    if (smax <= 0.0 || smin <= rel_band * smax) {
        if (what[0] == 'p') throw SingularDelta("quadratic pencil is numerically singular");
        throw SingularSystem("one-slice system is numerically singular");
    }
    return svd.matrixV() * sv.cwiseInverse().asDiagonal() * svd.matrixU().transpose();
}

}  // namespace

Eigen::MatrixXd pseudo_resolvent(const MatrixOperator& a, const Element& q, double rel_band) {
    return checked_inverse(spherical_delta(a, q), rel_band, "pencil");
}

Eigen::MatrixXd pseudo_resolvent(const MatrixOperator& a, double re, double norm_sq,
                                 double rel_band) {
    return checked_inverse(spherical_delta(a, re, norm_sq), rel_band, "pencil");
}

Eigen::MatrixXd spherical_resolvent(const MatrixOperator& a, const Element& q, double rel_band) {
    const Eigen::MatrixXd pr = pseudo_resolvent(a, q, rel_band);
    return pr * left_action_matrix(a.space(), q.conj()) - a.embedding() * pr;
}

Eigen::MatrixXd complex_resolvent(const MatrixOperator& a, const Element& j,
                                  std::complex<double> lambda, double rel_band) {
    const Eigen::MatrixXd sys =
        right_action_matrix(a.space(), slice_point(j, lambda)) - a.embedding();
    return checked_inverse(sys, rel_band, "slice");
}

double slice_system_min_singular(const MatrixOperator& a, const Element& j,
                                 std::complex<double> lambda) {
    return min_singular(right_action_matrix(a.space(), slice_point(j, lambda)) - a.embedding());
}

double left_shift_min_singular(const MatrixOperator& a, const Element& q) {
    return min_singular(left_action_matrix(a.space(), q) - a.embedding());
}

std::vector<SpectrumPoint> spherical_spectrum(const MatrixOperator& a, double cluster_tol) {
    Eigen::EigenSolver<Eigen::MatrixXd> solver(a.embedding());
    const auto& values = solver.eigenvalues();
    std::vector<SpectrumPoint> folded;
    folded.reserve(static_cast<std::size_t>(values.size()));
    for (int i = 0; i < values.size(); ++i) {
        folded.push_back({values(i).real(), std::abs(values(i).imag())});
    }
    std::sort(folded.begin(), folded.end(), [](const SpectrumPoint& p, const SpectrumPoint& q) {
        return p.re != q.re ? p.re < q.re : p.s < q.s;
    });
    std::vector<SpectrumPoint> out;
    for (const auto& p : folded) {
        const double scale = std::max(1.0, std::hypot(p.re, p.s));
        if (!out.empty() && std::abs(out.back().re - p.re) <= cluster_tol * scale &&
            std::abs(out.back().s - p.s) <= cluster_tol * scale) {
            continue;
        }
        out.push_back(p);
    }
    return out;
}

RightEigenPair right_eigenpair(const MatrixOperator& a, double re, double s, const Element& axis) {
    const std::complex<double> lambda(re, s);
    // the sphere meets the chosen slice in lambda and conj(lambda); at least
    // one of the two is a slice eigenvalue
    const double at_lambda = slice_system_min_singular(a, axis, lambda);
    const double at_conj = slice_system_min_singular(a, axis, std::conj(lambda));
    const std::complex<double> chosen = at_lambda <= at_conj ? lambda : std::conj(lambda);

    const Eigen::MatrixXd sys =
        right_action_matrix(a.space(), slice_point(axis, chosen)) - a.embedding();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(sys, Eigen::ComputeThinV);
    const Eigen::VectorXd kernel = svd.matrixV().col(sys.cols() - 1);

    RightEigenPair pair{slice_point(axis, chosen), ModuleVector::from_flat(a.space(), kernel), 0.0};
    const ModuleVector lhs = a.apply(pair.x);
    const ModuleVector rhs = pair.x.right_scaled(pair.lambda);
    pair.residual = (lhs - rhs).euclid_norm() / std::max(1e-300, pair.x.euclid_norm());
    return pair;
}

ResolventFactorization verify_resolvent_factorization(const MatrixOperator& a, const Element& j,
                                                      std::complex<double> lambda, double band) {
    ResolventFactorization out;
    const Eigen::MatrixXd delta = spherical_delta(a, slice_point(j, lambda));
    const double delta_scale = std::max(1.0, spectral_norm(delta));
    out.q_regular = min_singular(delta) > band * delta_scale;
    out.lambda_regular = slice_system_min_singular(a, j, lambda) > band;
    out.conj_regular = slice_system_min_singular(a, j, std::conj(lambda)) > band;
    out.membership_equivalent = out.q_regular == (out.lambda_regular && out.conj_regular);
    if (out.q_regular && out.lambda_regular && out.conj_regular) {
        const Eigen::MatrixXd pr = pseudo_resolvent(a, slice_point(j, lambda));
        const Eigen::MatrixXd factored =
            complex_resolvent(a, j, std::conj(lambda)) * complex_resolvent(a, j, lambda);
        out.residual = (pr - factored).norm() / std::max(1e-300, pr.norm());
    }
    return out;
}

double vertex_shift_residual(const MatrixOperator& a, double omega, const Element& q) {
    const MatrixOperator shifted = a.minus_real(omega);
    Element q_plus = q;
    q_plus.set_coeff(0, q.scalar_coeff() + omega);

    const Eigen::MatrixXd delta_lhs = spherical_delta(shifted, q);
    const Eigen::MatrixXd delta_rhs = spherical_delta(a, q_plus);
    const double delta_res =
        (delta_lhs - delta_rhs).norm() / std::max(1.0, delta_rhs.norm());

    const Eigen::MatrixXd c_lhs = spherical_resolvent(shifted, q);
    const Eigen::MatrixXd c_rhs = spherical_resolvent(a, q_plus);
    const double c_res = (c_lhs - c_rhs).norm() / std::max(1e-300, c_rhs.norm());
    return std::max(delta_res, c_res);
}

double embedded_norm_upper(const ModuleSpace& space, const Eigen::MatrixXd& emb) {
    const MatrixOperator op = MatrixOperator::from_embedding(space, emb, 1e-7);
    double row_sum = 0.0;
    for (int u = 0; u < space.components; ++u) {
        double row = 0.0;
        for (int v = 0; v < space.components; ++v) row += op.entry(u, v).clifford_norm();
        row_sum = std::max(row_sum, row);
    }
    const double equivalence = std::sqrt(static_cast<double>(space.real_dim()));
    return std::min(row_sum, equivalence * spectral_norm(emb));
}

SectorProbe sectorial_probe(const MatrixOperator& a, double omega, double delta,
                            const SectorProbeOptions& opts) {
    if (delta <= 0.0 || delta >= kPi / 2) {
        throw Error("sector half-opening must satisfy 0 < delta < pi/2");
    }
    SectorProbe probe;
    probe.sectorial = true;

    // ray probes sample the pencil on a discrete grid and can straddle an
    // eigensphere, so membership of the whole spectrum is checked directly
    probe.spectrum_in_sector = true;
    for (const SpectrumPoint& pt : spherical_spectrum(a)) {
        const double angle = std::atan2(pt.s, pt.re - omega);
        if (angle <= kPi / 2 + delta) probe.spectrum_in_sector = false;
    }
    if (!probe.spectrum_in_sector) probe.sectorial = false;

    const auto axes = sample_imaginary_sphere(a.space().algebra, opts.seed, opts.axis_count);
    const double probe_angle = kPi / 2 + delta - opts.slack;
    const double log_min = std::log(opts.radius_min);
    const double log_max = std::log(opts.radius_max);

    const auto probe_point = [&](double angle, double rho, const Element& axis,
                                 bool record) -> bool {
        const std::complex<double> z = omega + rho * std::exp(std::complex<double>(0.0, angle));
        const Element q = slice_point(axis, z);
        const Eigen::MatrixXd pencil = spherical_delta(a, q);
        const double rel_min = min_singular(pencil) / std::max(1e-300, spectral_norm(pencil));
        const bool regular = rel_min > opts.singular_band;
        if (record) {
            SectorProbeRow row;
            row.re = z.real();
            row.s = std::abs(z.imag());
            row.min_singular = rel_min;
            row.regular = regular;
            if (regular) {
                const Eigen::MatrixXd res = spherical_resolvent(a, q);
                row.resolvent_norm = embedded_norm_upper(a.space(), res);
                row.k_product = rho * row.resolvent_norm;
                probe.k_estimate = std::max(probe.k_estimate, row.k_product);
            }
            probe.rows.push_back(row);
        }
        return regular;
    };

    const double angles[3] = {0.0, probe_angle, -probe_angle};
    for (const double angle : angles) {
        for (int ri = 0; ri < opts.radius_count; ++ri) {
            const double f = opts.radius_count == 1
                                 ? 0.0
                                 : static_cast<double>(ri) / (opts.radius_count - 1);
            const double rho = std::exp(log_min + f * (log_max - log_min));
            for (const Element& axis : axes) {
                if (!probe_point(angle, rho, axis, true)) probe.sectorial = false;
            }
        }
    }

    // coarse sweep for the largest opening at which every probe stays regular
    const int angle_steps = 40;
    for (int k = 1; k <= angle_steps; ++k) {
        const double angle = kPi * k / (angle_steps + 1);
        bool pass = true;
        for (int ri = 0; ri < opts.radius_count && pass; ri += 2) {
            const double f = opts.radius_count == 1
                                 ? 0.0
                                 : static_cast<double>(ri) / (opts.radius_count - 1);
            const double rho = std::exp(log_min + f * (log_max - log_min));
            pass = probe_point(angle, rho, axes[0], false) &&
                   probe_point(-angle, rho, axes[0], false);
        }
        if (pass) {
            probe.largest_pass_angle = angle;
        } else {
            break;
        }
    }
    return probe;
}

}  // namespace slicereg
