#include "slicereg/stem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "slicereg/rng.hpp"

namespace slicereg {

Element slice_cr_defect(const std::function<Element(const Element&)>& f, const Element& j,
                        double u, double v, double h) {
    const auto at = [&](double uu, double vv) { return f(slice_point(j, {uu, vv})); };
    const double inv = 1.0 / (2.0 * h);
    const Element du = (at(u + h, v) - at(u - h, v)) * inv;
    const Element dv = (at(u, v + h) - at(u, v - h)) * inv;
    return du + dv * j;
}

Element slice_representation_defect(const std::function<Element(const Element&)>& f,
                                    const Element& j, const Element& k, double u, double v) {
    const Element predicted =
        representation_combine(f(slice_point(j, {u, v})), f(slice_point(j, {u, -v})), j, k);
    return f(slice_point(k, {u, v})) - predicted;
}

SliceSampleReport is_right_slice(const std::function<Element(const Element&)>& f,
                                 const AlgebraPtr& algebra, std::uint64_t seed, int axis_count,
                                 int point_count, double h, double tol) {
    const auto axes = sample_imaginary_sphere(algebra, seed, axis_count);
    Rng rng(seed * 31 + 7);

    SliceSampleReport report{true, 0.0, Element::zero(algebra), Element::zero(algebra)};
    const auto consider = [&](const Element& point, const Element& defect) {
        const double scale = std::max(1.0, f(point).clifford_norm());
        const double rel = defect.clifford_norm() / scale;
        if (rel > report.worst_defect) {
            report.worst_defect = rel;
            report.worst_point = point;
            report.worst_defect_value = defect;
        }
    };

    for (int ai = 0; ai < axis_count; ++ai) {
        const Element& j = axes[static_cast<std::size_t>(ai)];
        for (int pi = 0; pi < point_count; ++pi) {
            const double u = rng.uniform(-1.5, 1.5);
            const double v = rng.uniform(0.2, 1.5);
            consider(slice_point(j, {u, v}), slice_cr_defect(f, j, u, v, h));
            if (axis_count > 1) {
                const Element& k = axes[static_cast<std::size_t>((ai + 1) % axis_count)];
                consider(slice_point(k, {u, v}), slice_representation_defect(f, j, k, u, v));
            }
        }
    }
    report.right_slice = report.worst_defect <= tol;
    return report;
}

Element exp_defect_limit(const Element& x, const Element& p, const Element& q) {
    // seven nodes, log-spaced from 1e-1 down to 1e-3
    const int points = 7;
    std::vector<double> ts(points);
    std::vector<Element> g;
    g.reserve(points);
    const Element zero = Element::zero(x.algebra());
    // The 2 / t^2 weight amplifies cancellation noise, so a sample below the
    // rounding floor of the two exponentials it subtracts carries no signal.
    // When every sample sits under that floor the limit is zero to working
    // precision and is returned exactly, instead of extrapolated noise.
    const double eps = std::numeric_limits<double>::epsilon();
    bool any_signal = false;
    for (int k = 0; k < points; ++k) {
        const double t = std::pow(10.0, -1.0 - 2.0 * k / (points - 1));
        ts[static_cast<std::size_t>(k)] = t;
        const ExpStem<Element> shifted(x, p * t, 1e-15);
        const ExpStem<Element> plain(x, zero, 1e-15);
        const Element at_shift = induce(shifted, q * t);
        const Element at_sum = induce(plain, (p + q) * t);
        const Element defect = at_shift - at_sum;
        const double floor =
            256.0 * eps * std::max({1.0, at_shift.euclid_norm(), at_sum.euclid_norm()});
        if (defect.euclid_norm() > floor) any_signal = true;
        g.push_back(defect * (2.0 / (t * t)));
    }
    if (!any_signal) return zero;

    // Neville extrapolation of the polynomial through (t_k, g_k) to t = 0
    for (int m = 1; m < points; ++m) {
        for (int i = 0; i + m < points; ++i) {
            const double ti = ts[static_cast<std::size_t>(i)];
            const double tm = ts[static_cast<std::size_t>(i + m)];
            g[static_cast<std::size_t>(i)] =
                (g[static_cast<std::size_t>(i)] * (-tm) + g[static_cast<std::size_t>(i + 1)] * ti) *
                (1.0 / (ti - tm));
        }
    }
    return g[0];
}

}  // namespace slicereg
