#include "slicereg/contour.hpp"

#include <cmath>

#include "slicereg/errors.hpp"

namespace slicereg {

namespace {

constexpr double kPi = 3.14159265358979323846;

// 16-point Gauss-Legendre rule on [-1, 1], positive half.
constexpr double kNodes[8] = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
    0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
    0.9445750230732326, 0.9894009349916499};
constexpr double kWeights[8] = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
    0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
    0.0622535239386479, 0.0271524594117541};

Eigen::MatrixXd gauss_panel(const MatrixFn& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    Eigen::MatrixXd sum;
    for (int i = 0; i < 8; ++i) {
        const Eigen::MatrixXd lo = f(mid - kNodes[i] * half);
        const Eigen::MatrixXd hi = f(mid + kNodes[i] * half);
        if (sum.size() == 0) sum = Eigen::MatrixXd::Zero(lo.rows(), lo.cols());
        sum += kWeights[i] * (lo + hi);
    }
    return sum * half;
}

Eigen::MatrixXd panels(const MatrixFn& f, double a, double b, int count) {
    Eigen::MatrixXd sum;
    const double step = (b - a) / count;
    for (int i = 0; i < count; ++i) {
        Eigen::MatrixXd part = gauss_panel(f, a + i * step, a + (i + 1) * step);
        if (sum.size() == 0) {
            sum = std::move(part);
        } else {
            sum += part;
        }
    }
    return sum;
}

}  // namespace

Eigen::MatrixXd panel_integral(const MatrixFn& f, double a, double b,
                               const QuadratureOptions& opt) {
    int count = opt.min_panels < 1 ? 1 : opt.min_panels;
    Eigen::MatrixXd coarse = panels(f, a, b, count);
    for (int pass = 0; pass < opt.max_doublings; ++pass) {
        count *= 2;
        Eigen::MatrixXd fine = panels(f, a, b, count);
        const double diff = (fine - coarse).norm();
        if (diff <= opt.abs_tol * std::max(1.0, fine.norm())) return fine;
        coarse = std::move(fine);
    }
    throw QuadratureError("panel integral did not settle within the doubling cap");
}

Eigen::MatrixXd halfline_integral(const MatrixFn& f, double a,
                                  const QuadratureOptions& opt) {
    if (!(opt.first_block > 0.0) || !(opt.growth > 1.0)) {
        throw Error("half-line blocks need a positive first block and growth > 1");
    }
    Eigen::MatrixXd sum;
    double left = a;
    double width = opt.first_block;
    int small_streak = 0;
    for (int block = 0; block < opt.max_blocks; ++block) {
        const double right = left + width;
        Eigen::MatrixXd part = panel_integral(f, left, right, opt);
        const double size = part.norm();
        if (sum.size() == 0) {
            sum = std::move(part);
        } else {
            sum += part;
        }
        if (size <= opt.tail_tol * std::max(1.0, sum.norm())) {
            if (++small_streak >= 2) return sum;
        } else {
            small_streak = 0;
        }
        left = right;
        width *= opt.growth;
    }
    throw QuadratureError("half-line blocks did not decay below the tail tolerance");
}

namespace {

// Node of the slice line integrand: f(z) * L(phi_axis(dz * 1) * g(z)) with the
// complex path derivative dz folded into the slice factor.
Eigen::MatrixXd slice_node(const ModuleSpace& space, const OperatorFn& f,
                           const SliceValueFn& g, const Element& axis,
                           std::complex<double> z, std::complex<double> dz) {
    const Element factor = slice_point(axis, dz) * g(z);
    return f(z) * left_action_matrix(space, factor);
}

void require_imaginary_unit(const Element& axis) {
    const Element defect = axis * axis + Element::scalar(axis.algebra(), 1.0);
    if (defect.max_abs_coeff() > 1e-10) {
        throw ConeMembershipError("slice axis must square to -1");
    }
}

}  // namespace

Eigen::MatrixXd line_integral(const ModuleSpace& space, const OperatorFn& f,
                              const SliceValueFn& g, const ContourSpec& spec) {
    if (!(spec.radius > 0.0)) throw Error("contour radius must be positive");
    if (!(spec.opening > kPi / 2) || !(spec.opening < kPi)) {
        throw Error("contour opening must lie in (pi/2, pi)");
    }
    require_imaginary_unit(spec.axis);
    const std::complex<double> up(std::cos(spec.opening), std::sin(spec.opening));
    const std::complex<double> down = std::conj(up);

    QuadratureOptions opt;
    opt.abs_tol = spec.tol * 1e-2;
    opt.min_panels = spec.min_panels;
    opt.max_doublings = spec.max_doublings;
    opt.first_block = spec.radius;
    opt.tail_tol = spec.tol * 1e-2;
    opt.max_blocks = spec.max_blocks;

    const MatrixFn on_arc = [&](double theta) {
        const std::complex<double> z =
            spec.vertex + spec.radius * std::complex<double>(std::cos(theta), std::sin(theta));
        const std::complex<double> dz =
            spec.radius * std::complex<double>(-std::sin(theta), std::cos(theta));
        return slice_node(space, f, g, spec.axis, z, dz);
    };
    Eigen::MatrixXd total = panel_integral(on_arc, -spec.opening, spec.opening, opt);

    // The inward ray runs from far away toward the arc, so its contribution
    // carries the opposite sign of the outward radial parameterization.
    const MatrixFn on_down = [&](double rho) {
        return slice_node(space, f, g, spec.axis, spec.vertex + rho * down, -down);
    };
    const MatrixFn on_up = [&](double rho) {
        return slice_node(space, f, g, spec.axis, spec.vertex + rho * up, up);
    };
    if (spec.ray_length > 0.0) {
        if (spec.ray_length <= spec.radius) throw Error("ray truncation is shorter than the arc radius");
        total += panel_integral(on_down, spec.radius, spec.ray_length, opt);
        total += panel_integral(on_up, spec.radius, spec.ray_length, opt);
    } else {
        total += halfline_integral(on_down, spec.radius, opt);
        total += halfline_integral(on_up, spec.radius, opt);
    }
    return total;
}

Eigen::MatrixXd circle_integral(const ModuleSpace& space, const OperatorFn& f,
                                const SliceValueFn& g, const Element& axis,
                                std::complex<double> center, double radius,
                                const QuadratureOptions& opt) {
    if (!(radius > 0.0)) throw Error("circle radius must be positive");
    require_imaginary_unit(axis);
    const MatrixFn node = [&](double theta) {
        const std::complex<double> dir(std::cos(theta), std::sin(theta));
        const std::complex<double> z = center + radius * dir;
        const std::complex<double> dz = radius * std::complex<double>(-dir.imag(), dir.real());
        return slice_node(space, f, g, axis, z, dz);
    };
    return panel_integral(node, -kPi, kPi, opt);
}

}  // namespace slicereg
