#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "slicereg/contour.hpp"
#include "slicereg/errors.hpp"
#include "slicereg/module_space.hpp"

using namespace slicereg;

namespace {

constexpr double kPi = 3.14159265358979323846;

AlgebraPtr quaternions() { return CliffordAlgebra::create(2); }

Eigen::MatrixXd one_by_one(double v) {
    Eigen::MatrixXd m(1, 1);
    m(0, 0) = v;
    return m;
}

}  // namespace

TEST_CASE("panel integral reproduces smooth one dimensional integrals") {
    const MatrixFn sine = [](double t) { return one_by_one(std::sin(t)); };
    const Eigen::MatrixXd total = panel_integral(sine, 0.0, kPi);
    CHECK(std::abs(total(0, 0) - 2.0) < 1e-13);

    const MatrixFn cubic = [](double t) { return one_by_one(t * t * t); };
    CHECK(std::abs(panel_integral(cubic, 0.0, 1.0)(0, 0) - 0.25) < 1e-14);
}

TEST_CASE("panel integral throws on a jump it cannot settle") {
    const MatrixFn step = [](double t) { return one_by_one(t < 0.31830988618 ? 0.0 : 1.0); };
    QuadratureOptions opt;
    opt.abs_tol = 1e-14;
    opt.max_doublings = 3;
    CHECK_THROWS_AS(panel_integral(step, 0.0, 1.0, opt), QuadratureError);
}

TEST_CASE("half line blocks integrate decaying tails") {
    const MatrixFn decay = [](double t) { return one_by_one(std::exp(-t)); };
    CHECK(std::abs(halfline_integral(decay, 0.0)(0, 0) - 1.0) < 1e-12);

    const MatrixFn oscillating = [](double t) { return one_by_one(std::exp(-t) * std::cos(t)); };
    CHECK(std::abs(halfline_integral(oscillating, 0.0)(0, 0) - 0.5) < 1e-12);
}

TEST_CASE("half line blocks reject integrands that never decay") {
    const MatrixFn slow = [](double t) { return one_by_one(1.0 / (1.0 + t)); };
    QuadratureOptions opt;
    opt.max_blocks = 20;
    CHECK_THROWS_AS(halfline_integral(slow, 0.0, opt), QuadratureError);
}

TEST_CASE("closed circle of the identity weight vanishes") {
    const auto alg = quaternions();
    const ModuleSpace space{alg, 1};
    const Element axis = Element::basis(alg, 0b01);
    const int dim = space.real_dim();

    const OperatorFn f = [&](std::complex<double>) {
        return Eigen::MatrixXd::Identity(dim, dim).eval();
    };
    const SliceValueFn g = [&](std::complex<double> z) { return slice_point(axis, z); };
    const Eigen::MatrixXd loop = circle_integral(space, f, g, axis, {0.3, -0.2}, 1.7);
    CHECK(loop.norm() < 1e-12);
}

TEST_CASE("circle residue picks out enclosed poles only") {
    const auto alg = quaternions();
    const ModuleSpace space{alg, 1};
    const Element axis = Element::basis(alg, 0b01);
    const int dim = space.real_dim();
    const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(dim, dim);

    const auto cauchy = [&](double pole) {
        const OperatorFn f = [&, pole](std::complex<double> z) {
            return left_action_matrix(space, slice_point(axis, 1.0 / (z - pole)));
        };
        const SliceValueFn g = [&](std::complex<double>) {
            return slice_point(axis, std::complex<double>(0.0, -1.0));
        };
        return (circle_integral(space, f, g, axis, {0.0, 0.0}, 1.0) / (2.0 * kPi)).eval();
    };

    CHECK((cauchy(-0.7) - eye).norm() < 1e-10);
    CHECK(cauchy(1.9).norm() < 1e-10);
}

TEST_CASE("sector contour reproduces scalar exponentials of enclosed poles") {
    const auto alg = quaternions();
    const ModuleSpace space{alg, 1};
    const Element axis = Element::basis(alg, 0b01);

    const auto weighted = [&](double pole, double t, const ContourSpec& spec) {
        const OperatorFn f = [&, pole](std::complex<double> z) {
            return left_action_matrix(space, slice_point(axis, 1.0 / (z - pole)));
        };
        const SliceValueFn g = [&, t](std::complex<double> z) {
            return slice_point(axis, std::complex<double>(0.0, -1.0) * std::exp(t * z));
        };
        return (line_integral(space, f, g, spec) / (2.0 * kPi)).eval();
    };

    ContourSpec spec{axis};
    spec.tol = 1e-10;
    const int dim = space.real_dim();
    const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(dim, dim);

    for (const double t : {0.4, 1.0, 2.3}) {
        CHECK((weighted(-0.8, t, spec) - std::exp(-0.8 * t) * eye).norm() < 1e-9);
    }

    // A pole between the arc and the vertex counts as enclosed.
    spec.radius = 2.0;
    CHECK((weighted(0.5, 1.0, spec) - std::exp(0.5) * eye).norm() < 1e-9);

    // A pole in the forward sector beyond the arc is outside the contour.
    spec.radius = 1.0;
    CHECK(weighted(1.5, 1.0, spec).norm() < 1e-9);

    // Shifted vertex: the pole is enclosed relative to the vertex.
    spec.vertex = 0.5;
    CHECK((weighted(0.2, 1.0, spec) - std::exp(0.2) * eye).norm() < 1e-9);
}

TEST_CASE("sector contour agrees across openings and radii") {
    const auto alg = quaternions();
    const ModuleSpace space{alg, 1};
    const Element axis = Element::basis(alg, 0b10);

    const auto weighted = [&](const ContourSpec& spec) {
        const OperatorFn f = [&](std::complex<double> z) {
            return left_action_matrix(space, slice_point(axis, 1.0 / (z + 1.1)));
        };
        const SliceValueFn g = [&](std::complex<double> z) {
            return slice_point(axis, std::complex<double>(0.0, -1.0) * std::exp(0.7 * z));
        };
        return (line_integral(space, f, g, spec) / (2.0 * kPi)).eval();
    };

    ContourSpec base{axis};
    base.tol = 1e-10;
    const Eigen::MatrixXd reference = weighted(base);
    for (const double r : {0.5, 2.0}) {
        for (const double eta : {0.55 * kPi, 0.6 * kPi}) {
            ContourSpec spec{axis};
            spec.tol = 1e-10;
            spec.radius = r;
            spec.opening = eta;
            CHECK((weighted(spec) - reference).norm() < 2.0 * base.tol);
        }
    }
}

TEST_CASE("fixed ray truncation matches the adaptive tail") {
    const auto alg = quaternions();
    const ModuleSpace space{alg, 1};
    const Element axis = Element::basis(alg, 0b01);

    const OperatorFn f = [&](std::complex<double> z) {
        return left_action_matrix(space, slice_point(axis, 1.0 / (z + 0.9)));
    };
    const SliceValueFn g = [&](std::complex<double> z) {
        return slice_point(axis, std::complex<double>(0.0, -1.0) * std::exp(1.5 * z));
    };

    ContourSpec adaptive{axis};
    adaptive.tol = 1e-10;
    ContourSpec truncated = adaptive;
    truncated.ray_length = 150.0;
    const Eigen::MatrixXd a = line_integral(space, f, g, adaptive);
    const Eigen::MatrixXd b = line_integral(space, f, g, truncated);
    CHECK((a - b).norm() < 1e-9);
}

TEST_CASE("contour input validation") {
    const auto alg = quaternions();
    const ModuleSpace space{alg, 1};
    const Element axis = Element::basis(alg, 0b01);
    const OperatorFn f = [&](std::complex<double>) {
        return Eigen::MatrixXd::Identity(space.real_dim(), space.real_dim()).eval();
    };
    const SliceValueFn g = [&](std::complex<double>) {
        return Element::scalar(alg, 1.0);
    };

    ContourSpec bad_radius{axis};
    bad_radius.radius = 0.0;
    CHECK_THROWS_AS(line_integral(space, f, g, bad_radius), Error);

    ContourSpec bad_opening{axis};
    bad_opening.opening = 0.4 * kPi;
    CHECK_THROWS_AS(line_integral(space, f, g, bad_opening), Error);

    ContourSpec bad_axis{Element::scalar(alg, 1.0)};
    CHECK_THROWS_AS(line_integral(space, f, g, bad_axis), ConeMembershipError);

    ContourSpec short_rays{axis};
    short_rays.ray_length = 0.5;
    CHECK_THROWS_AS(line_integral(space, f, g, short_rays), Error);

    CHECK_THROWS_AS(circle_integral(space, f, g, axis, {0.0, 0.0}, -1.0), Error);
}
