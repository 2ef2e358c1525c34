#pragma once

#include <complex>
#include <functional>

#include "slicereg/element.hpp"
#include "slicereg/module_space.hpp"

namespace slicereg {

// Matrix-valued quadrature controls shared by panel, half-line and contour
// integration. Panel refinement doubles the panel count until two successive
// estimates differ by at most abs_tol * max(1, scale of the finer estimate).
struct QuadratureOptions {
    double abs_tol = 1e-10;
    int min_panels = 1;
    int max_doublings = 12;
    // Half-line controls: blocks [a, a+first_block], then geometric growth,
    // stopping once two consecutive blocks fall below tail_tol.
    double first_block = 1.0;
    double growth = 2.0;
    double tail_tol = 1e-12;
    int max_blocks = 48;
};

using MatrixFn = std::function<Eigen::MatrixXd(double)>;

// Gauss-Legendre panels over [a, b] with doubling until the estimates settle.
// Throws QuadratureError at the doubling cap.
Eigen::MatrixXd panel_integral(const MatrixFn& f, double a, double b,
                               const QuadratureOptions& opt = {});

// Integral over [a, infinity) of a decaying integrand, summed block by block
// in a fixed order. Throws QuadratureError if the blocks never decay.
Eigen::MatrixXd halfline_integral(const MatrixFn& f, double a,
                                  const QuadratureOptions& opt = {});

// Sector boundary path in the slice of `axis`, shifted by `vertex`:
// an inward ray at angle -opening, the arc of radius `radius` through the
// positive real direction, and an outward ray at angle +opening. Traversal
// is counterclockwise around the complement of the forward sector. Rays are
// truncated at ray_length when positive, otherwise extended adaptively in
// geometric blocks until the tail falls below the tolerance.
struct ContourSpec {
    Element axis;
    double radius = 1.0;
    double opening = 1.7278759594743864;  // 0.55 * pi
    double vertex = 0.0;
    double ray_length = 0.0;
    int min_panels = 2;
    int max_doublings = 12;
    int max_blocks = 48;
    double tol = 1e-9;
};

// Operator-valued left factor and element-valued right factor of a slice
// line integrand, both evaluated at the slice coordinate z (vertex included).
using OperatorFn = std::function<Eigen::MatrixXd(std::complex<double>)>;
using SliceValueFn = std::function<Element(std::complex<double>)>;

// Line integral over the sector boundary of f(alpha) dalpha g(alpha), with
// the path derivative inserted between the factors as a left multiplication:
// each node contributes f(z) * L(phi_axis(dz) * g(z)). No 2*pi normalization.
Eigen::MatrixXd line_integral(const ModuleSpace& space, const OperatorFn& f,
                              const SliceValueFn& g, const ContourSpec& spec);

// Same integrand over the full circle |z - center| = radius in the slice of
// `axis`, traversed counterclockwise.
Eigen::MatrixXd circle_integral(const ModuleSpace& space, const OperatorFn& f,
                                const SliceValueFn& g, const Element& axis,
                                std::complex<double> center, double radius,
                                const QuadratureOptions& opt = {});

}  // namespace slicereg
