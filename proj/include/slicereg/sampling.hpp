#pragma once

#include "slicereg/element.hpp"
#include "slicereg/matrix_operator.hpp"
#include "slicereg/module_space.hpp"
#include "slicereg/rng.hpp"

namespace slicereg {

// Element with independent normal coefficients on every blade.
Element random_element(const AlgebraPtr& algebra, Rng& rng, double scale = 1.0);

// Random unit 1-vector; always lies on the imaginary sphere.
Element random_axis(const AlgebraPtr& algebra, Rng& rng);

// Cone point re + s * axis with a random axis and uniform re, s.
Element random_cone_element(const AlgebraPtr& algebra, Rng& rng, double re_lo, double re_hi,
                            double s_lo, double s_hi);

ModuleVector random_vector(const ModuleSpace& space, Rng& rng, double scale = 1.0);

MatrixOperator random_operator(const ModuleSpace& space, Rng& rng, double scale = 1.0);

// Random operator shifted left so that every spectral sphere (r, s) ends up
// with r + s * tan(delta) <= -margin, i.e. strictly inside the back cone of
// half-opening pi/2 + delta at the origin.
MatrixOperator random_sectorial_operator(const ModuleSpace& space, Rng& rng, double delta,
                                         double margin = 0.1, double scale = 1.0);

}  // namespace slicereg
