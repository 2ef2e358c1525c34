#include "slicereg/sampling.hpp"

#include <cmath>
#include <vector>

#include "slicereg/resolvent.hpp"

namespace slicereg {

Element random_element(const AlgebraPtr& algebra, Rng& rng, double scale) {
    Element out = Element::zero(algebra);
    for (int k = 0; k < algebra->dim(); ++k) out.set_coeff(static_cast<unsigned>(k), scale * rng.normal());
    return out;
}

Element random_axis(const AlgebraPtr& algebra, Rng& rng) {
    const int n = algebra->generators();
    std::vector<double> v(static_cast<std::size_t>(n));
    double norm_sq = 0.0;
    do {
        norm_sq = 0.0;
        for (int k = 0; k < n; ++k) {
            v[static_cast<std::size_t>(k)] = rng.normal();
            norm_sq += v[static_cast<std::size_t>(k)] * v[static_cast<std::size_t>(k)];
        }
    } while (norm_sq < 1e-12);
    const double inv = 1.0 / std::sqrt(norm_sq);
    Element out = Element::zero(algebra);
    for (int k = 0; k < n; ++k) out.set_coeff(1 << k, inv * v[static_cast<std::size_t>(k)]);
    return out;
}

Element random_cone_element(const AlgebraPtr& algebra, Rng& rng, double re_lo, double re_hi,
                            double s_lo, double s_hi) {
    const Element axis = random_axis(algebra, rng);
    const double re = rng.uniform(re_lo, re_hi);
    const double s = rng.uniform(s_lo, s_hi);
    return Element::scalar(algebra, re) + axis * s;
}

ModuleVector random_vector(const ModuleSpace& space, Rng& rng, double scale) {
    std::vector<Element> parts;
    parts.reserve(static_cast<std::size_t>(space.components));
    for (int u = 0; u < space.components; ++u) parts.push_back(random_element(space.algebra, rng, scale));
    return ModuleVector(space, std::move(parts));
}

MatrixOperator random_operator(const ModuleSpace& space, Rng& rng, double scale) {
    MatrixOperator op = MatrixOperator::zero(space);
    for (int u = 0; u < space.components; ++u) {
        for (int v = 0; v < space.components; ++v) {
            op.set_entry(u, v, random_element(space.algebra, rng, scale));
        }
    }
    return op;
}

MatrixOperator random_sectorial_operator(const ModuleSpace& space, Rng& rng, double delta,
                                         double margin, double scale) {
    const MatrixOperator base = random_operator(space, rng, scale);
    const double slope = std::tan(delta);
    double shift = 0.0;
    for (const SpectrumPoint& pt : spherical_spectrum(base)) {
        shift = std::max(shift, pt.re + pt.s * slope);
    }
    return base.minus_real(shift + margin);
}

}  // namespace slicereg
