#pragma once

#include <Eigen/Dense>
#include <vector>

#include "slicereg/element.hpp"

namespace slicereg {

// The free module A^m over a Clifford algebra A, carrying the norm
// max over components of the Clifford operator norm. Vectors flatten to
// R^(2^n * m) with component u occupying the coefficient block
// [u * 2^n, (u+1) * 2^n).
struct ModuleSpace {
    AlgebraPtr algebra;
    int components = 0;

    int blade_dim() const { return algebra->dim(); }
    int real_dim() const { return algebra->dim() * components; }
};

bool same_space(const ModuleSpace& a, const ModuleSpace& b);
void require_same_space(const ModuleSpace& a, const ModuleSpace& b);

class ModuleVector {
public:
    ModuleVector(ModuleSpace space, std::vector<Element> parts);
    static ModuleVector zero(const ModuleSpace& space);
    static ModuleVector basis(const ModuleSpace& space, int component, unsigned blade = 0);
    static ModuleVector from_flat(const ModuleSpace& space, const Eigen::VectorXd& flat);

    const ModuleSpace& space() const { return space_; }
    int components() const { return space_.components; }
    const Element& part(int u) const { return parts_[static_cast<std::size_t>(u)]; }
    Element& part(int u) { return parts_[static_cast<std::size_t>(u)]; }

    ModuleVector operator+(const ModuleVector& rhs) const;
    ModuleVector operator-(const ModuleVector& rhs) const;
    ModuleVector operator*(double s) const;
    // componentwise q * x_u and x_u * q
    ModuleVector left_scaled(const Element& q) const;
    ModuleVector right_scaled(const Element& q) const;

    // max over components of the Clifford operator norm
    double norm() const;
    double euclid_norm() const;

    Eigen::VectorXd flat() const;

private:
    ModuleSpace space_;
    std::vector<Element> parts_;
};

// Block-diagonal action of a scalar on flattened vectors.
Eigen::MatrixXd left_action_matrix(const ModuleSpace& space, const Element& q);
Eigen::MatrixXd right_action_matrix(const ModuleSpace& space, const Element& q);

}  // namespace slicereg
