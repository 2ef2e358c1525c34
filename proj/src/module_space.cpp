#include "slicereg/module_space.hpp"

#include <algorithm>

#include "slicereg/errors.hpp"

namespace slicereg {

bool same_space(const ModuleSpace& a, const ModuleSpace& b) {
    return a.algebra->generators() == b.algebra->generators() && a.components == b.components;
}

void require_same_space(const ModuleSpace& a, const ModuleSpace& b) {
    if (!same_space(a, b)) {
        throw DimensionMismatch("operands live in different module spaces");
    }
}

ModuleVector::ModuleVector(ModuleSpace space, std::vector<Element> parts)
    : space_(std::move(space)), parts_(std::move(parts)) {
    if (static_cast<int>(parts_.size()) != space_.components) {
        throw DimensionMismatch("component count does not match the module space");
    }
    for (const Element& p : parts_) {
        if (p.algebra()->generators() != space_.algebra->generators()) {
            throw SignatureMismatch("component algebra does not match the module space");
        }
    }
}

ModuleVector ModuleVector::zero(const ModuleSpace& space) {
    return ModuleVector(space, std::vector<Element>(static_cast<std::size_t>(space.components),
                                                    Element::zero(space.algebra)));
}

ModuleVector ModuleVector::basis(const ModuleSpace& space, int component, unsigned blade) {
    ModuleVector x = zero(space);
    x.part(component) = Element::basis(space.algebra, blade);
    return x;
}

ModuleVector ModuleVector::from_flat(const ModuleSpace& space, const Eigen::VectorXd& flat) {
    if (flat.size() != space.real_dim()) {
        throw DimensionMismatch("flattened vector does not match the module space");
    }
    std::vector<Element> parts;
    parts.reserve(static_cast<std::size_t>(space.components));
    const int d = space.blade_dim();
    for (int u = 0; u < space.components; ++u) {
        parts.push_back(Element::from_coeff_vector(space.algebra, flat.segment(u * d, d)));
    }
    return ModuleVector(space, std::move(parts));
}

ModuleVector ModuleVector::operator+(const ModuleVector& rhs) const {
    require_same_space(space_, rhs.space_);
    std::vector<Element> parts;
    parts.reserve(parts_.size());
    for (std::size_t u = 0; u < parts_.size(); ++u) parts.push_back(parts_[u] + rhs.parts_[u]);
    return ModuleVector(space_, std::move(parts));
}

ModuleVector ModuleVector::operator-(const ModuleVector& rhs) const {
    require_same_space(space_, rhs.space_);
    std::vector<Element> parts;
    parts.reserve(parts_.size());
    for (std::size_t u = 0; u < parts_.size(); ++u) parts.push_back(parts_[u] - rhs.parts_[u]);
    return ModuleVector(space_, std::move(parts));
}

ModuleVector ModuleVector::operator*(double s) const {
    std::vector<Element> parts;
    parts.reserve(parts_.size());
    for (const Element& p : parts_) parts.push_back(p * s);
    return ModuleVector(space_, std::move(parts));
}

ModuleVector ModuleVector::left_scaled(const Element& q) const {
    std::vector<Element> parts;
    parts.reserve(parts_.size());
    for (const Element& p : parts_) parts.push_back(q * p);
    return ModuleVector(space_, std::move(parts));
}

ModuleVector ModuleVector::right_scaled(const Element& q) const {
    std::vector<Element> parts;
    parts.reserve(parts_.size());
    for (const Element& p : parts_) parts.push_back(p * q);
    return ModuleVector(space_, std::move(parts));
}

double ModuleVector::norm() const {
    double m = 0.0;
    for (const Element& p : parts_) m = std::max(m, p.clifford_norm());
    return m;
}

double ModuleVector::euclid_norm() const {
    double s = 0.0;
    for (const Element& p : parts_) {
        const double n = p.euclid_norm();
        s += n * n;
    }
    return std::sqrt(s);
}

Eigen::VectorXd ModuleVector::flat() const {
    Eigen::VectorXd v(space_.real_dim());
    const int d = space_.blade_dim();
    for (int u = 0; u < space_.components; ++u) {
        v.segment(u * d, d) = parts_[static_cast<std::size_t>(u)].coeff_vector();
    }
    return v;
}

namespace {

Eigen::MatrixXd block_diagonal(const ModuleSpace& space, const Eigen::MatrixXd& block) {
    const int d = space.blade_dim();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(space.real_dim(), space.real_dim());
    for (int u = 0; u < space.components; ++u) {
        m.block(u * d, u * d, d, d) = block;
    }
    return m;
}

}  // namespace

Eigen::MatrixXd left_action_matrix(const ModuleSpace& space, const Element& q) {
    return block_diagonal(space, q.left_matrix());
}

Eigen::MatrixXd right_action_matrix(const ModuleSpace& space, const Element& q) {
    return block_diagonal(space, q.right_matrix());
}

}  // namespace slicereg
