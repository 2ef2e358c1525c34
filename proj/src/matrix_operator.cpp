#include "slicereg/matrix_operator.hpp"

#include <algorithm>
#include <cmath>

#include "slicereg/errors.hpp"
#include "slicereg/rng.hpp"

namespace slicereg {

MatrixOperator::MatrixOperator(ModuleSpace space, std::vector<Element> entries)
    : space_(std::move(space)), entries_(std::move(entries)) {}

MatrixOperator MatrixOperator::zero(const ModuleSpace& space) {
    const auto count = static_cast<std::size_t>(space.components) *
                       static_cast<std::size_t>(space.components);
    return MatrixOperator(space, std::vector<Element>(count, Element::zero(space.algebra)));
}

MatrixOperator MatrixOperator::identity(const ModuleSpace& space) {
    MatrixOperator a = zero(space);
    for (int u = 0; u < space.components; ++u) {
        a.set_entry(u, u, Element::scalar(space.algebra, 1.0));
    }
    return a;
}

MatrixOperator MatrixOperator::from_entries(const ModuleSpace& space,
                                            const std::vector<std::vector<Element>>& rows) {
    if (static_cast<int>(rows.size()) != space.components) {
        throw DimensionMismatch("row count does not match the module space");
    }
    MatrixOperator a = zero(space);
    for (int u = 0; u < space.components; ++u) {
        if (static_cast<int>(rows[static_cast<std::size_t>(u)].size()) != space.components) {
            throw DimensionMismatch("column count does not match the module space");
        }
        for (int v = 0; v < space.components; ++v) {
            a.set_entry(u, v, rows[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)]);
        }
    }
    return a;
}

MatrixOperator MatrixOperator::from_embedding(const ModuleSpace& space,
                                              const Eigen::MatrixXd& emb, double tol) {
    if (emb.rows() != space.real_dim() || emb.cols() != space.real_dim()) {
        throw DimensionMismatch("embedding size does not match the module space");
    }
    MatrixOperator a = zero(space);
    const int d = space.blade_dim();
    // column of the basis vector (component v, scalar blade) holds the
    // entries a_uv stacked by component
    for (int v = 0; v < space.components; ++v) {
        const Eigen::VectorXd col = emb.col(v * d);
        for (int u = 0; u < space.components; ++u) {
            a.set_entry(u, v, Element::from_coeff_vector(space.algebra, col.segment(u * d, d)));
        }
    }
    const double scale = std::max(1.0, emb.norm());
    if ((a.embedding() - emb).norm() > tol * scale) {
        throw NotRightLinear("embedding does not commute with right scalar multiplication");
    }
    return a;
}

const Element& MatrixOperator::entry(int u, int v) const {
    return entries_[static_cast<std::size_t>(u * space_.components + v)];
}

void MatrixOperator::set_entry(int u, int v, const Element& value) {
    if (value.algebra()->generators() != space_.algebra->generators()) {
        throw SignatureMismatch("entry algebra does not match the module space");
    }
    entries_[static_cast<std::size_t>(u * space_.components + v)] = value;
}

ModuleVector MatrixOperator::apply(const ModuleVector& x) const {
    require_same_space(space_, x.space());
    ModuleVector y = ModuleVector::zero(space_);
    for (int u = 0; u < space_.components; ++u) {
        Element acc = Element::zero(space_.algebra);
        for (int v = 0; v < space_.components; ++v) {
            acc += entry(u, v) * x.part(v);
        }
        y.part(u) = acc;
    }
    return y;
}

MatrixOperator MatrixOperator::operator+(const MatrixOperator& rhs) const {
    require_same_space(space_, rhs.space_);
    MatrixOperator out = *this;
    for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] += rhs.entries_[i];
    return out;
}

MatrixOperator MatrixOperator::operator-(const MatrixOperator& rhs) const {
    require_same_space(space_, rhs.space_);
    MatrixOperator out = *this;
    for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] -= rhs.entries_[i];
    return out;
}

MatrixOperator MatrixOperator::operator*(const MatrixOperator& rhs) const {
    require_same_space(space_, rhs.space_);
    const int m = space_.components;
    MatrixOperator out = zero(space_);
    for (int u = 0; u < m; ++u) {
        for (int v = 0; v < m; ++v) {
            Element acc = Element::zero(space_.algebra);
            for (int w = 0; w < m; ++w) acc += entry(u, w) * rhs.entry(w, v);
            out.set_entry(u, v, acc);
        }
    }
    return out;
}

MatrixOperator MatrixOperator::operator*(double s) const {
    MatrixOperator out = *this;
    for (Element& e : out.entries_) e = e * s;
    return out;
}

MatrixOperator MatrixOperator::scalar_left(const Element& q) const {
    MatrixOperator out = *this;
    for (Element& e : out.entries_) e = q * e;
    return out;
}

MatrixOperator MatrixOperator::scalar_right(const Element& q) const {
    MatrixOperator out = *this;
    for (Element& e : out.entries_) e = e * q;
    return out;
}

MatrixOperator MatrixOperator::minus_real(double omega) const {
    MatrixOperator out = *this;
    for (int u = 0; u < space_.components; ++u) {
        Element e = out.entry(u, u);
        e.set_coeff(0, e.scalar_coeff() - omega);
        out.set_entry(u, u, e);
    }
    return out;
}

Eigen::MatrixXd MatrixOperator::embedding() const {
    const int d = space_.blade_dim();
    const int m = space_.components;
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(space_.real_dim(), space_.real_dim());
    for (int u = 0; u < m; ++u) {
        for (int v = 0; v < m; ++v) {
            out.block(u * d, v * d, d, d) = entry(u, v).left_matrix();
        }
    }
    return out;
}

double spectral_norm(const Eigen::MatrixXd& m) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    return svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
}

NormBracket op_norm(const MatrixOperator& a, std::uint64_t seed, int samples) {
    const ModuleSpace& space = a.space();
    const int m = space.components;

    double row_sum_bound = 0.0;
    for (int u = 0; u < m; ++u) {
        double row = 0.0;
        for (int v = 0; v < m; ++v) row += a.entry(u, v).clifford_norm();
        row_sum_bound = std::max(row_sum_bound, row);
    }

    const Eigen::MatrixXd emb = a.embedding();
    const double sigma = spectral_norm(emb);
    const double equivalence = std::sqrt(static_cast<double>(space.real_dim()));

    NormBracket bracket;
    bracket.upper = std::min(row_sum_bound, equivalence * sigma);
    bracket.lower = sigma / equivalence;

    Rng rng(seed);
    const auto ratio_at = [&](const ModuleVector& x) {
        const double nx = x.norm();
        if (nx < 1e-300) return 0.0;
        return a.apply(x).norm() / nx;
    };
    // random probes plus a short power iteration on the flattened euclidean
    // problem, scoring each iterate in the module norm
    for (int trial = 0; trial < samples; ++trial) {
        Eigen::VectorXd v(space.real_dim());
        for (int i = 0; i < v.size(); ++i) v[i] = rng.normal();
        for (int it = 0; it < 8; ++it) {
            bracket.lower = std::max(bracket.lower, ratio_at(ModuleVector::from_flat(space, v)));
            v = emb.transpose() * (emb * v);
            const double n = v.norm();
            if (n < 1e-300) break;
            v /= n;
        }
    }
    bracket.lower = std::min(bracket.lower, bracket.upper);
    return bracket;
}

}  // namespace slicereg
