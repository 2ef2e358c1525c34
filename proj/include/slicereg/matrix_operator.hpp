#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "slicereg/module_space.hpp"

namespace slicereg {

// A right-linear operator on A^m presented as an m x m matrix of algebra
// elements acting by entrywise left multiplication:
// (A x)_u = sum_v a_uv * x_v, so A(x q) = (A x) q for every scalar q.
class MatrixOperator {
public:
    static MatrixOperator zero(const ModuleSpace& space);
    static MatrixOperator identity(const ModuleSpace& space);
    static MatrixOperator from_entries(const ModuleSpace& space,
                                       const std::vector<std::vector<Element>>& rows);
    // Reconstructs entries from a real embedding matrix; throws NotRightLinear
    // if the matrix does not commute with right scalar multiplication.
    static MatrixOperator from_embedding(const ModuleSpace& space, const Eigen::MatrixXd& emb,
                                         double tol = 1e-9);

    const ModuleSpace& space() const { return space_; }
    int components() const { return space_.components; }
    const Element& entry(int u, int v) const;
    void set_entry(int u, int v, const Element& value);

    ModuleVector apply(const ModuleVector& x) const;

    MatrixOperator operator+(const MatrixOperator& rhs) const;
    MatrixOperator operator-(const MatrixOperator& rhs) const;
    MatrixOperator operator*(const MatrixOperator& rhs) const;  // composition
    MatrixOperator operator*(double s) const;
    // (q A)(x) = q * A(x): multiplies every entry by q on the left.
    MatrixOperator scalar_left(const Element& q) const;
    // (A q)(x) = A(q * x): multiplies every entry by q on the right.
    MatrixOperator scalar_right(const Element& q) const;
    // A - omega * Id for real omega (vertex shifts).
    MatrixOperator minus_real(double omega) const;

    // Real embedding on flattened vectors: block (u, v) is the left
    // multiplication matrix of entry (u, v).
    Eigen::MatrixXd embedding() const;

private:
    MatrixOperator(ModuleSpace space, std::vector<Element> entries);

    ModuleSpace space_;
    std::vector<Element> entries_;  // row-major m x m
};

// Certified bracket for the operator norm induced by the module norm
// (max over components of the Clifford norm). upper comes from the max row
// sum of entry Clifford norms and from the embedding spectral norm scaled by
// the norm-equivalence constant; lower from randomized vectors refined by
// power iteration. The true norm lies inside [lower, upper].
struct NormBracket {
    double lower = 0.0;
    double upper = 0.0;
    double mid() const { return 0.5 * (lower + upper); }
    double width() const { return upper - lower; }
};

NormBracket op_norm(const MatrixOperator& a, std::uint64_t seed = 1, int samples = 48);

// Largest singular value.
double spectral_norm(const Eigen::MatrixXd& m);

}  // namespace slicereg
