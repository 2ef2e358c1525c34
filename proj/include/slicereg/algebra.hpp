#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace slicereg {

inline constexpr int kMaxGenerators = 6;

// Real Clifford algebra with n generators e_1..e_n, each squaring to -1 and
// pairwise anticommuting. Basis blades e_K are indexed by bitmasks over the
// generators (bit k-1 set <=> generator k present), so blade 0 is the scalar
// unit and blade (1<<n)-1 is the top element. n = 1 gives the complex
// numbers, n = 2 the quaternions.
class CliffordAlgebra {
public:
    static std::shared_ptr<const CliffordAlgebra> create(int n);

    int generators() const { return n_; }
    int dim() const { return dim_; }

    // e_a e_b = product_sign(a, b) * e_{a XOR b}
    double product_sign(unsigned a, unsigned b) const {
        return static_cast<double>(prod_sign_[a * dim_ + b]);
    }

    // Clifford conjugation maps e_a to conj_sign(a) * e_a. Blades of grade
    // 0 or 3 mod 4 are fixed, grades 1 and 2 mod 4 change sign.
    double conj_sign(unsigned a) const {
        return static_cast<double>(conj_sign_[a]);
    }

    // e_a * e_a, always +1 or -1.
    double blade_square(unsigned a) const { return product_sign(a, a); }

    int grade(unsigned a) const;

    // "" for the scalar blade, otherwise ascending generator digits: "1",
    // "12", "123", ...
    std::string blade_name(unsigned a) const;

    // Inverse of blade_name; throws ParseError on malformed or out-of-range
    // names (repeated or descending digits, generator index > n).
    unsigned blade_from_name(const std::string& name) const;

private:
    explicit CliffordAlgebra(int n);

    int n_;
    int dim_;
    std::vector<std::int8_t> prod_sign_;
    std::vector<std::int8_t> conj_sign_;
};

using AlgebraPtr = std::shared_ptr<const CliffordAlgebra>;

}  // namespace slicereg
