#include "slicereg/algebra.hpp"

#include <bit>
#include <map>
#include <mutex>

#include "slicereg/errors.hpp"

namespace slicereg {

namespace {

// Sign accumulated while moving the generators of b into the ascending
// product for a: every transposition past a higher generator of a flips the
// sign, and every generator common to both masks contributes a factor of
// e_k^2 = -1.
int merge_sign(unsigned a, unsigned b) {
    int swaps = 0;
    unsigned t = a >> 1;
    while (t != 0) {
        swaps += std::popcount(t & b);
        t >>= 1;
    }
    swaps += std::popcount(a & b);
    return (swaps & 1) ? -1 : +1;
}

}  // namespace

CliffordAlgebra::CliffordAlgebra(int n) : n_(n), dim_(1 << n) {
    prod_sign_.resize(static_cast<std::size_t>(dim_) * dim_);
    conj_sign_.resize(dim_);
    for (unsigned a = 0; a < static_cast<unsigned>(dim_); ++a) {
        for (unsigned b = 0; b < static_cast<unsigned>(dim_); ++b) {
            prod_sign_[a * dim_ + b] = static_cast<std::int8_t>(merge_sign(a, b));
        }
        const int g = std::popcount(a) % 4;
        conj_sign_[a] = static_cast<std::int8_t>((g == 0 || g == 3) ? +1 : -1);
    }
}

std::shared_ptr<const CliffordAlgebra> CliffordAlgebra::create(int n) {
    if (n < 1 || n > kMaxGenerators) {
        throw SignatureMismatch("generator count must be between 1 and " +
                                std::to_string(kMaxGenerators) + ", got " +
                                std::to_string(n));
    }
    static std::mutex mu;
    static std::map<int, std::shared_ptr<const CliffordAlgebra>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[n];
    if (!slot) slot = std::shared_ptr<const CliffordAlgebra>(new CliffordAlgebra(n));
    return slot;
}

int CliffordAlgebra::grade(unsigned a) const {
    return std::popcount(a & (static_cast<unsigned>(dim_) - 1));
}

std::string CliffordAlgebra::blade_name(unsigned a) const {
    std::string name;
    for (int k = 0; k < n_; ++k) {
        if (a & (1u << k)) name += static_cast<char>('1' + k);
    }
    return name;
}

unsigned CliffordAlgebra::blade_from_name(const std::string& name) const {
    unsigned mask = 0;
    int prev = 0;
    for (const char c : name) {
        if (c < '1' || c > '0' + n_) {
            throw ParseError("blade name \"" + name + "\" has generator out of range for n=" +
                             std::to_string(n_));
        }
        const int k = c - '0';
        if (k <= prev) {
            throw ParseError("blade name \"" + name + "\" must list generators in ascending order");
        }
        prev = k;
        mask |= 1u << (k - 1);
    }
    return mask;
}

}  // namespace slicereg
