#pragma once

#include <cstdint>
#include <tuple>
#include <vector>

#include "casimir/rational.hpp"

namespace casimir {

// Integral weight of affine sl2 in the coordinates (lambda(h1), lambda(c), lambda(d)).
// The map to Z^3 is a bijection on the weight lattice.
struct Weight {
    std::int64_t h1 = 0;     // value on h1
    std::int64_t level = 0;  // value on the canonical central element c
    std::int64_t d = 0;      // value on the degree derivation d

    friend Weight operator+(const Weight& a, const Weight& b) {
        return {a.h1 + b.h1, a.level + b.level, a.d + b.d};
    }
    friend Weight operator-(const Weight& a, const Weight& b) {
        return {a.h1 - b.h1, a.level - b.level, a.d - b.d};
    }
    friend Weight operator-(const Weight& a) { return {-a.h1, -a.level, -a.d}; }
    friend Weight operator*(std::int64_t n, const Weight& a) {
        return {n * a.h1, n * a.level, n * a.d};
    }
    friend bool operator==(const Weight& a, const Weight& b) = default;
    friend auto operator<=>(const Weight& a, const Weight& b) = default;

    // value on h0 = c - h1
    std::int64_t h0() const { return level - h1; }
};

inline constexpr Weight kZeroWeight{0, 0, 0};
inline constexpr Weight kVarpi0{0, 1, 0};
inline constexpr Weight kVarpi1{1, 1, 0};
inline constexpr Weight kDelta{0, 0, 1};
inline constexpr Weight kAlpha0{-2, 0, 1};
inline constexpr Weight kAlpha1{2, 0, 0};
inline constexpr Weight kRho{1, 2, 0};  // varpi0 + varpi1

// n0 varpi0 + n1 varpi1 + m delta and its inverse (n0 = h0, n1 = h1, m = d).
inline Weight weight_from_fundamental(std::int64_t n0, std::int64_t n1, std::int64_t m) {
    return n0 * kVarpi0 + n1 * kVarpi1 + m * kDelta;
}
struct FundamentalCoords {
    std::int64_t n0, n1, m;
};
inline FundamentalCoords fundamental_coords(const Weight& w) { return {w.h0(), w.h1, w.d}; }

// Doubled rho-grade 2(lambda,rho) = h1 + 4d; always an integer.
inline std::int64_t g2(const Weight& w) { return w.h1 + 4 * w.d; }

// W-invariant symmetric bilinear form, (h1,h1)=2, (c,d)=1, rest zero.
Rational pairing(const Weight& a, const Weight& b);

// 2*(a,b), always an integer.
std::int64_t pairing2(const Weight& a, const Weight& b);

// (lambda, lambda + 2 rho): scalar by which the Casimir acts on a highest
// weight module with highest weight lambda.
Rational casimir_eigenvalue(const Weight& lambda);

bool is_dominant(const Weight& w);

// Element r^l t_k of W = (Z/2) |x Z, r the reflection at alpha1.
struct WeylElement {
    int refl = 0;            // 0 or 1
    std::int64_t trans = 0;  // translation index k

    static WeylElement identity() { return {0, 0}; }
    static WeylElement reflection() { return {1, 0}; }
    static WeylElement translation(std::int64_t k) { return {0, k}; }

    friend bool operator==(const WeylElement& a, const WeylElement& b) = default;
};

// Group law: (l1,k1)(l2,k2) = (l1+l2, (-1)^{l2} k1 + k2).
WeylElement compose(const WeylElement& a, const WeylElement& b);
WeylElement inverse(const WeylElement& w);
inline int sign(const WeylElement& w) { return w.refl ? -1 : 1; }

// r: (a,K,m) -> (-a,K,m);  t_k: (a,K,m) -> (a-2kK, K, m+ak-Kk^2).
Weight weyl_apply(const WeylElement& w, const Weight& lambda);

// Unique dominant weight in the orbit W.lambda together with a w mapping
// lambda onto it. Requires level >= 1, or level 0 with h1 = 0.
std::pair<Weight, WeylElement> dominant_representative(const Weight& lambda);

// Positive root of affine sl2: alpha1, n delta - alpha1, n delta, or
// n delta + alpha1 (n >= 1). All root multiplicities are 1 here.
struct PositiveRoot {
    enum class Kind { alpha1, ndelta_minus_alpha1, ndelta, ndelta_plus_alpha1 };
    Kind kind = Kind::alpha1;
    std::int64_t n = 0;  // unused for alpha1

    Weight weight() const;
    std::int64_t g2() const { return casimir::g2(weight()); }
    friend bool operator==(const PositiveRoot& a, const PositiveRoot& b) = default;
};

// All positive roots alpha with 2(alpha,rho) <= g2_bound, boundary inclusive.
std::vector<PositiveRoot> positive_roots_up_to(std::int64_t g2_bound);

}  // namespace casimir
