#include "casimir/weight_lattice.hpp"

#include <stdexcept>

namespace casimir {

Rational pairing(const Weight& a, const Weight& b) {
    Rational r(a.h1 * b.h1, 2);
    r.canonicalize();
    return r + Rational(a.level * b.d + b.level * a.d);
}

std::int64_t pairing2(const Weight& a, const Weight& b) {
    return a.h1 * b.h1 + 2 * (a.level * b.d + b.level * a.d);
}

Rational casimir_eigenvalue(const Weight& lambda) {
    return pairing(lambda, lambda) + Rational(g2(lambda));
}

bool is_dominant(const Weight& w) { return w.h1 >= 0 && w.h0() >= 0; }

WeylElement compose(const WeylElement& a, const WeylElement& b) {
    return {(a.refl + b.refl) % 2, (b.refl ? -a.trans : a.trans) + b.trans};
}

WeylElement inverse(const WeylElement& w) {
    // (l,k)^{-1} = (l, -(-1)^l k)
    return {w.refl, w.refl ? w.trans : -w.trans};
}

Weight weyl_apply(const WeylElement& w, const Weight& lambda) {
    const std::int64_t k = w.trans;
    Weight t{lambda.h1 - 2 * k * lambda.level, lambda.level,
             lambda.d + lambda.h1 * k - lambda.level * k * k};
    if (w.refl) t.h1 = -t.h1;
    return t;
}

std::pair<Weight, WeylElement> dominant_representative(const Weight& lambda) {
    const std::int64_t K = lambda.level;
    if (K < 0 || (K == 0 && lambda.h1 != 0)) {
        throw std::invalid_argument("dominant_representative: orbit has no dominant weight");
    }
    if (K == 0) return {lambda, WeylElement::identity()};

    // a - 2kK sweeps the residue class of a mod 2K; land it in [0, K] or
    // reflect from [-K, 0).
    std::int64_t r = lambda.h1 % (2 * K);
    if (r < 0) r += 2 * K;
    if (r <= K) {
        const std::int64_t k = (lambda.h1 - r) / (2 * K);
        WeylElement w = WeylElement::translation(k);
        return {weyl_apply(w, lambda), w};
    }
    const std::int64_t k = (lambda.h1 - (r - 2 * K)) / (2 * K);
    WeylElement w = compose(WeylElement::reflection(), WeylElement::translation(k));
    return {weyl_apply(w, lambda), w};
}

Weight PositiveRoot::weight() const {
    switch (kind) {
        case Kind::alpha1:
            return kAlpha1;
        case Kind::ndelta_minus_alpha1:
            return n * kDelta - kAlpha1;
        case Kind::ndelta:
            return n * kDelta;
        case Kind::ndelta_plus_alpha1:
            return n * kDelta + kAlpha1;
    }
    throw std::logic_error("unreachable");
}

std::vector<PositiveRoot> positive_roots_up_to(std::int64_t g2_bound) {
    std::vector<PositiveRoot> roots;
    if (g2_bound < 0) return roots;
    using K = PositiveRoot::Kind;
    if (g2(kAlpha1) <= g2_bound) roots.push_back({K::alpha1, 0});
    for (std::int64_t n = 1;; ++n) {
        // grades: 4n-2, 4n, 4n+2
        if (4 * n - 2 > g2_bound) break;
        roots.push_back({K::ndelta_minus_alpha1, n});
        if (4 * n <= g2_bound) roots.push_back({K::ndelta, n});
        if (4 * n + 2 <= g2_bound) roots.push_back({K::ndelta_plus_alpha1, n});
    }
    return roots;
}

}  // namespace casimir
