#include "casimir/characters.hpp"

#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace casimir {

namespace {

// k-range beyond which both parabolas g2(r^l t_k lambda) sink below `floor`.
std::int64_t orbit_k_bound(const Weight& lambda, std::int64_t floor) {
    const double K = double(lambda.level);
    const double lin = std::abs(4.0 * double(lambda.h1)) + 2.0 * K;
    const double span = double(g2(lambda) - floor) + 8.0;
    return std::int64_t((lin + std::sqrt(lin * lin + 16.0 * K * span)) / (8.0 * K)) + 2;
}

TruncatedSeries product_over_roots(const Weight& lead, int root_scale, std::int64_t g2_floor) {
    // e^{lead} * prod_{alpha in Phi+} (1 - e^{-root_scale * alpha}) on the window
    if (g2_floor == TruncatedSeries::kNegInf) {
        throw std::invalid_argument("denominator products need a finite window");
    }
    TruncatedSeries acc = monomial(lead);
    acc.truncate_to(g2_floor);
    const std::int64_t budget = g2(lead) - g2_floor;
    for (const auto& root : positive_roots_up_to(budget / root_scale)) {
        const Weight a = root.weight();
        TruncatedSeries factor = sub(monomial(kZeroWeight), monomial(-root_scale * a));
        acc = mul(acc, factor);
    }
    return acc;
}

}  // namespace

TruncatedSeries denominator1(std::int64_t g2_floor) {
    return product_over_roots(kRho, 1, g2_floor);
}

TruncatedSeries denominator2(std::int64_t g2_floor) {
    return product_over_roots(2 * kRho, 2, g2_floor);
}

TruncatedSeries denominator_half(std::int64_t g2_floor) {
    if (g2_floor == TruncatedSeries::kNegInf) {
        throw std::invalid_argument("denominator_half: finite window required");
    }
    const std::int64_t inner_floor = g2_floor - g2(kRho);
    TruncatedSeries expo(0, inner_floor);
    for (const auto& root : positive_roots_up_to(-inner_floor / 2)) {
        const Weight a = root.weight();
        for (std::int64_t n = 1; -2 * n * root.g2() >= inner_floor; ++n) {
            Rational c(-1, 2 * n);
            c.canonicalize();
            expo.add_term({-2 * n * a.h1, -2 * n * a.d}, GaussianRational(c));
        }
    }
    expo.normalize();
    return mul(monomial(kRho), exp_series(expo));
}

TruncatedSeries orbit_sum(const Weight& lambda, std::int64_t g2_floor) {
    if (lambda.level < 0) throw std::invalid_argument("orbit_sum: level must be >= 0");
    if (!is_dominant(lambda)) throw std::invalid_argument("orbit_sum: weight must be dominant");
    if (lambda.level == 0) {
        // only Z delta is W-compatible at level 0; the orbit is a point
        TruncatedSeries s = monomial(lambda);
        s.truncate_to(g2_floor);
        return s;
    }
    std::set<Weight> seen;
    TruncatedSeries s(lambda.level, g2_floor);
    const std::int64_t bound = orbit_k_bound(lambda, g2_floor);
    for (std::int64_t k = -bound; k <= bound; ++k) {
        for (int l = 0; l <= 1; ++l) {
            const Weight mu = weyl_apply({l, k}, lambda);
            if (g2(mu) < g2_floor) continue;
            if (seen.insert(mu).second) s.add_term({mu.h1, mu.d}, GaussianRational(1));
        }
    }
    s.normalize();
    s.set_g2_floor(g2_floor);
    return s;
}

TruncatedSeries alternating_orbit_sum(const Weight& lambda, const Weight& shift,
                                      std::int64_t g2_floor) {
    if (lambda.level < 1) throw std::invalid_argument("alternating_orbit_sum: level must be >= 1");
    if (lambda.h1 <= 0 || lambda.h0() <= 0) {
        throw std::invalid_argument("alternating_orbit_sum: weight must be strictly dominant");
    }
    std::set<Weight> seen;
    TruncatedSeries s(lambda.level - shift.level, g2_floor);
    const std::int64_t enum_floor = g2_floor + g2(shift);
    const std::int64_t bound = orbit_k_bound(lambda, enum_floor);
    for (std::int64_t k = -bound; k <= bound; ++k) {
        for (int l = 0; l <= 1; ++l) {
            const Weight mu = weyl_apply({l, k}, lambda);
            if (g2(mu) < enum_floor) continue;
            if (!seen.insert(mu).second) {
                throw std::logic_error("alternating_orbit_sum: nontrivial stabilizer");
            }
            const Weight nu = mu - shift;
            s.add_term({nu.h1, nu.d}, GaussianRational(Rational(l ? -1 : 1)));
        }
    }
    s.normalize();
    s.set_g2_floor(g2_floor);
    return s;
}

TruncatedSeries kac_weyl_character(const Weight& lambda, std::int64_t g2_floor) {
    if (!is_dominant(lambda) || lambda.level < 0) {
        throw std::invalid_argument("kac_weyl_character: weight must be dominant of level >= 0");
    }
    if (lambda.level == 0) {
        // V(m delta) is one-dimensional
        TruncatedSeries s = monomial(lambda);
        s.truncate_to(g2_floor);
        return s;
    }
    const std::int64_t den_floor = g2_floor - g2(lambda) - 2;
    TruncatedSeries den = product_over_roots(kZeroWeight, 1, den_floor);
    TruncatedSeries numer = alternating_orbit_sum(lambda + kRho, kRho, g2_floor);
    return mul(numer, invert(den));
}

CheckReport window_w_invariance(const TruncatedSeries& f, std::int64_t safety,
                                bool signed_variant) {
    CheckReport rep{signed_variant ? "window W-anti-invariance" : "window W-invariance", true, ""};
    if (f.level() < 0) throw std::invalid_argument("window_w_invariance: negative level");
    if (f.level() == 0) {
        throw std::invalid_argument(
            "window_w_invariance: level 0 carries only delta-multiples (trivially invariant)");
    }
    if (f.y_den() != 1 || f.q_den() != 1) {
        throw std::invalid_argument("window_w_invariance: integral exponents required");
    }
    const std::int64_t floor = f.g2_floor();
    if (floor == TruncatedSeries::kNegInf) {
        throw std::invalid_argument("window_w_invariance: finite window required");
    }

    std::set<Weight> dominants;
    for (const auto& [k, c] : f.terms()) {
        dominants.insert(dominant_representative(f.term_weight(k)).first);
    }

    std::size_t checked = 0;
    for (const Weight& d : dominants) {
        if (g2(d) < floor + safety) continue;  // not asserted: orbit may leave the window
        const GaussianRational cd = f.coefficient_at(d);
        // expected orbit coefficients; conflicting signs force 0
        std::map<Weight, int> expected_sign;
        const std::int64_t bound = orbit_k_bound(d, floor);
        for (std::int64_t k = -bound; k <= bound; ++k) {
            for (int l = 0; l <= 1; ++l) {
                const Weight mu = weyl_apply({l, k}, d);
                if (g2(mu) < floor) continue;
                const int s = (signed_variant && l == 1) ? -1 : 1;
                auto [it, fresh] = expected_sign.emplace(mu, s);
                if (!fresh && it->second != s) it->second = 0;
            }
        }
        for (const auto& [mu, s] : expected_sign) {
            const GaussianRational expect =
                s == 0 ? GaussianRational()
                       : (s == 1 ? cd : GaussianRational(Rational(-1)) * cd);
            const GaussianRational actual = f.coefficient_at(mu);
            ++checked;
            if (actual != expect) {
                rep.pass = false;
                std::ostringstream os;
                os << "orbit of (" << d.h1 << "," << d.level << "," << d.d << "): member ("
                   << mu.h1 << "," << mu.level << "," << mu.d << ") has " << actual.str()
                   << ", expected " << expect.str();
                rep.detail = os.str();
                return rep;
            }
        }
    }
    std::ostringstream os;
    os << "checked " << checked << " orbit members across " << dominants.size() << " orbits";
    rep.detail = os.str();
    return rep;
}

TruncatedSeries divide_exact(const TruncatedSeries& f, const TruncatedSeries& g) {
    return mul(f, invert(g));
}

}  // namespace casimir
