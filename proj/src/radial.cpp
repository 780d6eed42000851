#include "casimir/radial.hpp"

#include <sstream>
#include <stdexcept>

#include "casimir/characters.hpp"
#include "casimir/theta.hpp"

namespace casimir {

TruncatedSeries apply_pi00(const TruncatedSeries& f) {
    if (f.y_den() != 1 || f.q_den() != 1) {
        throw std::invalid_argument("apply_pi00: integral exponents required");
    }
    TruncatedSeries out = add(laplace_apply(f), mul_scalar(derivative_pairing(kRho, f),
                                                           GaussianRational(2)));
    if (f.empty()) return out;
    if (f.g2_floor() == TruncatedSeries::kNegInf) {
        // the tail annihilates f iff every d_alpha does: that needs level 0
        // and no e^{alpha1} content, in which case the result stays exact
        const bool tail_free =
            f.level() == 0 && derivative_pairing(kAlpha1, f).empty();
        if (tail_free) return out;
        throw std::invalid_argument("apply_pi00: finite window required");
    }
    const std::int64_t span = f.g2_ceil() - f.g2_floor();
    // first-order tail: 2 sum_{alpha} sum_{k>=1} e^{-2 k alpha} d_alpha
    for (const auto& root : positive_roots_up_to(span / 2)) {
        const Weight a = root.weight();
        TruncatedSeries da = derivative_pairing(a, f);
        if (da.empty()) continue;
        for (std::int64_t k = 1; 2 * k * root.g2() <= span; ++k) {
            TruncatedSeries shifted =
                mul(monomial(-2 * k * a, GaussianRational(2)), da);
            shifted.truncate_to(f.g2_floor());
            out = add(out, shifted);
        }
    }
    out.truncate_to(f.g2_floor());
    return out;
}

TruncatedSeries potential_series(const RadialOperatorSpec& spec) {
    const Rational a0 = spec.chi.b0, a1 = spec.chi.b1;
    const Rational b0 = spec.eta.b0, b1 = spec.eta.b1;
    Rational c01 = (a0 - b0) * (a0 - b0);
    Rational c00 = (a0 + b0) * (a0 + b0);
    Rational c11 = (a1 - b1) * (a1 - b1);
    Rational c10 = (a1 + b1) * (a1 + b1);
    if (spec.conjugated) {
        c01 -= 1;
        c00 -= 1;
        c11 -= 1;
        c10 -= 1;
    }
    TruncatedSeries acc(0, spec.g2_floor);
    auto mix = [&](const ThetaChar& c, const Rational& coeff) {
        if (coeff == 0) return;
        Rational half = coeff / (-2);
        acc = add(acc, mul_scalar(wp_series(c, 1, 1, spec.g2_floor), GaussianRational(half)));
    };
    mix({0, 1}, c01);
    mix({0, 0}, c00);
    mix({1, 1}, c11);
    mix({1, 0}, c10);
    return acc;
}

TruncatedSeries apply_radial(const RadialOperatorSpec& spec, const TruncatedSeries& f) {
    if (f.empty()) {
        TruncatedSeries out = f;
        return out;
    }
    const bool trivial_potential = !spec.conjugated && spec.chi.b0 == 0 && spec.eta.b0 == 0 &&
                                   spec.chi.b1 == 0 && spec.eta.b1 == 0;
    if (trivial_potential) return apply_pi00(f);
    if (f.g2_floor() == TruncatedSeries::kNegInf) {
        throw std::invalid_argument("apply_radial: finite window required");
    }
    RadialOperatorSpec pot_spec = spec;
    pot_spec.g2_floor = f.g2_floor() - f.g2_ceil();
    const TruncatedSeries pot = potential_series(pot_spec);
    TruncatedSeries mixed = mul(pot, f);
    mixed.truncate_to(f.g2_floor());
    if (spec.conjugated) {
        TruncatedSeries out = sub(laplace_apply(f), mul_scalar(f, GaussianRational(Rational(1, 2))));
        return add(out, mixed);
    }
    return add(apply_pi00(f), mixed);
}

std::vector<CheckReport> conjugation_identity_check(const Character1D& eta, const Character1D& chi,
                                                    const std::vector<Weight>& test_weights,
                                                    std::int64_t g2_floor, bool perturb) {
    std::vector<CheckReport> reports;
    RadialOperatorSpec unconj{eta, chi, false, g2_floor};
    RadialOperatorSpec conj{eta, chi, true, g2_floor};

    for (const Weight& lambda : test_weights) {
        // margin so that both routes stay guaranteed down to g2_floor
        const std::int64_t build_floor = g2_floor - 6 - 2 * std::abs(g2(lambda));
        const TruncatedSeries dh = denominator_half(build_floor);
        const TruncatedSeries dh_inv = invert(dh);

        TruncatedSeries u = mul(dh_inv, monomial(lambda));
        TruncatedSeries lhs = mul(dh, apply_radial(unconj, u));

        TruncatedSeries e = monomial(lambda);
        e.truncate_to(build_floor + g2(lambda));
        TruncatedSeries rhs = apply_radial(conj, e);
        if (perturb) {
            RadialOperatorSpec bumped = conj;
            bumped.g2_floor = rhs.g2_floor() - g2(lambda);
            TruncatedSeries extra = mul(wp_series({0, 0}, 1, 1, bumped.g2_floor), e);
            rhs = add(rhs, extra);
        }

        lhs.truncate_to(g2_floor);
        rhs.truncate_to(g2_floor);
        CheckReport rep = equal_on_window(lhs, rhs);
        std::ostringstream os;
        os << "conjugation identity at lambda=(" << lambda.h1 << "," << lambda.level << ","
           << lambda.d << "), eta=(" << eta.b0 << "," << eta.b1 << "), chi=(" << chi.b0 << ","
           << chi.b1 << ")";
        rep.name = os.str();
        reports.push_back(std::move(rep));
    }
    return reports;
}

CheckReport v_identity_check(std::int64_t g2_floor, bool drop_cross_terms) {
    // frac_a = tau1(e^{-2a}/(1-e^{-2a})) = sum_{k>=1} e^{-2 k a}
    auto frac = [&](const Weight& a, std::int64_t floor) {
        return tau1_expand(-2 * a, {{2 * a, +1, 1}}, floor);
    };
    const auto roots = positive_roots_up_to(-g2_floor / 2);

    // X = 2 sum_a (a,rho) frac_a + sum_{a,b} (a,b) frac_a frac_b
    //     - sum_a (a,a) e^{-2a}/(1-e^{-2a})^2
    TruncatedSeries x(0, g2_floor);
    for (const auto& ra : roots) {
        const Weight a = ra.weight();
        x = add(x, mul_scalar(frac(a, g2_floor), GaussianRational(2 * pairing(a, kRho))));
        const Rational aa = pairing(a, a);
        if (aa != 0) {
            auto pole2 = tau1_expand(-2 * a, {{2 * a, +1, 2}}, g2_floor);
            x = sub(x, mul_scalar(pole2, GaussianRational(aa)));
        }
    }
    for (const auto& ra : roots) {
        for (const auto& rb : roots) {
            if (drop_cross_terms && !(ra == rb)) continue;
            const Weight a = ra.weight(), b = rb.weight();
            if (-2 * (ra.g2() + rb.g2()) < g2_floor) continue;
            const Rational ab = pairing(a, b);
            if (ab == 0) continue;
            auto prod = mul(frac(a, g2_floor + 2 * rb.g2()), frac(b, g2_floor + 2 * ra.g2()));
            prod.truncate_to(g2_floor);
            x = add(x, mul_scalar(prod, GaussianRational(ab)));
        }
    }

    CheckReport rep = equal_on_window(x, TruncatedSeries(0, g2_floor));
    rep.name = drop_cross_terms ? "v-identity (cross terms dropped)" : "v-identity X == 0";
    return rep;
}

CheckReport denominator_identity_check(std::int64_t g2_floor) {
    auto d2 = denominator2(g2_floor);
    CheckReport rep = equal_on_window(laplace_apply(d2), mul_scalar(d2, GaussianRational(2)));
    rep.name = "Delta deltah_2 = 2 deltah_2";
    return rep;
}

}  // namespace casimir
