#include <random>

#include "casimir/characters.hpp"
#include "casimir/radial.hpp"
#include "casimir/theta.hpp"
#include "doctest.h"

using namespace casimir;

namespace {
GaussianRational gr(long n, long d = 1) {
    Rational r(n, d);
    r.canonicalize();
    return GaussianRational(r);
}
const Character1D chi00 = Character1D::of(0, 0);
const Character1D chi11 = Character1D::of(1, 1);
const Character1D chi20 = Character1D::of(2, 0);
const Character1D chi13 = Character1D::of(1, 3);
}  // namespace

TEST_CASE("pi00: diagonal actions") {
    CHECK(apply_pi00(monomial(kZeroWeight)).empty());
    for (std::int64_t n = 1; n <= 4; ++n) {
        auto out = apply_pi00(monomial(n * kDelta));
        CHECK(out.exact());
        CHECK(out.coefficient_at(n * kDelta) == gr(4 * n));
        CHECK(out.term_count() == 1);
    }
}

TEST_CASE("pi00 on e^{alpha1}") {
    TruncatedSeries f = monomial(kAlpha1);
    f.truncate_to(-14);
    auto out = apply_pi00(f);
    // diagonal: (a1,a1) + 2(rho,a1) = 2 + 2
    CHECK(out.coefficient_at(kAlpha1) == gr(4));
    // alpha = alpha1, k = 1 lands on e^{-alpha1} with 2(alpha1, alpha1) = 4
    CHECK(out.coefficient_at(-kAlpha1) == gr(4));
    // alpha = alpha1, k = 2 lands on e^{-3 alpha1}
    CHECK(out.coefficient_at(-3 * kAlpha1) == gr(4));
    // alpha = delta - alpha1 contributes 2(delta-alpha1, alpha1) = -4 at e^{3a1-2d}
    CHECK(out.coefficient_at(kAlpha1 - 2 * (kDelta - kAlpha1)) == gr(-4));
    // level grading preserved
    CHECK(out.level() == 0);
}

TEST_CASE("potential coefficient table") {
    RadialOperatorSpec zero{chi00, chi00, false, -20};
    CHECK(potential_series(zero).empty());

    // conjugated trivial characters: +(1/2)(P01 + P00 + P11 + P10)
    RadialOperatorSpec conj0{chi00, chi00, true, -20};
    auto pot = potential_series(conj0);
    TruncatedSeries expect(0, -20);
    for (int i = 0; i <= 1; ++i) {
        for (int j = 0; j <= 1; ++j) {
            expect = add(expect, mul_scalar(wp_series({i, j}, 1, 1, -20), gr(1, 2)));
        }
    }
    CHECK(equal_on_window(pot, expect).pass);

    // eta = chi = chi_{1,1} unconjugated: -2 P00 - 2 P10
    RadialOperatorSpec s11{chi11, chi11, false, -20};
    auto pot11 = potential_series(s11);
    auto expect11 = add(mul_scalar(wp_series({0, 0}, 1, 1, -20), gr(-2)),
                        mul_scalar(wp_series({1, 0}, 1, 1, -20), gr(-2)));
    CHECK(equal_on_window(pot11, expect11).pass);
}

TEST_CASE("radial operator basics") {
    RadialOperatorSpec s{chi00, chi00, false, -16};
    CHECK(apply_radial(s, TruncatedSeries(0, -16)).empty());
    for (std::int64_t n = 1; n <= 3; ++n) {
        auto out = apply_radial(s, monomial(n * kDelta));
        CHECK(out.coefficient_at(n * kDelta) == gr(4 * n));
        CHECK(out.term_count() == 1);
    }

    // linearity on a random superposition
    std::mt19937 rng(8);
    RadialOperatorSpec s2{chi20, chi00, false, -16};
    TruncatedSeries f(2, -12), g(2, -12);
    f.add_term({2, 0}, gr(3));
    f.add_term({0, -1}, gr(-1, 2));
    f.normalize();
    g.add_term({-2, 0}, gr(5));
    g.add_term({4, -2}, gr(1, 3));
    g.normalize();
    auto lhs = apply_radial(s2, add(f, g));
    auto rhs = add(apply_radial(s2, f), apply_radial(s2, g));
    auto rep = equal_on_window(lhs, rhs);
    CHECK_MESSAGE(rep.pass, rep.detail);
    CHECK(lhs.level() == 2);
}

TEST_CASE("conjugation identity for matched-parity character pairs") {
    const std::vector<Weight> weights = {kZeroWeight, kVarpi0, kVarpi1, Weight{2, 2, 0}, kDelta};
    struct Pair {
        Character1D eta, chi;
    };
    for (const auto& [eta, chi] :
         std::initializer_list<Pair>{{chi00, chi00}, {chi11, chi11}, {chi20, chi00}, {chi13, chi11}}) {
        auto reports = conjugation_identity_check(eta, chi, weights, -12);
        for (const auto& r : reports) CHECK_MESSAGE(r.pass, r.name, ": ", r.detail);
    }
}

TEST_CASE("conjugation identity failure injection") {
    auto reports = conjugation_identity_check(chi00, chi00, {kVarpi1}, -10, true);
    REQUIRE(reports.size() == 1);
    CHECK_FALSE(reports[0].pass);
    CHECK(reports[0].detail.find("first discrepancy") != std::string::npos);
}

TEST_CASE("v-identity") {
    CHECK(gr(2) * (GaussianRational(pairing(kDelta, kRho)) - GaussianRational(pairing(kAlpha1, kAlpha1))) ==
          gr(0));
    auto rep = v_identity_check(-12);
    CHECK_MESSAGE(rep.pass, rep.detail);
    auto deeper = v_identity_check(-24);
    CHECK_MESSAGE(deeper.pass, deeper.detail);
    CHECK_FALSE(v_identity_check(-12, true).pass);
}

TEST_CASE("laplace eigen-action of the doubled denominator") {
    CHECK(denominator_identity_check(-8).pass);
    CHECK(denominator_identity_check(-30).pass);
}
