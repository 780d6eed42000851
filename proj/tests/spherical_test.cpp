#include <random>

#include "casimir/characters.hpp"
#include "casimir/rep_oracle.hpp"
#include "casimir/spherical.hpp"
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

// exact eigen-residual on the guaranteed window
void check_eigen(const SphericalResult& r) {
    RadialOperatorSpec spec{r.eta, r.chi, false, r.series.g2_floor()};
    auto applied = apply_radial(spec, r.series);
    auto rep = equal_on_window(applied, mul_scalar(r.series, GaussianRational(r.eigenvalue)));
    CHECK_MESSAGE(rep.pass, "eigen-residual: ", rep.detail);
}
}  // namespace

TEST_CASE("admissibility predicate") {
    CHECK(admissible(kZeroWeight, chi00, chi00));
    CHECK_FALSE(admissible(kVarpi0, chi00, chi00));  // lambda(h0) = 1 is odd
    CHECK(admissible(kVarpi0 + kVarpi1, chi11, chi11));
    CHECK_FALSE(admissible(Weight{2, 2, 0}, chi11, chi11));
    CHECK_FALSE(admissible(Weight{0, 2, 0}, Character1D{Rational(1, 2), Rational(0)}, chi00));
    CHECK(admissible(Weight{0, 2, 0}, chi20, chi00));
    CHECK_THROWS_AS(admissible(Weight{-1, 1, 0}, chi00, chi00), std::invalid_argument);
}

TEST_CASE("oracle agrees with the admissibility predicate on a grid") {
    // depth 3 suffices to expose every obstruction when lambda(h_j) <= 2
    for (std::int64_t a = 0; a <= 2; ++a) {
        for (std::int64_t K = a; K <= a + 2; ++K) {
            const Weight lam{a, K, 0};
            if (lam.h0() > 2) continue;
            for (long e0 = -2; e0 <= 2; ++e0) {
                for (long e1 = -2; e1 <= 2; ++e1) {
                    const Character1D eta = Character1D::of(e0, e1);
                    auto raw = oracle_spherical_raw(lam, eta, eta, 3);
                    CHECK_MESSAGE(raw.admissible == admissible(lam, eta, eta),
                                  "lambda=(", lam.h1, ",", lam.level, ",", lam.d, ") eta=(", e0,
                                  ",", e1, "): oracle says ", raw.admissible);
                }
            }
        }
    }
    // non-integer character values never admit twisted vectors
    auto frac = oracle_spherical_raw(Weight{2, 2, 0},
                                     Character1D{Rational(1, 2), Rational(0)},
                                     Character1D{Rational(1, 2), Rational(0)}, 3);
    CHECK_FALSE(frac.admissible);
}

TEST_CASE("lambda0 and heun parameters") {
    CHECK(lambda0(chi00, chi00) == kZeroWeight);
    CHECK(lambda0(chi20, chi00) == Weight{0, 2, 0});
    CHECK(lambda0(chi13, chi11) == Weight{3, 4, 0});  // varpi0 + 3 varpi1
    CHECK_THROWS_AS(lambda0(chi11, chi00), MathError);

    auto p = heun_parameters(chi00, chi00, 0);
    CHECK(p.l0 == Rational(-1, 2));
    CHECK(p.l1 == Rational(-1, 2));
    CHECK(p.l2 == Rational(-1, 2));
    CHECK(p.l3 == Rational(-1, 2));

    auto p11 = heun_parameters(chi11, chi11, 2);
    CHECK(p11.l0 == Rational(-1, 2));
    CHECK(p11.l1 == Rational(1, 2));
    CHECK(p11.l2 == Rational(1, 2));
    CHECK(p11.l3 == Rational(-1, 2));

    auto p31 = heun_parameters(chi13, chi11, 0);  // eta = chi_{1,3}, chi = chi_{1,1}
    CHECK(p31.l0 == Rational(-3, 2));
    CHECK(p31.l1 == Rational(3, 2));
    CHECK(p31.l2 == Rational(1, 2));
    CHECK(p31.l3 == Rational(-1, 2));

    // eta = chi_{3,1}, chi = chi_{1,1}
    auto p13 = heun_parameters(Character1D::of(3, 1), chi11, 0);
    CHECK(p13.l0 == Rational(-1, 2));
    CHECK(p13.l1 == Rational(1, 2));
    CHECK(p13.l2 == Rational(3, 2));
    CHECK(p13.l3 == Rational(-3, 2));

    // potential coefficients reassemble as 4 l_k (l_k + 1) + 1
    std::mt19937 rng(99);
    std::uniform_int_distribution<long> val(-6, 6);
    for (int trial = 0; trial < 20; ++trial) {
        const Character1D eta = Character1D::of(val(rng), val(rng));
        const Character1D chi = Character1D::of(val(rng), val(rng));
        auto hp = heun_parameters(eta, chi, 0);
        const Rational a0 = chi.b0, a1 = chi.b1, b0 = eta.b0, b1 = eta.b1;
        CHECK((a1 - b1) * (a1 - b1) - 1 == 4 * hp.l0 * (hp.l0 + 1));
        CHECK((a1 + b1) * (a1 + b1) - 1 == 4 * hp.l1 * (hp.l1 + 1));
        CHECK((a0 + b0) * (a0 + b0) - 1 == 4 * hp.l2 * (hp.l2 + 1));
        CHECK((a0 - b0) * (a0 - b0) - 1 == 4 * hp.l3 * (hp.l3 + 1));
    }
}

TEST_CASE("spherical solver: trivial and delta-line cases") {
    auto r = solve_spherical(kZeroWeight, chi00, chi00, 5);
    CHECK(r.eigenvalue == Rational(0));
    CHECK(r.series.term_count() == 1);
    CHECK(r.series.coefficient_at(kZeroWeight) == gr(1));
    // zero/zero resonances occur along w(rho) - rho and resolve to zero
    for (const auto& ev : r.resonances) {
        CHECK(r.series.coefficient_at(ev.mu) == gr(0));
    }

    for (std::int64_t n = 1; n <= 5; ++n) {
        auto rn = solve_spherical(n * kDelta, chi00, chi00, 6);
        CHECK(rn.eigenvalue == Rational(4 * n));
        CHECK(rn.series.term_count() == 1);
        CHECK(rn.series.coefficient_at(n * kDelta) == gr(1));
        check_eigen(rn);
    }

    CHECK_THROWS_AS(solve_spherical(kVarpi0, chi00, chi00, 3), MathError);
}

TEST_CASE("spherical solver: exact eigen-residual across admissible inputs") {
    struct Case {
        Weight lam;
        Character1D c;
    };
    const std::vector<Case> cases = {
        {Weight{2, 2, 0}, chi00}, {Weight{0, 2, 0}, chi00}, {Weight{2, 4, 0}, chi00},
        {Weight{1, 2, 0}, chi11}, {Weight{0, 2, 0}, chi20}, {Weight{2, 4, 0}, chi20},
    };
    for (const auto& c : cases) {
        auto r = solve_spherical(c.lam, c.c, c.c, 8);
        CHECK(r.series.coefficient_at(c.lam) == gr(1));
        check_eigen(r);
        auto inv = invariance_and_support_checks(r);
        CHECK_MESSAGE(inv.pass, inv.detail);
    }
}

TEST_CASE("eigen-residual and invariance sweep over admissible twists") {
    for (long b0 = 0; b0 <= 3; ++b0) {
        for (long b1 = 0; b1 <= 3; ++b1) {
            const Character1D ch = Character1D::of(b0, b1);
            for (long a = 0; a <= 4; ++a) {
                for (long K = a; K <= 5; ++K) {
                    const Weight lam{a, K, 0};
                    if (!admissible(lam, ch, ch)) continue;
                    auto r = solve_spherical(lam, ch, ch, 12);
                    check_eigen(r);
                    if (lam.level >= 1) {
                        auto inv = window_w_invariance(r.series);
                        CHECK_MESSAGE(inv.pass, "(", a, ",", K, ") chi=(", b0, ",", b1,
                                      "): ", inv.detail);
                    }
                }
            }
        }
    }
}

TEST_CASE("solver matches the representation oracle") {
    struct Case {
        Weight lam;
        Character1D eta, chi;
    };
    const std::vector<Case> cases = {
        {kZeroWeight, chi00, chi00},   {Weight{0, 2, 0}, chi00, chi00},
        {Weight{2, 2, 0}, chi00, chi00}, {Weight{1, 2, 0}, chi11, chi11},
        {Weight{0, 2, 0}, chi20, chi20}, {Weight{0, 2, 0}, chi20, chi00},
    };
    for (const auto& c : cases) {
        for (int depth : {3, 4}) {
            auto solved = solve_spherical(c.lam, c.eta, c.chi, depth);
            auto oracle = oracle_spherical(c.lam, c.eta, c.chi, depth);
            auto rep = equal_on_window(solved.series, oracle);
            CHECK_MESSAGE(rep.pass, "lambda=(", c.lam.h1, ",", c.lam.level, ",", c.lam.d,
                          ") depth ", depth, ": ", rep.detail);
        }
    }
}

TEST_CASE("oracle regression: frozen 3-dim string coefficients") {
    // lambda = 2 varpi1, eta = chi = chi00: the B1-invariant vector in the
    // 3-dimensional e1,f1,h1-string fixes the alpha1-direction coefficients
    auto psi = oracle_spherical(Weight{2, 2, 0}, chi00, chi00, 2);
    CHECK(psi.coefficient_at(Weight{2, 2, 0}) == gr(1));
    CHECK(psi.coefficient_at(Weight{0, 2, 0}) == gr(0));      // lambda - alpha1
    CHECK(psi.coefficient_at(Weight{-2, 2, 0}) == gr(1));     // lambda - 2 alpha1
    CHECK(psi.coefficient_at(Weight{4, 2, 1} - kDelta) == gr(0));
}

TEST_CASE("cone weights outside the module solve to zero") {
    // lambda - alpha0 is not a weight of V(lambda) when lambda(h0) = 0, and
    // the full-cone recursion must reproduce that
    auto r = solve_spherical(Weight{2, 2, 0}, chi00, chi00, 6);
    CHECK(r.series.coefficient_at(Weight{2, 2, 0} - kAlpha0) == gr(0));
    CHECK(r.series.coefficient_at(Weight{2, 2, 0} - kAlpha1) == gr(0));
}

TEST_CASE("depth extension is stable") {
    auto shallow = solve_spherical(Weight{2, 2, 0}, chi00, chi00, 5);
    auto deep = solve_spherical(Weight{2, 2, 0}, chi00, chi00, 9);
    TruncatedSeries cut = deep.series;
    cut.truncate_to(shallow.series.g2_floor());
    auto rep = equal_on_window(cut, shallow.series);
    CHECK_MESSAGE(rep.pass, rep.detail);
}

TEST_CASE("weight multiplicities from the oracle match the character") {
    auto ch = kac_weyl_character(kVarpi0, -14);
    for (int x = 0; x <= 3; ++x) {
        for (int y = 0; x + y <= 3; ++y) {
            const Weight mu = kVarpi0 - std::int64_t(x) * kAlpha0 - std::int64_t(y) * kAlpha1;
            if (g2(mu) < ch.g2_floor()) continue;
            const auto c = ch.coefficient_at(mu);
            CHECK(c == gr(oracle_weight_multiplicity(kVarpi0, x, y)));
        }
    }
}

TEST_CASE("divisibility of twisted coefficients by the minimal one") {
    // eta = chi_{2,0}, chi = chi_{0,0}: lambda0 = 2 varpi0
    auto triv = divisibility_check(Weight{0, 2, 0}, chi20, chi00, 4);
    CHECK_MESSAGE(triv.report.pass, triv.report.detail);
    CHECK(equal_on_window(triv.quotient, monomial(kZeroWeight)).pass);

    for (const Weight& lam : {Weight{0, 4, 0}, Weight{2, 4, 0}}) {
        auto rep = divisibility_check(lam, chi20, chi00, 6);
        CHECK_MESSAGE(rep.report.pass, rep.report.detail);
    }

    CHECK_THROWS_AS(divisibility_check(Weight{1, 2, 0}, chi11, chi00, 3), MathError);
}

TEST_CASE("resonances are recorded, not guessed") {
    // eta = chi_{2,0}, chi = chi_{0,0} at lambda = 4 varpi0 hits a zero/zero
    // resonance at lambda - alpha1, outside the h1-string
    auto r = solve_spherical(Weight{0, 4, 0}, chi20, chi00, 4);
    bool found = false;
    for (const auto& ev : r.resonances) {
        if (ev.mu == Weight{0, 4, 0} - kAlpha1) found = true;
    }
    CHECK(found);
    check_eigen(r);
}

TEST_CASE("heun-kzb numeric eigen-check") {
    EvalPoint p{Complex(0.25, -0.1), 0.0, Complex(0.0, 3.0)};
    for (std::int64_t n = 0; n <= 2; ++n) {
        auto r = solve_spherical(n * kDelta, chi00, chi00, 32);
        auto rep = heun_kzb_numeric_check(r, 64, {p}, 1e-6);
        CHECK_MESSAGE(rep.pass, "n=", n, ": ", rep.detail);
    }
    CHECK_THROWS_AS(
        heun_kzb_numeric_check(solve_spherical(kZeroWeight, chi00, chi00, 2), 20,
                               {EvalPoint{Complex(0.3, 0.1), 0.0, Complex(0.0, 3.0)}}, 1e-6),
        std::domain_error);
}
