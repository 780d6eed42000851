#pragma once

#include <cstdint>
#include <vector>

#include "casimir/report.hpp"
#include "casimir/series.hpp"

namespace casimir {

// One-dimensional representation of the Onsager algebra, determined by its
// values on the generators B0, B1.
struct Character1D {
    Rational b0;
    Rational b1;

    Character1D() : b0(0), b1(0) {}
    Character1D(Rational v0, Rational v1) : b0(std::move(v0)), b1(std::move(v1)) {}
    static Character1D of(long v0, long v1) { return {Rational(v0), Rational(v1)}; }
    friend bool operator==(const Character1D&, const Character1D&) = default;
};

// Parameters of the radial Casimir action twisted by (eta, chi).
struct RadialOperatorSpec {
    Character1D eta;   // right twist (values b0, b1)
    Character1D chi;   // left twist (values a0, a1)
    bool conjugated = false;
    std::int64_t g2_floor = -20;
};

// Radial part of the Casimir for trivial twists:
//   Delta + 2 d_rho + 2 sum_{alpha in Phi+} sum_{k>=1} e^{-2 k alpha} d_alpha.
// The output is guaranteed on the input's window.
TruncatedSeries apply_pi00(const TruncatedSeries& f);

// Level-0 normalized potential:
//   -1/2 [ P01 c01 + P00 c00 + P11 c11 + P10 c10 ]
// with c01 = (a0-b0)^2, c00 = (a0+b0)^2, c11 = (a1-b1)^2, c10 = (a1+b1)^2,
// each replaced by (.)^2 - 1 in the conjugated variant.
TruncatedSeries potential_series(const RadialOperatorSpec& spec);

// Unconjugated: apply_pi00(f) + potential * f.
// Conjugated:   Delta f - 1/2 f + potential * f.
TruncatedSeries apply_radial(const RadialOperatorSpec& spec, const TruncatedSeries& f);

// deltah * Pi_{eta,chi}(unconj) (deltah^{-1} e^{lambda}) == Pi_conj e^{lambda}
// for each test weight, exactly on the guaranteed window. `perturb` bumps one
// potential coefficient to exercise the failure path.
std::vector<CheckReport> conjugation_identity_check(const Character1D& eta, const Character1D& chi,
                                                    const std::vector<Weight>& test_weights,
                                                    std::int64_t g2_floor, bool perturb = false);

// X = (v,v) - (rho,rho) - sum_alpha (alpha,alpha) e^{-2alpha}/(1-e^{-2alpha})^2
// vanishes identically; `drop_cross_terms` omits the off-diagonal double sum
// as a negative control.
CheckReport v_identity_check(std::int64_t g2_floor, bool drop_cross_terms = false);

// Laplace eigen-action on the doubled Weyl denominator.
CheckReport denominator_identity_check(std::int64_t g2_floor);

}  // namespace casimir
