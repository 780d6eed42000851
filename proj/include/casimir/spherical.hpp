#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "casimir/radial.hpp"
#include "casimir/report.hpp"
#include "casimir/series.hpp"
#include "casimir/theta.hpp"

namespace casimir {

// Thrown on mathematically impossible requests (inadmissible data or an
// obstructed resonance); the CLI maps it to its own exit code.
struct MathError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// True iff the completed module carries a (eta, chi)-twisted matrix
// coefficient of highest weight lambda: integral character values with
// lambda(h_j) - |eta(B_j)| and lambda(h_j) - |chi(B_j)| in 2N0 for j = 0, 1.
bool admissible(const Weight& lambda, const Character1D& eta, const Character1D& chi);

// Minimal admissible dominant weight max(|eta_j|,|chi_j|)-built; requires the
// parity condition eta(B_j) - chi(B_j) in 2Z.
Weight lambda0(const Character1D& eta, const Character1D& chi);

struct HeunParams {
    Rational l0, l1, l2, l3;
    std::int64_t level = 0;
};

// Coupling constants of the Heun-KZB heat operator from the twist characters
// (a = chi values, b = eta values):
//   l0 = (a1-b1-1)/2, l1 = (a1+b1-1)/2, l2 = (a0+b0-1)/2, l3 = (a0-b0-1)/2.
HeunParams heun_parameters(const Character1D& eta, const Character1D& chi, std::int64_t level);

struct ResonanceEvent {
    Weight mu;
    std::string action;  // "reflected", "zeroed", ...
};

struct SphericalResult {
    Weight lambda;
    Character1D eta;
    Character1D chi;
    Rational eigenvalue;  // (lambda, lambda + 2 rho)
    TruncatedSeries series;
    std::vector<ResonanceEvent> resonances;
    int depth = 0;
};

// Recursive eigen-expansion of the restricted twisted matrix coefficient:
// coefficients on lambda - x alpha0 - y alpha1 for x + y <= depth, leading
// coefficient 1, solved layer by layer from the radial Casimir action.
SphericalResult solve_spherical(const Weight& lambda, const Character1D& eta,
                                const Character1D& chi, int depth);

// Independent brute-force route through the representation (small depth and
// level); throws MathError on inadmissible input.
TruncatedSeries oracle_spherical(const Weight& lambda, const Character1D& eta,
                                 const Character1D& chi, int depth);

// W-invariance (eta == chi) and support-parity (eta == chi == 0) checks.
CheckReport invariance_and_support_checks(const SphericalResult& result);

struct DivisibilityReport {
    CheckReport report;
    TruncatedSeries quotient;
};

// quotient = Psi(phi_lambda) / Psi(phi_{lambda0(eta,chi)}); verifies exact
// re-multiplication, window W-invariance and the even support pattern.
DivisibilityReport divisibility_check(const Weight& lambda, const Character1D& eta,
                                      const Character1D& chi, int depth);

// Residual of the Heun-KZB heat operator against 2 pi^2 E on the conjugated
// eigenfunction deltah * series, evaluated at the given points.
CheckReport heun_kzb_numeric_check(const SphericalResult& result, std::int64_t g2_depth,
                                   const std::vector<EvalPoint>& points, double tol);

}  // namespace casimir
