#pragma once

#include <cstdint>

#include "casimir/report.hpp"
#include "casimir/series.hpp"

namespace casimir {

// deltah_1 = e^{rho} prod_{alpha in Phi+} (1 - e^{-alpha}), on the window.
TruncatedSeries denominator1(std::int64_t g2_floor);

// deltah_2 = e^{2 rho} prod_{alpha in Phi+} (1 - e^{-2 alpha}).
TruncatedSeries denominator2(std::int64_t g2_floor);

// deltah = e^{rho} exp(-1/2 sum_{alpha} sum_{n>=1} e^{-2 n alpha} / n),
// the formal square root of deltah_2.
TruncatedSeries denominator_half(std::int64_t g2_floor);

// Orbit sum m_lambda = sum_{mu in W lambda} e^{mu} for dominant lambda of
// level >= 1, or lambda in Z delta at level 0.
TruncatedSeries orbit_sum(const Weight& lambda_dominant, std::int64_t g2_floor);

// Signed orbit sum sum_w sgn(w) e^{w lambda - shift}; lambda must have a
// trivial stabilizer (used with lambda + rho for characters).
TruncatedSeries alternating_orbit_sum(const Weight& lambda, const Weight& shift,
                                      std::int64_t g2_floor);

// Kac-Weyl character ch V(lambda) for dominant lambda, level >= 0:
// (sum_w sgn(w) e^{w(lambda+rho)-rho}) / prod_{alpha}(1-e^{-alpha}).
TruncatedSeries kac_weyl_character(const Weight& lambda_dominant, std::int64_t g2_floor);

// Window check that orbits carry constant (or sign-alternating) coefficients.
// Only orbits whose dominant member sits at grade >= g2_floor + safety are
// asserted; members below the window floor are skipped.
CheckReport window_w_invariance(const TruncatedSeries& f, std::int64_t safety = 0,
                                bool signed_variant = false);

// f / g via invert(g); exactness is asserted downstream by re-multiplication.
TruncatedSeries divide_exact(const TruncatedSeries& f, const TruncatedSeries& g);

}  // namespace casimir
