#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "casimir/rational.hpp"
#include "casimir/report.hpp"
#include "casimir/weight_lattice.hpp"

namespace casimir {

// Exponent of a stored monomial, scaled by the series' denominators:
// the true weight is (a / y_den, level, m / q_den).
struct ExpKey {
    std::int64_t a = 0;
    std::int64_t m = 0;
    friend bool operator==(const ExpKey&, const ExpKey&) = default;
    friend auto operator<=>(const ExpKey&, const ExpKey&) = default;
};

// Sparse element of the completed group algebra of one level component of
// the weight lattice, with an explicit completeness window.
//
// Contract: the represented element agrees with `terms` on every monomial
// of doubled rho-grade >= g2_floor; nothing is claimed below g2_floor.
// g2_ceil bounds the grade of the *entire* represented element (including
// the unknown tail, which always lies below g2_floor). A g2_floor of
// kNegInf means the element is known exactly.
class TruncatedSeries {
  public:
    static constexpr std::int64_t kNegInf = std::numeric_limits<std::int64_t>::min() / 4;

    TruncatedSeries() = default;
    TruncatedSeries(std::int64_t level, std::int64_t g2_floor, std::int64_t y_den = 1,
                    std::int64_t q_den = 1)
        : level_(level), y_den_(y_den), q_den_(q_den), floor_(g2_floor), ceil_(g2_floor) {
        if (floor_ == kNegInf) ceil_ = kNegInf;
    }

    std::int64_t level() const { return level_; }
    std::int64_t y_den() const { return y_den_; }
    std::int64_t q_den() const { return q_den_; }
    std::int64_t g2_floor() const { return floor_; }
    std::int64_t g2_ceil() const { return ceil_; }
    bool exact() const { return floor_ == kNegInf; }
    bool empty() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    const std::map<ExpKey, GaussianRational>& terms() const { return terms_; }

    // Doubled rho-grade of a stored exponent; integral for every series this
    // library constructs (asserted on insertion).
    std::int64_t term_g2(const ExpKey& k) const;

    // True weight of a stored exponent; requires unit denominators.
    Weight term_weight(const ExpKey& k) const;

    // Adds c * e^{key}; merges with an existing term, drops exact zeros.
    void add_term(const ExpKey& key, const GaussianRational& c);

    GaussianRational coefficient(const ExpKey& key) const;
    // Coefficient of an integral weight (level must match).
    GaussianRational coefficient_at(const Weight& w) const;

    // Drops all terms below `floor` and raises the window accordingly.
    void truncate_to(std::int64_t floor);

    // Recomputes g2_ceil from the stored support and reduces denominators.
    void normalize();

    void set_g2_ceil(std::int64_t c) { ceil_ = c; }
    void set_g2_floor(std::int64_t f) { floor_ = f; }

    std::string str() const;

  private:
    std::int64_t level_ = 0;
    std::int64_t y_den_ = 1;
    std::int64_t q_den_ = 1;
    std::int64_t floor_ = kNegInf;
    std::int64_t ceil_ = kNegInf;
    std::map<ExpKey, GaussianRational> terms_;

    friend void unify_denominators(TruncatedSeries& f, TruncatedSeries& g);
};

// Window-sentinel arithmetic.
inline std::int64_t wadd(std::int64_t a, std::int64_t b) {
    return (a == TruncatedSeries::kNegInf || b == TruncatedSeries::kNegInf)
               ? TruncatedSeries::kNegInf
               : a + b;
}

// e^{lambda}, known exactly.
TruncatedSeries monomial(const Weight& lambda, const GaussianRational& c = GaussianRational(1));

// Termwise sum; levels must agree. Window floor is the max of the floors.
TruncatedSeries add(const TruncatedSeries& f, const TruncatedSeries& g);
TruncatedSeries sub(const TruncatedSeries& f, const TruncatedSeries& g);

// Convolution. Levels add; the result is guaranteed on grades
// >= max(floor_f + ceil_g, floor_g + ceil_f) and truncated there.
TruncatedSeries mul(const TruncatedSeries& f, const TruncatedSeries& g);

TruncatedSeries mul_scalar(const TruncatedSeries& f, const GaussianRational& c);

// Doubles (or n-fold stretches) every exponent: e^{mu} -> e^{n mu}.
TruncatedSeries stretch_exponents(const TruncatedSeries& f, std::int64_t n);

// One factor (1 - s e^{-beta})^{-power} expanded toward negative grade:
// sum_k binom(k+p-1, p-1) s^k e^{-k beta}, for grades >= g2_floor.
// beta must have level 0 and strictly positive grade.
struct GeometricFactor {
    Weight beta;
    int sign = +1;  // s in the factor (1 - s e^{-beta})^{-power}
    int power = 1;
};

// e^{numerator} * prod_i (1 - s_i e^{-beta_i})^{-p_i} on the window.
TruncatedSeries tau1_expand(const Weight& numerator, const std::vector<GeometricFactor>& factors,
                            std::int64_t g2_floor);

// exp / log on level-0 series with strictly negative support.
TruncatedSeries exp_series(const TruncatedSeries& f);
TruncatedSeries log_one_plus(const TruncatedSeries& f);

// Multiplicative inverse of c e^{mu} (1 + lower-grade tail). The leading
// term must be the unique stored term of maximal grade.
TruncatedSeries invert(const TruncatedSeries& f);

// Same, after truncating the input to the given window (for exactly known
// inputs whose inverse is an infinite series).
TruncatedSeries invert(const TruncatedSeries& f, std::int64_t g2_floor);

// e^{mu} -> (nu, mu) e^{mu}.
TruncatedSeries derivative_pairing(const Weight& nu, const TruncatedSeries& f);

// e^{mu} -> (mu, mu) e^{mu}.
TruncatedSeries laplace_apply(const TruncatedSeries& f);

// Exact comparison on the common guaranteed window.
CheckReport equal_on_window(const TruncatedSeries& f, const TruncatedSeries& g);

}  // namespace casimir
