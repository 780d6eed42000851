#include "casimir/series.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace casimir {

namespace {

std::int64_t lcm64(std::int64_t a, std::int64_t b) { return std::lcm(a, b); }

struct GradedTerm {
    std::int64_t g2;
    ExpKey key;
    const GaussianRational* coeff;
};

std::vector<GradedTerm> by_grade_desc(const TruncatedSeries& s) {
    std::vector<GradedTerm> v;
    v.reserve(s.term_count());
    for (const auto& [k, c] : s.terms()) v.push_back({s.term_g2(k), k, &c});
    std::sort(v.begin(), v.end(), [](const GradedTerm& x, const GradedTerm& y) {
        if (x.g2 != y.g2) return x.g2 > y.g2;
        return x.key < y.key;
    });
    return v;
}

}  // namespace

std::int64_t TruncatedSeries::term_g2(const ExpKey& k) const {
    const std::int64_t num = k.a * q_den_ + 4 * k.m * y_den_;
    const std::int64_t den = y_den_ * q_den_;
    if (num % den != 0) throw std::logic_error("non-integral term grade");
    return num / den;
}

Weight TruncatedSeries::term_weight(const ExpKey& k) const {
    if (y_den_ != 1 || q_den_ != 1) {
        throw std::logic_error("term_weight requires unit exponent denominators");
    }
    return {k.a, level_, k.m};
}

void TruncatedSeries::add_term(const ExpKey& key, const GaussianRational& c) {
    if (c.is_zero()) return;
    (void)term_g2(key);  // integrality check
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(key, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

GaussianRational TruncatedSeries::coefficient(const ExpKey& key) const {
    auto it = terms_.find(key);
    return it == terms_.end() ? GaussianRational() : it->second;
}

GaussianRational TruncatedSeries::coefficient_at(const Weight& w) const {
    if (w.level != level_) return GaussianRational();
    return coefficient({w.h1 * y_den_, w.d * q_den_});
}

void TruncatedSeries::truncate_to(std::int64_t floor) {
    if (floor == kNegInf) {
        normalize();
        return;
    }
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (term_g2(it->first) < floor) {
            it = terms_.erase(it);
        } else {
            ++it;
        }
    }
    if (floor_ == kNegInf || floor > floor_) floor_ = floor;
    if (ceil_ != kNegInf && ceil_ < floor_) ceil_ = floor_;
    normalize();
}

void TruncatedSeries::normalize() {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->second.is_zero()) {
            it = terms_.erase(it);
        } else {
            ++it;
        }
    }
    if (!terms_.empty()) {
        std::int64_t mx = kNegInf;
        for (const auto& [k, c] : terms_) mx = std::max(mx, term_g2(k));
        ceil_ = mx;  // tail lives below floor_ <= mx, so this bounds the element
    } else {
        ceil_ = floor_;
    }
    // reduce exponent denominators where possible
    if (y_den_ > 1 || q_den_ > 1) {
        std::int64_t ga = y_den_, gm = q_den_;
        for (const auto& [k, c] : terms_) {
            ga = std::gcd(ga, std::abs(k.a));
            gm = std::gcd(gm, std::abs(k.m));
        }
        ga = std::gcd(ga, y_den_);
        gm = std::gcd(gm, q_den_);
        if (ga > 1 || gm > 1) {
            std::map<ExpKey, GaussianRational> rescaled;
            for (const auto& [k, c] : terms_) rescaled[{k.a / ga, k.m / gm}] = c;
            terms_ = std::move(rescaled);
            y_den_ /= ga;
            q_den_ /= gm;
        }
    }
}

std::string TruncatedSeries::str() const {
    std::ostringstream os;
    os << "level " << level_ << ", window >=";
    if (floor_ == kNegInf) {
        os << " -inf";
    } else {
        os << " " << floor_;
    }
    os << ":";
    auto v = by_grade_desc(*this);
    std::size_t shown = 0;
    for (const auto& t : v) {
        os << " (" << t.coeff->str() << ")e^{" << t.key.a;
        if (y_den_ != 1) os << "/" << y_den_;
        os << "," << level_ << "," << t.key.m;
        if (q_den_ != 1) os << "/" << q_den_;
        os << "}";
        if (++shown >= 12 && v.size() > 14) {
            os << " ... +" << (v.size() - shown) << " terms";
            break;
        }
    }
    if (v.empty()) os << " 0";
    return os.str();
}

void unify_denominators(TruncatedSeries& f, TruncatedSeries& g) {
    const std::int64_t ly = lcm64(f.y_den_, g.y_den_);
    const std::int64_t lq = lcm64(f.q_den_, g.q_den_);
    auto rescale = [&](TruncatedSeries& s) {
        const std::int64_t sy = ly / s.y_den_, sq = lq / s.q_den_;
        if (sy == 1 && sq == 1) {
            s.y_den_ = ly;
            s.q_den_ = lq;
            return;
        }
        std::map<ExpKey, GaussianRational> rescaled;
        for (const auto& [k, c] : s.terms_) rescaled[{k.a * sy, k.m * sq}] = c;
        s.terms_ = std::move(rescaled);
        s.y_den_ = ly;
        s.q_den_ = lq;
    };
    rescale(f);
    rescale(g);
}

TruncatedSeries monomial(const Weight& lambda, const GaussianRational& c) {
    TruncatedSeries s(lambda.level, TruncatedSeries::kNegInf);
    s.add_term({lambda.h1, lambda.d}, c);
    s.normalize();
    return s;
}

TruncatedSeries add(const TruncatedSeries& f, const TruncatedSeries& g) {
    if (f.level() != g.level()) throw std::invalid_argument("add: level mismatch");
    TruncatedSeries a = f, b = g;
    unify_denominators(a, b);
    TruncatedSeries r(a.level(), std::max(a.g2_floor(), b.g2_floor()), a.y_den(), a.q_den());
    for (const auto& [k, c] : a.terms()) r.add_term(k, c);
    for (const auto& [k, c] : b.terms()) r.add_term(k, c);
    r.truncate_to(r.g2_floor());
    return r;
}

TruncatedSeries sub(const TruncatedSeries& f, const TruncatedSeries& g) {
    return add(f, mul_scalar(g, GaussianRational(-1)));
}

TruncatedSeries mul(const TruncatedSeries& f, const TruncatedSeries& g) {
    TruncatedSeries a = f, b = g;
    unify_denominators(a, b);
    const std::int64_t floor =
        std::max(wadd(a.g2_floor(), b.g2_ceil()), wadd(b.g2_floor(), a.g2_ceil()));
    TruncatedSeries r(a.level() + b.level(), floor, a.y_den(), a.q_den());
    auto va = by_grade_desc(a);
    auto vb = by_grade_desc(b);
    for (const auto& ta : va) {
        if (!vb.empty() && floor != TruncatedSeries::kNegInf && ta.g2 + vb.front().g2 < floor) {
            break;
        }
        for (const auto& tb : vb) {
            if (floor != TruncatedSeries::kNegInf && ta.g2 + tb.g2 < floor) break;
            r.add_term({ta.key.a + tb.key.a, ta.key.m + tb.key.m}, (*ta.coeff) * (*tb.coeff));
        }
    }
    r.set_g2_ceil(wadd(a.g2_ceil(), b.g2_ceil()));
    r.normalize();
    return r;
}

TruncatedSeries mul_scalar(const TruncatedSeries& f, const GaussianRational& c) {
    TruncatedSeries r(f.level(), f.g2_floor(), f.y_den(), f.q_den());
    if (!c.is_zero()) {
        for (const auto& [k, v] : f.terms()) r.add_term(k, v * c);
    }
    r.normalize();
    return r;
}

TruncatedSeries stretch_exponents(const TruncatedSeries& f, std::int64_t n) {
    if (n <= 0) throw std::invalid_argument("stretch_exponents: factor must be positive");
    const std::int64_t floor = f.g2_floor() == TruncatedSeries::kNegInf
                                   ? TruncatedSeries::kNegInf
                                   : n * f.g2_floor();
    TruncatedSeries r(n * f.level(), floor, f.y_den(), f.q_den());
    for (const auto& [k, c] : f.terms()) r.add_term({n * k.a, n * k.m}, c);
    r.normalize();
    return r;
}

namespace {

// (1 - s e^{-beta})^{-p} = sum_k binom(k+p-1, p-1) s^k e^{-k beta}
TruncatedSeries geometric_factor(const GeometricFactor& fac, std::int64_t g2_floor) {
    if (g2_floor == TruncatedSeries::kNegInf) {
        throw std::invalid_argument("geometric factor: expansion needs a finite window");
    }
    if (fac.beta.level != 0) throw std::invalid_argument("geometric factor: beta must have level 0");
    const std::int64_t gb = g2(fac.beta);
    if (gb <= 0) throw std::invalid_argument("geometric factor: beta must have positive grade");
    if (fac.power < 1) throw std::invalid_argument("geometric factor: power must be >= 1");
    TruncatedSeries s(0, g2_floor);
    mpz_class binom;
    for (std::int64_t k = 0; -k * gb >= g2_floor; ++k) {
        mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(k + fac.power - 1),
                     static_cast<unsigned long>(fac.power - 1));
        Rational c(binom);
        if (fac.sign < 0 && (k % 2 == 1)) c = -c;
        s.add_term({-k * fac.beta.h1, -k * fac.beta.d}, GaussianRational(c));
    }
    s.normalize();
    return s;
}

}  // namespace

TruncatedSeries tau1_expand(const Weight& numerator, const std::vector<GeometricFactor>& factors,
                            std::int64_t g2_floor) {
    const std::int64_t inner_floor =
        g2_floor == TruncatedSeries::kNegInf ? g2_floor : g2_floor - g2(numerator);
    TruncatedSeries acc = monomial(numerator);
    for (const auto& fac : factors) acc = mul(acc, geometric_factor(fac, inner_floor));
    acc.truncate_to(g2_floor);
    return acc;
}

namespace {

void require_negative_support(const TruncatedSeries& f, const char* who) {
    if (f.level() != 0) throw std::invalid_argument(std::string(who) + ": level must be 0");
    if (!f.empty() && f.g2_ceil() >= 0) {
        throw std::invalid_argument(std::string(who) + ": support must have negative grade");
    }
    if (f.exact() && !f.empty()) {
        throw std::invalid_argument(std::string(who) +
                                    ": result is an infinite series; truncate the input first");
    }
}

}  // namespace

TruncatedSeries exp_series(const TruncatedSeries& f) {
    require_negative_support(f, "exp_series");
    TruncatedSeries acc = monomial(kZeroWeight);
    acc.truncate_to(f.g2_floor());
    if (f.empty()) return acc;
    TruncatedSeries fk = f;
    Rational factorial(1);
    for (std::int64_t k = 1; !fk.empty(); ++k) {
        factorial *= k;
        acc = add(acc, mul_scalar(fk, GaussianRational(Rational(1) / factorial)));
        fk = mul(fk, f);
        fk.truncate_to(f.g2_floor());
    }
    return acc;
}

TruncatedSeries log_one_plus(const TruncatedSeries& f) {
    require_negative_support(f, "log_one_plus");
    TruncatedSeries acc(0, f.g2_floor());
    if (f.empty()) return acc;
    TruncatedSeries fk = f;
    for (std::int64_t k = 1; !fk.empty(); ++k) {
        Rational c(k % 2 == 1 ? 1 : -1, k);
        c.canonicalize();
        acc = add(acc, mul_scalar(fk, GaussianRational(c)));
        fk = mul(fk, f);
        fk.truncate_to(f.g2_floor());
    }
    return acc;
}

TruncatedSeries invert(const TruncatedSeries& f) {
    if (f.empty()) throw std::invalid_argument("invert: empty series");
    std::int64_t lead_g2 = TruncatedSeries::kNegInf;
    ExpKey lead_key{};
    int at_max = 0;
    for (const auto& [k, c] : f.terms()) {
        const std::int64_t g = f.term_g2(k);
        if (g > lead_g2) {
            lead_g2 = g;
            lead_key = k;
            at_max = 1;
        } else if (g == lead_g2) {
            ++at_max;
        }
    }
    if (at_max != 1) throw std::invalid_argument("invert: multiple terms at maximal grade");

    // lead^{-1} as an exact monomial (scaled exponents negate directly)
    TruncatedSeries lead_inv(-f.level(), TruncatedSeries::kNegInf, f.y_den(), f.q_den());
    lead_inv.add_term({-lead_key.a, -lead_key.m}, GaussianRational(1) / f.coefficient(lead_key));
    lead_inv.normalize();

    TruncatedSeries t = mul(f, lead_inv);  // 1 + strictly lower terms
    t = sub(t, monomial(kZeroWeight));
    if (t.exact() && !t.empty()) {
        throw std::invalid_argument("invert: inverse is an infinite series; truncate the input first");
    }
    TruncatedSeries geom = monomial(kZeroWeight);
    geom.truncate_to(t.g2_floor());
    TruncatedSeries tk = t;
    for (std::int64_t k = 1; !tk.empty(); ++k) {
        geom = add(geom, mul_scalar(tk, GaussianRational(Rational(k % 2 == 1 ? -1 : 1))));
        tk = mul(tk, t);
        tk.truncate_to(t.g2_floor());
    }
    return mul(geom, lead_inv);
}

TruncatedSeries invert(const TruncatedSeries& f, std::int64_t g2_floor) {
    TruncatedSeries g = f;
    g.truncate_to(g2_floor);
    return invert(g);
}

TruncatedSeries derivative_pairing(const Weight& nu, const TruncatedSeries& f) {
    TruncatedSeries r(f.level(), f.g2_floor(), f.y_den(), f.q_den());
    for (const auto& [k, c] : f.terms()) {
        Rational p(nu.h1 * k.a, 2 * f.y_den());
        p.canonicalize();
        Rational q(nu.level * k.m, f.q_den());
        q.canonicalize();
        p += q + Rational(f.level() * nu.d);
        r.add_term(k, c * GaussianRational(p));
    }
    r.set_g2_ceil(f.g2_ceil());
    r.normalize();
    return r;
}

TruncatedSeries laplace_apply(const TruncatedSeries& f) {
    TruncatedSeries r(f.level(), f.g2_floor(), f.y_den(), f.q_den());
    for (const auto& [k, c] : f.terms()) {
        Rational p(k.a * k.a, 2 * f.y_den() * f.y_den());
        p.canonicalize();
        Rational q(2 * f.level() * k.m, f.q_den());
        q.canonicalize();
        r.add_term(k, c * GaussianRational(p + q));
    }
    r.set_g2_ceil(f.g2_ceil());
    r.normalize();
    return r;
}

CheckReport equal_on_window(const TruncatedSeries& f, const TruncatedSeries& g) {
    CheckReport rep{"equal_on_window", true, ""};
    if (f.level() != g.level()) {
        rep.pass = false;
        rep.detail = "level mismatch";
        return rep;
    }
    TruncatedSeries a = f, b = g;
    unify_denominators(a, b);
    const std::int64_t floor = std::max(a.g2_floor(), b.g2_floor());
    std::vector<ExpKey> keys;
    for (const auto& [k, c] : a.terms()) keys.push_back(k);
    for (const auto& [k, c] : b.terms()) keys.push_back(k);
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    std::sort(keys.begin(), keys.end(), [&](const ExpKey& x, const ExpKey& y) {
        return a.term_g2(x) > a.term_g2(y);
    });
    for (const auto& k : keys) {
        if (floor != TruncatedSeries::kNegInf && a.term_g2(k) < floor) continue;
        const GaussianRational ca = a.coefficient(k), cb = b.coefficient(k);
        if (ca != cb) {
            rep.pass = false;
            std::ostringstream os;
            os << "first discrepancy at e^{" << k.a;
            if (a.y_den() != 1) os << "/" << a.y_den();
            os << "," << a.level() << "," << k.m;
            if (a.q_den() != 1) os << "/" << a.q_den();
            os << "} (grade " << a.term_g2(k) << "): " << ca.str() << " vs " << cb.str();
            rep.detail = os.str();
            return rep;
        }
    }
    std::ostringstream os;
    os << "agree on grades >= ";
    if (floor == TruncatedSeries::kNegInf) {
        os << "-inf";
    } else {
        os << floor;
    }
    rep.detail = os.str();
    return rep;
}

}  // namespace casimir
