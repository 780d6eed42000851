#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "casimir/report.hpp"
#include "casimir/series.hpp"

namespace casimir {

using Complex = std::complex<double>;

// Characteristic (i,j) of a theta function, i,j in {0,1}.
struct ThetaChar {
    int i = 0;
    int j = 0;
    friend bool operator==(const ThetaChar&, const ThetaChar&) = default;
};

// Evaluation point for the coordinate dictionary
//   e^{lambda}(z,u,tau) = exp(pi i (a z + K u - m tau)),  lambda = (a,K,m),
// i.e. e^{alpha1} -> e^{2 pi i z}, e^{-delta} -> e^{pi i tau}, e^{varpi0} -> e^{pi i u}.
struct EvalPoint {
    Complex z{};
    Complex u{};
    Complex tau{0.0, 2.0};

    // strip -Im(tau)/2 < Im(z) < 0 on which all the q-expansions converge
    bool in_domain_D() const {
        return tau.imag() > 0 && z.imag() > -tau.imag() / 2 && z.imag() < 0;
    }
};

struct EvalResult {
    Complex value{};
    double tail_bound = 0.0;  // geometric estimate for the dropped tail
};

// theta(z,tau) = sum_n exp(pi i n^2 tau + 2 pi i n z), |tail| < tol.
Complex theta_numeric(Complex z, Complex tau, double tol = 1e-14);

enum class ThetaForm { product, sum };

// Formal series of theta_{ij} on the lattice: y = e^{alpha1}, q = e^{-delta};
// theta_{10}, theta_{11} carry q^{1/4} y^{1/2} prefactors (theta_{11} also a
// factor i) via exponent denominators.
TruncatedSeries theta_char_series(const ThetaChar& c, std::int64_t g2_floor,
                                  ThetaForm form = ThetaForm::product);

// Normalized Weierstrass series P_{ij} = wp_{ij} / (4 pi^2) with arguments
// substituted y -> y^{y_power}, q -> q^{q_power}; exact rational coefficients.
TruncatedSeries wp_series(const ThetaChar& c, int y_power, int q_power, std::int64_t g2_floor);

// Coefficient-exact verification of the three doubling/shift identities
//   4 P01(y^2,q^2) = P01(y,q) + P00(y,q)
//   4 P11(y^2,q^2) = P11(y,q) + P10(y,q)
//     P11(y^2,q)   = P01(y^2,q^2) + P11(y^2,q^2)
std::vector<CheckReport> wp_identity_check(std::int64_t g2_floor);

// Plain square-cutoff lattice sum for wp(z,tau) with an O(1/cutoff) tail
// estimate; the independent numeric oracle.
EvalResult wp_lattice_numeric(Complex z, Complex tau, int cutoff);

// Row-summed (pi^2/sin^2) evaluation of the same lattice sum; converges
// geometrically in Im(tau). Used where 1e-8 accuracy is needed.
Complex wp_numeric(Complex z, Complex tau, double tol = 1e-12);

// Weierstrass zeta by row-summed lattice series.
Complex zeta_numeric(Complex z, Complex tau, double tol = 1e-12);

// eta_1(tau) = zeta(z0+1,tau) - zeta(z0,tau), independent of z0.
Complex eta1_numeric(Complex tau, double tol = 1e-12);

// eta_1 via (theta'_{11}/theta_{11})'(z) = -wp(z) - eta_1 with analytic
// theta derivatives; cross-check route.
Complex eta1_via_theta(Complex tau, Complex z, double tol = 1e-12);

// Global sign s in wp_{ij}(z,tau) = -wp(z + shift_{ij}, tau) + s*eta_1(tau),
// for (i,j) != (1,1); fixed by the dual-route numeric experiment.
inline constexpr double kEtaOneSign = -1.0;

// Shift of the characteristic-(i,j) function against the plain wp:
// (1,1) -> 0, (1,0) -> 1/2, (0,1) -> tau/2, (0,0) -> (1+tau)/2.
Complex wp_char_shift(const ThetaChar& c, Complex tau);

// Numeric wp_{ij}(z,tau) = -wp(z+shift) + kEtaOneSign^{-}... combined route:
// -wp(z + shift_{ij}, tau) - eta_1(tau) for every characteristic.
Complex wp_char_numeric(const ThetaChar& c, Complex z, Complex tau, double tol = 1e-12);

// Evaluates a formal series at a point of Y via the coordinate dictionary.
// Warns (via the returned flag) rather than failing outside D.
struct SeriesEval {
    Complex value{};
    double tail_bound = 0.0;
    bool point_in_domain = true;
};
SeriesEval eval_series(const TruncatedSeries& f, const EvalPoint& p);

}  // namespace casimir
