#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "kappa_fourier/specfun.hpp"
#include "oracles.hpp"

namespace sf = kappa_fourier::specfun;
using kappa_fourier::Error;
using kappa_fourier::ErrorCode;

TEST(Pochhammer, EmptyProduct) { EXPECT_EQ(sf::pochhammer(2.5, 0), 1.0); }
TEST(Pochhammer, UnitBaseIsFactorial) { EXPECT_EQ(sf::pochhammer(1.0, 4), 24.0); }
TEST(Pochhammer, HalfBase) { EXPECT_DOUBLE_EQ(sf::pochhammer(0.5, 3), 0.5 * 1.5 * 2.5); }

TEST(Gamma, MatchesLogGammaAndFactorial) {
  for (double x : {0.3, 1.0, 2.5, 7.25, 20.0}) EXPECT_NEAR(std::log(sf::gamma(x)), sf::log_gamma(x), 1e-13);
  EXPECT_EQ(sf::binomial(6, 2), 15.0);
  EXPECT_EQ(sf::factorial(5), 120.0);
}

TEST(BesselJNorm, OneAtOrigin) {
  for (double nu : {-0.9, -0.5, 0.0, 1.3, 12.0}) EXPECT_EQ(sf::bessel_j_norm(nu, 0.0), 1.0);
}

TEST(BesselJNorm, HalfOrdersAreElementary) {
  for (double v = -30.0; v <= 30.0; v += 0.37) {
    EXPECT_NEAR(sf::bessel_j_norm(-0.5, v), std::cos(v), 1e-13);
    if (v != 0.0) EXPECT_NEAR(sf::bessel_j_norm(0.5, v), std::sin(v) / v, 1e-13);
  }
}

TEST(BesselJNorm, AgreesWithStdCylBesselAcrossRegimes) {
  double worst = 0.0;
  for (double nu : {-0.75, -0.4, 0.0, 0.5, 1.0, 2.5, 7.0, 20.0, 45.5})
    for (double x = 0.05; x <= 120.0; x *= 1.13) {
      const double err = std::abs(sf::bessel_j_norm(nu, x) - oracle::j_norm(nu, x));
      worst = std::max(worst, err);
      EXPECT_NEAR(sf::bessel_j_norm(nu, x), oracle::j_norm(nu, x), 1e-11) << "nu=" << nu << " x=" << x;
    }
  RecordProperty("worst_abs_error", std::to_string(worst));
}

TEST(BesselJNorm, EvenInArgument) {
  for (double x : {0.3, 5.0, 40.0}) EXPECT_EQ(sf::bessel_j_norm(1.7, x), sf::bessel_j_norm(1.7, -x));
}

TEST(BesselJNorm, RejectsOrderAtOrBelowMinusOne) {
  try {
    sf::bessel_j_norm(-1.0, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::invalid_order);
  }
}

TEST(BesselJNormDeriv, ZeroAtOrigin) {
  for (double nu : {-0.5, 0.0, 2.0}) EXPECT_EQ(sf::bessel_j_norm_deriv(nu, 0.0), 0.0);
}

TEST(BesselJNormDeriv, MinusSineForOrderMinusHalf) {
  for (double v = -10.0; v <= 10.0; v += 0.5) EXPECT_NEAR(sf::bessel_j_norm_deriv(-0.5, v), -std::sin(v), 1e-13);
}

TEST(BesselJNormDeriv, CentralDifferenceAtSevenTenths) {
  const double h = 1e-4;
  const double fd = (sf::bessel_j_norm(1.0, 0.7 + h) - sf::bessel_j_norm(1.0, 0.7 - h)) / (2 * h);
  EXPECT_NEAR(sf::bessel_j_norm_deriv(1.0, 0.7), fd, 1e-8);
}

TEST(BesselJ, ClassicalScaling) {
  for (double x : {0.5, 3.0, 17.0}) EXPECT_NEAR(sf::bessel_j(2.5, x), std::cyl_bessel_j(2.5, x), 1e-13);
  EXPECT_THROW(sf::bessel_j(1.0, -1.0), Error);
}

TEST(Gegenbauer, NormalizedAtOne) {
  for (unsigned n = 0; n < 10; ++n)
    for (double alpha : {-0.5, 0.0, 0.7, 3.0}) EXPECT_NEAR(sf::gegenbauer_p(n, alpha, 1.0), 1.0, 1e-13);
}

TEST(Gegenbauer, ChebyshevDegreeTwo) {
  for (double t = -1.0; t <= 1.0; t += 0.05) {
    EXPECT_NEAR(sf::gegenbauer_p(2, -0.5, t), 2 * t * t - 1, 1e-14);
    EXPECT_NEAR(sf::gegenbauer_p(2, -0.5, t), std::cos(2 * std::acos(std::clamp(t, -1.0, 1.0))), 1e-13);
  }
}

TEST(Gegenbauer, DegreeThreeAgainstOddFiniteSum) {
  // P_3^{(lambda-1/2)}(t) = t (1 - (lambda+2)/(lambda+1/2) (1-t^2)), lambda = 1.2.
  const double lam = 1.2;
  const double t = 0.3;
  const double ref = t * (1.0 - (lam + 2.0) / (lam + 0.5) * (1.0 - t * t));
  EXPECT_NEAR(sf::gegenbauer_p(3, 0.7, t), ref, 1e-15);
  EXPECT_NEAR(sf::gegenbauer_p(3, 0.7, t), oracle::gegenbauer_normalized(3, 0.7, t), 1e-15);
}

TEST(Gegenbauer, LegendreAtAlphaZero) {
  for (unsigned n = 0; n < 12; ++n)
    for (double t = -1.0; t <= 1.0; t += 0.1) EXPECT_NEAR(sf::gegenbauer_p(n, 0.0, t), std::legendre(n, t), 1e-13);
}

TEST(Gegenbauer, ClassicalNormalizationLinks) {
  // C_n^lambda = (2 lambda)_n / n! P_n^{(lambda - 1/2)}.
  EXPECT_NEAR(sf::gegenbauer_c(2, 1.0, 0.4), 4 * 0.4 * 0.4 - 1, 1e-14);  // U_2
  EXPECT_NEAR(sf::gegenbauer_c_over_lambda(3, 1e-9, 0.3), 2.0 / 3.0 * std::cos(3 * std::acos(0.3)), 1e-7);
}

TEST(Gegenbauer, RejectsOutsideInterval) {
  EXPECT_THROW(sf::gegenbauer_p(2, 0.0, 1.5), Error);
  EXPECT_THROW(sf::gegenbauer_p(2, -1.0, 0.5), Error);
}

TEST(Kummer, OneAtOrigin) { EXPECT_EQ(sf::kummer_phi(1.3, 2.7, 0.0), 1.0); }

TEST(Kummer, TerminatingSumLength) {
  const double lam = 0.5;
  for (int r = 0; r <= 2; ++r)
    for (int s = r; s <= r + 4; ++s) {
      const auto sv = sf::kummer_series(r - s, lam + 2 * r + 2, 1.7);
      EXPECT_EQ(sv.terms, s - r + 1);
      EXPECT_NEAR(sv.value, oracle::kummer(r - s, lam + 2 * r + 2, 1.7), 1e-13);
    }
}

TEST(Kummer, ReflectionIdentity) {
  const double lhs = sf::kummer_phi(1.2, 3.4, 0.9);
  double term = 1.0;
  double rhs_series = 1.0;
  for (int k = 0; k < 60; ++k) {
    term *= (2.2 + k) * -0.9 / ((3.4 + k) * (k + 1.0));
    rhs_series += term;
  }
  EXPECT_NEAR(lhs, std::exp(0.9) * rhs_series, 1e-14);
}

TEST(Kummer, AgreesWithTr1ConfHyperg) {
  for (double a : {-2.5, 0.3, 1.0, 4.0})
    for (double c : {0.5, 2.0, 6.5})
      for (double x : {-8.0, -1.0, 0.4, 3.0, 12.0}) {
        const double ref = oracle::kummer(a, c, x);
        EXPECT_NEAR(sf::kummer_phi(a, c, x), ref, 1e-12 * std::max(1.0, std::abs(ref)))
            << "a=" << a << " c=" << c << " x=" << x;
      }
}

TEST(Kummer, RejectsNonpositiveIntegerC) {
  try {
    sf::kummer_phi(0.5, -2.0, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::invalid_c);
  }
}

TEST(BesselI, ZeroAtOriginForPositiveOrder) {
  EXPECT_EQ(sf::bessel_i_mod(1.5, {0.0, 0.0}), std::complex<double>(0.0, 0.0));
}

TEST(BesselI, ImaginaryAxisGivesRotatedJ) {
  for (double eta : {0.5, 1.0, 2.25})
    for (double w : {0.3, 2.0, 9.0}) {
      const auto lhs = sf::bessel_i_mod(eta, {0.0, -w});
      const auto rhs = std::polar(1.0, -0.5 * oracle::pi * eta) * std::cyl_bessel_j(eta, w);
      EXPECT_NEAR(std::abs(lhs - rhs), 0.0, 1e-13) << "eta=" << eta << " w=" << w;
    }
}

TEST(BesselI, IntegralRepresentationAtHalfOrder) {
  // I_{1/2}(b) = (b/2)^{1/2} / (sqrt(pi) Gamma(1)) int_{-1}^{1} e^{bt} dt, by composite Simpson.
  const double b = 1.3;
  const int n = 2000;
  double integral = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double t = -1.0 + 2.0 * k / n;
    const double w = (k == 0 || k == n) ? 1.0 : (k % 2 ? 4.0 : 2.0);
    integral += w * std::exp(b * t);
  }
  integral *= (2.0 / n) / 3.0;
  const double ref = std::sqrt(b / 2.0) / std::sqrt(oracle::pi) * integral;
  EXPECT_NEAR(sf::bessel_i_mod(0.5, {b, 0.0}).real(), ref, 1e-12);
  EXPECT_NEAR(sf::bessel_i_mod(0.5, {b, 0.0}).real(), std::cyl_bessel_i(0.5, b), 1e-14);
}
