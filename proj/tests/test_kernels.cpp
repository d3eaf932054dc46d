#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "kappa_fourier/kernels.hpp"
#include "kappa_fourier/transforms.hpp"
#include "oracles.hpp"

using namespace kappa_fourier;
using kernels::BoundednessTag;

namespace {

double tanh_sinh(const std::function<double(double)>& f, double lo, double hi) {
  const double h = 1.0 / 64;
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  double sum = 0.0;
  for (int k = -64 * 6; k <= 64 * 6; ++k) {
    const double t = k * h;
    const double s = 0.5 * oracle::pi * std::sinh(t);
    const double x = std::tanh(s);
    const double w = 0.5 * oracle::pi * std::cosh(t) / (std::cosh(s) * std::cosh(s));
    if (1.0 - std::abs(x) < 1e-300) continue;
    sum += w * f(mid + half * x);
  }
  return sum * h * half;
}

}  // namespace

TEST(Params, DerivedLambdas) {
  const Params p = Params::make(3, 1.0, 0.25);
  EXPECT_DOUBLE_EQ(p.lambda_k, 0.75);
  EXPECT_DOUBLE_EQ(p.lambda, 1.5);
  EXPECT_THROW(Params::make(1, 0.4, 0.1), Error);  // 2 lambda_k + a = -0.4
  EXPECT_THROW(Params::make(1, -1.0, 0.5), Error);
}

TEST(KernelB, OneAtOrigin) {
  for (double a : {0.4, 2.0 / 3.0, 1.0, 1.5, 3.0})
    EXPECT_EQ(kernels::kernel_b(Params::make(1, a, 0.6), 0.0), ComplexVal(1.0, 0.0));
}

TEST(KernelB, FourierCase) {
  const Params p = Params::make(1, 2.0, 0.0);
  for (double x = -20.0; x <= 20.0; x += 0.7) EXPECT_NEAR(std::abs(kernels::kernel_b(p, x) - std::polar(1.0, -x)), 0.0, 1e-13);
}

TEST(KernelB, TwoThirdsIsThirdOrderOddKernel) {
  const Params p = Params::make(1, 2.0 / 3.0, 1.0 / 3.0);
  EXPECT_NEAR(p.lambda, -0.5, 1e-15);
  for (double x : {-8.0, -0.3, 0.2, 1.0, 27.0, 300.0}) {
    const double v = 3.0 * std::cbrt(x);
    EXPECT_NEAR(std::abs(kernels::kernel_b(p, x) - oracle::e_odd(1, -0.5, v)), 0.0, 1e-12) << x;
  }
}

TEST(KernelEOdd, FirstOrderAtMinusHalfIsExponential) {
  for (double v = -15.0; v <= 15.0; v += 0.3)
    EXPECT_NEAR(std::abs(kernels::kernel_e_odd(0, -0.5, v) - std::polar(1.0, -v)), 0.0, 1e-13);
}

TEST(KernelEOdd, OneAtOrigin) {
  for (unsigned r = 0; r < 5; ++r) EXPECT_EQ(kernels::kernel_e_odd(r, 0.7, 0.0), ComplexVal(1.0, 0.0));
}

TEST(KernelEOdd, AboveOneAtTwoPi) {
  const ComplexVal e = kernels::kernel_e_odd(1, -0.5, 2 * oracle::pi);
  // j_{-1/2}(2 pi) = 1, so |e| = sqrt(1 + c^2), c = (2 pi)^3/(8 (1/2)_3) j_{5/2}(2 pi).
  const double c = std::pow(2 * oracle::pi, 3) / (8.0 * 1.875) * oracle::j_norm(2.5, 2 * oracle::pi);
  EXPECT_NEAR(std::abs(e), std::sqrt(1.0 + c * c), 1e-12);
  EXPECT_GT(std::abs(e), 1.0 + 1e-6);
}

TEST(KernelEOdd, MatchesTwoBesselOracle) {
  for (unsigned r = 0; r <= 4; ++r)
    for (double lam : {-0.4, 0.0, 0.5, 2.5})
      for (double v = -40.0; v <= 40.0; v += 1.3)
        EXPECT_NEAR(std::abs(kernels::kernel_e_odd(r, lam, v) - oracle::e_odd(r, lam, v)), 0.0, 1e-11)
            << "r=" << r << " lambda=" << lam << " v=" << v;
}

TEST(KernelEEven, OneAtOrigin) {
  for (unsigned r = 1; r < 4; ++r) EXPECT_EQ(kernels::kernel_e_even(r, 0.3, 0.0), 1.0);
}

TEST(KernelEEven, MatchesKernelBAtAOne) {
  const Params p = Params::make(1, 1.0, 0.75);
  EXPECT_DOUBLE_EQ(p.lambda, 0.5);
  for (double v = -12.0; v <= 12.0; v += 0.4) {
    const double x = std::copysign(0.25 * v * v, v);
    const ComplexVal b = kernels::kernel_b(p, x);
    EXPECT_NEAR(b.real(), kernels::kernel_e_even(1, 0.5, v), 1e-13);
    EXPECT_NEAR(b.imag(), 0.0, 1e-13);
    EXPECT_NEAR(kernels::kernel_e_even(1, 0.5, v), oracle::e_general(0.75, 1.0, v).real(), 1e-12);
  }
}

TEST(KernelEEven, BoundaryLambdaZeroWithinUnitInterval) {
  const double e = kernels::kernel_e_even(1, 0.0, 3.0);
  EXPECT_GE(e, -1.0);
  EXPECT_LE(e, 1.0);
}

TEST(KernelEGeneral, OneAtOrigin) {
  for (double a : {0.5, 1.5, 3.0}) EXPECT_EQ(kernels::kernel_e_general(0.6, a, 0.0), ComplexVal(1.0, 0.0));
}

TEST(KernelEGeneral, MatchesOracle) {
  for (double a : {0.4, 2.0 / 3.0, 1.0, 1.5, 3.0, 5.0})
    for (double kappa : {0.5 - a / 4 + 0.05, 0.6, 1.5})
      for (double v = -30.0; v <= 30.0; v += 0.9) {
        if (kappa < 0.0) continue;
        EXPECT_NEAR(std::abs(kernels::kernel_e_general(kappa, a, v) - oracle::e_general(kappa, a, v)), 0.0, 1e-11)
            << "a=" << a << " kappa=" << kappa << " v=" << v;
      }
}

TEST(KernelEGeneral, TwoThirdsKappaOneIsOddKernel) {
  for (double v = -25.0; v <= 25.0; v += 0.5)
    EXPECT_NEAR(std::abs(kernels::kernel_e_general(1.0, 2.0 / 3.0, v) - kernels::kernel_e_odd(1, 1.5, v)), 0.0,
                1e-12);
}

TEST(KernelEGeneral, LatticeModulusAtLeastOnePlusCosSquared) {
  // a = 1.5 at the threshold kappa, v = 2 pi s: the real part tends to
  // 1 + c^2 and the imaginary part to -c sin(pi/a), c = cos(pi/a) = -1/2, so
  // |e| >= 1 + c^2 - O(1/s) and |e| -> sqrt(1 + 3 c^2).
  const double a = 1.5;
  const double kappa = 0.5 - a / 4;
  const double c = std::cos(oracle::pi / a);
  for (int s : {25, 100, 400, 1600}) {
    const ComplexVal e = kernels::kernel_e_general(kappa, a, 2 * oracle::pi * s);
    EXPECT_LT(std::abs(e.real() - (1 + c * c)), 2.0 / s) << "s=" << s;
    EXPECT_GE(std::abs(e), 1 + c * c - 2.0 / s);
    EXPECT_LT(std::abs(std::abs(e) - std::sqrt(1 + 3 * c * c)), 2.0 / s);
  }
}

TEST(Classify, DunklCase) {
  EXPECT_EQ(kernels::classify_boundedness(Params::make(1, 2.0, 0.3)).tag, BoundednessTag::BoundedByOne);
}

TEST(Classify, BelowThresholdIsUnbounded) {
  // Threshold 1/2 - a/4 = 0.4 at a = 0.4; kappa = 0.32 keeps 2 lambda_k + a > 0.
  const auto v = kernels::classify_boundedness(Params::make(1, 0.4, 0.32));
  EXPECT_EQ(v.tag, BoundednessTag::Unbounded);
  EXPECT_EQ(kernels::classify_boundedness(Params::make(1, 0.5, 0.3)).tag, BoundednessTag::Unbounded);
}

TEST(Classify, BoundedTwoOverARegime) {
  EXPECT_EQ(kernels::classify_boundedness(Params::make(1, 1.0, 0.6)).tag, BoundednessTag::BoundedByOne);
  EXPECT_EQ(kernels::classify_boundedness(Params::make(1, 2.0 / 3.0, 0.5)).tag, BoundednessTag::BoundedByOne);
}

TEST(Classify, LargeAHasVerifiedWitness) {
  for (double kappa : {0.0, 0.2}) {
    const auto v = kernels::classify_boundedness(Params::make(1, 3.0, kappa));
    ASSERT_EQ(v.tag, BoundednessTag::BoundedAboveOne);
    ASSERT_TRUE(v.witness.has_value());
    const double m = std::abs(oracle::e_general(kappa, 3.0, *v.witness));
    EXPECT_NEAR(m, v.witness_modulus, 1e-12);
    EXPECT_GT(m, 1.0);
  }
}

TEST(Classify, OpenBandForIntegerRatio) {
  const auto v = kernels::classify_boundedness(Params::make(1, 0.5, 0.4));
  EXPECT_EQ(v.tag, BoundednessTag::Open);
  ASSERT_TRUE(v.open_band.has_value());
  EXPECT_DOUBLE_EQ(v.open_band->first, 0.375);
  EXPECT_DOUBLE_EQ(v.open_band->second, 0.5);
}

TEST(Classify, EdgeKappaHasWitness) {
  const auto v = kernels::classify_boundedness(Params::make(1, 2.0 / 3.0, 1.0 / 3.0));
  EXPECT_EQ(v.tag, BoundednessTag::BoundedAboveOne);
}

TEST(SupnormSearch, DunklIsOneAtOrigin) {
  const auto s = kernels::supnorm_search(Params::make(1, 2.0, 1.0), 50.0, 0.01);
  EXPECT_NEAR(s.sup, 1.0, 1e-14);
  EXPECT_EQ(s.argmax, 0.0);
}

TEST(SupnormSearch, TwoThirdsEdgeNearTwoPi) {
  const auto s = kernels::supnorm_search(Params::make(1, 2.0 / 3.0, 1.0 / 3.0), 20.0, 0.01);
  EXPECT_GT(s.sup, 1.0);
  EXPECT_GE(s.sup, std::abs(oracle::e_odd(1, -0.5, 2 * oracle::pi)) - 1e-12);
}

TEST(SupnormSearch, AOneBoundedByOne) {
  const auto s = kernels::supnorm_search(Params::make(1, 1.0, 0.6), 200.0, 0.01);
  EXPECT_LE(s.sup, 1.0 + 1e-10);
}

TEST(PsiSeries, OneAtOrigin) {
  for (double R : {1.0, 2.0, 3.0, 2.5}) {
    kernels::PsiConfig cfg;
    cfg.R = R;
    cfg.eta = 0.8;
    EXPECT_NEAR(std::abs(kernels::psi_series(cfg, 0.0, 0.3) - 1.0), 0.0, 1e-15);
  }
}

TEST(PsiSeries, ClosedFormsForAOneAndTwo) {
  for (double eta : {0.5, 1.0, 2.5})
    for (double tau : {-1.0, -0.2, 0.6})
      for (double w : {0.5, 4.0, 15.0}) {
        kernels::PsiConfig cfg;
        cfg.eta = eta;
        cfg.R = 1.0;
        EXPECT_NEAR(std::abs(kernels::psi_series(cfg, w, tau) - std::polar(1.0, -w * tau)), 0.0, 1e-10);
        cfg.R = 2.0;
        const double ref = oracle::j_norm(eta - 0.5, w * std::sqrt(0.5 * (1.0 + tau)));
        EXPECT_NEAR(std::abs(kernels::psi_series(cfg, w, tau) - ref), 0.0, 1e-10);
      }
}

TEST(PsiSimplex, RTwoClosedForm) {
  for (double eta : {0.5, 1.5})
    for (double tau : {-0.5, 0.3})
      for (double w : {0.0, 3.0, 9.0}) {
        const double ref = oracle::j_norm(eta - 0.5, w * std::sqrt(0.5 * (1.0 + tau)));
        EXPECT_NEAR(std::abs(kernels::psi_simplex(2, eta, w, tau, 48) - ref), 0.0, 1e-8);
      }
}

TEST(PsiSimplex, OneAtOriginAndSeriesAgreement) {
  EXPECT_NEAR(std::abs(kernels::psi_simplex(3, 1.0, 0.0, 0.2, 48) - 1.0), 0.0, 1e-13);
  kernels::PsiConfig cfg;
  cfg.R = 3.0;
  cfg.eta = 1.0;
  EXPECT_NEAR(std::abs(kernels::psi_simplex(3, 1.0, 5.0, 0.2, 48) - kernels::psi_series(cfg, 5.0, 0.2)), 0.0, 1e-6);
}

TEST(PsiType, Values) {
  for (double tau : {-1.0, -0.3, 0.0, 0.8, 1.0}) EXPECT_NEAR(kernels::psi_type(2, tau), std::sqrt(0.5 * (1 + tau)), 1e-15);
  EXPECT_NEAR(kernels::psi_type(4, 1.0), 1.0, 1e-15);
  EXPECT_NEAR(kernels::psi_type(3, -1.0), 1.0, 1e-15);
  EXPECT_NEAR(kernels::psi_type(3, 1e-9), kernels::psi_type(3, -1e-9), 1e-8);
}

TEST(PsiDensityA1, SupportNormalizationAndTransform) {
  const double eta = 1.5;
  const double lam = 2 * eta;
  const double tau = 0.4;
  const double theta = std::sqrt(0.5 * (1 + tau));
  EXPECT_EQ(kernels::psi_density_a1(eta, theta + 0.01, tau), 0.0);
  EXPECT_EQ(kernels::psi_density_a1(eta, -theta - 0.01, tau), 0.0);
  const double c = transforms::c_lambda(lam);
  auto weight = [&](double t) { return kernels::psi_density_a1(eta, t, tau) * c * std::pow(1 - t * t, lam - 0.5); };
  EXPECT_NEAR(tanh_sinh(weight, -theta, theta), 1.0, 1e-9);
  kernels::PsiConfig cfg;
  cfg.eta = eta;
  cfg.R = 2.0;
  for (double w : {1.0, 4.0, 10.0}) {
    const double re = tanh_sinh([&](double t) { return weight(t) * std::cos(w * t); }, -theta, theta);
    const double im = -tanh_sinh([&](double t) { return weight(t) * std::sin(w * t); }, -theta, theta);
    EXPECT_NEAR(std::abs(ComplexVal(re, im) - kernels::psi_series(cfg, w, tau)), 0.0, 1e-9) << w;
  }
}
