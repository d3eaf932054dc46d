#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <functional>

#include "kappa_fourier/kernels.hpp"
#include "kappa_fourier/quadrature.hpp"
#include "kappa_fourier/transforms.hpp"
#include "oracles.hpp"

using namespace kappa_fourier;
namespace tr = kappa_fourier::transforms;
namespace qd = kappa_fourier::quadrature;

namespace {

/// Composite Simpson on [lo, hi] with n (even) panels.
template <class F>
auto simpson(F&& f, double lo, double hi, int n = 4000) {
  using R = decltype(f(lo));
  const double h = (hi - lo) / n;
  R sum = f(lo) + f(hi);
  for (int k = 1; k < n; ++k) sum += (k % 2 ? 4.0 : 2.0) * f(lo + k * h);
  return sum * (h / 3.0);
}

/// dnu~_lambda(u) = |u|^{2 lambda + 1} du / (2^{lambda+1} Gamma(lambda+1)) on R.
double nu_tilde_density(double lambda, double u) {
  return std::pow(std::abs(u), 2 * lambda + 1) / (std::pow(2.0, lambda + 1) * std::tgamma(lambda + 1));
}

}  // namespace

TEST(GaussJacobi, BetaMoments) {
  for (double alpha : {-0.7, -0.5, 0.0, 0.8, 2.5}) {
    const auto rule = qd::gauss_jacobi(alpha, 30);
    const double m0 = std::sqrt(oracle::pi) * std::tgamma(alpha + 1) / std::tgamma(alpha + 1.5);
    const double m2 = std::tgamma(1.5) * std::tgamma(alpha + 1) / std::tgamma(alpha + 2.5);
    EXPECT_NEAR(rule.integrate([](double) { return 1.0; }), m0, 1e-13 * m0);
    EXPECT_NEAR(rule.integrate([](double t) { return t; }), 0.0, 1e-14);
    EXPECT_NEAR(rule.integrate([](double t) { return t * t; }), m2, 1e-13 * m2);
  }
}

TEST(KernelViaIntegral, OneAtOrigin) {
  for (unsigned r = 0; r < 4; ++r) {
    const auto rule = qd::gauss_jacobi(0.3 - 0.5, 60);
    EXPECT_NEAR(std::abs(tr::kernel_via_integral(r, 0.3, 0.0, rule) - 1.0), 0.0, 1e-13);
  }
}

TEST(KernelViaIntegral, DunklKernelAtROne) {
  for (double lam : {-0.3, 0.0, 1.4}) {
    const auto rule = qd::gauss_jacobi(lam - 0.5, 80);
    for (double v : {0.5, 3.0, 11.0}) {
      const ComplexVal ref(oracle::j_norm(lam, v), -v / (2 * (lam + 1)) * oracle::j_norm(lam + 1, v));
      EXPECT_NEAR(std::abs(tr::kernel_via_integral(0, lam, v, rule) - ref), 0.0, 1e-12);
    }
  }
}

TEST(KernelViaIntegral, ClosedFormAtTwoSevenTenths) {
  const auto rule = qd::gauss_jacobi(0.7 - 0.5, 80);
  EXPECT_NEAR(std::abs(tr::kernel_via_integral(2, 0.7, 5.3, rule) - oracle::e_odd(2, 0.7, 5.3)), 0.0, 1e-8);
}

TEST(KernelViaIntegral, RejectsMismatchedRule) {
  const auto rule = qd::gauss_jacobi(0.0, 40);
  EXPECT_THROW(tr::kernel_via_integral(1, 1.2, 1.0, rule), Error);
}

TEST(Hankel, GaussianSelfReciprocal) {
  for (double eta : {-0.5, 0.0, 0.5, 2.0})
    for (double v : {0.0, 0.7, 2.0, 5.0})
      EXPECT_NEAR(tr::hankel(eta, [](double u) { return std::exp(-0.5 * u * u); }, v), std::exp(-0.5 * v * v), 1e-12)
          << eta << " " << v;
}

TEST(Hankel, OriginIsTotalMass) {
  // int_0^inf e^{-u^2} u^{2 eta + 1} du / (2^eta Gamma(eta+1)) = 2^{-(eta+1)}.
  for (double eta : {-0.5, 0.3, 1.0})
    EXPECT_NEAR(tr::hankel(eta, [](double u) { return std::exp(-u * u); }, 0.0), std::pow(2.0, -(eta + 1)), 1e-13);
}

TEST(Hankel, ExponentialHasLaplaceHankelForm) {
  // H_lambda(e^{-p u})(v) = 2^{lambda+1} p Gamma(lambda+3/2) / (sqrt(pi) (p^2+v^2)^{lambda+3/2}).
  const double p = std::sqrt(2.0);
  for (double lam : {0.0, 0.5, 1.5})
    for (double v : {0.0, 1.0, 4.0, 10.0}) {
      const double ref = std::pow(2.0, lam + 1) * p * std::tgamma(lam + 1.5) /
                         (std::sqrt(oracle::pi) * std::pow(p * p + v * v, lam + 1.5));
      EXPECT_NEAR(tr::hankel(lam, [p](double u) { return std::exp(-p * u); }, v), ref, 1e-11 * std::max(1.0, ref));
    }
}

TEST(HankelDeformed, OriginIsTotalMass) {
  // int_0^inf e^{-u^2} u^{2 eta + a - 1} du = Gamma(eta + a/2) / 2.
  for (double a : {2.0 / 3.0, 1.0, 4.0}) {
    const double eta = 0.8;
    const double ref = tr::b_eta_a(eta, a) * 0.5 * std::tgamma(eta + 0.5 * a);
    EXPECT_NEAR(tr::hankel_deformed(eta, a, [](double u) { return std::exp(-u * u); }, 0.0), ref, 1e-12);
  }
}

TEST(HankelDeformed, ATwoIsHankel) {
  auto f = [](double u) { return std::exp(-u * u) * (1 + u * u); };
  for (double v : {0.3, 2.0, 6.0})
    EXPECT_NEAR(tr::hankel_deformed(0.7, 2.0, f, v), tr::hankel(0.7, f, v), 1e-13);
}

TEST(HankelDeformed, GaussianChainForAFour) {
  const double a = 4.0;
  for (double lam : {0.0, 0.5, 1.5}) {
    const double lambda_k = 0.5 * a * lam;
    auto ga = [a](double u) { return std::exp(-std::pow(0.5 * a, 2.0 / a) * std::pow(u, 4.0 / a)); };
    for (double v : {0.2, 1.0, 3.0}) {
      const double lhs = tr::hankel_deformed(lambda_k, a, [](double u) { return std::exp(-u * u); }, v);
      const double rhs = tr::hankel(lam, ga, std::sqrt(2.0 / a) * std::pow(v, 0.5 * a));
      EXPECT_NEAR(lhs, rhs, 1e-11);
    }
  }
}

TEST(ChangeOfVars, IdentityAtATwo) {
  auto f = tr::change_of_vars_A([](double x) { return x; }, 2.0);
  for (double u : {-3.0, 0.0, 1.7}) EXPECT_DOUBLE_EQ(f(u), u);
}

TEST(ChangeOfVars, CubeAtTwoThirds) {
  auto f = tr::change_of_vars_A([](double x) { return x; }, 2.0 / 3.0);
  for (double u : {-2.0, 0.5, 3.0}) EXPECT_NEAR(f(u), std::pow(1.0 / 3.0, 1.5) * u * u * u, 1e-14);
}

TEST(ChangeOfVars, IsometryOnGaussian) {
  // dx |x|^{2 kappa + a - 2} = (a/2)^{(2 kappa + a - 1)/a} (2/a) |u|^{2 lambda + 1} du.
  const double a = 2.0 / 3.0;
  const double kappa = 1.0;
  const double lam = (2 * kappa - 1) / a;
  auto f = [](double x) { return std::exp(-x * x); };
  auto Af = tr::change_of_vars_A(f, a);
  // x = t^3 removes the x^{2/3} cusp at the origin.
  const double left = 2.0 * simpson([&](double t) { return 3 * t * t * f(t * t * t) * f(t * t * t) * std::pow(t, 3 * (2 * kappa + a - 2)); }, 0.0, 3.0);
  const double c = std::pow(0.5 * a, (2 * kappa + a - 1) / a) * (2.0 / a);
  const double right = 2.0 * c * simpson([&](double u) { return Af(u) * Af(u) * std::pow(u, 2 * lam + 1); }, 0.0, 4.0);
  EXPECT_NEAR(left, right, 1e-9);
  EXPECT_NEAR(left, std::tgamma(kappa + 0.5 * (a - 1)) / std::pow(2.0, kappa + 0.5 * (a - 1)), 1e-9);
}

TEST(Gft1d, EvenInputHasNoOddPart) {
  const Params p = Params::make(1, 2.0 / 3.0, 0.5);
  for (double y : {-2.0, 0.5, 3.0})
    EXPECT_EQ(tr::gft_1d(p, [](double x) { return std::exp(-x * x); }, y).imag(), 0.0);
}

TEST(Gft1d, ClassicalFourierAtATwo) {
  const Params p = Params::make(1, 2.0, 0.0);
  auto f = [](double x) { return (1 + x) * std::exp(-x * x); };
  for (double y : {-3.0, -0.4, 0.0, 1.1, 4.0}) {
    const ComplexVal direct =
        simpson([&](double x) { return f(x) * std::polar(1.0, -x * y); }, -9.0, 9.0) / std::sqrt(2 * oracle::pi);
    const ComplexVal closed = std::exp(-0.25 * y * y) / std::sqrt(2.0) * ComplexVal(1.0, -0.5 * y);
    EXPECT_NEAR(std::abs(tr::gft_1d(p, f, y) - direct), 0.0, 1e-11);
    EXPECT_NEAR(std::abs(tr::gft_1d(p, f, y) - closed), 0.0, 1e-12);
  }
}

TEST(Gft1d, GaussianEqualsDeformedHankel) {
  for (double a : {2.0 / 3.0, 1.0, 4.0 / 3.0, 3.0})
    for (double kappa : {0.75, 1.0}) {
      const Params p = Params::make(1, a, kappa);
      for (double y : {0.3, 1.5, -2.5}) {
        const ComplexVal g = tr::gft_1d(p, [](double x) { return std::exp(-x * x); }, y);
        const double h = tr::hankel_deformed(p.lambda_k, a, [](double u) { return std::exp(-u * u); }, std::abs(y));
        EXPECT_NEAR(std::abs(g - h), 0.0, 1e-11) << "a=" << a << " kappa=" << kappa << " y=" << y;
      }
    }
}

TEST(FRLambda, ROneZeroIsDunklTransform) {
  const double lam = 0.5;
  auto g = [](double u) { return (1 + u) * std::exp(-u * u); };
  for (double v : {0.0, 0.8, 2.5}) {
    const ComplexVal direct = simpson(
        [&](double u) {
          const ComplexVal e(oracle::j_norm(lam, u * v), -u * v / (2 * (lam + 1)) * oracle::j_norm(lam + 1, u * v));
          return g(u) * e * nu_tilde_density(lam, u);
        },
        -8.0, 8.0);
    EXPECT_NEAR(std::abs(tr::f_r_lambda(0, lam, g, v) - direct), 0.0, 1e-10) << v;
  }
}

TEST(FRLambda, OddMomentMatchesQuadratureAndKummerShape) {
  for (const auto& [r, s] : {std::pair{1u, 1u}, std::pair{1u, 2u}, std::pair{2u, 3u}})
    for (double lam : {0.0, 0.5}) {
      auto g = [s = s](double u) { return std::pow(u, 2.0 * s + 1) * std::exp(-u * u); };
      double ratio0 = 0.0;
      for (double v : {0.5, 1.5, 3.0}) {
        const ComplexVal direct = simpson(
            [&](double u) { return g(u) * oracle::e_odd(r, lam, u * v) * nu_tilde_density(lam, u); }, -9.0, 9.0, 8000);
        const ComplexVal closed = tr::f_r_lambda_odd_moment(r, lam, s, v);
        EXPECT_NEAR(std::abs(closed - direct), 0.0, 1e-10);
        EXPECT_NEAR(std::abs(tr::f_r_lambda(r, lam, g, v) - direct), 0.0, 1e-10);
        const double shape = std::pow(v, 2 * r + 1) * std::exp(-v * v / 4) *
                             oracle::kummer(double(r) - double(s), lam + 2 * r + 2, v * v / 4);
        EXPECT_NEAR(closed.real(), 0.0, 1e-15);
        const double ratio = closed.imag() / shape;
        if (ratio0 == 0.0) ratio0 = ratio;
        EXPECT_NEAR(ratio, ratio0, 1e-12 * std::abs(ratio0));
      }
    }
}

TEST(Plancherel, FourierCaseValue) {
  const auto pl = tr::plancherel_check(0, -0.5, [](double u) { return std::exp(-u * u); });
  // int_R e^{-2u^2} du / sqrt(2 pi) = 1/2.
  EXPECT_NEAR(pl.lhs, 0.5, 1e-12);
  EXPECT_NEAR(pl.rhs, 0.5, 1e-7);
}

TEST(Plancherel, OddGaussianROne) {
  const auto pl = tr::plancherel_check(1, 0.5, [](double u) { return u * std::exp(-u * u); });
  EXPECT_NEAR(pl.rhs / pl.lhs, 1.0, 1e-6);
}

TEST(Plancherel, ZeroFunction) {
  const auto pl = tr::plancherel_check(1, 0.5, [](double) { return 0.0; });
  EXPECT_EQ(pl.lhs, 0.0);
  EXPECT_EQ(pl.rhs, 0.0);
}

TEST(Inversion, RoundTripGaussian) {
  auto g = [](double u) { return std::exp(-u * u); };
  const auto pl = tr::plancherel_check(1, 0.5, g);
  for (double u = -5.0; u <= 5.0; u += 0.25) EXPECT_NEAR(std::abs(pl.table.invert(u) - g(u)), 0.0, 1e-6) << u;
}

TEST(DeltaLambda, EvenInputReducesToBesselOperator) {
  const double lam = 0.7;
  auto g = [](double u) { return std::exp(-u * u); };
  for (double u : {0.3, 1.0, 2.2}) {
    const double g1 = -2 * u * g(u);
    const double g2 = (4 * u * u - 2) * g(u);
    EXPECT_NEAR(std::abs(tr::delta_lambda_apply(1, lam, g, u) - (g2 + (2 * lam + 1) / u * g1)), 0.0, 1e-6);
  }
}

TEST(DeltaLambda, EigenfunctionOfOddKernel) {
  for (unsigned r : {0u, 1u, 2u})
    for (double v : {0.8, 3.0}) {
      auto e = [&](double u) { return kernels::kernel_e_odd(r, 0.5, u * v); };
      for (double u : {0.5, 1.7})
        EXPECT_NEAR(std::abs(tr::delta_lambda_apply(r, 0.5, e, u) + v * v * e(u)), 0.0, 1e-6 * v * v);
    }
}

TEST(DeltaLambda, ClassicalSecondDerivative) {
  const double v = 1.3;
  auto e = [v](double u) { return std::polar(1.0, -u * v); };
  for (double u : {-1.0, 0.4, 2.0})
    EXPECT_NEAR(std::abs(tr::delta_lambda_apply(0, -0.5, e, u) + v * v * e(u)), 0.0, 1e-6);
}

TEST(SchwartzCorrection, EvenInputGivesZero) {
  const auto a = tr::schwartz_correction([](double u) { return std::exp(-u * u) * (1 + u * u); }, 2);
  for (double v : {0.3, 1.0, 2.0}) EXPECT_NEAR(a(v), 0.0, 1e-8);
}

TEST(SchwartzCorrection, OddGaussianOrderZero) {
  const auto a = tr::schwartz_correction([](double u) { return u * std::exp(-u * u); }, 0);
  for (double v : {-1.0, 0.3, 2.0}) EXPECT_NEAR(a(v), v * std::exp(-v * v), 1e-8);
}

TEST(SchwartzCorrection, SuppliedDerivativesAndResidualCheck) {
  // g = (u + u^3) e^{-u^2}: g'(0) = 1, g'''(0) = 0, g^(5)(0) = -60.
  auto g = [](double u) { return (u + u * u * u) * std::exp(-u * u); };
  const auto exact = tr::schwartz_correction(g, 2, std::vector<double>{1.0, 0.0, -60.0});
  const auto est = tr::schwartz_correction(g, 2);
  for (int l = 0; l < 3; ++l) EXPECT_NEAR(est.odd_derivatives[l], exact.odd_derivatives[l], 1e-6);
  for (int s = 0; s <= 2; ++s) {
    const auto d = tr::fd_derivative([&](double x) { return g(x) - exact(x); }, 0.0, 2 * s + 1);
    EXPECT_NEAR(std::abs(d.value), 0.0, 1e-6) << "order " << 2 * s + 1;
  }
}

TEST(SchwartzDiagnose, AlgebraicDecayExponent) {
  for (double lam : {0.0, 0.5, 1.5}) {
    tr::DiagOptions opt;
    opt.noise_floor = 1e-40;
    const auto d =
        tr::schwartz_diagnose([lam](double v) { return 3.0 / std::pow(1 + v * v, lam + 1.5); }, 1.0, 1e4, opt);
    EXPECT_FALSE(d.super_polynomial);
    EXPECT_NEAR(d.decay_exponent, 2 * lam + 3, 1e-3);
  }
}

TEST(SchwartzDiagnose, GaussianIsSuperPolynomial) {
  EXPECT_TRUE(tr::schwartz_diagnose([](double v) { return std::exp(-v * v); }, 0.5, 500.0).super_polynomial);
}

TEST(SchwartzDiagnose, FourThirdsTransformDecaysAlgebraically) {
  const Params p = Params::make(1, 4.0 / 3.0, 0.5);
  auto F = [&](double y) { return tr::gft_1d(p, [](double x) { return std::exp(-x * x); }, y); };
  const auto d = tr::schwartz_diagnose(F, 1.0, 1e4);
  EXPECT_FALSE(d.super_polynomial);
  // Leading odd power u^{4/a} = u^3 of the Gaussian in u, exponent (a/2)(2 lambda + 5) in y.
  EXPECT_NEAR(d.decay_exponent, 10.0 / 3.0, 1e-2);
}

TEST(F1F2Structure, TwoThirdsMixedGaussian) {
  const Params p = Params::make(1, 2.0 / 3.0, 0.5);
  auto F = [&](double y) { return tr::gft_1d(p, [](double x) { return (1 + x) * std::exp(-x * x); }, y); };
  const auto sc = tr::f1_f2_structure(2.0 / 3.0, F, 2.5);
  EXPECT_TRUE(sc.pass);
  EXPECT_LT(sc.tail_f1, 1e-8);
  EXPECT_LT(sc.tail_f2, 1e-8);
}

TEST(DerivativeBound, DominatesFiniteDifferences) {
  auto g = [](double u) { return std::exp(-u * u); };
  for (unsigned n : {1u, 2u}) {
    const auto bound = tr::derivative_moment_bound(0, 0.5, n, g);
    EXPECT_FALSE(bound.heuristic);
    for (double v : {0.0, 1.0, 2.5}) {
      const auto d = tr::fd_derivative([&](double x) { return tr::f_r_lambda(0, 0.5, g, x); }, v, n);
      EXPECT_LE(std::abs(d.value), bound.bound + 1e-8);
    }
  }
  EXPECT_TRUE(tr::derivative_moment_bound(0, -0.3, 1, g).heuristic);
}

TEST(Measures, Constants) {
  EXPECT_NEAR(tr::b_eta(-0.5), std::sqrt(2.0 / oracle::pi), 1e-15);
  EXPECT_NEAR(tr::c_lambda(0.0), 1.0 / oracle::pi, 1e-15);
  EXPECT_NEAR(tr::c_kappa_a(0.0, 2.0), 1.0 / std::sqrt(2 * oracle::pi), 1e-15);
  EXPECT_NEAR(tr::b_eta_a(0.3, 2.0), tr::b_eta(0.3), 1e-15);
}
