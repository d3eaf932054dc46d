#pragma once

// Identity and property suites run by `kappa-fourier verify`.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "kappa_fourier/errors.hpp"
#include "kappa_fourier/genpoly.hpp"
#include "kappa_fourier/kernels.hpp"
#include "kappa_fourier/quadrature.hpp"
#include "kappa_fourier/specfun.hpp"
#include "kappa_fourier/transforms.hpp"

namespace kappa_fourier::suites {

using specfun::kPi;

struct Failure {
  std::string inputs;
  double computed = 0.0;
  double expected = 0.0;
  double residual = 0.0;
  double tolerance = 0.0;
};

struct SuiteResult {
  std::string name;
  std::string module;
  std::string description;
  std::size_t checks = 0;
  std::size_t failed = 0;
  double max_residual = 0.0;
  std::vector<Failure> failures;  // the first kMaxFailures
  std::string error;              // set when the suite aborted
  bool numerical_error = false;
  double seconds = 0.0;

  bool pass() const { return failed == 0 && error.empty(); }
};

inline constexpr std::size_t kMaxFailures = 25;

inline std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// "k1=v1 k2=v2 ..." with round-trip precision.
inline std::string in(std::initializer_list<std::pair<const char*, double>> kv) {
  std::string out;
  for (const auto& [k, v] : kv) {
    if (!out.empty()) out += ' ';
    out += k;
    out += '=';
    out += fmt(v);
  }
  return out;
}

class Recorder {
 public:
  explicit Recorder(SuiteResult& res) : res_(res) {}

  /// Passes when residual <= tol; residual is typically |computed - expected|.
  bool check(const std::string& inputs, double computed, double expected, double residual, double tol) {
    ++res_.checks;
    if (std::isfinite(residual)) res_.max_residual = std::max(res_.max_residual, residual);
    const bool ok = std::isfinite(residual) && residual <= tol;
    if (!ok) {
      ++res_.failed;
      if (res_.failures.size() < kMaxFailures) res_.failures.push_back({inputs, computed, expected, residual, tol});
    }
    return ok;
  }

  bool close(const std::string& inputs, double computed, double expected, double tol) {
    return check(inputs, computed, expected, std::abs(computed - expected), tol);
  }

  bool close(const std::string& inputs, ComplexVal computed, ComplexVal expected, double tol) {
    return check(inputs, std::abs(computed), std::abs(expected), std::abs(computed - expected), tol);
  }

  /// computed <= bound + tol.
  bool at_most(const std::string& inputs, double computed, double bound, double tol) {
    return check(inputs, computed, bound, std::max(0.0, computed - bound), tol);
  }

  bool truth(const std::string& inputs, bool computed, bool expected) {
    return check(inputs, computed ? 1.0 : 0.0, expected ? 1.0 : 0.0, computed == expected ? 0.0 : 1.0, 0.5);
  }

 private:
  SuiteResult& res_;
};

inline std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
  return out;
}

// ---------------------------------------------------------------------------
// specfun

inline void suite_recurrence(Recorder& rec) {
  for (double lam : {-0.4, 0.0, 0.5, 2.5})
    for (double v : linspace(0.0, 50.0, 201)) {
      const double lhs = v * v / (4.0 * (lam + 1.0) * (lam + 2.0)) * specfun::bessel_j_norm(lam + 2.0, v);
      const double rhs = specfun::bessel_j_norm(lam + 1.0, v) - specfun::bessel_j_norm(lam, v);
      rec.close(in({{"lambda", lam}, {"v", v}}), lhs, rhs, 1e-10);
    }
}

inline void suite_bessel_bound(Recorder& rec) {
  for (double nu : {-0.5, -0.25, 0.0, 0.5, 1.0, 2.5, 5.0, 10.0})
    for (double x : linspace(0.0, 200.0, 4001))
      rec.at_most(in({{"order", nu}, {"x", x}}), std::abs(specfun::bessel_j_norm(nu, x)), 1.0, 1e-14);
}

inline void suite_gegenbauer_bound(Recorder& rec) {
  for (double alpha : {-0.5, 0.0, 0.5, 1.5, 3.0})
    for (unsigned n = 0; n <= 12; ++n)
      for (double t : linspace(-1.0, 1.0, 201))
        rec.at_most(in({{"n", n}, {"alpha", alpha}, {"t", t}}), std::abs(specfun::gegenbauer_p(n, alpha, t)),
                    1.0, 1e-13);
}

inline void suite_kummer_termination(Recorder& rec) {
  for (unsigned m = 0; m <= 10; ++m)
    for (double c : {0.5, 2.0, 4.5})
      for (double x : {-3.0, 0.7, 5.0}) {
        const auto sv = specfun::kummer_series(-static_cast<double>(m), c, x);
        rec.close(in({{"a", -static_cast<double>(m)}, {"c", c}, {"x", x}}), sv.terms, m + 1.0, 0.0);
      }
}

inline void suite_bessel_deriv(Recorder& rec) {
  const double h = 1e-3;
  for (double nu : {-0.9, -0.5, 0.0, 1.0, 2.5, 5.0})
    for (double x : linspace(0.1, 30.0, 300)) {
      auto j = [nu](double y) { return specfun::bessel_j_norm(nu, y); };
      const double fd = (j(x - 2 * h) - 8.0 * j(x - h) + 8.0 * j(x + h) - j(x + 2 * h)) / (12.0 * h);
      rec.close(in({{"order", nu}, {"x", x}}), specfun::bessel_j_norm_deriv(nu, x), fd, 1e-8);
    }
}

// ---------------------------------------------------------------------------
// kernels

inline void suite_kernel_bound(Recorder& rec) {
  for (unsigned r = 0; r <= 5; ++r)
    for (double lam : {0.0, 0.5, 1.0, 2.5})
      for (double v : linspace(0.0, 200.0, 4001))
        rec.at_most(in({{"r", r}, {"lambda", lam}, {"v", v}}), std::abs(kernels::kernel_e_odd(r, lam, v)), 1.0,
                    1e-10);
}

inline void suite_reductions(Recorder& rec) {
  for (unsigned r = 0; r <= 3; ++r)
    for (double kappa : {0.45, 0.5, 1.2}) {
      const double a = 2.0 / (2 * r + 1);
      const Params p = Params::make(1, a, kappa);
      for (double v : linspace(-30.0, 30.0, 121)) {
        const double x = std::copysign(std::pow(std::abs(v) / (2 * r + 1), 2 * r + 1), v);
        const ComplexVal e = kernels::kernel_e_odd(r, p.lambda, v);
        const std::string tag = in({{"r", r}, {"kappa", kappa}, {"v", v}});
        rec.close(tag + " form=b", kernels::kernel_b(p, x), e, 1e-10 * std::max(1.0, std::abs(e)));
        rec.close(tag + " form=general", kernels::kernel_e_general(kappa, a, v), e,
                  1e-10 * std::max(1.0, std::abs(e)));
      }
    }
  for (unsigned r = 1; r <= 3; ++r)
    for (double kappa : {0.45, 0.75}) {
      const double a = 1.0 / r;
      const Params p = Params::make(1, a, kappa);
      for (double v : linspace(-30.0, 30.0, 121)) {
        const double x = std::copysign(std::pow(std::abs(v) / (2 * r), 2 * r), v);
        const double e = kernels::kernel_e_even(r, p.lambda, v);
        rec.close(in({{"r", r}, {"kappa", kappa}, {"v", v}}) + " form=even", kernels::kernel_b(p, x),
                  ComplexVal(e), 1e-10 * std::max(1.0, std::abs(e)));
      }
    }
}

inline void suite_dunkl(Recorder& rec) {
  for (double kappa : {0.0, 0.3, 1.0, 2.5}) {
    const double lam = kappa - 0.5;
    for (double v : linspace(-40.0, 40.0, 161)) {
      const ComplexVal dunkl(specfun::bessel_j_norm(lam, v),
                             -v / (2.0 * (lam + 1.0)) * specfun::bessel_j_norm(lam + 1.0, v));
      rec.close(in({{"kappa", kappa}, {"v", v}}), kernels::kernel_e_general(kappa, 2.0, v), dunkl, 1e-12);
    }
  }
  const Params p = Params::make(1, 2.0, 0.0);
  for (double x : linspace(-40.0, 40.0, 161))
    rec.close(in({{"a", 2}, {"kappa", 0}, {"x", x}}), kernels::kernel_b(p, x), std::polar(1.0, -x), 1e-12);
}

inline void suite_psi_reduction(Recorder& rec) {
  for (double eta : {0.5, 1.0, 1.3, 2.0})
    for (double tau : {-1.0, -0.3, 0.0, 0.5, 1.0})
      for (double w : linspace(0.0, 20.0, 41)) {
        kernels::PsiConfig one;
        one.R = 1.0;
        one.eta = eta;
        const std::string tag = in({{"eta", eta}, {"tau", tau}, {"w", w}});
        rec.close(tag + " a=2", kernels::psi_series(one, w, tau), std::polar(1.0, -w * tau), 1e-10);
        kernels::PsiConfig two = one;
        two.R = 2.0;
        const double ref = specfun::bessel_j_norm(eta - 0.5, w * std::sqrt(0.5 * (1.0 + tau)));
        rec.close(tag + " a=1", kernels::psi_series(two, w, tau), ComplexVal(ref), 1e-10);
      }
}

inline void suite_psi_cross(Recorder& rec) {
  for (int R : {2, 3})
    for (double eta : {0.5, 1.0, 2.0})
      for (double tau : {-0.9, 0.0, 0.9})
        for (double w : linspace(0.0, 20.0, 41)) {
          kernels::PsiConfig cfg;
          cfg.R = R;
          cfg.eta = eta;
          rec.close(in({{"R", R}, {"eta", eta}, {"tau", tau}, {"w", w}}), kernels::psi_series(cfg, w, tau),
                    kernels::psi_simplex(R, eta, w, tau, cfg.simplex_quad_order), 1e-6);
        }
}

/// Fejer means stay nonnegative, the exponential type matches the support
/// endpoints, and for a = 1 the partial Fourier sums reproduce the closed
/// density (lambda = 2 eta).
inline void suite_psi_density(Recorder& rec) {
  const double L = 2.0;
  const std::vector<double> t = linspace(-L, L, 401);
  const double resolution = t[1] - t[0];
  for (int R : {2, 3})
    for (double eta : {0.5, 1.0, 2.0})
      for (double tau : {-0.9, 0.0, 0.9}) {
        kernels::PsiConfig cfg;
        cfg.R = R;
        cfg.eta = eta;
        cfg.series_terms = 2000;
        const auto dens = kernels::fejer_density([&](double w) { return kernels::psi_series(cfg, w, tau); }, L, 256, t);
        const std::string tag = in({{"R", R}, {"eta", eta}, {"tau", tau}});
        const double lowest = *std::min_element(dens.begin(), dens.end());
        rec.check(tag + " check=nonnegative", lowest, 0.0, std::max(0.0, -lowest), 1e-7);
        const auto [up, down] = kernels::psi_growth_rates(R, eta, tau, 20.0, 64);
        const double theta = kernels::psi_type(R, tau);
        rec.at_most(tag + " check=support", std::max(up, down), theta, resolution);
        rec.check(tag + " check=type", std::max(up, down), theta, std::abs(std::max(up, down) - theta), resolution);
      }
  const double La = 1.25;
  const int K = 768;
  for (double eta : {3.0, 4.0})
    for (double tau : {-0.5, 0.0, 0.9}) {
      kernels::PsiConfig cfg;
      cfg.R = 2.0;
      cfg.eta = eta;
      cfg.series_terms = 4000;
      const double theta = std::sqrt(0.5 * (1.0 + tau));
      std::vector<double> pts;
      for (int i = 1; i < 100; ++i) pts.push_back(-theta + 2.0 * theta * i / 100.0);
      const auto dens = kernels::fourier_density([&](double w) { return kernels::psi_series(cfg, w, tau); }, La, K,
                                                 pts, kernels::DensitySum::Partial);
      const double lam = 2.0 * eta;
      const double c_lam = transforms::c_lambda(lam);
      std::vector<double> ref(pts.size());
      for (std::size_t i = 0; i < pts.size(); ++i)
        ref[i] = kernels::psi_density_a1(eta, pts[i], tau) * c_lam * std::pow(1.0 - pts[i] * pts[i], lam - 0.5);
      const double peak = *std::max_element(ref.begin(), ref.end());
      for (std::size_t i = 0; i < pts.size(); ++i)
        rec.check(in({{"eta", eta}, {"tau", tau}, {"t", pts[i]}}) + " check=closed-form", dens[i], ref[i],
                  std::abs(dens[i] - ref[i]) / peak, 1e-6);
    }
}

inline void suite_bounded_regime(Recorder& rec) {
  for (double a : {2.0, 1.0, 2.0 / 3.0, 0.5, 0.4})
    for (double kappa : {0.5, 0.75, 1.0, 2.0}) {
      const auto s = kernels::supnorm_search(Params::make(1, a, kappa), 200.0, 0.01);
      rec.at_most(in({{"a", a}, {"kappa", kappa}, {"argmax", s.argmax}}), s.sup, 1.0, 1e-10);
    }
}

/// Above-one witnesses: lattice points 2 pi for a = 2/(2r+1) at the
/// threshold kappa, grid witnesses for a in (1,2) u (2,inf), and the
/// classifier's stored witnesses re-evaluated.
inline void suite_above_one(Recorder& rec) {
  for (unsigned r : {1u, 2u}) {
    const double a = 2.0 / (2 * r + 1);
    const double kappa = 0.5 - 0.25 * a;
    const double m = std::abs(kernels::kernel_e_general(kappa, a, 2.0 * kPi));
    rec.check(in({{"a", a}, {"kappa", kappa}, {"v", 2.0 * kPi}}), m, 1.0, std::max(0.0, 1.0 + 1e-6 - m), 0.0);
  }
  for (double a : {1.5, 3.0})
    for (double kappa : {0.0, 0.25, 0.5, 1.0}) {
      const auto s = kernels::sup_search([&](double v) { return std::abs(kernels::kernel_e_general(kappa, a, v)); },
                                         20.0, 0.01, 1);
      rec.check(in({{"a", a}, {"kappa", kappa}, {"argmax", s.argmax}}), s.sup, 1.0,
                std::max(0.0, 1.0 + 1e-6 - s.sup), 0.0);
    }
  struct Case {
    int d;
    double a;
    double kappa;
  };
  for (const Case c : {Case{1, 3.0, 0.0}, Case{1, 3.0, 0.2}, Case{1, 1.5, 0.2}, Case{1, 2.0 / 3.0, 1.0 / 3.0},
                       Case{2, 1.5, 0.0}, Case{3, 3.0, 0.5}}) {
    const auto v = kernels::classify_boundedness(Params::make(c.d, c.a, c.kappa));
    const std::string tag = in({{"d", c.d}, {"a", c.a}, {"kappa", c.kappa}});
    rec.truth(tag + " check=above-one", v.tag == kernels::BoundednessTag::BoundedAboveOne, true);
    rec.truth(tag + " check=witness", v.witness.has_value() && v.witness_modulus > 1.0 + 1e-12, true);
  }
}

// ---------------------------------------------------------------------------
// genpoly

inline const std::vector<double>& lambda_grid() {
  static const std::vector<double> grid{-0.4, -0.1, 0.0, 0.5, 1.0, 2.5};
  return grid;
}

inline void suite_dual_construction(Recorder& rec) {
  const auto t = linspace(-1.0, 1.0, 512);
  for (unsigned r = 0; r <= 6; ++r)
    for (double lam : lambda_grid()) {
      const auto a = genpoly::q_odd(r, lam);
      const auto b = genpoly::q_odd_sum_form(r, lam);
      for (double x : t) rec.close(in({{"r", r}, {"lambda", lam}, {"t", x}}) + " family=odd", a(x), b(x), 1e-10);
      if (r == 0) continue;
      for (int sgn : {1, -1}) {
        const auto c = genpoly::q_even(r, lam, sgn);
        const auto d = genpoly::q_even_sum_form(r, lam, sgn);
        for (double x : t)
          rec.close(in({{"r", r}, {"lambda", lam}, {"sign_v", sgn}, {"t", x}}) + " family=even", c(x), d(x), 1e-10);
      }
    }
}

/// q_{2r+1}(., lambda) >= 0 exactly when lambda >= 0; for lambda < 0 it is
/// negative at the local minima of T_{2r+1}, and 1 +- P_{2r} is negative at
/// the matching extrema of T_{2r}.
inline void suite_posdef(Recorder& rec) {
  for (unsigned r = 1; r <= 5; ++r)
    for (double lam : {-0.4, -0.2, -0.05, 0.0, 0.3, 1.0}) {
      const auto q = genpoly::q_odd(r, lam);
      const auto rep = genpoly::sign_analysis(q);
      const std::string tag = in({{"r", r}, {"lambda", lam}});
      rec.truth(tag + " check=dichotomy", rep.verdict == genpoly::SignVerdict::Nonnegative, lam >= 0.0);
      if (lam >= 0.0) continue;
      for (double t : genpoly::cheb_extrema(2 * r + 1, genpoly::ExtremaKind::Minima))
        rec.check(tag + " check=odd-minimum t=" + fmt(t), q(t), 0.0, std::max(0.0, q(t)), 0.0);
      // 1 + sign(T_{2r}(t)) P_{2r}(t) at an extremum t: the sign picks the
      // branch where the Chebyshev term is +-1 against the Gegenbauer term.
      for (double t : genpoly::cheb_extrema(2 * r, genpoly::ExtremaKind::AllExtrema)) {
        const double tk = genpoly::detail::chebyshev_t(2 * r, t);
        const int sgn = tk > 0.0 ? -1 : 1;
        const double value = genpoly::q_even(r, lam, sgn)(t);
        rec.check(tag + " check=even-extremum t=" + fmt(t), value, 0.0, std::max(0.0, value), 0.0);
      }
    }
}

inline void suite_decomposition(Recorder& rec) {
  const auto t = linspace(-1.0, 1.0, 512);
  for (unsigned r = 0; r <= 6; ++r)
    for (double lam : lambda_grid()) {
      const auto b = genpoly::decomp_odd(r, lam);
      const std::string tag = in({{"r", r}, {"lambda", lam}});
      rec.close(tag + " check=sum-b", b.sum(), 1.0, 1e-12);
      const auto q = genpoly::q_odd(r, lam);
      for (double x : t) {
        double recon = 0.0;
        for (unsigned s = 0; s <= r; ++s) recon += b.values[s] * genpoly::q_odd(r - s, 0.0)(x);
        rec.close(tag + " check=odd-reconstruction t=" + fmt(x), recon, q(x), 1e-10);
      }
      if (r == 0) continue;
      const auto d = genpoly::decomp_even(r, lam);
      rec.close(tag + " check=sum-d", d.sum(), 1.0, 1e-12);
      const auto qe = genpoly::q_even(r, lam, 1);
      for (double x : t) {
        double recon = 0.0;
        for (unsigned s = 0; s <= r; ++s) recon += d.values[s] * (s == r ? 2.0 : genpoly::q_even(r - s, 0.0, 1)(x));
        rec.close(tag + " check=even-reconstruction t=" + fmt(x), recon, qe(x), 1e-10);
      }
    }
}

// ---------------------------------------------------------------------------
// transforms

inline void suite_integral_rep(Recorder& rec) {
  for (double lam : {-0.4, 0.0, 0.5, 2.0}) {
    const auto rule = quadrature::gauss_jacobi(lam - 0.5, 80);
    for (unsigned r = 0; r <= 4; ++r)
      for (double v : linspace(0.0, 40.0, 81)) {
        const std::string tag = in({{"r", r}, {"lambda", lam}, {"v", v}});
        rec.close(tag + " family=odd", transforms::kernel_via_integral(r, lam, v, rule),
                  kernels::kernel_e_odd(r, lam, v), 1e-8);
        if (r >= 1)
          rec.close(tag + " family=even", transforms::kernel_via_integral_even(r, lam, v, rule),
                    ComplexVal(kernels::kernel_e_even(r, lam, v)), 1e-8);
      }
  }
}

inline void suite_bessel_sum(Recorder& rec) {
  for (unsigned r = 1; r <= 6; ++r)
    for (double lam : {-0.4, 0.0, 0.5, 1.0, 2.5})
      for (double v : linspace(0.0, 50.0, 200))
        rec.close(in({{"r", r}, {"lambda", lam}, {"v", v}}), transforms::even_power_bessel_lhs(r, lam, v),
                  transforms::even_power_bessel_rhs(r, lam, v), 1e-9);
}

inline void suite_derivative_sum(Recorder& rec) {
  for (unsigned r = 1; r <= 6; ++r)
    for (double lam : {-0.4, 0.0, 0.5, 1.0, 2.5})
      for (double v : linspace(0.0, 50.0, 200))
        rec.close(in({{"r", r}, {"lambda", lam}, {"v", v}}), transforms::odd_power_bessel_lhs(r, lam, v),
                  transforms::odd_power_bessel_rhs(r, lam, v), 1e-9);
}

inline void suite_eigen(Recorder& rec) {
  for (unsigned r = 0; r <= 3; ++r)
    for (double lam : {0.0, 0.5, 1.5})
      for (double v : {0.5, 2.0, 7.0})
        for (double u : linspace(0.2, 5.0, 25)) {
          auto e = [&](double x) { return kernels::kernel_e_odd(r, lam, x * v); };
          const ComplexVal d = transforms::delta_lambda_apply(r, lam, e, u);
          rec.close(in({{"r", r}, {"lambda", lam}, {"v", v}, {"u", u}}), d, -v * v * e(u), 1e-6);
        }
}

/// F(delta^n g) = (-1)^n v^{2n} F(g) for g = (1 + u^{2n+1}) e^{-u^2} in S_n.
inline void suite_adjoint(Recorder& rec) {
  for (unsigned r = 0; r <= 2; ++r)
    for (double lam : {0.0, 0.5, 1.5})
      for (unsigned n = 1; n <= 2; ++n) {
        transforms::GaussPoly g;
        g.coeffs.assign(2 * n + 2, 0.0);
        g.coeffs[0] = 1.0;
        g.coeffs[2 * n + 1] = 1.0;
        const auto dg = g.delta_power(r, lam, n);
        for (double v : {0.5, 2.0, 4.0}) {
          const ComplexVal lhs = transforms::f_r_lambda(r, lam, dg, v);
          const ComplexVal rhs = transforms::f_r_lambda(r, lam, g, v) * std::pow(-1.0, n) * std::pow(v, 2.0 * n);
          rec.check(in({{"r", r}, {"lambda", lam}, {"n", n}, {"v", v}}), std::abs(lhs), std::abs(rhs),
                    std::abs(lhs - rhs) / (1.0 + std::abs(rhs)), 1e-6);
        }
      }
}

/// Plancherel and pointwise inversion for the Gaussian family; inversion
/// errors are measured against max |g|.
inline void suite_unitarity(Recorder& rec) {
  const std::vector<std::pair<int, std::function<double(double)>>> family{
      {0, [](double u) { return std::exp(-u * u); }},
      {1, [](double u) { return u * std::exp(-u * u); }},
      {3, [](double u) { return u * u * u * std::exp(-u * u); }}};
  for (const auto& [power, g] : family) {
    double peak = 0.0;
    for (double u : linspace(-5.0, 5.0, 201)) peak = std::max(peak, std::abs(g(u)));
    for (double lam : {-0.5, 0.0, 0.5, 1.5})
      for (unsigned r = 0; r <= 2; ++r) {
        const auto pl = transforms::plancherel_check(r, lam, g);
        const std::string tag = in({{"g_power", power}, {"lambda", lam}, {"r", r}});
        rec.check(tag + " check=plancherel", pl.lhs, pl.rhs, std::abs(pl.lhs - pl.rhs) / pl.rhs, 1e-6);
        for (double u : linspace(-5.0, 5.0, 21)) {
          const ComplexVal back = pl.table.invert(u);
          rec.check(tag + " check=inversion u=" + fmt(u), std::abs(back), g(u), std::abs(back - g(u)) / peak, 1e-6);
        }
      }
  }
}

inline void suite_f1_f2_structure(Recorder& rec) {
  for (const auto& [a, z_max] : {std::pair{2.0 / 3.0, 2.5}, std::pair{1.0, 4.0}}) {
    const Params p = Params::make(1, a, 0.5);
    auto F = [&](double y) {
      return transforms::gft_1d(p, [](double x) { return (1.0 + x) * std::exp(-x * x); }, y);
    };
    const auto sc = transforms::f1_f2_structure(a, F, z_max);
    const std::string tag = in({{"a", a}, {"kappa", 0.5}, {"z_max", z_max}});
    rec.check(tag + " part=F1", sc.tail_f1, 0.0, sc.tail_f1, 1e-8);
    rec.check(tag + " part=F2", sc.tail_f2, 0.0, sc.tail_f2, 1e-8);
  }
}

/// Odd derivatives of F_r^lambda(g) at 0 vanish through order 2r-1 for g in
/// S_r, relative to the moment bound of the same order.
inline void suite_odd_derivatives(Recorder& rec) {
  for (unsigned r = 1; r <= 3; ++r)
    for (double lam : {-0.5, 0.0, 0.5, 1.5}) {
      transforms::GaussPoly g;
      g.coeffs.assign(2 * r + 2, 0.0);
      g.coeffs[0] = 1.0;
      g.coeffs[2 * r + 1] = 1.0;
      auto F = [&](double v) { return transforms::f_r_lambda(r, lam, g, v); };
      for (unsigned k = 0; k + 1 <= r; ++k) {
        const unsigned m = 2 * k + 1;
        const auto d = transforms::fd_derivative(F, 0.0, static_cast<int>(m));
        const double scale = std::max(1.0, transforms::derivative_moment_bound(r, lam, m, g).bound);
        rec.check(in({{"r", r}, {"lambda", lam}, {"order", m}}), std::abs(d.value), 0.0, std::abs(d.value) / scale,
                  1e-6);
      }
    }
}

/// |d^n F_r^lambda(g)(v)| <= M_lambda int |u|^n |g| dnu~.
inline void suite_derivative_bound(Recorder& rec) {
  const std::vector<std::pair<int, std::function<double(double)>>> family{
      {0, [](double u) { return std::exp(-u * u); }}, {1, [](double u) { return u * std::exp(-u * u); }}};
  for (const auto& [power, g] : family)
    for (double lam : {-0.3, 0.0, 0.5})
      for (unsigned r : {0u, 1u})
        for (unsigned n : {1u, 2u}) {
          const auto bound = transforms::derivative_moment_bound(r, lam, n, g);
          auto F = [&](double v) { return transforms::f_r_lambda(r, lam, g, v); };
          for (double v : {0.0, 1.0, 3.0}) {
            const auto d = transforms::fd_derivative(F, v, static_cast<int>(n));
            rec.at_most(in({{"g_power", power}, {"lambda", lam}, {"r", r}, {"n", n}, {"v", v}}), std::abs(d.value),
                        bound.bound, 1e-8);
          }
        }
}

inline void suite_odd_moments(Recorder& rec) {
  for (const auto& [r, s] : {std::pair{0u, 0u}, std::pair{1u, 1u}, std::pair{1u, 2u}, std::pair{2u, 3u}})
    for (double lam : {0.0, 0.5}) {
      auto g = [s = s](double u) { return std::pow(u, 2.0 * s + 1.0) * std::exp(-u * u); };
      const auto vs = linspace(0.0, 8.0, 33);
      double scale = 0.0;
      for (double v : vs) scale = std::max(scale, std::abs(transforms::f_r_lambda_odd_moment(r, lam, s, v)));
      for (double v : vs) {
        const ComplexVal q = transforms::f_r_lambda(r, lam, g, v);
        const ComplexVal c = transforms::f_r_lambda_odd_moment(r, lam, s, v);
        rec.check(in({{"r", r}, {"s", s}, {"lambda", lam}, {"v", v}}), std::abs(q), std::abs(c),
                  std::abs(q - c) / scale, 1e-7);
      }
    }
}

/// a = 4: the deformed route equals H_lambda(g_4) with
/// g_4(u) = exp(-sqrt(2) u), whose Laplace-Hankel closed form is
/// proportional to (2 + v^2)^{-(lambda+3/2)}.
inline void suite_gaussian_a4(Recorder& rec) {
  const double a = 4.0;
  auto g4 = [](double u) { return std::exp(-std::sqrt(2.0) * u); };
  for (double lam : {0.0, 0.5, 1.5}) {
    double first = 0.0;
    for (double v : linspace(0.0, 10.0, 41)) {
      const double h = transforms::hankel(lam, g4, v);
      const double ratio = h * std::pow(2.0 + v * v, lam + 1.5);
      if (v == 0.0) first = ratio;
      rec.check(in({{"lambda", lam}, {"v", v}}) + " check=shape", ratio, first, std::abs(ratio - first) / first, 1e-6);
    }
    // Chain: H_{lambda_k, a}(e^{-rho^2})(v) = H_lambda(g_a)((2/a)^{1/2} v^{a/2}).
    const double lambda_k = 0.5 * a * lam;
    for (double v : {0.3, 1.0, 2.5}) {
      const double lhs = transforms::hankel_deformed(lambda_k, a, [](double u) { return std::exp(-u * u); }, v);
      const double rhs = transforms::hankel(lam, g4, std::sqrt(2.0 / a) * std::pow(v, 0.5 * a));
      rec.close(in({{"lambda", lam}, {"v", v}}) + " check=chain", lhs, rhs, 1e-10);
    }
  }
}

inline void suite_correction_poly(Recorder& rec) {
  auto g = [](double u) { return (u + u * u * u) * std::exp(-u * u); };
  for (unsigned n = 0; n <= 2; ++n) {
    const auto a = transforms::schwartz_correction(g, n);
    for (unsigned s = 0; s <= n; ++s) {
      const auto d = transforms::fd_derivative([&](double x) { return g(x) - a(x); }, 0.0, 2 * static_cast<int>(s) + 1);
      rec.check(in({{"n", n}, {"order", 2 * s + 1}}), std::abs(d.value), 0.0, std::abs(d.value), 1e-6);
    }
  }
}

/// 2/a not an integer: algebraic decay of the transform of e^{-x^2}, with
/// exponent (a/2)(2 lambda + 5) from the u^{4/a} = u^3 term at a = 4/3;
/// 2/a integer: the transform is rapidly decreasing.
inline void suite_schwartz(Recorder& rec) {
  const Params p43 = Params::make(1, 4.0 / 3.0, 0.5);
  auto F43 = [&](double y) { return transforms::gft_1d(p43, [](double x) { return std::exp(-x * x); }, y); };
  const auto d = transforms::schwartz_diagnose(F43, 1.0, 1e4);
  const double expected = 0.5 * p43.a * (2.0 * p43.lambda + 5.0);
  rec.truth("a=4/3 check=power-law", !d.super_polynomial, true);
  rec.check("a=4/3 check=exponent", d.decay_exponent, expected, std::abs(d.decay_exponent - expected), 1e-2);
  rec.check("a=4/3 check=residual", d.regression_residual, 0.0, d.regression_residual, 1e-2);
  const Params p23 = Params::make(1, 2.0 / 3.0, 0.5);
  auto F23 = [&](double y) { return transforms::gft_1d(p23, [](double x) { return std::exp(-x * x); }, y); };
  const auto e = transforms::schwartz_diagnose(F23, 0.5, 500.0);
  rec.truth("a=2/3 check=super-polynomial", e.super_polynomial, true);
}

// ---------------------------------------------------------------------------
// Registry

struct Suite {
  std::string name;
  std::string module;
  std::string description;
  std::function<void(Recorder&)> body;
};

inline const std::vector<Suite>& registry() {
  static const std::vector<Suite> all{
      {"recurrence", "specfun", "three-term recurrence of normalized Bessel functions", suite_recurrence},
      {"bessel-bound", "specfun", "|j_nu| <= 1 for nu >= -1/2", suite_bessel_bound},
      {"gegenbauer-bound", "specfun", "|P_n^(alpha)| <= 1 on [-1,1] for alpha >= -1/2", suite_gegenbauer_bound},
      {"kummer-termination", "specfun", "terminating Kummer series use |a|+1 terms", suite_kummer_termination},
      {"bessel-deriv", "specfun", "analytic j' against central differences", suite_bessel_deriv},
      {"kernel-bound", "kernels", "|e_{2r+1}(v,lambda)| <= 1 for lambda >= 0", suite_kernel_bound},
      {"reductions", "kernels", "odd/even kernels equal b_{kappa,a} under the substitutions", suite_reductions},
      {"dunkl", "kernels", "a = 2 reduces to the Dunkl kernel", suite_dunkl},
      {"psi-reduction", "kernels", "Psi closed forms for a = 2 and a = 1", suite_psi_reduction},
      {"psi-cross", "kernels", "Psi Bessel series against the simplex integral", suite_psi_cross},
      {"psi-density", "kernels", "representing density of Psi: sign, support, a = 1 closed form",
       suite_psi_density},
      {"bounded-regime", "kernels", "sup |e_{kappa,a}| <= 1 when 2/a is an integer and kappa >= 1/2", suite_bounded_regime},
      {"above-one", "kernels", "witnesses of sup |e_{kappa,a}| > 1", suite_above_one},
      {"dual-construction", "genpoly", "1 +- P against the finite-sum forms", suite_dual_construction},
      {"posdef", "genpoly", "nonnegativity of q_{2r+1} exactly for lambda >= 0", suite_posdef},
      {"decomposition", "genpoly", "Chebyshev decompositions and their coefficient sums", suite_decomposition},
      {"integral-rep", "transforms", "kernels as Gegenbauer-weighted integrals", suite_integral_rep},
      {"lemma1", "transforms", "Bessel sum identity for the odd kernel", suite_bessel_sum},
      {"derivative-sum", "transforms", "derivative sum identity with analytic j'", suite_derivative_sum},
      {"eigen", "transforms", "delta_lambda e_{2r+1}(.v) = -v^2 e_{2r+1}(.v)", suite_eigen},
      {"adjoint", "transforms", "F(delta^n g) = (-1)^n v^{2n} F(g)", suite_adjoint},
      {"unitarity", "transforms", "Plancherel and pointwise inversion of F_r^lambda", suite_unitarity},
      {"f1-f2-structure", "transforms", "F1(|y|^{a/2}) + y F2(|y|^{a/2}) structure for 2/a integer", suite_f1_f2_structure},
      {"odd-derivatives", "transforms", "odd derivatives of F_r^lambda(g) vanish for g in S_r", suite_odd_derivatives},
      {"derivative-bound", "transforms", "derivative moment bound", suite_derivative_bound},
      {"odd-moments", "transforms", "F_r^lambda(u^{2s+1} e^{-u^2}) against the Kummer closed form", suite_odd_moments},
      {"gaussian-a4", "transforms", "Gaussian image for a = 4", suite_gaussian_a4},
      {"correction-poly", "transforms", "correction polynomial clears odd derivatives", suite_correction_poly},
      {"schwartz", "transforms", "decay of the Gaussian image for 2/a integer and not", suite_schwartz},
  };
  return all;
}

inline SuiteResult run(const Suite& s) {
  SuiteResult res;
  res.name = s.name;
  res.module = s.module;
  res.description = s.description;
  Recorder rec(res);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    s.body(rec);
  } catch (const Error& e) {
    res.error = e.what();
    res.numerical_error = e.numerical();
  } catch (const std::exception& e) {
    res.error = e.what();
  }
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

/// Suites matching `name`: a suite name, a module name, or "all".
inline std::vector<const Suite*> select(const std::string& name) {
  std::vector<const Suite*> out;
  for (const auto& s : registry())
    if (name == "all" || s.name == name || s.module == name) out.push_back(&s);
  return out;
}

}  // namespace kappa_fourier::suites
