#pragma once

// Integral transforms: Hankel and deformed Hankel, the one-dimensional
// generalized Fourier transform through its even/odd split, the non-deformed
// transform F_r^lambda, the operator delta_lambda and Schwartz-image diagnostics.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "kappa_fourier/errors.hpp"
#include "kappa_fourier/genpoly.hpp"
#include "kappa_fourier/kernels.hpp"
#include "kappa_fourier/quadrature.hpp"
#include "kappa_fourier/specfun.hpp"

namespace kappa_fourier::transforms {

using specfun::kPi;
using quadrature::HalfLineOptions;

// ---------------------------------------------------------------------------
// Measures

/// b_eta = 1 / (2^eta Gamma(eta+1)).
inline double b_eta(double eta) {
  return std::exp(-eta * std::log(2.0) - specfun::log_gamma(eta + 1.0));
}

/// b_{eta,a} = 1 / (a^{2 eta/a} Gamma(2 eta/a + 1)).
inline double b_eta_a(double eta, double a) {
  return std::exp(-(2.0 * eta / a) * std::log(a) - specfun::log_gamma(2.0 * eta / a + 1.0));
}

/// c_{kappa,a} for d = 1: 1 / (2 a^lambda Gamma(lambda+1)), lambda = (2 kappa - 1)/a.
inline double c_kappa_a(double kappa, double a) {
  const double lam = (2.0 * kappa - 1.0) / a;
  return std::exp(-std::log(2.0) - lam * std::log(a) - specfun::log_gamma(lam + 1.0));
}

/// c_lambda = Gamma(lambda+1) / (sqrt(pi) Gamma(lambda+1/2)).
inline double c_lambda(double lambda) {
  return std::exp(specfun::log_gamma(lambda + 1.0) - 0.5 * std::log(kPi) -
                  specfun::log_gamma(lambda + 0.5));
}

enum class MeasureKind { NuEta, NuEtaA, NuTildeLambda, MuKappaA1d };

/// Density of a measure as constant * |u|^power on its support (R_+ for the
/// Hankel measures, R for the symmetric ones).
struct MeasureSpec {
  MeasureKind kind = MeasureKind::NuEta;
  double eta_or_lambda = 0.0;
  double a = 2.0;
  double kappa = 0.0;

  static MeasureSpec nu_eta(double eta) { return {MeasureKind::NuEta, eta, 2.0, 0.0}; }
  static MeasureSpec nu_eta_a(double eta, double a) { return {MeasureKind::NuEtaA, eta, a, 0.0}; }
  static MeasureSpec nu_tilde(double lambda) { return {MeasureKind::NuTildeLambda, lambda, 2.0, 0.0}; }
  static MeasureSpec mu_kappa_a(double kappa, double a) {
    return {MeasureKind::MuKappaA1d, (2.0 * kappa - 1.0) / a, a, kappa};
  }

  double power() const {
    switch (kind) {
      case MeasureKind::NuEta: return 2.0 * eta_or_lambda + 1.0;
      case MeasureKind::NuEtaA: return 2.0 * eta_or_lambda + a - 1.0;
      case MeasureKind::NuTildeLambda: return 2.0 * eta_or_lambda + 1.0;
      case MeasureKind::MuKappaA1d: return 2.0 * kappa + a - 2.0;
    }
    return 0.0;
  }

  double constant() const {
    switch (kind) {
      case MeasureKind::NuEta: return b_eta(eta_or_lambda);
      case MeasureKind::NuEtaA: return b_eta_a(eta_or_lambda, a);
      case MeasureKind::NuTildeLambda: return 0.5 * b_eta(eta_or_lambda);
      case MeasureKind::MuKappaA1d: return c_kappa_a(kappa, a);
    }
    return 0.0;
  }

  bool symmetric() const {
    return kind == MeasureKind::NuTildeLambda || kind == MeasureKind::MuKappaA1d;
  }

  double density(double u) const { return constant() * std::pow(std::abs(u), power()); }
};

/// Integral of f against the measure, folding R onto R_+ for symmetric measures.
template <class F>
auto measure_integral(const MeasureSpec& m, F&& f, HalfLineOptions opt = {}) {
  opt.power = m.power();
  if (!(opt.power > -1.0)) throw Error(ErrorCode::invalid_params, "measure exponent must be > -1");
  const double c = m.constant();
  if (m.symmetric())
    return c * quadrature::integrate_half_line([&](double u) { return f(u) + f(-u); }, opt);
  return c * quadrature::integrate_half_line([&](double u) { return f(u); }, opt);
}

// ---------------------------------------------------------------------------
// Sampled functions

enum class Parity { Even, Odd, None };

/// Tabulated function with local cubic interpolation; zero outside the grid.
struct SampledFn {
  std::vector<double> grid;
  std::vector<std::complex<double>> values;
  std::optional<double> decay_power;
  Parity parity = Parity::None;

  void validate() const {
    if (grid.size() != values.size() || grid.size() < 4)
      throw Error(ErrorCode::invalid_params, "SampledFn needs matching grid and values, >= 4 points");
    for (std::size_t i = 1; i < grid.size(); ++i)
      if (!(grid[i] > grid[i - 1]))
        throw Error(ErrorCode::invalid_params, "SampledFn grid must be strictly increasing");
  }

  /// Checks the parity tag on the mirrored grid points to 1e-12.
  bool parity_consistent() const {
    if (parity == Parity::None) return true;
    const double sgn = parity == Parity::Even ? 1.0 : -1.0;
    for (std::size_t i = 0, j = grid.size() - 1; i < j; ++i, --j) {
      if (std::abs(grid[i] + grid[j]) > 1e-12) return false;
      if (std::abs(values[i] - sgn * values[j]) > 1e-12) return false;
    }
    return true;
  }

  std::complex<double> operator()(double x) const {
    if (x < grid.front() || x > grid.back()) return 0.0;
    const auto it = std::upper_bound(grid.begin(), grid.end(), x);
    std::ptrdiff_t hi = it - grid.begin();
    std::ptrdiff_t lo = std::clamp<std::ptrdiff_t>(hi - 2, 0, static_cast<std::ptrdiff_t>(grid.size()) - 4);
    std::complex<double> acc = 0.0;
    for (std::ptrdiff_t i = lo; i < lo + 4; ++i) {
      double basis = 1.0;
      for (std::ptrdiff_t j = lo; j < lo + 4; ++j)
        if (j != i) basis *= (x - grid[j]) / (grid[i] - grid[j]);
      acc += basis * values[i];
    }
    return acc;
  }
};

// ---------------------------------------------------------------------------
// Hankel transforms

/// H_eta(f)(v) = int_0^inf f(u) j_eta(uv) dnu_eta(u).
template <class F>
auto hankel(double eta, F&& f, double v, HalfLineOptions opt = {}) {
  if (!(eta >= -0.5)) throw Error(ErrorCode::invalid_order, "Hankel order must be >= -1/2");
  opt.power = 2.0 * eta + 1.0;
  opt.frequency = std::abs(v);
  const double c = b_eta(eta);
  return c * quadrature::integrate_half_line(
                 [&](double u) { return f(u) * specfun::bessel_j_norm(eta, u * v); }, opt);
}

/// H_{eta,a}(f)(v) = int_0^inf f(u) j_{2eta/a}((2/a)(vu)^{a/2}) dnu_{eta,a}(u),
/// integrated in w = u^{a/2}, where the Bessel argument is linear.
template <class F>
auto hankel_deformed(double eta, double a, F&& f, double v, HalfLineOptions opt = {}) {
  if (!(a > 0.0) || !(2.0 * eta + a >= 1.0))
    throw Error(ErrorCode::invalid_params, "deformed Hankel needs a > 0 and 2 eta + a >= 1");
  const double order = 2.0 * eta / a;
  const double scale = 2.0 / a * std::pow(std::abs(v), 0.5 * a);
  opt.power = 2.0 * order + 1.0;
  opt.frequency = scale;
  const double c = b_eta_a(eta, a) * 2.0 / a;
  return c * quadrature::integrate_half_line(
                 [&](double w) {
                   return f(std::pow(w, 2.0 / a)) * specfun::bessel_j_norm(order, scale * w);
                 },
                 opt);
}

/// x(u) = sign(u) (a/2)^{1/a} |u|^{2/a}.
inline double change_of_vars_point(double u, double a) {
  const double x = std::pow(0.5 * a, 1.0 / a) * std::pow(std::abs(u), 2.0 / a);
  return u < 0.0 ? -x : x;
}

/// (Af)(u) = f(x(u)).
template <class F>
auto change_of_vars_A(F f, double a) {
  if (!(a > 0.0)) throw Error(ErrorCode::invalid_params, "a must be > 0");
  return [f = std::move(f), a](double u) { return f(change_of_vars_point(u, a)); };
}

namespace detail {

/// u^{-2/a} g_o(u), checked for a finite limit at the origin.
template <class F>
void check_odd_quotient(F&& quotient) {
  const auto q1 = quotient(1e-3);
  const auto q2 = quotient(1e-5);
  const double s1 = std::abs(q1);
  const double s2 = std::abs(q2);
  if (!std::isfinite(s1) || !std::isfinite(s2) || s2 > 1e3 * (s1 + 1e-12))
    throw Error(ErrorCode::origin_singularity, "u^{-2/a} g_o(u) has no finite limit at 0");
}

}  // namespace detail

/// One-dimensional generalized Fourier transform at y via the even/odd split:
/// H_lambda(g_e)(V) + e^{-i pi/a} (2/a)^{1/a} y H_{lambda+2/a}(u^{-2/a} g_o)(V),
/// V = (2/a)^{1/2} |y|^{a/2}.
template <class F>
ComplexVal gft_1d(const Params& p, F&& f, double y, HalfLineOptions opt = {}) {
  if (p.d != 1) throw Error(ErrorCode::invalid_params, "gft_1d needs d = 1");
  if (!(p.lambda >= -0.5)) throw Error(ErrorCode::invalid_lambda, "gft_1d needs lambda >= -1/2");
  const double a = p.a;
  const double big_v = std::sqrt(2.0 / a) * std::pow(std::abs(y), 0.5 * a);
  auto value = [&](double x) { return ComplexVal(f(x)); };
  auto g_e = [&](double u) {
    const double x = change_of_vars_point(u, a);
    return 0.5 * (value(x) + value(-x));
  };
  auto g_o_quotient = [&](double u) {
    const double x = change_of_vars_point(u, a);
    return 0.5 * (value(x) - value(-x)) * std::pow(u, -2.0 / a);
  };
  ComplexVal out;
  try {
    out = hankel(p.lambda, g_e, big_v, opt);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::tail_bound_failure) throw Error(ErrorCode::decay_failure, e.what());
    throw;
  }
  if (y == 0.0) return out;
  if (std::abs(value(1.0) - value(-1.0)) + std::abs(value(0.5) - value(-0.5)) +
          std::abs(value(2.0) - value(-2.0)) ==
      0.0)
    return out;
  detail::check_odd_quotient(g_o_quotient);
  ComplexVal odd;
  try {
    odd = hankel(p.lambda + 2.0 / a, g_o_quotient, big_v, opt);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::tail_bound_failure) throw Error(ErrorCode::decay_failure, e.what());
    throw;
  }
  return out + std::polar(1.0, -kPi / a) * std::pow(2.0 / a, 1.0 / a) * y * odd;
}

// ---------------------------------------------------------------------------
// Kernel through its integral representation

inline void require_jacobi_rule(const quadrature::QuadRule& rule, double lambda) {
  const double alpha = lambda - 0.5;
  if (rule.kind != quadrature::RuleKind::GaussJacobi && rule.kind != quadrature::RuleKind::GaussLegendre)
    throw Error(ErrorCode::rule_mismatch, "rule must be Gauss-Jacobi");
  if (std::abs(rule.alpha - alpha) > 1e-14 || std::abs(rule.beta - alpha) > 1e-14)
    throw Error(ErrorCode::rule_mismatch, "rule exponent must equal lambda - 1/2");
}

/// c_lambda int (1-t^2)^{lambda-1/2} q_{2r+1}(t,lambda) e^{-ivt} dt with a
/// Gauss-Jacobi rule of exponent lambda - 1/2.
inline ComplexVal kernel_via_integral(unsigned r, double lambda, double v,
                                      const quadrature::QuadRule& rule) {
  if (!(lambda > -0.5)) throw Error(ErrorCode::invalid_lambda, "lambda must be > -1/2");
  require_jacobi_rule(rule, lambda);
  ComplexVal sum = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double t = rule.nodes[i];
    const double q = 1.0 + specfun::gegenbauer_p(2 * r + 1, lambda - 0.5, t);
    sum += rule.weights[i] * q * std::polar(1.0, -v * t);
  }
  return c_lambda(lambda) * sum;
}

/// Even analogue with q_{2r}(t, v, lambda) = 1 + sign(v) P_{2r}(t).
inline ComplexVal kernel_via_integral_even(unsigned r, double lambda, double v,
                                           const quadrature::QuadRule& rule) {
  if (!(lambda > -0.5)) throw Error(ErrorCode::invalid_lambda, "lambda must be > -1/2");
  if (r == 0) throw Error(ErrorCode::invalid_params, "even kernel needs r >= 1");
  require_jacobi_rule(rule, lambda);
  const double s = v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0);
  ComplexVal sum = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double t = rule.nodes[i];
    const double q = 1.0 + s * specfun::gegenbauer_p(2 * r, lambda - 0.5, t);
    sum += rule.weights[i] * q * std::polar(1.0, -v * t);
  }
  return c_lambda(lambda) * sum;
}

// ---------------------------------------------------------------------------
// Bessel identities

/// Left side v^{2r} j_{lambda+2r}(v) / (2^{2r} (lambda+1)_{2r}).
inline double even_power_bessel_lhs(unsigned r, double lambda, double v) {
  return std::pow(0.5 * v, 2.0 * r) / specfun::pochhammer(lambda + 1.0, 2 * r) *
         specfun::bessel_j_norm(lambda + 2.0 * r, v);
}

/// Finite combination of j_{lambda+s}, s = 0..r.
inline double even_power_bessel_rhs(unsigned r, double lambda, double v) {
  if (r == 0) return specfun::bessel_j_norm(lambda, v);
  double sum = (r % 2 == 0 ? 1.0 : -1.0) * specfun::bessel_j_norm(lambda, v);
  for (unsigned s = 1; s + 1 <= r; ++s) {
    const double sgn = ((s + r) % 2 == 0) ? 1.0 : -1.0;
    sum += sgn * specfun::binomial(r, s) * specfun::pochhammer(lambda + r, s) /
           specfun::pochhammer(lambda + 1.0, s) * specfun::bessel_j_norm(lambda + s, v);
  }
  sum += specfun::pochhammer(lambda + r + 1.0, r - 1) / specfun::pochhammer(lambda + 1.0, r - 1) *
         specfun::bessel_j_norm(lambda + r, v);
  return sum;
}

/// Left side v^{2r+1} j_{lambda+2r+1}(v) / (2^{2r+1} (lambda+1)_{2r+1}).
inline double odd_power_bessel_lhs(unsigned r, double lambda, double v) {
  return std::pow(0.5 * v, 2.0 * r + 1.0) / specfun::pochhammer(lambda + 1.0, 2 * r + 1) *
         specfun::bessel_j_norm(lambda + 2.0 * r + 1.0, v);
}

/// (-1)^{r+1} sum_s (-1)^s C(r,s) (lambda+r+1)_s/(lambda+1)_s j'_{lambda+s}(v).
inline double odd_power_bessel_rhs(unsigned r, double lambda, double v) {
  double sum = 0.0;
  for (unsigned s = 0; s <= r; ++s) {
    const double sgn = (s % 2 == 0) ? 1.0 : -1.0;
    sum += sgn * specfun::binomial(r, s) * specfun::pochhammer(lambda + r + 1.0, s) /
           specfun::pochhammer(lambda + 1.0, s) * specfun::bessel_j_norm_deriv(lambda + s, v);
  }
  return (r % 2 == 0 ? -1.0 : 1.0) * sum;
}

// ---------------------------------------------------------------------------
// Non-deformed transform F_r^lambda

enum class Direction { Forward, Inverse };

inline double nu_tilde_constant(double lambda) { return 0.5 * b_eta(lambda); }

/// int_R e_{2r+1}(uv, lambda) g(u) dnu~_lambda(u) (forward) or with the
/// conjugate kernel (inverse), folded onto R_+. At lambda = -1/2 the kernel
/// formula reads cos(uv) + ..., the limit of the closed form.
template <class G>
ComplexVal f_r_lambda(unsigned r, double lambda, G&& g, double v,
                      Direction dir = Direction::Forward, HalfLineOptions opt = {}) {
  if (!(lambda >= -0.5)) throw Error(ErrorCode::invalid_lambda, "lambda must be >= -1/2");
  opt.power = 2.0 * lambda + 1.0;
  opt.frequency = std::abs(v);
  auto integrand = [&](double u) {
    const ComplexVal e = kernels::kernel_e_odd(r, lambda, u * v);
    const ComplexVal k = dir == Direction::Forward ? e : std::conj(e);
    return k * ComplexVal(g(u)) + std::conj(k) * ComplexVal(g(-u));
  };
  try {
    return nu_tilde_constant(lambda) * quadrature::integrate_half_line(integrand, opt);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::tail_bound_failure) throw Error(ErrorCode::decay_failure, e.what());
    throw;
  }
}

/// Closed form of F_r^lambda(u^{2s+1} e^{-u^2})(v):
/// i (-1)^{r+1} v^{2r+1} Gamma(lambda+r+s+2) / (2^{lambda+2r+2} Gamma(lambda+2r+2))
///   * Phi(lambda+r+s+2; lambda+2r+2; -v^2/4).
inline ComplexVal f_r_lambda_odd_moment(unsigned r, double lambda, unsigned s, double v) {
  const double c = std::exp(specfun::log_gamma(lambda + r + s + 2.0) -
                            (lambda + 2.0 * r + 2.0) * std::log(2.0) -
                            specfun::log_gamma(lambda + 2.0 * r + 2.0));
  const double phi = specfun::kummer_phi(lambda + r + s + 2.0, lambda + 2.0 * r + 2.0, -0.25 * v * v);
  const double sgn = (r % 2 == 0) ? -1.0 : 1.0;
  return {0.0, sgn * c * std::pow(v, 2.0 * r + 1.0) * phi};
}

/// F_r^lambda(g) tabulated on [0, v_split] at the nodes of a half-line rule,
/// for both signs of v, plus a fitted model of the odd part beyond v_split,
/// sum_j C_j v^{-(2 lambda + 3 + 2j)}. The algebraic tail arises when g is not
/// in S_r; for g in S_r the fitted coefficients come out at rounding level.
struct TransformTable {
  unsigned r = 0;
  double lambda = 0.0;
  std::vector<double> nodes;
  std::vector<double> weights;  // include the nu~ density
  std::vector<ComplexVal> plus;
  std::vector<ComplexVal> minus;
  double v_split = 0.0;
  std::vector<ComplexVal> tail_coeffs;
  double tail_fit_residual = 0.0;
  double v_end = 8192.0;

  double tail_exponent(std::size_t j) const { return 2.0 * lambda + 3.0 + 2.0 * j; }

  /// Odd-part model for v > v_split (F(-v) = -model(v)).
  ComplexVal tail_model(double v) const {
    ComplexVal s = 0.0;
    for (std::size_t j = 0; j < tail_coeffs.size(); ++j)
      s += tail_coeffs[j] * std::pow(v / v_split, -tail_exponent(j));
    return s;
  }

  double norm_squared() const {
    double s = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i)
      s += weights[i] * (std::norm(plus[i]) + std::norm(minus[i]));
    if (tail_coeffs.empty()) return s;
    const auto gl = quadrature::cached_gauss_legendre(24);
    const double c = 0.5 * b_eta(lambda);
    double lo = v_split;
    for (int k = 0; k < 30; ++k, lo *= 2.0) {
      for (std::size_t i = 0; i < gl->size(); ++i) {
        const double v = lo * (1.5 + 0.5 * gl->nodes[i]);
        s += 0.5 * lo * gl->weights[i] * c * std::pow(v, 2.0 * lambda + 1.0) * 2.0 * std::norm(tail_model(v));
      }
    }
    return s;
  }

  /// int conj(e(uv)) F(v) dnu~(v), the tail integrated to v_end.
  ComplexVal invert(double u) const {
    ComplexVal s = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const ComplexVal e = kernels::kernel_e_odd(r, lambda, u * nodes[i]);
      s += weights[i] * (std::conj(e) * plus[i] + e * minus[i]);
    }
    if (tail_coeffs.empty() || u == 0.0) return s;
    const auto gl = quadrature::cached_gauss_legendre(24);
    const double c = 0.5 * b_eta(lambda);
    const double width = std::min(4.0, 4.0 * kPi / std::abs(u));
    const int panels = static_cast<int>(std::ceil((v_end - v_split) / width));
    const double h = (v_end - v_split) / panels;
    for (int p = 0; p < panels; ++p) {
      const double lo = v_split + p * h;
      for (std::size_t i = 0; i < gl->size(); ++i) {
        const double v = lo + 0.5 * h * (1.0 + gl->nodes[i]);
        const ComplexVal e = kernels::kernel_e_odd(r, lambda, u * v);
        // conj(e) F(v) + e F(-v) with F odd: -2i Im(e) F(v).
        s += 0.5 * h * gl->weights[i] * c * std::pow(v, 2.0 * lambda + 1.0) *
             ComplexVal(0.0, -2.0 * e.imag()) * tail_model(v);
      }
    }
    return s;
  }
};

struct TableOptions {
  double v_split = 24.0;
  double panel_width = 1.0;
  int points_per_panel = 24;
  int tail_terms = 5;
  double even_tail_tolerance = 1e-9;
  double v_end = 8192.0;
  HalfLineOptions inner{};
};

template <class G>
TransformTable tabulate_transform(unsigned r, double lambda, G&& g, const TableOptions& topt = {}) {
  TransformTable tab;
  tab.r = r;
  tab.lambda = lambda;
  tab.v_split = topt.v_split;
  tab.v_end = topt.v_end;
  auto forward = [&](double v) { return f_r_lambda(r, lambda, g, v, Direction::Forward, topt.inner); };
  const auto rule = quadrature::composite_rule(topt.v_split, topt.panel_width, 2.0 * lambda + 1.0,
                                               topt.points_per_panel);
  tab.nodes = rule.nodes;
  tab.weights = rule.weights;
  for (double& w : tab.weights) w *= nu_tilde_constant(lambda);
  tab.plus.resize(rule.size());
  tab.minus.resize(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) {
    tab.plus[i] = forward(rule.nodes[i]);
    tab.minus[i] = forward(-rule.nodes[i]);
  }

  // Even part must have decayed by v_split; the odd part gets the model.
  double even_tail = 0.0;
  std::vector<std::size_t> fit_rows;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double v = rule.nodes[i];
    if (v < 0.5 * topt.v_split) continue;
    fit_rows.push_back(i);
    even_tail = std::max(even_tail, 0.5 * std::abs(tab.plus[i] + tab.minus[i]) * std::pow(v, 2.0 * lambda + 2.0));
  }
  if (even_tail > topt.even_tail_tolerance)
    throw Error(ErrorCode::decay_failure, "even part of the transform has not decayed by v_split");
  const int terms = topt.tail_terms;
  Eigen::MatrixXd design(fit_rows.size(), terms);
  Eigen::MatrixXcd rhs(fit_rows.size(), 1);
  for (std::size_t k = 0; k < fit_rows.size(); ++k) {
    const double v = rule.nodes[fit_rows[k]];
    for (int j = 0; j < terms; ++j) design(k, j) = std::pow(v / topt.v_split, -tab.tail_exponent(j));
    rhs(k, 0) = 0.5 * (tab.plus[fit_rows[k]] - tab.minus[fit_rows[k]]);
  }
  const Eigen::MatrixXcd coeffs = design.cast<std::complex<double>>().colPivHouseholderQr().solve(rhs);
  tab.tail_coeffs.resize(terms);
  for (int j = 0; j < terms; ++j) tab.tail_coeffs[j] = coeffs(j, 0);
  double resid = 0.0;
  for (std::size_t k = 0; k < fit_rows.size(); ++k)
    resid = std::max(resid, std::abs(rhs(k, 0) - tab.tail_model(rule.nodes[fit_rows[k]])));
  tab.tail_fit_residual = resid;
  return tab;
}

struct PlancherelResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double lhs_coarse = 0.0;  // same sum on panels twice as wide
  double tail_fit_residual = 0.0;
  TransformTable table;  // the fine table, reusable for inversion
};

/// (int |F_r^lambda g|^2 dnu~, int |g|^2 dnu~).
template <class G>
PlancherelResult plancherel_check(unsigned r, double lambda, G&& g, const TableOptions& topt = {}) {
  PlancherelResult out;
  HalfLineOptions hopt = topt.inner;
  hopt.power = 2.0 * lambda + 1.0;
  hopt.frequency = 0.0;
  auto sq = [&](double u) { return std::norm(ComplexVal(g(u))) + std::norm(ComplexVal(g(-u))); };
  if (sq(0.5) + sq(1.0) + sq(2.0) == 0.0) return out;
  out.rhs = nu_tilde_constant(lambda) * quadrature::integrate_half_line(sq, hopt);
  const TransformTable fine = tabulate_transform(r, lambda, g, topt);
  TableOptions coarse_opt = topt;
  coarse_opt.panel_width = 2.0 * topt.panel_width;
  out.lhs = fine.norm_squared();
  out.tail_fit_residual = fine.tail_fit_residual;
  out.lhs_coarse = tabulate_transform(r, lambda, g, coarse_opt).norm_squared();
  out.table = fine;
  return out;
}

// ---------------------------------------------------------------------------
// Finite differences

/// Fornberg weights for the m-th derivative at x0 on the given nodes.
inline std::vector<double> fornberg_weights(int m, const std::vector<double>& x, double x0) {
  const int n = static_cast<int>(x.size());
  std::vector<std::vector<double>> c(n, std::vector<double>(m + 1, 0.0));
  double c1 = 1.0;
  double c4 = x[0] - x0;
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) w[i] = c[i][m];
  return w;
}

struct FdOptions {
  double h = 0.0;  // <= 0: default step for the order
  int levels = 2;  // Richardson levels
  int extra_points = 2;
};

struct FdValue {
  ComplexVal value;
  double error_estimate = 0.0;
};

/// Default step: wider for higher orders so that rounding (~eps/h^m) stays
/// well below the truncation error after extrapolation.
inline double default_fd_step(int m) { return m <= 2 ? 2e-2 : std::min(0.25, 0.02 * m); }

/// m-th derivative at x0 by a central stencil of 2p+1 points,
/// p = ceil(m/2) + extra_points, with Richardson extrapolation over h, h/2, ...
template <class F>
FdValue fd_derivative(F&& f, double x0, int m, const FdOptions& opt = {}) {
  if (m < 0) throw Error(ErrorCode::invalid_params, "derivative order must be >= 0");
  const int p = (m + 1) / 2 + opt.extra_points;
  const double h0 = opt.h > 0.0 ? opt.h : default_fd_step(m);
  std::vector<double> offsets;
  for (int k = -p; k <= p; ++k) offsets.push_back(k);
  const auto w = fornberg_weights(m, offsets, 0.0);
  const int accuracy = m == 0 ? 2 * p : 2 * p - 2 * ((m - 1) / 2);
  auto estimate = [&](double h) {
    ComplexVal s = 0.0;
    for (int k = -p; k <= p; ++k) s += w[k + p] * ComplexVal(f(x0 + k * h));
    return s / std::pow(h, m);
  };
  std::vector<std::vector<ComplexVal>> table(opt.levels + 1);
  for (int i = 0; i <= opt.levels; ++i) table[i].push_back(estimate(h0 / std::pow(2.0, i)));
  for (int j = 1; j <= opt.levels; ++j) {
    const double factor = std::pow(2.0, accuracy + 2 * (j - 1));
    for (int i = j; i <= opt.levels; ++i)
      table[i].push_back((factor * table[i][j - 1] - table[i - 1][j - 1]) / (factor - 1.0));
  }
  FdValue out;
  out.value = table[opt.levels][opt.levels];
  out.error_estimate = opt.levels >= 1
                           ? std::abs(table[opt.levels][opt.levels] - table[opt.levels][opt.levels - 1])
                           : 0.0;
  if (!std::isfinite(std::abs(out.value)))
    throw Error(ErrorCode::derivative_estimation_failure, "non-finite difference quotient");
  return out;
}

// ---------------------------------------------------------------------------
// delta_lambda

struct DeltaOptions {
  double h = 1e-2;
};

/// delta_lambda g(u) = g'' + (2 lambda+1)/u g' - (lambda+1/2 + 2r(lambda+r+1)) (g(u)-g(-u))/u^2,
/// derivatives by an 8th-order central difference.
template <class G>
ComplexVal delta_lambda_apply(unsigned r, double lambda, G&& g, double u, const DeltaOptions& opt = {}) {
  if (u == 0.0) throw Error(ErrorCode::origin_singularity, "delta_lambda needs u != 0");
  const double h = opt.h;
  auto val = [&](double x) { return ComplexVal(g(x)); };
  static constexpr double d1[] = {1.0 / 280, -4.0 / 105, 1.0 / 5, -4.0 / 5, 0.0,
                                  4.0 / 5,   -1.0 / 5,   4.0 / 105, -1.0 / 280};
  static constexpr double d2[] = {-1.0 / 560, 8.0 / 315, -1.0 / 5, 8.0 / 5, -205.0 / 72,
                                  8.0 / 5,    -1.0 / 5,  8.0 / 315, -1.0 / 560};
  ComplexVal g1 = 0.0;
  ComplexVal g2 = 0.0;
  for (int k = -4; k <= 4; ++k) {
    const ComplexVal gk = val(u + k * h);
    g1 += d1[k + 4] * gk;
    g2 += d2[k + 4] * gk;
  }
  g1 /= h;
  g2 /= h * h;
  const double kdiff = lambda + 0.5 + 2.0 * r * (lambda + r + 1.0);
  return g2 + (2.0 * lambda + 1.0) / u * g1 - kdiff * (val(u) - val(-u)) / (u * u);
}

/// p(u) e^{-u^2} with polynomial p; delta_lambda acts exactly on this class.
struct GaussPoly {
  std::vector<ComplexVal> coeffs;  // p(u) = sum_k coeffs[k] u^k

  ComplexVal poly(double u) const {
    ComplexVal acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * u + *it;
    return acc;
  }

  ComplexVal operator()(double u) const { return poly(u) * std::exp(-u * u); }

  /// Odd derivatives of the function at 0 (orders 1, 3, ..., 2n-1) vanish.
  bool in_s_n(unsigned n, double tol = 1e-12) const {
    // Taylor coefficients of p e^{-u^2} at 0.
    const std::size_t deg = 2 * n + 1;
    std::vector<ComplexVal> taylor(deg + 1, 0.0);
    for (std::size_t k = 0; k < coeffs.size() && k <= deg; ++k)
      for (std::size_t j = 0; k + 2 * j <= deg; ++j)
        taylor[k + 2 * j] += coeffs[k] * ((j % 2 == 0) ? 1.0 : -1.0) / specfun::factorial(j);
    for (unsigned s = 0; s < n; ++s)
      if (std::abs(taylor[2 * s + 1]) > tol) return false;
    return true;
  }

  /// delta_lambda applied exactly; throws origin-singularity when the result
  /// is not of the same form (odd part not O(u^3)).
  GaussPoly delta(unsigned r, double lambda) const {
    const std::size_t n = coeffs.size();
    auto coef = [&](std::ptrdiff_t k) {
      return (k >= 0 && static_cast<std::size_t>(k) < n) ? coeffs[k] : ComplexVal(0.0);
    };
    // L(u) = u^2 A(u) + (2 lambda+1) u B(u) - 2K p_odd(u), delta g = L/u^2 e^{-u^2},
    // A = p'' - 2p - 4u p' + 4u^2 p, B = p' - 2u p.
    const double kdiff = lambda + 0.5 + 2.0 * r * (lambda + r + 1.0);
    std::vector<ComplexVal> big_l(n + 4, 0.0);
    for (std::size_t m = 0; m < n + 4; ++m) {
      const auto k = static_cast<std::ptrdiff_t>(m);
      // u^2 A: coefficient of u^m is A_{m-2}.
      const std::ptrdiff_t i = k - 2;
      ComplexVal a_coef = static_cast<double>((i + 2) * (i + 1)) * coef(i + 2) - 2.0 * coef(i) -
                          4.0 * static_cast<double>(i) * coef(i) + 4.0 * coef(i - 2);
      if (i < 0) a_coef = 0.0;
      // u B: coefficient of u^m is B_{m-1}.
      const std::ptrdiff_t j = k - 1;
      ComplexVal b_coef = static_cast<double>(j + 1) * coef(j + 1) - 2.0 * coef(j - 1);
      if (j < 0) b_coef = 0.0;
      big_l[m] = a_coef + (2.0 * lambda + 1.0) * b_coef;
      if (m % 2 == 1) big_l[m] -= 2.0 * kdiff * coef(k);
    }
    double scale = 0.0;
    for (const auto& c : big_l) scale = std::max(scale, std::abs(c));
    if (std::abs(big_l[0]) > 1e-12 * (1.0 + scale) || std::abs(big_l[1]) > 1e-12 * (1.0 + scale))
      throw Error(ErrorCode::origin_singularity, "delta_lambda g is singular at the origin");
    GaussPoly out;
    out.coeffs.assign(big_l.begin() + 2, big_l.end());
    while (out.coeffs.size() > 1 && out.coeffs.back() == ComplexVal(0.0)) out.coeffs.pop_back();
    return out;
  }

  GaussPoly delta_power(unsigned r, double lambda, unsigned times) const {
    GaussPoly out = *this;
    for (unsigned k = 0; k < times; ++k) out = out.delta(r, lambda);
    return out;
  }
};

// ---------------------------------------------------------------------------
// Correction polynomial a_n(g)

/// a_n(g)(v) = sum_{k<=n} sum_{l<=k} 1/(k-l)! g^{(2l+1)}(0)/(2l+1)! v^{2k+1} e^{-v^2},
/// from the odd derivatives d[l] = g^{(2l+1)}(0), l = 0..n.
struct SchwartzCorrection {
  std::vector<double> odd_derivatives;

  double operator()(double v) const {
    const int n = static_cast<int>(odd_derivatives.size()) - 1;
    double acc = 0.0;
    for (int k = 0; k <= n; ++k) {
      double inner = 0.0;
      for (int l = 0; l <= k; ++l)
        inner += odd_derivatives[l] / (specfun::factorial(k - l) * specfun::factorial(2 * l + 1));
      acc += inner * std::pow(v, 2 * k + 1);
    }
    return acc * std::exp(-v * v);
  }
};

/// Builds a_n(g); odd derivatives at 0 are estimated by finite differences
/// unless supplied.
template <class G>
SchwartzCorrection schwartz_correction(G&& g, unsigned n,
                                       std::optional<std::vector<double>> supplied = std::nullopt,
                                       const FdOptions& fd = {}) {
  SchwartzCorrection out;
  if (supplied) {
    if (supplied->size() < n + 1)
      throw Error(ErrorCode::invalid_params, "need odd derivatives through order 2n+1");
    out.odd_derivatives.assign(supplied->begin(), supplied->begin() + n + 1);
    return out;
  }
  for (unsigned l = 0; l <= n; ++l) {
    const FdValue d = fd_derivative([&](double x) { return ComplexVal(g(x)); }, 0.0, 2 * l + 1, fd);
    const double scale = 1.0 + std::abs(d.value);
    if (d.error_estimate > 1e-5 * scale)
      throw Error(ErrorCode::derivative_estimation_failure,
                  "derivative of order " + std::to_string(2 * l + 1) + " did not stabilize");
    out.odd_derivatives.push_back(d.value.real());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Schwartz diagnostics

struct SchwartzDiag {
  bool super_polynomial = false;
  double decay_exponent = 0.0;  // meaningful when !super_polynomial
  double regression_residual = 0.0;
  std::vector<double> decade_slopes;
  bool smooth_at_origin = false;  // true: every tested order stabilized
  int origin_smoothness_order = 0;
  std::vector<bool> odd_derivative_zeros;  // orders 1, 3, 5, ...
};

struct DiagOptions {
  int points_per_decade = 10;
  double noise_floor = 1e-14;  // relative to max |F| on the range
  int max_smoothness_order = 6;
  double origin_step = 0.2;
  int odd_orders = 3;
  double zero_tolerance = 1e-6;
};

namespace detail {

inline std::pair<double, double> linear_fit(const std::vector<double>& x, const std::vector<double>& y,
                                            double* residual = nullptr) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  const double slope = sxy / sxx;
  const double icpt = my - slope * mx;
  if (residual) {
    double ss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) ss += std::pow(y[i] - icpt - slope * x[i], 2);
    *residual = std::sqrt(ss / n);
  }
  return {slope, icpt};
}

}  // namespace detail

/// Decay at infinity by log-log regression over [v_lo, v_hi] (at least three
/// decades), smoothness at the origin by stabilization of central differences
/// under step halving, and odd derivatives at 0.
template <class F>
SchwartzDiag schwartz_diagnose(F&& f, double v_lo, double v_hi, const DiagOptions& opt = {}) {
  if (!(v_lo > 0.0) || !(v_hi >= 1e3 * v_lo * (1.0 - 1e-12)))
    throw Error(ErrorCode::insufficient_range, "decay regression needs three decades");
  SchwartzDiag out;
  auto mag = [&](double v) { return std::abs(ComplexVal(f(v))); };

  const double decades = std::log10(v_hi / v_lo);
  const int count = static_cast<int>(std::ceil(decades * opt.points_per_decade)) + 1;
  std::vector<double> lx;
  std::vector<double> ly;
  double peak = 0.0;
  std::vector<double> vals(count);
  for (int i = 0; i < count; ++i) {
    const double v = v_lo * std::pow(10.0, decades * i / (count - 1));
    vals[i] = mag(v);
    peak = std::max(peak, vals[i]);
  }
  for (int i = 0; i < count; ++i) {
    const double v = v_lo * std::pow(10.0, decades * i / (count - 1));
    if (vals[i] > opt.noise_floor * peak && vals[i] > 1e-290) {
      lx.push_back(std::log10(v));
      ly.push_back(std::log10(vals[i]));
    } else {
      break;
    }
  }
  const double span = lx.size() >= 2 ? lx.back() - lx.front() : 0.0;
  for (double start = lx.empty() ? 0.0 : lx.front(); start + 1.0 <= lx.back() + 1e-9; start += 1.0) {
    std::vector<double> sx;
    std::vector<double> sy;
    for (std::size_t i = 0; i < lx.size(); ++i)
      if (lx[i] >= start - 1e-9 && lx[i] <= start + 1.0 + 1e-9) {
        sx.push_back(lx[i]);
        sy.push_back(ly[i]);
      }
    if (sx.size() >= 3) out.decade_slopes.push_back(detail::linear_fit(sx, sy).first);
  }
  if (span < 2.0 - 1e-9 || out.decade_slopes.size() < 2) {
    out.super_polynomial = true;
  } else {
    const double last = out.decade_slopes.back();
    const double prev = out.decade_slopes[out.decade_slopes.size() - 2];
    if (std::abs(last - prev) > 0.1 * std::max(1.0, std::abs(prev))) {
      out.super_polynomial = last < prev;
    }
    if (!out.super_polynomial) {
      std::vector<double> tx;
      std::vector<double> ty;
      for (std::size_t i = 0; i < lx.size(); ++i)
        if (lx[i] >= lx.back() - 2.0 - 1e-9) {
          tx.push_back(lx[i]);
          ty.push_back(ly[i]);
        }
      double resid = 0.0;
      out.decay_exponent = -detail::linear_fit(tx, ty, &resid).first;
      out.regression_residual = resid;
    }
  }

  // Origin: an order m derivative exists when the estimates under step
  // halving settle; for |y|^p with m > p they grow like h^{p-m}.
  out.smooth_at_origin = true;
  out.origin_smoothness_order = opt.max_smoothness_order;
  for (int m = 1; m <= opt.max_smoothness_order; ++m) {
    FdOptions fd;
    fd.levels = 0;
    fd.extra_points = 1;
    std::vector<double> est;
    for (int k = 0; k < 4; ++k) {
      fd.h = opt.origin_step / std::pow(2.0, k);
      est.push_back(std::abs(fd_derivative([&](double x) { return ComplexVal(f(x)); }, 0.0, m, fd).value));
    }
    const bool growing = est[3] > 1.2 * est[2] && est[2] > 1.2 * est[1] && est[3] > 1e-6;
    if (growing) {
      out.smooth_at_origin = false;
      out.origin_smoothness_order = m - 1;
      break;
    }
  }
  for (int k = 0; k < opt.odd_orders; ++k) {
    const FdValue d = fd_derivative([&](double x) { return ComplexVal(f(x)); }, 0.0, 2 * k + 1);
    out.odd_derivative_zeros.push_back(std::abs(d.value) < opt.zero_tolerance);
  }
  return out;
}

/// Sampled check of F(y) = F1(|y|^{a/2}) + y F2(|y|^{a/2}) with F1, F2 smooth
/// even functions of z = |y|^{a/2}: Chebyshev coefficients of F1 and F2 on
/// [-Z, Z] (even extension) must decay to tail_tolerance. For contrast the
/// even part is also expanded in y itself.
struct StructureCheck {
  double tail_f1 = 0.0;  // max |c_k| over the last 10 coefficients / max |c_k|, real and imaginary parts pooled
  double tail_f2 = 0.0;
  double tail_even_in_y = 0.0;
  bool pass = false;
};

template <class F>
StructureCheck f1_f2_structure(double a, F&& transform, double z_max, int degree = 79,
                              double tail_tolerance = 1e-8) {
  auto f1 = [&](double z) {
    const double y = std::pow(std::abs(z), 2.0 / a);
    return 0.5 * (ComplexVal(transform(y)) + ComplexVal(transform(-y)));
  };
  auto f2 = [&](double z) {
    const double y = std::pow(std::abs(z), 2.0 / a);
    return (ComplexVal(transform(y)) - ComplexVal(transform(-y))) / (2.0 * y);
  };
  auto tail = [&](auto&& fn, double half_width) {
    double top = 0.0;
    double end = 0.0;
    for (int part = 0; part < 2; ++part) {
      const auto p = genpoly::chebyshev_interpolate(
          [&](double s) {
            const ComplexVal v = fn(half_width * s);
            return part == 0 ? v.real() : v.imag();
          },
          degree);
      for (int k = 0; k <= degree; ++k) {
        top = std::max(top, std::abs(p.coeffs[k]));
        if (k > degree - 10) end = std::max(end, std::abs(p.coeffs[k]));
      }
    }
    return top > 0.0 ? end / top : 0.0;
  };
  StructureCheck out;
  out.tail_f1 = tail(f1, z_max);
  out.tail_f2 = tail(f2, z_max);
  const double y_max = std::pow(z_max, 2.0 / a);
  out.tail_even_in_y = tail([&](double y) { return f1(std::pow(std::abs(y), 0.5 * a)); }, y_max);
  out.pass = out.tail_f1 < tail_tolerance && out.tail_f2 < tail_tolerance;
  return out;
}

// ---------------------------------------------------------------------------
// Kernel bound for lambda < 0 and the derivative moment bound

/// Empirical max |e_{2r+1}(v, lambda)| over [0, v_max]; exactly 1 for lambda >= 0.
inline double empirical_kernel_bound(unsigned r, double lambda, double v_max = 200.0, double step = 0.01) {
  if (lambda >= 0.0) return 1.0;
  auto modulus = [&](double v) { return std::abs(kernels::kernel_e_odd(r, lambda, v)); };
  return std::max(1.0, kernels::sup_search(modulus, v_max, step, 1).sup);
}

struct MomentBound {
  double bound = 0.0;
  bool heuristic = false;  // true when M_lambda is the empirical grid maximum
};

/// M_lambda int |u|^n |g(u)| dnu~_lambda(u), bounding |d^n F_r^lambda(g)|.
template <class G>
MomentBound derivative_moment_bound(unsigned r, double lambda, unsigned n, G&& g) {
  HalfLineOptions opt;
  opt.power = 2.0 * lambda + 1.0 + n;
  const double moment = nu_tilde_constant(lambda) *
                        quadrature::integrate_half_line(
                            [&](double u) { return std::abs(ComplexVal(g(u))) + std::abs(ComplexVal(g(-u))); },
                            opt);
  MomentBound out;
  out.heuristic = lambda < 0.0;
  out.bound = empirical_kernel_bound(r, lambda) * moment;
  return out;
}

}  // namespace kappa_fourier::transforms
