#pragma once

// One-dimensional (kappa,a)-kernels, the radial multivariate function Psi,
// boundedness verdicts and sup-norm searches.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "kappa_fourier/errors.hpp"
#include "kappa_fourier/quadrature.hpp"
#include "kappa_fourier/specfun.hpp"

namespace kappa_fourier {

using ComplexVal = std::complex<double>;

/// Parameter bundle (d, a, kappa) with lambda_k = kappa + (d-2)/2 and
/// lambda = 2 lambda_k / a.
struct Params {
  int d = 1;
  double a = 2.0;
  double kappa = 0.0;
  double lambda_k = -0.5;
  double lambda = -0.5;

  static Params make(int d, double a, double kappa) {
    if (d < 1) throw Error(ErrorCode::invalid_params, "dimension must be positive");
    if (!(a > 0.0) || !std::isfinite(a)) throw Error(ErrorCode::invalid_params, "a must be > 0");
    if (!(kappa >= 0.0) || !std::isfinite(kappa))
      throw Error(ErrorCode::invalid_params, "kappa must be >= 0");
    Params p;
    p.d = d;
    p.a = a;
    p.kappa = kappa;
    p.lambda_k = kappa + 0.5 * (d - 2);
    p.lambda = 2.0 * p.lambda_k / a;
    if (!(2.0 * p.lambda_k + a > 0.0))
      throw Error(ErrorCode::invalid_params, "need 2 lambda_k + a > 0");
    return p;
  }
};

namespace kernels {

using specfun::kPi;

namespace detail {

inline void require_lambda(double lambda) {
  if (!(lambda > -1.0) || !std::isfinite(lambda))
    throw Error(ErrorCode::invalid_lambda, "lambda must be > -1");
}

inline double sign(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

/// |v|^p / (2^p (lambda+1)_p) for real p >= 0, via log-gamma.
inline double scaled_power(double v, double p, double lambda) {
  if (v == 0.0) return p == 0.0 ? 1.0 : 0.0;
  return std::exp(p * std::log(0.5 * std::abs(v)) + specfun::log_gamma(lambda + 1.0) -
                  specfun::log_gamma(lambda + 1.0 + p));
}

}  // namespace detail

/// b_{kappa,a}(x) for d = 1, principal branch (ai)^{2/a} = a^{2/a} e^{i pi/a}.
inline ComplexVal kernel_b(const Params& p, double x) {
  if (p.d != 1) throw Error(ErrorCode::invalid_params, "kernel_b needs d = 1");
  const double lam = p.lambda;
  const double z = 2.0 / p.a * std::pow(std::abs(x), 0.5 * p.a);
  const double even = specfun::bessel_j_norm(lam, z);
  if (x == 0.0) return {even, 0.0};
  const double ratio = std::exp(specfun::log_gamma(lam + 1.0) -
                                specfun::log_gamma(lam + 1.0 + 2.0 / p.a));
  const double mag = ratio * x * std::pow(p.a, -2.0 / p.a) *
                     specfun::bessel_j_norm(lam + 2.0 / p.a, z);
  return ComplexVal(even, 0.0) + mag * std::polar(1.0, -kPi / p.a);
}

/// e_{2r+1}(v, lambda) = j_lambda(v) + i(-1)^{r+1} v^{2r+1}/(2^{2r+1}(lambda+1)_{2r+1}) j_{lambda+2r+1}(v).
inline ComplexVal kernel_e_odd(unsigned r, double lambda, double v) {
  detail::require_lambda(lambda);
  const unsigned n = 2 * r + 1;
  const double coeff = std::pow(0.5 * v, static_cast<int>(n)) / specfun::pochhammer(lambda + 1.0, n);
  const double odd = coeff * specfun::bessel_j_norm(lambda + n, v);
  const double s = (r % 2 == 0) ? -1.0 : 1.0;
  return {specfun::bessel_j_norm(lambda, v), s * odd};
}

/// e_{2r}(v, lambda) = j_lambda(v) + (-1)^r v^{2r}/(2^{2r}(lambda+1)_{2r}) j_{lambda+2r}(v) sign v.
inline double kernel_e_even(unsigned r, double lambda, double v) {
  detail::require_lambda(lambda);
  if (r == 0) throw Error(ErrorCode::invalid_params, "kernel_e_even needs r >= 1");
  const unsigned n = 2 * r;
  const double coeff = std::pow(0.5 * v, static_cast<int>(n)) / specfun::pochhammer(lambda + 1.0, n);
  const double s = (r % 2 == 0) ? 1.0 : -1.0;
  return specfun::bessel_j_norm(lambda, v) +
         s * coeff * specfun::bessel_j_norm(lambda + n, v) * detail::sign(v);
}

/// e_{kappa,a}(v) = b_{kappa,a}((a|v|/2)^{2/a} sign v), written in the
/// cos(pi/a), sin(pi/a) split. Only 2 kappa - 1 + a > 0 is required.
inline ComplexVal kernel_e_general(double kappa, double a, double v) {
  if (!(a > 0.0) || !(2.0 * kappa - 1.0 + a > 0.0))
    throw Error(ErrorCode::invalid_params, "need a > 0 and 2 kappa - 1 + a > 0");
  const double lam = (2.0 * kappa - 1.0) / a;
  const double rho = 2.0 / a;
  const double even = specfun::bessel_j_norm(lam, v);
  if (v == 0.0) return {even, 0.0};
  const double t = detail::scaled_power(v, rho, lam) * specfun::bessel_j_norm(lam + rho, v) *
                   detail::sign(v);
  return {even + std::cos(kPi / a) * t, -std::sin(kPi / a) * t};
}

// ---------------------------------------------------------------------------
// Sup-norm search

struct SupResult {
  double sup = 1.0;
  double argmax = 0.0;
};

namespace detail {

/// True when (value, v) beats (best, best_v): larger modulus, then smaller
/// |v|, then positive v.
inline bool better(double value, double v, double best, double best_v) {
  if (value != best) return value > best;
  if (std::abs(v) != std::abs(best_v)) return std::abs(v) < std::abs(best_v);
  return v > best_v;
}

template <class F>
SupResult golden_refine(F&& modulus, SupResult best, double half_width) {
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int round = 0; round < 3; ++round) {
    double lo = best.argmax - half_width;
    double hi = best.argmax + half_width;
    double x1 = hi - phi * (hi - lo);
    double x2 = lo + phi * (hi - lo);
    double f1 = modulus(x1);
    double f2 = modulus(x2);
    for (int it = 0; it < 40; ++it) {
      if (f1 >= f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - phi * (hi - lo);
        f1 = modulus(x1);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + phi * (hi - lo);
        f2 = modulus(x2);
      }
    }
    const double x = 0.5 * (lo + hi);
    const double fx = modulus(x);
    if (better(fx, x, best.sup, best.argmax)) best = {fx, x};
    half_width *= 0.5;
  }
  return best;
}

}  // namespace detail

/// Maximum of |f| over the symmetric grid {-v_max, ..., -step, 0, step, ..., v_max}
/// followed by three rounds of golden-section refinement around the best
/// grid point. The sweep is split into contiguous chunks across threads and
/// reduced in chunk order, so the result does not depend on the thread count.
template <class F>
SupResult sup_search(F&& modulus, double v_max, double step, unsigned threads = 0) {
  if (!(v_max > 0.0) || !(step > 0.0))
    throw Error(ErrorCode::invalid_params, "v_max and step must be positive");
  const long n = static_cast<long>(std::floor(v_max / step + 1e-9));
  const long count = 2 * n + 1;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<long>(threads, std::max<long>(1, count / 256)));
  std::vector<SupResult> partial(threads, SupResult{-1.0, 0.0});
  auto work = [&](unsigned t) {
    const long lo = count * t / threads;
    const long hi = count * (t + 1) / threads;
    SupResult best{-1.0, 0.0};
    for (long i = lo; i < hi; ++i) {
      const double v = (i - n) * step;
      const double m = modulus(v);
      if (detail::better(m, v, best.sup, best.argmax)) best = {m, v};
    }
    partial[t] = best;
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  SupResult best{-1.0, 0.0};
  for (const auto& r : partial)
    if (detail::better(r.sup, r.argmax, best.sup, best.argmax)) best = r;
  return detail::golden_refine(modulus, best, step);
}

/// Grid supremum of |e_{kappa,a}| for d = 1.
inline SupResult supnorm_search(const Params& p, double v_max, double grid_step,
                                unsigned threads = 0) {
  if (p.d != 1) throw Error(ErrorCode::invalid_params, "supnorm_search needs d = 1");
  const double kappa = p.kappa;
  const double a = p.a;
  return sup_search([kappa, a](double v) { return std::abs(kernel_e_general(kappa, a, v)); },
                    v_max, grid_step, threads);
}

// ---------------------------------------------------------------------------
// Psi_a^d

/// Configuration of the radial function Psi. R = 2/a; integer R is the
/// positive-definite family, real R is accepted for small-w witnesses.
struct PsiConfig {
  double R = 2.0;
  double eta = 1.0;
  int series_terms = 600;
  int simplex_quad_order = 48;
  double tolerance = 1e-13;
};

struct PsiSeriesValue {
  ComplexVal value;
  int terms = 0;
  double tail_bound = 0.0;
};

namespace detail {

/// (eta+j)/eta C_j^eta(tau) together with the bound (eta+j)/eta (2 eta)_j/j!
/// of its modulus on [-1,1]; eta = 0 gives the limit 2 T_j(tau).
inline std::pair<double, double> psi_gegenbauer_factor(unsigned j, double eta, double tau) {
  if (j == 0) return {1.0, 1.0};
  const double scale = (eta + j) * 2.0 *
                       std::exp(specfun::log_gamma(2.0 * eta + j) - specfun::log_gamma(2.0 * eta + 1.0) -
                                specfun::log_gamma(j + 1.0));
  return {scale * specfun::gegenbauer_p(j, eta - 0.5, tau), scale};
}

}  // namespace detail

/// Psi_a^d(w, tau) by its Bessel series with a certified tail:
/// term_j = e^{-i pi R j/2} (eta+j)/eta C_j^eta(tau) Gamma(R eta+1)/Gamma(R(eta+j)+1)
///          (w/2)^{R j} j_{R(eta+j)}(w).
inline PsiSeriesValue psi_series_detail(const PsiConfig& cfg, double w, double tau) {
  if (!(cfg.R > 0.0)) throw Error(ErrorCode::invalid_params, "R must be positive");
  if (!(cfg.eta >= 0.0)) throw Error(ErrorCode::invalid_params, "eta must be >= 0");
  if (!(w >= 0.0)) throw Error(ErrorCode::domain_error, "w must be >= 0");
  if (!(std::abs(tau) <= 1.0 + 1e-14)) throw Error(ErrorCode::domain_error, "tau outside [-1,1]");
  tau = std::clamp(tau, -1.0, 1.0);
  if (w == 0.0) return {ComplexVal(1.0, 0.0), 1, 0.0};
  const double R = cfg.R;
  const double eta = cfg.eta;
  const double lg0 = specfun::log_gamma(R * eta + 1.0);
  const double log_half_w = std::log(0.5 * w);
  auto log_mag = [&](unsigned j) {
    return lg0 - specfun::log_gamma(R * (eta + j) + 1.0) + R * j * log_half_w;
  };
  ComplexVal sum(0.0, 0.0);
  for (unsigned j = 0; j < static_cast<unsigned>(cfg.series_terms); ++j) {
    const auto [factor, factor_bound] = detail::psi_gegenbauer_factor(j, eta, tau);
    const double nu = R * (eta + j);
    const double jn = specfun::bessel_j_norm(nu, w);
    if (factor != 0.0 && jn != 0.0) {
      const double mag = std::exp(log_mag(j) + std::log(std::abs(jn)));
      sum += std::polar(factor * mag * (jn < 0.0 ? -1.0 : 1.0), -0.5 * kPi * R * j);
    }
    // Tail certification for the remainder starting at j+1.
    const auto [f1, b1] = detail::psi_gegenbauer_factor(j + 1, eta, 1.0);
    const auto [f2, b2] = detail::psi_gegenbauer_factor(j + 2, eta, 1.0);
    const double next = b1 * std::exp(log_mag(j + 1));
    const double after = b2 * std::exp(log_mag(j + 2));
    const bool monotone = R * (eta + j + 1) > w && after <= 0.5 * next;
    if (monotone && 2.0 * next < 0.5 * cfg.tolerance)
      return {sum, static_cast<int>(j) + 1, 2.0 * next};
  }
  throw Error(ErrorCode::truncation_failure,
              "Psi series tail not certified within " + std::to_string(cfg.series_terms) +
                  " terms");
}

inline ComplexVal psi_series(const PsiConfig& cfg, double w, double tau) {
  return psi_series_detail(cfg, w, tau).value;
}

namespace detail {

/// Dirichlet(eta, ..., eta) on R components by stick-breaking: the k-th stick
/// fraction has density proportional to x^{eta-1}(1-x)^{(R-k)eta-1} on [0,1].
/// Each factor uses a Gauss-Jacobi rule normalized to a probability rule.
struct StickRule {
  std::vector<std::vector<double>> nodes;
  std::vector<std::vector<double>> weights;
};

inline StickRule stick_rule(int R, double eta, int n) {
  StickRule rule;
  for (int k = 1; k < R; ++k) {
    const auto gj = quadrature::cached_gauss_jacobi_ab((R - k) * eta - 1.0, eta - 1.0, n);
    const double mass = gj->mass();
    std::vector<double> x(gj->size());
    std::vector<double> wts(gj->size());
    for (std::size_t i = 0; i < gj->size(); ++i) {
      x[i] = 0.5 * (1.0 + gj->nodes[i]);
      wts[i] = gj->weights[i] / mass;
    }
    rule.nodes.push_back(std::move(x));
    rule.weights.push_back(std::move(wts));
  }
  return rule;
}

/// Sum over the tensor rule of weight * g(phase), phase = sum_j c_j t_j, where
/// t_1..t_{R-1} are the sticks and t_0 takes the remainder.
template <class G>
auto dirichlet_expectation(const StickRule& rule, const std::vector<double>& c, G&& g) {
  using Rv = decltype(g(0.0));
  const int m = static_cast<int>(rule.nodes.size());
  Rv total{};
  std::vector<std::size_t> idx(m, 0);
  const std::size_t n = m > 0 ? rule.nodes[0].size() : 0;
  if (m == 0) return g(c[0]);
  while (true) {
    double remaining = 1.0;
    double weight = 1.0;
    double phase = 0.0;
    for (int k = 0; k < m; ++k) {
      const double x = rule.nodes[k][idx[k]];
      const double t = remaining * x;
      phase += c[k + 1] * t;
      remaining -= t;
      weight *= rule.weights[k][idx[k]];
    }
    phase += c[0] * remaining;
    total += weight * g(phase);
    int k = m - 1;
    while (k >= 0 && ++idx[k] == n) {
      idx[k] = 0;
      --k;
    }
    if (k < 0) break;
  }
  return total;
}

inline std::vector<double> psi_phases(int R, double tau) {
  const double q = std::acos(std::clamp(tau, -1.0, 1.0));
  std::vector<double> c(R);
  for (int j = 0; j < R; ++j) c[j] = std::cos((q - 2.0 * kPi * j) / R);
  return c;
}

}  // namespace detail

/// Psi_a^d(w, tau) from its simplex integral with the Dirichlet weights
/// (1 - sum t)^{eta-1} prod t_j^{eta-1}, evaluated by tensorized
/// Gauss-Jacobi stick-breaking quadrature.
inline ComplexVal psi_simplex(int R, double eta, double w, double tau, int quad_order) {
  if (R < 2) throw Error(ErrorCode::invalid_params, "psi_simplex needs R >= 2");
  if (!(eta > 0.0))
    throw Error(ErrorCode::quadrature_failure, "endpoint weight t^{eta-1} not integrable for eta <= 0");
  if (!(std::abs(tau) <= 1.0 + 1e-14)) throw Error(ErrorCode::domain_error, "tau outside [-1,1]");
  if (quad_order < 1) throw Error(ErrorCode::invalid_params, "quadrature order must be positive");
  const int n = std::max(quad_order, static_cast<int>(std::ceil(std::abs(w))) + 16);
  const auto rule = detail::stick_rule(R, eta, n);
  const auto c = detail::psi_phases(R, tau);
  return detail::dirichlet_expectation(
      rule, c, [w](double phase) { return std::polar(1.0, -w * phase); });
}

/// Exponential type theta(a, tau) of w -> Psi_a^d(w, tau), a = 2/R.
inline double psi_type(int R, double tau) {
  if (R < 2) throw Error(ErrorCode::invalid_params, "psi_type needs R >= 2");
  const double q = std::acos(std::clamp(tau, -1.0, 1.0));
  if (R % 2 == 0 || q <= 0.5 * kPi) return std::cos(q / R);
  return std::cos((kPi - q) / R);
}

/// Growth rates of y -> Psi(i y) and Psi(-i y), i.e. the extreme points of
/// the support of the representing density, estimated from the simplex
/// integral at real exponents b, 2b, 4b. Returns (upper, lower) with the
/// density support estimated as [-lower, upper].
inline std::pair<double, double> psi_growth_rates(int R, double eta, double tau, double b,
                                                  int quad_order) {
  const auto rule = detail::stick_rule(R, eta, quad_order);
  const auto c = detail::psi_phases(R, tau);
  double cmax = *std::max_element(c.begin(), c.end());
  double cmin = *std::min_element(c.begin(), c.end());
  auto log_growth = [&](double s) {
    const double shift = s > 0.0 ? s * cmax : s * cmin;
    const double value = detail::dirichlet_expectation(
        rule, c, [s, shift](double phase) { return std::exp(s * phase - shift); });
    return std::log(value) + shift;
  };
  auto rate = [&](double sgn) {
    const double l1 = log_growth(sgn * b);
    const double l2 = log_growth(sgn * 2.0 * b);
    const double l4 = log_growth(sgn * 4.0 * b);
    return ((l4 - l2) - (l2 - l1)) / b;
  };
  return {rate(1.0), rate(-1.0)};
}

enum class DensitySum { Fejer, Partial };

/// Representing density of w -> Psi(w, tau) on (-L, L) from its Fourier
/// series with samples Psi(k pi / L), k = 0..K. Fejer means of a positive
/// measure stay nonnegative; plain partial sums converge faster where the
/// density is smooth.
template <class PsiFn>
std::vector<double> fourier_density(PsiFn&& psi, double L, int K, const std::vector<double>& t,
                                    DensitySum kind = DensitySum::Fejer) {
  if (!(L > 0.0) || K < 0) throw Error(ErrorCode::invalid_params, "need L > 0 and K >= 0");
  std::vector<ComplexVal> samples(K + 1);
  for (int k = 0; k <= K; ++k) samples[k] = psi(k * kPi / L);
  std::vector<double> out(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    double sum = samples[0].real();
    for (int k = 1; k <= K; ++k) {
      const double weight = kind == DensitySum::Fejer ? 1.0 - static_cast<double>(k) / (K + 1) : 1.0;
      sum += 2.0 * weight * (samples[k] * std::polar(1.0, k * kPi * t[i] / L)).real();
    }
    out[i] = sum / (2.0 * L);
  }
  return out;
}

template <class PsiFn>
std::vector<double> fejer_density(PsiFn&& psi, double L, int K, const std::vector<double>& t) {
  return fourier_density(std::forward<PsiFn>(psi), L, K, t, DensitySum::Fejer);
}

/// Closed-form density psi_1^d(t, tau) against the weight c_lambda (1-t^2)^{lambda-1/2},
/// lambda = 2 eta, with c(eta) = sqrt(2) / (c_lambda B(1/2, eta)) fixed by unit mass.
inline double psi_density_a1(double eta, double t, double tau) {
  if (!(eta > 1.0)) throw Error(ErrorCode::invalid_params, "psi_density_a1 needs eta > 1");
  if (!(std::abs(t) < 1.0)) throw Error(ErrorCode::domain_error, "t must lie in (-1,1)");
  if (!(std::abs(tau) <= 1.0)) throw Error(ErrorCode::domain_error, "tau outside [-1,1]");
  const double theta = std::sqrt(0.5 * (1.0 + tau));
  if (std::abs(t) >= theta) return 0.0;
  const double lam = 2.0 * eta;
  const double log_c_lambda = specfun::log_gamma(lam + 1.0) - 0.5 * std::log(kPi) -
                              specfun::log_gamma(lam + 0.5);
  const double log_beta = specfun::log_gamma(0.5) + specfun::log_gamma(eta) -
                          specfun::log_gamma(eta + 0.5);
  const double log_c = 0.5 * std::log(2.0) - log_c_lambda - log_beta;
  return std::exp(log_c + (0.5 - 2.0 * eta) * std::log1p(-t * t) +
                  (0.5 - eta) * std::log1p(tau) + (eta - 1.0) * std::log(1.0 + tau - 2.0 * t * t));
}

// ---------------------------------------------------------------------------
// Boundedness verdicts

enum class BoundednessTag { BoundedByOne, BoundedAboveOne, Unbounded, Open };

inline std::string to_string(BoundednessTag tag) {
  switch (tag) {
    case BoundednessTag::BoundedByOne: return "BoundedByOne";
    case BoundednessTag::BoundedAboveOne: return "BoundedAboveOne";
    case BoundednessTag::Unbounded: return "Unbounded";
    case BoundednessTag::Open: return "Open";
  }
  return "unknown";
}

struct BoundednessVerdict {
  BoundednessTag tag = BoundednessTag::Open;
  std::optional<double> witness;
  double witness_modulus = 0.0;
  std::string citation;
  /// For Open verdicts with 2/a integer: the unresolved kappa band (lo, hi].
  std::optional<std::pair<double, double>> open_band;
};

namespace detail {

inline std::optional<int> integer_ratio(double a) {
  const double R = 2.0 / a;
  const double rounded = std::round(R);
  if (rounded >= 1.0 && std::abs(R - rounded) <= 1e-9 * std::max(1.0, R))
    return static_cast<int>(rounded);
  return std::nullopt;
}

/// Largest |Psi_a^d(w, +-1)| over small w for the radial d >= 2 witness.
inline SupResult radial_witness(const Params& p) {
  PsiConfig cfg;
  cfg.R = 2.0 / p.a;
  cfg.eta = p.lambda_k;
  const double tau = std::cos(kPi / p.a) >= 0.0 ? 1.0 : -1.0;
  return sup_search(
      [&](double w) { return std::abs(psi_series(cfg, std::abs(w), tau)); }, 1.0, 0.005, 1);
}

}  // namespace detail

/// Regime classification for sup |B_{kappa,a}|. BoundedAboveOne verdicts carry
/// a witness whose modulus is re-evaluated before return.
inline BoundednessVerdict classify_boundedness(const Params& p) {
  BoundednessVerdict out;
  const double a = p.a;
  const double threshold = 0.5 - 0.25 * a;
  const auto R = detail::integer_ratio(a);
  const bool a_is_two = std::abs(a - 2.0) <= 1e-12;
  const double kappa_tol = 1e-12;

  if (a_is_two) {
    out.tag = BoundednessTag::BoundedByOne;
    out.citation = "a=2 (Dunkl kernel)";
    return out;
  }
  if (p.d == 1 && a < 2.0 && p.kappa < threshold - kappa_tol) {
    out.tag = BoundednessTag::Unbounded;
    out.citation = "boundedness condition (kappa < 1/2 - a/4)";
    return out;
  }
  if (R && a <= 1.0 + 1e-12 && ((p.d == 1 && p.kappa >= 0.5 - kappa_tol) || p.d >= 2)) {
    out.tag = BoundednessTag::BoundedByOne;
    out.citation = "2/a integer with d=1, kappa >= 1/2 or d >= 2: positive integral representation";
    return out;
  }
  const bool edge = p.d == 1 && a <= 1.0 && std::abs(p.kappa - threshold) <= kappa_tol;
  const bool large_a = a > 1.0 && !a_is_two;
  if (edge || large_a) {
    SupResult found;
    if (p.d == 1) {
      found = supnorm_search(p, 20.0, 0.01);
      if (!(found.sup > 1.0 + 1e-12)) found = supnorm_search(p, 400.0, 0.01);
      found.sup = std::abs(kernel_e_general(p.kappa, p.a, found.argmax));
    } else {
      found = detail::radial_witness(p);
      PsiConfig cfg;
      cfg.R = 2.0 / a;
      cfg.eta = p.lambda_k;
      const double tau = std::cos(kPi / a) >= 0.0 ? 1.0 : -1.0;
      found.sup = std::abs(psi_series(cfg, std::abs(found.argmax), tau));
    }
    if (found.sup > 1.0 + 1e-12) {
      out.tag = BoundednessTag::BoundedAboveOne;
      out.witness = found.argmax;
      out.witness_modulus = found.sup;
      out.citation = p.d == 1 ? "a in (1,2)u(2,inf) or kappa = 1/2 - a/4: kernel witness"
                            : "a in (1,2)u(2,inf): radial witness";
      return out;
    }
    out.tag = BoundednessTag::Open;
    out.citation = "above-one regime but no witness found on the search grid";
    return out;
  }
  out.tag = BoundednessTag::Open;
  if (R && p.d == 1) {
    out.open_band = std::make_pair(threshold, 0.5);
    out.citation = "unresolved band kappa in (1/2 - a/4, kappa_0(a)], kappa_0(a) <= 1/2 unknown";
  } else {
    out.citation = "no applicable result";
  }
  return out;
}

}  // namespace kernels
}  // namespace kappa_fourier
