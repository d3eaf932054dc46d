#pragma once

// Classical special functions used by the kernel formulas: Gamma and
// Pochhammer, the normalized Bessel function j_nu, normalized Gegenbauer
// polynomials, Kummer's confluent hypergeometric function and the modified
// Bessel function of the first kind.

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <string>

#include "kappa_fourier/errors.hpp"

namespace kappa_fourier::specfun {

inline constexpr double kPi = std::numbers::pi;

/// log|Gamma(x)|. Uses the reentrant variant so concurrent callers never touch
/// the global signgam.
inline double log_gamma(double x) {
  int sign = 0;
  return ::lgamma_r(x, &sign);
}

inline double gamma(double x) { return std::tgamma(x); }

/// Rising factorial (base)_n = base (base+1) ... (base+n-1).
inline double pochhammer(double base, unsigned n) {
  double value = 1.0;
  for (unsigned k = 0; k < n; ++k) value *= base + k;
  return value;
}

inline double binomial(unsigned n, unsigned k) {
  if (k > n) return 0.0;
  double value = 1.0;
  for (unsigned i = 1; i <= k; ++i) value = value * (n - k + i) / i;
  return std::round(value);
}

inline double factorial(unsigned n) { return pochhammer(1.0, n); }

namespace detail {

inline void require_order(double order) {
  if (!(order > -1.0) || !std::isfinite(order))
    throw Error(ErrorCode::invalid_order,
                "Bessel order must be > -1, got " + std::to_string(order));
}

/// Ascending series j_nu(x) = sum_k (-x^2/4)^k / (k! (nu+1)_k).
inline double bessel_j_norm_series(double nu, double x) {
  const double q = -0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 2000; ++k) {
    term *= q / (k * (nu + k));
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum) && k > 0.5 * x) break;
  }
  return sum;
}

/// Hankel's large-argument expansion. Returns nullopt when the asymptotic
/// terms stop decreasing before reaching double-precision size.
inline std::optional<double> bessel_j_norm_hankel(double nu, double x) {
  const double mu = 4.0 * nu * nu;
  double p = 1.0;
  double q = 0.0;
  double term = 1.0;
  double prev = std::numeric_limits<double>::infinity();
  bool converged = false;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (mu - odd * odd) / (k * 8.0 * x);
    const double mag = std::abs(term);
    if (mag > prev && mag > 1e-17) return std::nullopt;
    prev = mag;
    const int sign = ((k / 2) % 2 == 0) ? 1 : -1;
    if (k % 2 == 0)
      p += sign * term;
    else
      q += sign * term;
    if (mag < 1e-17) {
      converged = true;
      break;
    }
  }
  if (!converged) return std::nullopt;
  const double chi = x - (0.5 * nu + 0.25) * kPi;
  const double big_j = std::sqrt(2.0 / (kPi * x)) * (p * std::cos(chi) - q * std::sin(chi));
  return std::exp(log_gamma(nu + 1.0) + nu * std::log(2.0 / x)) * big_j;
}

/// Miller's backward recurrence normalized by the Neumann sum
/// (x/2)^nu0 = sum_k (nu0+2k) Gamma(nu0+k)/k! J_{nu0+2k}(x).
inline double bessel_j_norm_miller(double nu, double x) {
  const double whole = nu >= 0.0 ? std::floor(nu) : 0.0;
  const int n = static_cast<int>(whole);
  const double nu0 = nu - whole;
  const double reach = std::max<double>(n, x);
  int start = static_cast<int>(reach + 30.0 + 12.0 * std::cbrt(reach));
  if (start % 2 != 0) ++start;

  double f_next = 0.0;
  double f = 1e-30;
  double target = (start == n) ? f : 0.0;
  double sum = 0.0;
  // ratio_k = Gamma(nu0+k)/k!, stepped downward from the top index.
  int k_top = start / 2;
  double ratio = std::exp(log_gamma(nu0 + k_top) - log_gamma(k_top + 1.0));
  auto neumann_weight = [&](int k) {
    if (k == 0) return gamma(nu0 + 1.0);
    while (k_top > k) {
      ratio *= k_top / (nu0 + k_top - 1.0);
      --k_top;
    }
    return (nu0 + 2.0 * k) * ratio;
  };
  sum += neumann_weight(start / 2) * f;
  for (int m = start; m > 0; --m) {
    const double f_prev = 2.0 * (nu0 + m) / x * f - f_next;
    f_next = f;
    f = f_prev;
    const int idx = m - 1;
    if (idx == n) target = f;
    if (idx % 2 == 0) sum += neumann_weight(idx / 2) * f;
    if (std::abs(f) > 1e200) {
      f *= 1e-200;
      f_next *= 1e-200;
      sum *= 1e-200;
      target *= 1e-200;
    }
  }
  return std::exp(log_gamma(nu + 1.0) + n * std::log(2.0 / x)) * target / sum;
}

inline bool series_regime(double nu, double x) {
  return x <= 4.0 || x * x <= 6.0 * (nu + 1.0);
}

inline double bessel_j_norm_nonneg(double nu, double x) {
  if (x == 0.0) return 1.0;
  if (series_regime(nu, x)) return bessel_j_norm_series(nu, x);
  if (x >= 35.0 && x >= nu * nu) {
    if (auto value = bessel_j_norm_hankel(nu, x)) return *value;
  }
  return bessel_j_norm_miller(nu, x);
}

}  // namespace detail

/// Normalized Bessel function j_nu(x) = 2^nu Gamma(nu+1) x^{-nu} J_nu(x),
/// even in x, with j_nu(0) = 1.
inline double bessel_j_norm(double order, double x) {
  detail::require_order(order);
  const double value = detail::bessel_j_norm_nonneg(order, std::abs(x));
#ifdef KAPPA_FOURIER_CORRUPT
  return value * (1.0 + 1e-6 * std::sin(x));
#else
  return value;
#endif
}

/// d/dx j_nu(x) = -x / (2(nu+1)) j_{nu+1}(x).
inline double bessel_j_norm_deriv(double order, double x) {
  detail::require_order(order);
  return -x / (2.0 * (order + 1.0)) * bessel_j_norm(order + 1.0, x);
}

/// Classical J_nu(x) for x >= 0.
inline double bessel_j(double order, double x) {
  detail::require_order(order);
  if (x < 0.0) throw Error(ErrorCode::domain_error, "bessel_j needs x >= 0");
  if (x == 0.0) {
    if (order == 0.0) return 1.0;
    return order > 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  const double scale = std::exp(order * std::log(0.5 * x) - log_gamma(order + 1.0));
  return scale * bessel_j_norm(order, x);
}

/// Gegenbauer polynomial normalized by P_n^{(alpha)}(1) = 1, orthogonal for
/// the weight (1-t^2)^alpha. Evaluated by the three-term recurrence written
/// directly in this normalization, which stays regular at alpha = -1/2.
inline double gegenbauer_p(unsigned n, double alpha, double t) {
  if (!(alpha > -1.0))
    throw Error(ErrorCode::invalid_alpha, "Gegenbauer alpha must be > -1");
  if (!(std::abs(t) <= 1.0 + 1e-14))
    throw Error(ErrorCode::domain_error, "Gegenbauer argument outside [-1,1]");
  if (n == 0) return 1.0;
  const double lam = alpha + 0.5;
  double p_prev = 1.0;
  double p = t;
  for (unsigned k = 2; k <= n; ++k) {
    const double denom = k + 2.0 * lam - 1.0;
    const double next = 2.0 * (k + lam - 1.0) / denom * t * p - (k - 1.0) / denom * p_prev;
    p_prev = p;
    p = next;
  }
  return p;
}

/// C_n^lambda(t) / lambda, with the lambda -> 0 limit (2/n) T_n(t).
inline double gegenbauer_c_over_lambda(unsigned n, double lam, double t) {
  if (n == 0) return lam == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / lam;
  return 2.0 * pochhammer(2.0 * lam + 1.0, n - 1) / factorial(n) *
         gegenbauer_p(n, lam - 0.5, t);
}

/// Classical Gegenbauer C_n^lambda(t) = (2 lambda)_n / n! P_n^{(lambda-1/2)}(t).
inline double gegenbauer_c(unsigned n, double lam, double t) {
  return pochhammer(2.0 * lam, n) / factorial(n) * gegenbauer_p(n, lam - 0.5, t);
}

struct SeriesValue {
  double value = 0.0;
  int terms = 0;
};

namespace detail {

inline std::optional<unsigned> nonpositive_integer(double a) {
  if (a <= 0.0 && a == std::floor(a) && a > -1e9) return static_cast<unsigned>(-a);
  return std::nullopt;
}

inline SeriesValue kummer_direct(double a, double c, double x) {
  SeriesValue out{1.0, 1};
  if (auto m = nonpositive_integer(a)) {
    double term = 1.0;
    for (unsigned k = 1; k <= *m; ++k) {
      term *= (a + k - 1.0) * x / ((c + k - 1.0) * k);
      out.value += term;
      ++out.terms;
    }
    return out;
  }
  double term = 1.0;
  for (int k = 1; k < 100000; ++k) {
    term *= (a + k - 1.0) * x / ((c + k - 1.0) * k);
    out.value += term;
    ++out.terms;
    if (std::abs(term) <= 1e-17 * std::abs(out.value) && k > std::abs(x) && k > -a) return out;
  }
  throw Error(ErrorCode::truncation_failure, "Kummer series did not converge");
}

}  // namespace detail

/// Kummer's Phi(a; c; x) = 1F1(a; c; x) together with the number of series
/// terms summed. Terminating polynomials (a = 0, -1, -2, ...) use exactly
/// |a|+1 terms; negative x otherwise goes through Kummer's transformation.
inline SeriesValue kummer_series(double a, double c, double x) {
  if (detail::nonpositive_integer(c))
    throw Error(ErrorCode::invalid_c, "Kummer c must not be a nonpositive integer");
  if (x == 0.0) return {1.0, 1};
  if (detail::nonpositive_integer(a) || x > 0.0) return detail::kummer_direct(a, c, x);
  SeriesValue reflected = detail::kummer_direct(c - a, c, -x);
  reflected.value *= std::exp(x);
  return reflected;
}

inline double kummer_phi(double a, double c, double x) { return kummer_series(a, c, x).value; }

/// Modified Bessel I_nu(b) for complex b by its power series, principal branch
/// of (b/2)^nu.
inline std::complex<double> bessel_i_mod(double order, std::complex<double> b) {
  detail::require_order(order);
  if (b == std::complex<double>(0.0, 0.0)) {
    if (order == 0.0) return 1.0;
    if (order > 0.0) return 0.0;
    return {std::numeric_limits<double>::infinity(), 0.0};
  }
  const std::complex<double> q = 0.25 * b * b;
  std::complex<double> term = 1.0;
  std::complex<double> sum = 1.0;
  for (int k = 1; k < 5000; ++k) {
    term *= q / (k * (order + k));
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum) && k > 0.5 * std::abs(b)) break;
  }
  const std::complex<double> prefactor =
      std::exp(order * std::log(0.5 * b) - log_gamma(order + 1.0));
  return prefactor * sum;
}

}  // namespace kappa_fourier::specfun
