#pragma once

// Polynomials q_n(t, lambda), their Chebyshev decompositions and sign scans.

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "kappa_fourier/errors.hpp"
#include "kappa_fourier/quadrature.hpp"
#include "kappa_fourier/specfun.hpp"

namespace kappa_fourier::genpoly {

using specfun::kPi;

enum class Basis { Monomial, Chebyshev, GegenbauerNormalized };

/// Polynomial on [-1,1] with coefficients in a declared basis. Gegenbauer
/// coefficients refer to P_k^{(alpha)} normalized by P_k(1) = 1.
struct PolyOnInterval {
  Basis basis = Basis::Chebyshev;
  double alpha = -0.5;
  std::vector<double> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }

  double operator()(double t) const {
    switch (basis) {
      case Basis::Monomial: {
        double acc = 0.0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * t + *it;
        return acc;
      }
      case Basis::Chebyshev: {
        double b1 = 0.0;
        double b2 = 0.0;
        for (int k = degree(); k >= 1; --k) {
          const double b0 = 2.0 * t * b1 - b2 + coeffs[k];
          b2 = b1;
          b1 = b0;
        }
        return coeffs.empty() ? 0.0 : t * b1 - b2 + coeffs[0];
      }
      case Basis::GegenbauerNormalized: {
        double acc = 0.0;
        for (int k = 0; k <= degree(); ++k)
          acc += coeffs[k] * specfun::gegenbauer_p(k, alpha, std::clamp(t, -1.0, 1.0));
        return acc;
      }
    }
    return 0.0;
  }
};

namespace detail {

inline double chebyshev_t(int n, double t) {
  return std::cos(n * std::acos(std::clamp(t, -1.0, 1.0)));
}

}  // namespace detail

/// Chebyshev interpolant of degree n through the first-kind nodes; exact for
/// polynomial f of degree <= n.
template <class F>
PolyOnInterval chebyshev_interpolate(F&& f, int n) {
  const int N = n + 1;
  std::vector<double> values(N);
  for (int j = 0; j < N; ++j) values[j] = f(std::cos(kPi * (j + 0.5) / N));
  PolyOnInterval p;
  p.basis = Basis::Chebyshev;
  p.coeffs.assign(N, 0.0);
  for (int k = 0; k < N; ++k) {
    double sum = 0.0;
    for (int j = 0; j < N; ++j) sum += values[j] * std::cos(kPi * k * (j + 0.5) / N);
    p.coeffs[k] = (k == 0 ? 1.0 : 2.0) * sum / N;
  }
  return p;
}

inline PolyOnInterval to_chebyshev(const PolyOnInterval& p) {
  if (p.basis == Basis::Chebyshev) return p;
  return chebyshev_interpolate([&](double t) { return p(t); }, std::max(p.degree(), 0));
}

inline PolyOnInterval to_monomial(const PolyOnInterval& p) {
  const PolyOnInterval c = to_chebyshev(p);
  const int n = c.degree();
  PolyOnInterval out;
  out.basis = Basis::Monomial;
  out.coeffs.assign(n + 1, 0.0);
  std::vector<double> t_prev(n + 1, 0.0);
  std::vector<double> t_cur(n + 1, 0.0);
  t_prev[0] = 1.0;
  if (n >= 0) out.coeffs[0] += c.coeffs[0];
  if (n >= 1) {
    t_cur[1] = 1.0;
    out.coeffs[1] += c.coeffs[1];
  }
  for (int k = 2; k <= n; ++k) {
    std::vector<double> t_next(n + 1, 0.0);
    for (int m = 0; m < n; ++m) t_next[m + 1] += 2.0 * t_cur[m];
    for (int m = 0; m <= n; ++m) t_next[m] -= t_prev[m];
    for (int m = 0; m <= n; ++m) out.coeffs[m] += c.coeffs[k] * t_next[m];
    t_prev = std::move(t_cur);
    t_cur = std::move(t_next);
  }
  return out;
}

/// Coefficients in P_k^{(alpha)} by Gauss-Jacobi projection (exact for the degree).
inline PolyOnInterval to_gegenbauer(const PolyOnInterval& p, double alpha) {
  const int n = std::max(p.degree(), 0);
  const auto rule = quadrature::gauss_jacobi(alpha, n + 1);
  PolyOnInterval out;
  out.basis = Basis::GegenbauerNormalized;
  out.alpha = alpha;
  out.coeffs.assign(n + 1, 0.0);
  for (int k = 0; k <= n; ++k) {
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
      const double pk = specfun::gegenbauer_p(k, alpha, rule.nodes[i]);
      num += rule.weights[i] * p(rule.nodes[i]) * pk;
      den += rule.weights[i] * pk * pk;
    }
    out.coeffs[k] = num / den;
  }
  return out;
}

/// Pairing of the density with the exponential: MinusIvt integrates against
/// e^{-ivt} and gives 1 + P_{2r+1}; PlusIvt is the conjugate pairing, where the
/// same kernel reads 1 - P_{2r+1}(t) (so q_1 = 1 - t).
enum class Pairing { MinusIvt, PlusIvt };

namespace detail {

inline void require_lambda(double lambda) {
  if (!(lambda > -0.5) || !std::isfinite(lambda))
    throw Error(ErrorCode::invalid_lambda, "lambda must be > -1/2");
}

/// sum_s (-1)^s C(r,s) (shift)_s/(lambda+1/2)_s (1-t^2)^s.
inline double hypergeometric_sum(unsigned r, double shift, double lambda, double t) {
  const double u = 1.0 - t * t;
  double sum = 0.0;
  double pw = 1.0;
  for (unsigned s = 0; s <= r; ++s) {
    const double sgn = (s % 2 == 0) ? 1.0 : -1.0;
    sum += sgn * specfun::binomial(r, s) * specfun::pochhammer(shift, s) /
           specfun::pochhammer(lambda + 0.5, s) * pw;
    pw *= u;
  }
  return sum;
}

}  // namespace detail

/// q_{2r+1}(t, lambda) = 1 + P_{2r+1}^{(lambda-1/2)}(t) from the Gegenbauer recurrence.
inline PolyOnInterval q_odd(unsigned r, double lambda, Pairing pairing = Pairing::MinusIvt) {
  detail::require_lambda(lambda);
  const double s = pairing == Pairing::MinusIvt ? 1.0 : -1.0;
  return chebyshev_interpolate(
      [&](double t) { return 1.0 + s * specfun::gegenbauer_p(2 * r + 1, lambda - 0.5, t); },
      2 * r + 1);
}

/// Finite-sum form 1 + t sum_s (-1)^s C(r,s) (lambda+r+1)_s/(lambda+1/2)_s (1-t^2)^s.
inline PolyOnInterval q_odd_sum_form(unsigned r, double lambda, Pairing pairing = Pairing::MinusIvt) {
  detail::require_lambda(lambda);
  const double s = pairing == Pairing::MinusIvt ? 1.0 : -1.0;
  return chebyshev_interpolate(
      [&](double t) { return 1.0 + s * t * detail::hypergeometric_sum(r, lambda + r + 1.0, lambda, t); },
      2 * r + 1);
}

/// q_{2r}(t, lambda) = 1 + sign_v P_{2r}^{(lambda-1/2)}(t).
inline PolyOnInterval q_even(unsigned r, double lambda, int sign_v) {
  detail::require_lambda(lambda);
  if (r == 0) throw Error(ErrorCode::invalid_params, "q_even needs r >= 1");
  const double s = sign_v >= 0 ? 1.0 : -1.0;
  return chebyshev_interpolate(
      [&](double t) { return 1.0 + s * specfun::gegenbauer_p(2 * r, lambda - 0.5, t); }, 2 * r);
}

/// Finite-sum form 1 + sign_v sum_s (-1)^s C(r,s) (lambda+r)_s/(lambda+1/2)_s (1-t^2)^s.
inline PolyOnInterval q_even_sum_form(unsigned r, double lambda, int sign_v) {
  detail::require_lambda(lambda);
  if (r == 0) throw Error(ErrorCode::invalid_params, "q_even needs r >= 1");
  const double s = sign_v >= 0 ? 1.0 : -1.0;
  return chebyshev_interpolate(
      [&](double t) { return 1.0 + s * detail::hypergeometric_sum(r, lambda + r, lambda, t); }, 2 * r);
}

enum class DecompKind { OddB, EvenD };

/// values[s] multiplies the Chebyshev polynomial T_{n-2s}, n = 2r+1 (OddB) or 2r (EvenD).
struct DecompCoeffs {
  DecompKind kind = DecompKind::OddB;
  unsigned r = 0;
  double lambda = 0.0;
  std::vector<double> values;

  int top_degree() const { return kind == DecompKind::OddB ? 2 * static_cast<int>(r) + 1 : 2 * static_cast<int>(r); }

  double sum() const {
    double total = 0.0;
    for (double v : values) total += v;
    return total;
  }

  /// sum_s values[s] T_{n-2s}(t).
  double reconstruct(double t) const {
    double acc = 0.0;
    for (unsigned s = 0; s < values.size(); ++s)
      acc += values[s] * detail::chebyshev_t(top_degree() - 2 * static_cast<int>(s), t);
    return acc;
  }
};

/// b_s^r(lambda) = (2r+2-s)_s (lambda)_s (lambda+r+1)_{r-s} / (4^r (lambda+1/2)_r s!).
inline DecompCoeffs decomp_odd(unsigned r, double lambda) {
  detail::require_lambda(lambda);
  DecompCoeffs out{DecompKind::OddB, r, lambda, {}};
  const double denom = std::pow(4.0, r) * specfun::pochhammer(lambda + 0.5, r);
  for (unsigned s = 0; s <= r; ++s)
    out.values.push_back(specfun::pochhammer(2.0 * r + 2.0 - s, s) * specfun::pochhammer(lambda, s) *
                         specfun::pochhammer(lambda + r + 1.0, r - s) /
                         (denom * specfun::factorial(s)));
  return out;
}

/// d_s^r(lambda) = 2 (2r+1-s)_s (lambda)_s (lambda+r)_{r-s} / (4^r (lambda+1/2)_r s!) for s < r,
/// d_r^r(lambda) = (r+1)_r (lambda)_r / (4^r (lambda+1/2)_r r!).
inline DecompCoeffs decomp_even(unsigned r, double lambda) {
  detail::require_lambda(lambda);
  if (r == 0) throw Error(ErrorCode::invalid_params, "decomp_even needs r >= 1");
  DecompCoeffs out{DecompKind::EvenD, r, lambda, {}};
  const double denom = std::pow(4.0, r) * specfun::pochhammer(lambda + 0.5, r);
  for (unsigned s = 0; s < r; ++s)
    out.values.push_back(2.0 * specfun::pochhammer(2.0 * r + 1.0 - s, s) *
                         specfun::pochhammer(lambda, s) * specfun::pochhammer(lambda + r, r - s) /
                         (denom * specfun::factorial(s)));
  out.values.push_back(specfun::pochhammer(r + 1.0, r) * specfun::pochhammer(lambda, r) /
                       (denom * specfun::factorial(r)));
  return out;
}

enum class SignVerdict { Nonnegative, ChangesSign };

inline std::string to_string(SignVerdict v) {
  return v == SignVerdict::Nonnegative ? "Nonnegative" : "ChangesSign";
}

struct SignReport {
  double min_value = 0.0;
  double min_location = 0.0;
  std::vector<std::pair<double, double>> negative_intervals;
  SignVerdict verdict = SignVerdict::Nonnegative;
};

inline constexpr double kSignThreshold = -1e-12;

/// Derivative of a Chebyshev series.
inline PolyOnInterval chebyshev_derivative(const PolyOnInterval& p) {
  const PolyOnInterval c = to_chebyshev(p);
  const int n = c.degree();
  PolyOnInterval d;
  d.basis = Basis::Chebyshev;
  if (n < 1) {
    d.coeffs = {0.0};
    return d;
  }
  d.coeffs.assign(n + 1, 0.0);
  for (int k = n - 1; k >= 0; --k)
    d.coeffs[k] = (k + 2 <= n ? d.coeffs[k + 2] : 0.0) + 2.0 * (k + 1) * c.coeffs[k + 1];
  d.coeffs[0] *= 0.5;
  d.coeffs.resize(n);
  return d;
}

namespace detail {

template <class F>
double bisect_root(F&& f, double lo, double hi) {
  double flo = f(lo);
  for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace detail

/// Dense scan on 4097 points plus refinement of the roots of p'; reports the
/// global minimum and the maximal intervals where p < 0.
inline SignReport sign_analysis(const PolyOnInterval& p, int grid = 4096) {
  grid = std::max(grid, 4096);
  const PolyOnInterval dp = chebyshev_derivative(p);
  SignReport rep;
  rep.min_value = p(-1.0);
  rep.min_location = -1.0;
  auto consider = [&](double t) {
    const double v = p(t);
    if (v < rep.min_value) {
      rep.min_value = v;
      rep.min_location = t;
    }
  };
  std::vector<double> ts(grid + 1);
  std::vector<double> vals(grid + 1);
  for (int i = 0; i <= grid; ++i) {
    ts[i] = -1.0 + 2.0 * i / grid;
    vals[i] = p(ts[i]);
    consider(ts[i]);
  }
  for (int i = 0; i < grid; ++i) {
    const double d0 = dp(ts[i]);
    const double d1 = dp(ts[i + 1]);
    if (d0 < 0.0 && d1 >= 0.0) consider(detail::bisect_root(dp, ts[i], ts[i + 1]));
  }
  // Maximal negative runs with bisected endpoints.
  int i = 0;
  while (i <= grid) {
    if (vals[i] < 0.0) {
      int j = i;
      while (j + 1 <= grid && vals[j + 1] < 0.0) ++j;
      const double lo = i == 0 ? -1.0 : detail::bisect_root(p, ts[i - 1], ts[i]);
      const double hi = j == grid ? 1.0 : detail::bisect_root(p, ts[j], ts[j + 1]);
      double run_min = 0.0;
      for (int k = i; k <= j; ++k) run_min = std::min(run_min, vals[k]);
      if (run_min < kSignThreshold) rep.negative_intervals.emplace_back(lo, hi);
      i = j + 1;
    } else {
      ++i;
    }
  }
  rep.verdict = rep.min_value >= kSignThreshold ? SignVerdict::Nonnegative : SignVerdict::ChangesSign;
  return rep;
}

enum class ExtremaKind { Minima, AllExtrema };

/// Interior extrema cos(k pi / n), k = 1..n-1, of cos(n arccos t); minima are the odd k.
inline std::vector<double> cheb_extrema(int n, ExtremaKind kind) {
  if (n < 1) throw Error(ErrorCode::invalid_params, "cheb_extrema needs n >= 1");
  std::vector<double> out;
  for (int k = 1; k < n; ++k) {
    if (kind == ExtremaKind::Minima && k % 2 == 0) continue;
    const double t = std::cos(kPi * k / n);
    out.push_back(std::abs(t) < 1e-15 ? 0.0 : t);
  }
  return out;
}

}  // namespace kappa_fourier::genpoly
