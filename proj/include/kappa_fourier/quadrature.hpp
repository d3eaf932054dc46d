#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include <Eigen/Eigenvalues>

#include "kappa_fourier/errors.hpp"
#include "kappa_fourier/specfun.hpp"

namespace kappa_fourier::quadrature {

enum class RuleKind { GaussJacobi, GaussLegendre, HalfLineComposite };

/// Nodes and positive weights of a weighted rule. For Gauss-Jacobi rules the
/// weight function is (1-t)^alpha (1+t)^beta on [-1,1]; composite half-line
/// rules fold the panel Jacobian (and u^power) into the weights.
struct QuadRule {
  RuleKind kind = RuleKind::GaussLegendre;
  double alpha = 0.0;
  double beta = 0.0;
  std::vector<double> nodes;
  std::vector<double> weights;
  double target_tolerance = 1e-14;

  std::size_t size() const { return nodes.size(); }

  double mass() const {
    double total = 0.0;
    for (double w : weights) total += w;
    return total;
  }

  template <class F>
  auto integrate(F&& f) const {
    using R = decltype(f(0.0));
    R sum{};
    for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(nodes[i]);
    return sum;
  }
};

/// Total mass of (1-t)^alpha (1+t)^beta over [-1,1].
inline double jacobi_mass(double alpha, double beta) {
  return std::exp((alpha + beta + 1.0) * std::log(2.0) + specfun::log_gamma(alpha + 1.0) +
                  specfun::log_gamma(beta + 1.0) - specfun::log_gamma(alpha + beta + 2.0));
}

namespace detail {

struct JacobiRecurrence {
  std::vector<double> diag;     // a_k, k = 0..n-1
  std::vector<double> offdiag;  // sqrt(b_k), k = 1..n (offdiag[k-1])
};

inline JacobiRecurrence jacobi_recurrence(double alpha, double beta, int n) {
  JacobiRecurrence rec;
  rec.diag.resize(n);
  rec.offdiag.resize(n);
  const double ab = alpha + beta;
  for (int k = 0; k < n; ++k) {
    const double s = 2.0 * k + ab;
    if (k == 0)
      rec.diag[k] = (beta - alpha) / (ab + 2.0);
    else
      rec.diag[k] = (beta * beta - alpha * alpha) / (s * (s + 2.0));
  }
  for (int k = 1; k <= n; ++k) {
    const double s = 2.0 * k + ab;
    double b;
    if (k == 1)
      b = 4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
    else
      b = 4.0 * k * (k + alpha) * (k + beta) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0));
    rec.offdiag[k - 1] = std::sqrt(b);
  }
  return rec;
}

/// Orthonormal p_n(x) and p_n'(x) plus sum_{k<n} p_k(x)^2.
inline std::tuple<double, double, double> orthonormal_eval(const JacobiRecurrence& rec,
                                                           double mu0, double x, int n) {
  double p_prev = 0.0;
  double p = 1.0 / std::sqrt(mu0);
  double d_prev = 0.0;
  double d = 0.0;
  double christoffel = 0.0;
  for (int k = 0; k < n; ++k) {
    christoffel += p * p;
    const double b_k = k == 0 ? 0.0 : rec.offdiag[k - 1];
    const double next = ((x - rec.diag[k]) * p - b_k * p_prev) / rec.offdiag[k];
    const double d_next = (p + (x - rec.diag[k]) * d - b_k * d_prev) / rec.offdiag[k];
    p_prev = p;
    p = next;
    d_prev = d;
    d = d_next;
  }
  return {p, d, christoffel};
}

}  // namespace detail

/// n-point Gauss rule for (1-t)^alpha (1+t)^beta on [-1,1]: Golub-Welsch
/// eigenvalues, Newton-polished on the orthonormal recurrence, with weights
/// from the Christoffel function.
inline QuadRule gauss_jacobi_ab(double alpha, double beta, int n) {
  if (!(alpha > -1.0) || !(beta > -1.0))
    throw Error(ErrorCode::invalid_alpha, "Jacobi exponents must be > -1");
  if (n < 1) throw Error(ErrorCode::invalid_params, "rule size must be positive");
  const auto rec = detail::jacobi_recurrence(alpha, beta, n);
  const double mu0 = jacobi_mass(alpha, beta);

  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(std::max(n - 1, 1));
  for (int k = 0; k < n; ++k) diag[k] = rec.diag[k];
  for (int k = 0; k + 1 < n; ++k) sub[k] = rec.offdiag[k];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub.head(std::max(n - 1, 0)), Eigen::EigenvaluesOnly);

  QuadRule rule;
  rule.kind = (alpha == 0.0 && beta == 0.0) ? RuleKind::GaussLegendre : RuleKind::GaussJacobi;
  rule.alpha = alpha;
  rule.beta = beta;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = solver.eigenvalues()[i];
    for (int it = 0; it < 3; ++it) {
      const auto [p, d, c] = detail::orthonormal_eval(rec, mu0, x, n);
      if (d == 0.0) break;
      const double step = p / d;
      x -= step;
      if (std::abs(step) < 1e-16) break;
    }
    x = std::clamp(x, -1.0, 1.0);
    const auto [p, d, christoffel] = detail::orthonormal_eval(rec, mu0, x, n);
    rule.nodes[i] = x;
    rule.weights[i] = 1.0 / christoffel;
  }
  return rule;
}

/// Symmetric rule for the Gegenbauer weight (1-t^2)^alpha.
inline QuadRule gauss_jacobi(double alpha, int n) { return gauss_jacobi_ab(alpha, alpha, n); }

inline QuadRule gauss_legendre(int n) { return gauss_jacobi_ab(0.0, 0.0, n); }

/// Process-wide cache of immutable rules, shareable across threads.
inline std::shared_ptr<const QuadRule> cached_gauss_jacobi_ab(double alpha, double beta, int n) {
  static std::mutex mutex;
  static std::map<std::tuple<double, double, int>, std::shared_ptr<const QuadRule>> cache;
  const auto key = std::make_tuple(alpha, beta, n);
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto rule = std::make_shared<const QuadRule>(gauss_jacobi_ab(alpha, beta, n));
  std::lock_guard lock(mutex);
  return cache.emplace(key, std::move(rule)).first->second;
}

inline std::shared_ptr<const QuadRule> cached_gauss_legendre(int n) {
  return cached_gauss_jacobi_ab(0.0, 0.0, n);
}

// ---------------------------------------------------------------------------
// Half-line composite quadrature

struct HalfLineOptions {
  /// Integrand is g(u) * u^power; the u^power factor is absorbed exactly on
  /// the first panel by a Jacobi rule.
  double power = 0.0;
  /// Largest angular frequency present in g; caps panel widths at two periods.
  double frequency = 0.0;
  /// Absolute tolerance for the tail bound and for panel-doubling agreement.
  double tolerance = 1e-13;
  /// Upper limit; <= 0 means locate it from the integrand envelope.
  double u_max = 0.0;
  /// Largest upper limit that automatic detection may reach.
  double u_cap = 1e4;
  int points_per_panel = 24;
  int max_doublings = 6;
};

/// Composite Gauss-Legendre rule on [0, u_max] with u^power folded into the
/// weights; the first panel uses Gauss-Jacobi in (1+x)^power.
inline QuadRule composite_rule(double u_max, double panel_width, double power, int points) {
  const int panels = std::max(1, static_cast<int>(std::ceil(u_max / panel_width - 1e-9)));
  const double h = u_max / panels;
  QuadRule out;
  out.kind = RuleKind::HalfLineComposite;
  out.beta = power;
  out.nodes.reserve(static_cast<std::size_t>(panels) * points);
  out.weights.reserve(static_cast<std::size_t>(panels) * points);
  const auto gl = cached_gauss_legendre(points);
  if (power != 0.0) {
    const auto gj = cached_gauss_jacobi_ab(0.0, power, points);
    const double scale = std::pow(0.5 * h, power) * 0.5 * h;
    for (std::size_t i = 0; i < gj->size(); ++i) {
      out.nodes.push_back(0.5 * h * (1.0 + gj->nodes[i]));
      out.weights.push_back(scale * gj->weights[i]);
    }
  } else {
    for (std::size_t i = 0; i < gl->size(); ++i) {
      out.nodes.push_back(0.5 * h * (1.0 + gl->nodes[i]));
      out.weights.push_back(0.5 * h * gl->weights[i]);
    }
  }
  for (int p = 1; p < panels; ++p) {
    const double lo = p * h;
    for (std::size_t i = 0; i < gl->size(); ++i) {
      const double u = lo + 0.5 * h * (1.0 + gl->nodes[i]);
      out.nodes.push_back(u);
      out.weights.push_back(0.5 * h * gl->weights[i] * (power != 0.0 ? std::pow(u, power) : 1.0));
    }
  }
  return out;
}

/// Smallest U in {1, 2, 4, ...} past which |g(u) u^power| stays below
/// tolerance * 1e-3 on [U, 4U]. Throws tail-bound-failure when u_cap is hit.
template <class G>
double locate_tail(G&& g, const HalfLineOptions& opt) {
  const double threshold = opt.tolerance * 1e-3;
  for (double u = 1.0; u <= opt.u_cap; u *= 2.0) {
    double envelope = 0.0;
    for (int k = 0; k <= 48; ++k) {
      const double s = u * (1.0 + 3.0 * k / 48.0);
      const double value = std::abs(g(s)) * (opt.power != 0.0 ? std::pow(s, opt.power) : 1.0);
      envelope = std::max(envelope, value * s);
    }
    if (envelope < threshold) return u;
  }
  throw Error(ErrorCode::tail_bound_failure,
              "integrand envelope above tolerance up to u = " + std::to_string(opt.u_cap));
}

/// Integral of g(u) u^power over [0, infinity): the tail limit is located from
/// the integrand envelope and the panel count doubles until two successive
/// results agree to tolerance/10.
template <class G>
auto integrate_half_line(G&& g, const HalfLineOptions& opt = {}) {
  using R = decltype(g(1.0));
  const double u_max = opt.u_max > 0.0 ? opt.u_max : locate_tail(g, opt);
  double width = std::min(1.0, u_max);
  if (opt.frequency > 0.0) width = std::min(width, 4.0 * specfun::kPi / opt.frequency);
  double abs_mass = 0.0;
  auto apply = [&](double w) {
    const QuadRule rule = composite_rule(u_max, w, opt.power, opt.points_per_panel);
    R sum{};
    abs_mass = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
      const R term = rule.weights[i] * g(rule.nodes[i]);
      sum += term;
      abs_mass += std::abs(term);
    }
    return sum;
  };
  R previous = apply(width);
  for (int k = 0; k < opt.max_doublings; ++k) {
    width *= 0.5;
    R current = apply(width);
    // Agreement below the rounding level of the summed terms also counts.
    if (std::abs(current - previous) <= 0.1 * opt.tolerance + 1e-14 * abs_mass)
      return current;
    previous = current;
  }
  throw Error(ErrorCode::quadrature_failure, "panel doubling did not converge");
}

}  // namespace kappa_fourier::quadrature
