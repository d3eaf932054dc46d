#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kappa_fourier {

enum class ErrorCode {
  invalid_order,
  invalid_params,
  invalid_lambda,
  invalid_alpha,
  invalid_c,
  domain_error,
  rule_mismatch,
  truncation_failure,
  quadrature_failure,
  tail_bound_failure,
  decay_failure,
  origin_singularity,
  derivative_estimation_failure,
  insufficient_range,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_order: return "invalid-order";
    case ErrorCode::invalid_params: return "invalid-params";
    case ErrorCode::invalid_lambda: return "invalid-lambda";
    case ErrorCode::invalid_alpha: return "invalid-alpha";
    case ErrorCode::invalid_c: return "invalid-c";
    case ErrorCode::domain_error: return "domain-error";
    case ErrorCode::rule_mismatch: return "rule-mismatch";
    case ErrorCode::truncation_failure: return "truncation-failure";
    case ErrorCode::quadrature_failure: return "quadrature-failure";
    case ErrorCode::tail_bound_failure: return "tail-bound-failure";
    case ErrorCode::decay_failure: return "decay-failure";
    case ErrorCode::origin_singularity: return "origin-singularity";
    case ErrorCode::derivative_estimation_failure: return "derivative-estimation-failure";
    case ErrorCode::insufficient_range: return "insufficient-range";
  }
  return "unknown";
}

/// Numerical failures (uncertified tails, non-converging quadrature) as opposed
/// to arguments outside an operation's domain.
constexpr bool is_numerical(ErrorCode code) {
  switch (code) {
    case ErrorCode::truncation_failure:
    case ErrorCode::quadrature_failure:
    case ErrorCode::tail_bound_failure:
    case ErrorCode::decay_failure:
    case ErrorCode::origin_singularity:
    case ErrorCode::derivative_estimation_failure:
      return true;
    default:
      return false;
  }
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  bool numerical() const noexcept { return is_numerical(code_); }

 private:
  ErrorCode code_;
};

}  // namespace kappa_fourier
