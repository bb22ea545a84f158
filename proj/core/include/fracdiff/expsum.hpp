#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "fracdiff/problem.hpp"

namespace fracdiff {

/// One term w_n e^{-beta_n t} of the kernel approximation, n in [-M, N]:
/// w_n = rho e^{(1-alpha) n rho}, beta_n = e^{n rho}. The logarithms are
/// exact and used for evaluation; `rate` flushes to zero when e^{n rho} is
/// below the double range.
struct ExpSumTerm {
  int index;
  double weight;
  double rate;
  double log_weight;
  double log_rate;
};

/// Interval [lower, upper] of lags on which an approximation was selected
/// to be accurate.
struct ValidityRange {
  double lower;
  double upper;
};

/// Truncated trapezoidal discretisation of
///   K(t) = int e^{(1-alpha) r} e^{-t e^r} dr = Gamma(1-alpha) t^{alpha-1}.
class ExpSumApproximation {
 public:
  ExpSumApproximation(FractionalOrder order, double rho_step, int lower_count,
                      int upper_count,
                      std::optional<ValidityRange> validity = std::nullopt);

  FractionalOrder order() const noexcept { return order_; }
  double rho_step() const noexcept { return rho_step_; }
  int lower_count() const noexcept { return lower_count_; }  // M
  int upper_count() const noexcept { return upper_count_; }  // N
  std::span<const ExpSumTerm> terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  const std::optional<ValidityRange>& validity() const noexcept {
    return validity_;
  }

 private:
  FractionalOrder order_;
  double rho_step_;
  int lower_count_;
  int upper_count_;
  std::vector<ExpSumTerm> terms_;
  std::optional<ValidityRange> validity_;
};

ExpSumApproximation build_expsum(FractionalOrder order, double rho_step,
                                 int lower_count, int upper_count);

/// Gamma(1 - alpha) t^{alpha - 1}; DomainError for t <= 0.
double kernel_exact(FractionalOrder order, double t);

/// sum_n w_n e^{-beta_n t}, accumulated in ascending n. DomainError for t < 0.
double eval_expsum(const ExpSumApproximation& approx, double t);

struct TruncationBound {
  double upper_tail;  // bound on sum_{n > N}
  double lower_tail;  // bound on sum_{n < -M}
  bool condition_satisfied;
};

/// Incomplete-gamma bounds on the discarded tails at lag t > 0:
///   upper <= t^{alpha-1} Gamma(1-alpha, t e^{N rho})
///   lower <= t^{alpha-1} (Gamma(1-alpha) - Gamma(1-alpha, t e^{-M rho})),
/// valid when t e^{N rho} >= 1 - alpha >= t e^{-M rho}.
TruncationBound truncation_bounds(const ExpSumApproximation& approx, double t);
TruncationBound truncation_bounds(FractionalOrder order, double rho_step,
                                  int lower_count, int upper_count, double t);

struct TruncationChoice {
  int lower_count;  // M
  int upper_count;  // N
};

/// Smallest M and N (scanned independently up to 10^4) such that the bound
/// condition holds on [delta, t_max] and both tail bounds are <= tol at both
/// ends of the range. Each bound is monotone in t, so the endpoints cover
/// the interval. NumericalError when tol cannot be reached.
TruncationChoice select_truncation(FractionalOrder order, double rho_step,
                                   double delta, double t_max, double tol);

/// select_truncation + build_expsum, recording [delta, t_max] as validity.
ExpSumApproximation build_expsum_for_range(FractionalOrder order,
                                           double rho_step, double delta,
                                           double t_max, double tol);

}  // namespace fracdiff
