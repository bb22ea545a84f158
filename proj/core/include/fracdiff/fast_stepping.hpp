#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fracdiff/expsum.hpp"
#include "fracdiff/problem.hpp"
#include "fracdiff/trace.hpp"

namespace fracdiff {

/// z_nn = c_alpha int_{t_{n-1}}^{t_n} K(t_n - tau) dtau = dt^alpha / Gamma(alpha+1),
/// using the exact kernel on the newest interval.
double local_weight(FractionalOrder order, double dt);

/// K_lnj = c w int_{t_{j-1}}^{t_j} e^{beta (t_n - tau)} dtau for beta < 0,
/// formed as c w e^{beta (t_n - t_j)} (t_j - t_{j-1}) exprel(beta (t_j - t_{j-1})).
double k_weight(double c_alpha_value, double weight, double beta, double t_n,
                double t_jm1, double t_j);

/// Phi_l^n for each exp-sum term, with signed rates beta_l = -e^{n rho} < 0.
/// Only the last interval (t_{n-2}, t_{n-1}] and F^{n-1} are retained.
class HistoryAccumulator {
 public:
  /// State at t_1: Phi_l^1 = 0, last interval (t_0, t_1], last value F^1.
  /// `first`/`count` select a contiguous subset of the terms.
  HistoryAccumulator(const ExpSumApproximation& expsum, double t0, double t1,
                     double f1, std::size_t first = 0,
                     std::size_t count = static_cast<std::size_t>(-1));

  /// Phi_l <- K_{l,n,n-1} F^{n-1} + e^{beta_l dt_n} Phi_l, then records
  /// (t_n, F^n). ArgumentError unless t_n > last_time().
  void advance(double t_n, double f_n);

  double history_sum() const noexcept;
  std::span<const double> phi() const noexcept { return phi_; }
  std::span<const double> betas() const noexcept { return betas_; }
  std::size_t size() const noexcept { return phi_.size(); }
  double last_time() const noexcept { return last_time_; }
  double last_value() const noexcept { return last_value_; }

 private:
  double c_;
  std::vector<double> log_weights_;
  std::vector<double> betas_;
  std::vector<double> phi_;
  double prev_time_;
  double last_time_;
  double last_value_;
};

/// Functional form of HistoryAccumulator::advance.
HistoryAccumulator advance(HistoryAccumulator acc, double t_n, double f_n);

struct FastOptions {
  unsigned threads = 1;
};

/// I^alpha_a f(t_n) ~ z_nn F^n + sum_l Phi_l^n on the grid, F^n = f(t_n).
/// O(Lambda P) work and O(Lambda) carried state. The grid must start at a,
/// end at or before b, and every step must be >= delta_guard, which in turn
/// must be >= the exp-sum validity lower end (ConfigurationError otherwise).
EvaluationTrace evaluate_fast(const FractionalProblem& problem,
                              const TimeGrid& grid,
                              const ExpSumApproximation& expsum,
                              double delta_guard, FastOptions options = {});

}  // namespace fracdiff
