#include "fracdiff/fast_stepping.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "fracdiff/errors.hpp"
#include "fracdiff/parallel.hpp"
#include "fracdiff/special_functions.hpp"

namespace fracdiff {

double local_weight(FractionalOrder order, double dt) {
  if (!(dt > 0.0)) {
    std::ostringstream msg;
    msg << "local weight needs dt > 0, got " << dt;
    throw ArgumentError(msg.str());
  }
  const double alpha = order.value();
  return std::pow(dt, alpha) / gamma(alpha + 1.0);
}

namespace {

inline double k_weight_log(double c, double log_weight, double beta,
                           double lag_near, double width) {
  return c * std::exp(log_weight + beta * lag_near) * width *
         exprel(beta * width);
}

}  // namespace

double k_weight(double c_alpha_value, double weight, double beta, double t_n,
                double t_jm1, double t_j) {
  if (!(t_jm1 < t_j) || !(t_j <= t_n)) {
    std::ostringstream msg;
    msg << "k_weight needs t_{j-1} < t_j <= t_n, got " << t_jm1 << ", " << t_j
        << ", " << t_n;
    throw ArgumentError(msg.str());
  }
  if (!(beta < 0.0)) {
    throw ArgumentError("k_weight needs a negative rate beta");
  }
  if (!(weight > 0.0)) {
    throw ArgumentError("k_weight needs a positive weight");
  }
  return k_weight_log(c_alpha_value, std::log(weight), beta, t_n - t_j,
                      t_j - t_jm1);
}

HistoryAccumulator::HistoryAccumulator(const ExpSumApproximation& expsum,
                                       double t0, double t1, double f1,
                                       std::size_t first, std::size_t count)
    : c_(c_alpha(expsum.order())),
      prev_time_(t0),
      last_time_(t1),
      last_value_(f1) {
  if (!(t1 > t0)) {
    throw ArgumentError("history accumulator needs t_0 < t_1");
  }
  const auto terms = expsum.terms();
  if (first > terms.size()) {
    throw ArgumentError("history accumulator term range out of bounds");
  }
  const std::size_t n = std::min(count, terms.size() - first);
  log_weights_.reserve(n);
  betas_.reserve(n);
  for (std::size_t l = first; l < first + n; ++l) {
    log_weights_.push_back(terms[l].log_weight);
    betas_.push_back(-terms[l].rate);
  }
  phi_.assign(n, 0.0);
}

void HistoryAccumulator::advance(double t_n, double f_n) {
  const double dt = t_n - last_time_;
  if (!(dt > 0.0)) {
    std::ostringstream msg;
    msg << "history accumulator: t_n = " << t_n
        << " does not exceed last time " << last_time_;
    throw ArgumentError(msg.str());
  }
  const double width = last_time_ - prev_time_;
  const std::size_t n = phi_.size();
  for (std::size_t l = 0; l < n; ++l) {
    const double beta = betas_[l];
    const double k = k_weight_log(c_, log_weights_[l], beta, dt, width);
    phi_[l] = k * last_value_ + std::exp(beta * dt) * phi_[l];
  }
  prev_time_ = last_time_;
  last_time_ = t_n;
  last_value_ = f_n;
}

double HistoryAccumulator::history_sum() const noexcept {
  double sum = 0.0;
  for (double v : phi_) sum += v;
  return sum;
}

HistoryAccumulator advance(HistoryAccumulator acc, double t_n, double f_n) {
  acc.advance(t_n, f_n);
  return acc;
}

namespace {

void check_fast_configuration(const FractionalProblem& problem,
                              const TimeGrid& grid,
                              const ExpSumApproximation& expsum,
                              double delta_guard) {
  if (grid.front() != problem.a) {
    throw ArgumentError("grid must start at the lower limit a");
  }
  if (grid.back() > problem.b) {
    throw ArgumentError("grid extends beyond the upper limit b");
  }
  if (!(delta_guard > 0.0)) {
    throw ConfigurationError("delta guard must be positive");
  }
  if (expsum.order().value() != problem.order.value()) {
    throw ConfigurationError("exp-sum was built for a different order alpha");
  }
  if (const auto& v = expsum.validity()) {
    if (delta_guard < v->lower) {
      std::ostringstream msg;
      msg << "delta guard " << delta_guard
          << " is below the exp-sum validity lower end " << v->lower;
      throw ConfigurationError(msg.str());
    }
    const double span = grid.back() - grid.front();
    if (span > v->upper * (1.0 + 1e-12)) {
      std::ostringstream msg;
      msg << "grid span " << span << " exceeds the exp-sum validity upper end "
          << v->upper;
      throw ConfigurationError(msg.str());
    }
  }
  if (grid.min_step() < delta_guard) {
    std::ostringstream msg;
    msg << "grid step " << grid.min_step_index() << " (t_"
        << grid.min_step_index() - 1 << " -> t_" << grid.min_step_index()
        << ", dt = " << grid.min_step() << ") is below the exp-sum delta "
        << delta_guard;
    throw ConfigurationError(msg.str());
  }
}

}  // namespace

EvaluationTrace evaluate_fast(const FractionalProblem& problem,
                              const TimeGrid& grid,
                              const ExpSumApproximation& expsum,
                              double delta_guard, FastOptions options) {
  check_fast_configuration(problem, grid, expsum, delta_guard);
  const auto start = std::chrono::steady_clock::now();
  const std::size_t steps = grid.steps();
  const auto points = grid.points();

  const std::size_t term_count = expsum.size();
  std::vector<double> history(grid.size(), 0.0);
  parallel_block_sums(
      term_count, 8, options.threads, history,
      [&](std::size_t begin, std::size_t end, std::vector<double>& out) {
        if (steps < 2) return;
        HistoryAccumulator acc(expsum, points[0], points[1],
                               problem.f(points[1]), begin, end - begin);
        for (std::size_t n = 2; n <= steps; ++n) {
          acc.advance(points[n], problem.f(points[n]));
          out[n] += acc.history_sum();
        }
      });

  std::vector<double> values(grid.size(), 0.0);
  const FractionalOrder order = problem.order;
  for (std::size_t n = 1; n <= steps; ++n) {
    values[n] =
        local_weight(order, points[n] - points[n - 1]) * problem.f(points[n]) +
        history[n];
  }

  TraceDiagnostics diag;
  diag.term_count = term_count;
  diag.state_count = term_count;
  diag.wall_seconds = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  return EvaluationTrace{grid, std::move(values), Method::expsum, diag};
}

}  // namespace fracdiff
