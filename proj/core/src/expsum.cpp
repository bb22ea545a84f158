#include "fracdiff/expsum.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "fracdiff/errors.hpp"
#include "fracdiff/special_functions.hpp"

namespace fracdiff {
namespace {

constexpr int kScanLimit = 10000;
// Largest exponent whose exp() is finite.
constexpr double kMaxLogDouble = 709.0;

}  // namespace

ExpSumApproximation::ExpSumApproximation(
    FractionalOrder order, double rho_step, int lower_count, int upper_count,
    std::optional<ValidityRange> validity)
    : order_(order),
      rho_step_(rho_step),
      lower_count_(lower_count),
      upper_count_(upper_count),
      validity_(validity) {
  if (!(rho_step > 0.0) || !std::isfinite(rho_step)) {
    throw ArgumentError("exp-sum step rho must be finite and positive");
  }
  if (lower_count < 0 || upper_count < 0) {
    throw ArgumentError("exp-sum truncation indices M, N must be nonnegative");
  }
  if (validity && !(validity->lower > 0.0 && validity->lower < validity->upper)) {
    throw ArgumentError("exp-sum validity range must satisfy 0 < lower < upper");
  }
  const double alpha = order.value();
  const double log_rho = std::log(rho_step);
  terms_.reserve(static_cast<std::size_t>(lower_count) + upper_count + 1);
  for (int n = -lower_count; n <= upper_count; ++n) {
    ExpSumTerm term{};
    term.index = n;
    term.log_rate = n * rho_step;
    term.log_weight = log_rho + (1.0 - alpha) * term.log_rate;
    if (term.log_rate > kMaxLogDouble || term.log_weight > kMaxLogDouble) {
      std::ostringstream msg;
      msg << "exp-sum term n = " << n << " overflows (rate e^" << term.log_rate
          << ")";
      throw ArgumentError(msg.str());
    }
    term.rate = std::exp(term.log_rate);
    term.weight = std::exp(term.log_weight);
    terms_.push_back(term);
  }
}

ExpSumApproximation build_expsum(FractionalOrder order, double rho_step,
                                 int lower_count, int upper_count) {
  return ExpSumApproximation(order, rho_step, lower_count, upper_count);
}

double kernel_exact(FractionalOrder order, double t) {
  if (!(t > 0.0)) {
    std::ostringstream msg;
    msg << "kernel K(t) needs t > 0, got " << t;
    throw DomainError(msg.str());
  }
  const double alpha = order.value();
  return gamma(1.0 - alpha) * std::pow(t, alpha - 1.0);
}

double eval_expsum(const ExpSumApproximation& approx, double t) {
  if (!(t >= 0.0)) {
    std::ostringstream msg;
    msg << "exp-sum evaluation needs t >= 0, got " << t;
    throw DomainError(msg.str());
  }
  double sum = 0.0;
  for (const auto& term : approx.terms()) {
    // Underflow of the exponential flushes silently to zero.
    sum += std::exp(term.log_weight - term.rate * t);
  }
  return sum;
}

TruncationBound truncation_bounds(FractionalOrder order, double rho_step,
                                  int lower_count, int upper_count, double t) {
  if (!(t > 0.0)) {
    std::ostringstream msg;
    msg << "truncation bounds need t > 0, got " << t;
    throw DomainError(msg.str());
  }
  const double s = 1.0 - order.value();
  const double log_t = std::log(t);
  const double log_upper_arg = log_t + upper_count * rho_step;
  const double log_lower_arg = log_t - lower_count * rho_step;
  const double prefactor = std::pow(t, -s);
  TruncationBound bound{};
  bound.upper_tail = prefactor * upper_incomplete_gamma_log_arg(s, log_upper_arg);
  bound.lower_tail = prefactor * lower_incomplete_gamma_log_arg(s, log_lower_arg);
  const double log_s = std::log(s);
  bound.condition_satisfied = log_upper_arg >= log_s && log_s >= log_lower_arg;
  return bound;
}

TruncationBound truncation_bounds(const ExpSumApproximation& approx, double t) {
  return truncation_bounds(approx.order(), approx.rho_step(),
                           approx.lower_count(), approx.upper_count(), t);
}

TruncationChoice select_truncation(FractionalOrder order, double rho_step,
                                   double delta, double t_max, double tol) {
  if (!(rho_step > 0.0) || !std::isfinite(rho_step)) {
    throw ArgumentError("select_truncation: rho step must be positive");
  }
  if (!(delta > 0.0) || !(delta < t_max) || !std::isfinite(t_max)) {
    std::ostringstream msg;
    msg << "select_truncation needs 0 < delta < t_max, got delta = " << delta
        << ", t_max = " << t_max;
    throw ArgumentError(msg.str());
  }
  if (!(tol > 0.0)) {
    throw ArgumentError("select_truncation: tolerance must be positive");
  }
  const double s = 1.0 - order.value();
  const double log_s = std::log(s);
  const double log_delta = std::log(delta);
  const double log_t_max = std::log(t_max);
  const double log_rho = std::log(rho_step);

  auto upper_ok = [&](int n_up) {
    if (log_delta + n_up * rho_step < log_s) return false;
    for (double t : {delta, t_max}) {
      if (truncation_bounds(order, rho_step, 0, n_up, t).upper_tail > tol) {
        return false;
      }
    }
    return true;
  };
  auto lower_ok = [&](int m) {
    if (log_t_max - m * rho_step > log_s) return false;
    for (double t : {delta, t_max}) {
      if (truncation_bounds(order, rho_step, m, 0, t).lower_tail > tol) {
        return false;
      }
    }
    return true;
  };

  TruncationChoice choice{-1, -1};
  for (int n_up = 0; n_up <= kScanLimit; ++n_up) {
    if (n_up * rho_step > kMaxLogDouble ||
        log_rho + s * n_up * rho_step > kMaxLogDouble) {
      break;
    }
    if (upper_ok(n_up)) {
      choice.upper_count = n_up;
      break;
    }
  }
  for (int m = 0; m <= kScanLimit; ++m) {
    if (lower_ok(m)) {
      choice.lower_count = m;
      break;
    }
  }
  if (choice.upper_count < 0 || choice.lower_count < 0) {
    std::ostringstream msg;
    msg << "select_truncation: tolerance " << tol << " unreachable with rho = "
        << rho_step << " on [" << delta << ", " << t_max << "] (";
    if (choice.upper_count < 0) msg << "upper tail N > " << kScanLimit;
    if (choice.upper_count < 0 && choice.lower_count < 0) msg << ", ";
    if (choice.lower_count < 0) msg << "lower tail M > " << kScanLimit;
    msg << ")";
    throw NumericalError(msg.str());
  }
  return choice;
}

ExpSumApproximation build_expsum_for_range(FractionalOrder order,
                                           double rho_step, double delta,
                                           double t_max, double tol) {
  const auto choice = select_truncation(order, rho_step, delta, t_max, tol);
  return ExpSumApproximation(order, rho_step, choice.lower_count,
                             choice.upper_count, ValidityRange{delta, t_max});
}

}  // namespace fracdiff
