#include "fracdiff/oracle.hpp"

#include <chrono>
#include <cmath>
#include <sstream>
#include <variant>

#include "fracdiff/errors.hpp"
#include "fracdiff/parallel.hpp"
#include "fracdiff/special_functions.hpp"

namespace fracdiff {

double analytic_monomial(FractionalOrder order, double p, double t) {
  if (!(p >= 0.0)) throw ArgumentError("analytic_monomial needs p >= 0");
  if (!(t >= 0.0)) throw ArgumentError("analytic_monomial needs t >= 0");
  if (t == 0.0) return 0.0;
  const double alpha = order.value();
  if (p + 1.0 + alpha < 160.0) {
    return gamma(p + 1.0) / gamma(p + 1.0 + alpha) * std::pow(t, p + alpha);
  }
  return std::exp(log_gamma(p + 1.0) - log_gamma(p + 1.0 + alpha) +
                  (p + alpha) * std::log(t));
}

namespace {

// sum_k sign^k x^{2k+offset+alpha} / Gamma(2k+offset+1+alpha) for the
// sine/cosine families (stride 2) or all k for the exponential (stride 1).
double power_series(double alpha, double x, int offset, int stride,
                    bool alternate) {
  if (x == 0.0) return 0.0;
  double power = offset + alpha;
  double term = std::pow(x, power) / gamma(power + 1.0);
  double sum = term;
  for (int k = 1; k < 2000; ++k) {
    for (int s = 0; s < stride; ++s) {
      power += 1.0;
      term *= x / power;
    }
    sum += (alternate && (k % 2 == 1)) ? -term : term;
    if (term < 1e-18 * std::abs(sum) && power > x) break;
  }
  return sum;
}

constexpr double kSeriesLimit = 10.0;

}  // namespace

std::optional<double> analytic_solution(const FractionalProblem& problem,
                                        double t) {
  if (!(t >= problem.a)) return std::nullopt;
  const FractionalOrder order = problem.order;
  const double alpha = order.value();
  const double x = t - problem.a;
  const auto& form = problem.f.form();
  if (const auto* c = std::get_if<SourceFunction::Constant>(&form)) {
    return c->value * analytic_monomial(order, 0.0, x);
  }
  if (const auto* p = std::get_if<SourceFunction::ShiftedPower>(&form)) {
    if (p->origin == problem.a) return analytic_monomial(order, p->exponent, x);
    return std::nullopt;
  }
  if (const auto* p = std::get_if<SourceFunction::Power>(&form)) {
    if (problem.a == 0.0) return analytic_monomial(order, p->exponent, x);
    return std::nullopt;
  }
  if (std::holds_alternative<SourceFunction::Exponential>(form)) {
    if (x > 600.0) return std::nullopt;
    // e^tau = e^a e^{tau - a}
    return std::exp(problem.a) * power_series(alpha, x, 0, 1, false);
  }
  if (std::holds_alternative<SourceFunction::Sine>(form)) {
    if (x > kSeriesLimit) return std::nullopt;
    // sin(tau) = sin(tau - a) cos a + cos(tau - a) sin a
    const double i_sin = power_series(alpha, x, 1, 2, true);
    const double i_cos = power_series(alpha, x, 0, 2, true);
    return std::cos(problem.a) * i_sin + std::sin(problem.a) * i_cos;
  }
  return std::nullopt;
}

namespace {

// (1+e)^beta - 1 - beta e for 0 <= e < 1/2, by the binomial series.
double second_difference_series(double beta, double e) {
  double coefficient = beta * (beta - 1.0) / 2.0;
  double power = e * e;
  double sum = coefficient * power;
  for (int k = 3; k < 200; ++k) {
    coefficient *= (beta - (k - 1)) / k;
    power *= e;
    const double term = coefficient * power;
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

}  // namespace

LinearWeights linear_weights(FractionalOrder order, double t_n, double t_jm1,
                             double t_j) {
  if (!(t_jm1 < t_j) || !(t_j <= t_n)) {
    std::ostringstream msg;
    msg << "linear_weights needs t_{j-1} < t_j <= t_n, got " << t_jm1 << ", "
        << t_j << ", " << t_n;
    throw ArgumentError(msg.str());
  }
  const double alpha = order.value();
  const double near = t_n - t_j;  // lag at the right end point
  const double far = t_n - t_jm1;
  const double width = t_j - t_jm1;
  LinearWeights w{};
  if (near <= 2.0 * width) {
    // Direct formulas; no cancellation worth guarding against here.
    const double m0 = (std::pow(far, alpha) - std::pow(near, alpha)) / alpha;
    const double m1 = (std::pow(far, alpha + 1.0) - std::pow(near, alpha + 1.0)) /
                      (alpha + 1.0);
    // int u^{alpha-1} (far - u) du / width pairs with the node at u = near.
    w.right = (far * m0 - m1) / width;
    w.left = (m1 - near * m0) / width;
    w.zeroth = m0;
    return w;
  }
  const double e = width / near;  // < 1/2
  const double scale = width * std::pow(near, alpha - 1.0);
  // m0 = width near^{alpha-1} ((1+e)^alpha - 1) / (alpha e)
  w.zeroth = scale * std::expm1(alpha * std::log1p(e)) / (alpha * e);
  // right = width near^{alpha-1} int_0^1 (1+e s)^{alpha-1} (1-s) ds
  w.right = scale * second_difference_series(alpha + 1.0, e) /
            (alpha * (alpha + 1.0) * e * e);
  w.left = w.zeroth - w.right;
  return w;
}

MomentTable::MomentTable(FractionalOrder order, const TimeGrid& grid,
                         std::size_t n) {
  if (n == 0 || n >= grid.size()) {
    throw ArgumentError("moment table index n out of range");
  }
  weights_.reserve(n);
  for (std::size_t j = 1; j <= n; ++j) {
    weights_.push_back(linear_weights(order, grid[n], grid[j - 1], grid[j]));
    left_points_.push_back(grid[j - 1]);
    right_points_.push_back(grid[j]);
  }
}

double MomentTable::first(std::size_t j) const {
  const auto& w = weights(j);
  return w.left * left_points_[j - 1] + w.right * right_points_[j - 1];
}

EvaluationTrace direct_integral(const FractionalProblem& problem,
                                const TimeGrid& grid, OracleOptions options) {
  if (grid.front() < problem.a || grid.back() > problem.b) {
    throw ArgumentError("direct_integral: grid must lie inside [a, b]");
  }
  if (grid.front() != problem.a) {
    throw ArgumentError("direct_integral: grid must start at a");
  }
  const auto start = std::chrono::steady_clock::now();
  const FractionalOrder order = problem.order;
  const double inv_gamma = 1.0 / gamma(order.value());
  const auto points = grid.points();
  std::vector<double> samples(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) samples[j] = problem.f(points[j]);

  std::vector<double> values(grid.size(), 0.0);
  parallel_chunks(grid.steps(), options.threads,
                  [&](std::size_t begin, std::size_t end, std::size_t) {
                    for (std::size_t n = begin + 1; n <= end; ++n) {
                      double sum = 0.0;
                      for (std::size_t j = 1; j <= n; ++j) {
                        const auto w = linear_weights(order, points[n],
                                                      points[j - 1], points[j]);
                        sum += w.left * samples[j - 1] + w.right * samples[j];
                      }
                      values[n] = inv_gamma * sum;
                    }
                  });

  TraceDiagnostics diag;
  diag.term_count = grid.size();
  diag.state_count = grid.size();
  diag.wall_seconds = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  return EvaluationTrace{grid, std::move(values), Method::oracle, diag};
}

}  // namespace fracdiff
