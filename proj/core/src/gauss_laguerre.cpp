#include "fracdiff/gauss_laguerre.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include "fracdiff/errors.hpp"
#include "fracdiff/parallel.hpp"
#include "fracdiff/special_functions.hpp"

namespace fracdiff {
namespace {

// Root finding and weights run in long double: the recurrence loses a few
// digits near the small roots, and the weight formula amplifies node
// errors by roughly 2 Lambda.
using Wide = long double;

// L_n(x) and L_{n-1}(x), both multiplied by e^{-log_scale}.
struct LaguerrePair {
  Wide value;
  Wide previous;
  Wide log_scale;
};

LaguerrePair laguerre_pair(int n, Wide x) {
  constexpr Wide kRescale = 1.0e150L;
  Wide previous = 1.0L;   // L_0
  Wide value = 1.0L - x;  // L_1
  Wide log_scale = 0.0L;
  if (n == 0) return {1.0L, 0.0L, 0.0L};
  for (int k = 1; k < n; ++k) {
    const Wide next = ((2.0L * k + 1.0L - x) * value - k * previous) / (k + 1.0L);
    previous = value;
    value = next;
    if (std::abs(value) > kRescale) {
      value /= kRescale;
      previous /= kRescale;
      log_scale += std::log(kRescale);
    }
  }
  return {value, previous, log_scale};
}

// Newton correction L_n / L_n' with L_n' = n (L_n - L_{n-1}) / x.
Wide newton_step(int n, Wide x) {
  const auto p = laguerre_pair(n, x);
  return x * p.value / (n * (p.value - p.previous));
}

Wide polish(int n, Wide x) {
  for (int it = 0; it < 100; ++it) {
    const Wide dx = newton_step(n, x);
    x -= dx;
    if (!std::isfinite(x)) return x;
    if (std::abs(dx) <= 4.0L * std::numeric_limits<Wide>::epsilon() * x) {
      break;
    }
  }
  return x;
}

int sign_of(int n, Wide x) { return laguerre_pair(n, x).value < 0.0L ? -1 : 1; }

// Root search by bracketing when Newton from the standard guess lands on an
// earlier root or diverges.
Wide bracket_root(int n, Wide after, Wide spacing) {
  Wide lo = after * (1.0L + 1e-12L) + 1e-300L;
  const int s_lo = sign_of(n, lo);
  Wide hi = lo;
  Wide step = std::max(spacing * 0.25L, 1e-8L);
  for (int it = 0; it < 100000; ++it) {
    hi = lo + step;
    if (sign_of(n, hi) != s_lo) break;
    lo = hi;
  }
  for (int it = 0; it < 200 && hi - lo > 1e-18L * hi; ++it) {
    const Wide mid = 0.5L * (lo + hi);
    if (sign_of(n, mid) == s_lo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return polish(n, 0.5L * (lo + hi));
}

}  // namespace

GaussLaguerreRule build_rule(int lambda) {
  if (lambda < 1 || lambda > kMaxGaussLaguerreOrder) {
    std::ostringstream msg;
    msg << "Gauss-Laguerre order must be in [1, " << kMaxGaussLaguerreOrder
        << "], got " << lambda;
    throw ArgumentError(msg.str());
  }
  const int n = lambda;
  GaussLaguerreRule rule;
  std::vector<Wide> x(n);
  Wide z = 0.0L;
  for (int i = 0; i < n; ++i) {
    // Initial guesses of Stroud and Secrest as used in standard gaulag.
    if (i == 0) {
      z = 3.0L / (1.0L + 2.4L * n);
    } else if (i == 1) {
      z += 15.0L / (1.0L + 2.5L * n);
    } else {
      const Wide ai = i - 1;
      z += (1.0L + 2.55L * ai) / (1.9L * ai) * (z - x[i - 2]);
    }
    Wide root = polish(n, z);
    const Wide previous = i > 0 ? x[i - 1] : 0.0L;
    const bool bad = !std::isfinite(root) || root <= previous ||
                     (i > 0 && root - previous < 1e-10L * root);
    if (bad) {
      const Wide spacing =
          i > 1 ? x[i - 1] - x[i - 2] : 3.0L / (1.0L + 2.4L * n);
      root = bracket_root(n, previous, spacing);
    }
    if (!std::isfinite(root) || root <= previous) {
      std::ostringstream msg;
      msg << "Gauss-Laguerre: root " << i + 1 << " of L_" << n
          << " did not converge";
      throw NumericalError(msg.str());
    }
    x[i] = root;
    z = root;
  }

  rule.nodes_.assign(x.begin(), x.end());
  rule.weights_.resize(n);
  rule.log_weights_.resize(n);
  rule.scaled_weights_.resize(n);
  for (int i = 0; i < n; ++i) {
    const auto p = laguerre_pair(n, x[i]);
    const Wide next =
        ((2.0L * n + 1.0L - x[i]) * p.value - n * p.previous) / (n + 1.0L);
    const Wide log_next = std::log(std::abs(next)) + p.log_scale;
    const Wide log_w =
        std::log(x[i]) - 2.0L * std::log(n + 1.0L) - 2.0L * log_next;
    rule.log_weights_[i] = static_cast<double>(log_w);
    rule.weights_[i] = static_cast<double>(std::exp(log_w));
    rule.scaled_weights_[i] = static_cast<double>(std::exp(log_w + x[i]));
  }

  double total = 0.0;
  for (double w : rule.weights_) total += w;
  if (std::abs(total - 1.0) > 1e-12) {
    std::ostringstream msg;
    msg << "Gauss-Laguerre order " << n << ": weights sum to 1 + " << total - 1.0;
    throw NumericalError(msg.str());
  }
  for (int k = 1; k <= 2 * n - 1; ++k) {
    const double err = moment_error(rule, k);
    if (!(err <= 1e-9)) {
      std::ostringstream msg;
      msg << "Gauss-Laguerre order " << n << ": moment " << k
          << " has relative error " << err;
      throw NumericalError(msg.str());
    }
  }
  return rule;
}

double moment_error(const GaussLaguerreRule& rule, int k) {
  const double log_fact = log_gamma(k + 1.0);
  double sum = 0.0;
  const auto x = rule.nodes();
  const auto lw = rule.log_weights();
  for (std::size_t l = 0; l < x.size(); ++l) {
    sum += std::exp(lw[l] + k * std::log(x[l]) - log_fact);
  }
  return std::abs(sum - 1.0);
}

GLIntegratorState::GLIntegratorState(
    std::shared_ptr<const GaussLaguerreRule> rule, DiffusiveState left,
    DiffusiveState right)
    : rule_(std::move(rule)), left_(std::move(left)), right_(std::move(right)) {
  if (!rule_ || left_.size() != rule_->order() ||
      right_.size() != rule_->order()) {
    throw ArgumentError("GL state: families must match the rule order");
  }
  if (left_.current_time() != right_.current_time()) {
    throw ArgumentError("GL state: families at different times");
  }
}

std::vector<DiffusiveNode> left_nodes(const GaussLaguerreRule& rule,
                                      FractionalOrder order,
                                      double damping_window) {
  std::vector<DiffusiveNode> nodes;
  nodes.reserve(rule.order());
  for (double x : rule.nodes()) {
    nodes.emplace_back(-x / (1.0 - order.value()), order, damping_window);
  }
  return nodes;
}

std::vector<DiffusiveNode> right_nodes(const GaussLaguerreRule& rule,
                                       FractionalOrder order,
                                       double damping_window) {
  std::vector<DiffusiveNode> nodes;
  nodes.reserve(rule.order());
  for (double x : rule.nodes()) {
    nodes.emplace_back(x / order.value(), order, damping_window);
  }
  return nodes;
}

GLIntegratorState make_gl_state(std::shared_ptr<const GaussLaguerreRule> rule,
                                const FractionalProblem& problem) {
  if (!rule) throw ArgumentError("GL state needs a rule");
  DiffusiveState left(left_nodes(*rule, problem.order), problem.a);
  DiffusiveState right(right_nodes(*rule, problem.order), problem.a);
  return GLIntegratorState(std::move(rule), std::move(left), std::move(right));
}

GLIntegratorState gl_step(const GLIntegratorState& state,
                          const FractionalProblem& problem, double t_next,
                          StepMethod method) {
  return GLIntegratorState(state.shared_rule(),
                           step(state.left(), problem, t_next, method),
                           step(state.right(), problem, t_next, method));
}

double gl_combine(const GaussLaguerreRule& rule, FractionalOrder order,
                  std::span<const double> left_values,
                  std::span<const double> right_values) {
  const double alpha = order.value();
  const auto sw = rule.scaled_weights();
  double sum = 0.0;
  for (std::size_t l = 0; l < sw.size(); ++l) {
    sum += sw[l] * (left_values[l] / (1.0 - alpha) + right_values[l] / alpha);
  }
  return sum;
}

double gl_evaluate(const GLIntegratorState& state, FractionalOrder order) {
  return gl_combine(state.rule(), order, state.left().values(),
                    state.right().values());
}

EvaluationTrace run_gl(const FractionalProblem& problem, const TimeGrid& grid,
                       int lambda, StepMethod method, GLOptions options) {
  return run_gl(problem, grid,
                std::make_shared<const GaussLaguerreRule>(build_rule(lambda)),
                method, options);
}

EvaluationTrace run_gl(const FractionalProblem& problem, const TimeGrid& grid,
                       std::shared_ptr<const GaussLaguerreRule> rule,
                       StepMethod method, GLOptions options) {
  if (!rule) throw ArgumentError("run_gl needs a rule");
  if (grid.front() != problem.a) {
    throw ArgumentError("grid must start at the lower limit a");
  }
  if (grid.back() > problem.b) {
    throw ArgumentError("grid extends beyond the upper limit b");
  }
  const auto start = std::chrono::steady_clock::now();
  const auto left_all = left_nodes(*rule, problem.order);
  const auto right_all = right_nodes(*rule, problem.order);
  const auto points = grid.points();
  const std::size_t steps = grid.steps();
  const std::size_t lambda = rule->order();
  const double alpha = problem.order.value();
  const auto sw = rule->scaled_weights();

  std::vector<double> values(grid.size(), 0.0);
  parallel_block_sums(lambda, 8, options.threads, values,
                      [&](std::size_t begin, std::size_t end,
                          std::vector<double>& out) {
    const std::span<const DiffusiveNode> left(left_all.data() + begin,
                                              end - begin);
    const std::span<const DiffusiveNode> right(right_all.data() + begin,
                                               end - begin);
    std::vector<double> phi_left(end - begin, 0.0);
    std::vector<double> phi_right(end - begin, 0.0);
    double f_prev = problem.f(points[0]);
    for (std::size_t n = 1; n <= steps; ++n) {
      const double h = points[n] - points[n - 1];
      const double f_next = problem.f(points[n]);
      StepMethod m = method;
      if (n == 1 && method == StepMethod::trapezoidal &&
          options.start == TrapezoidalStart::backward_euler) {
        m = StepMethod::backward_euler;
      }
      advance_values(left, phi_left, m, h, f_prev, f_next);
      advance_values(right, phi_right, m, h, f_prev, f_next);
      double sum = 0.0;
      for (std::size_t l = 0; l < end - begin; ++l) {
        sum += sw[begin + l] *
               (phi_left[l] / (1.0 - alpha) + phi_right[l] / alpha);
      }
      out[n] += sum;
      f_prev = f_next;
    }
  });

  TraceDiagnostics diag;
  diag.term_count = lambda;
  diag.state_count = 2 * lambda;
  diag.wall_seconds = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  return EvaluationTrace{
      grid, std::move(values),
      method == StepMethod::backward_euler ? Method::gl_euler
                                           : Method::gl_trapezoidal,
      diag};
}

}  // namespace fracdiff
