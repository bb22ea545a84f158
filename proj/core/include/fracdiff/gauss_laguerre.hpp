#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "fracdiff/diffusive.hpp"
#include "fracdiff/problem.hpp"
#include "fracdiff/trace.hpp"

namespace fracdiff {

/// Lambda-point Gauss-Laguerre rule for int_0^inf e^{-x} g(x) dx.
///
/// Nodes are the zeros of L_Lambda, found by Newton's method on the
/// three-term recurrence; weights are w_l = x_l / ((Lambda+1)^2 L_{Lambda+1}(x_l)^2).
/// Weights are also kept as logarithms, and `scaled_weights` holds
/// w_l e^{x_l} formed as exp(log w_l + x_l): for Lambda near 200 the largest
/// nodes exceed 700 and w_l itself underflows.
class GaussLaguerreRule {
 public:
  std::size_t order() const noexcept { return nodes_.size(); }
  std::span<const double> nodes() const noexcept { return nodes_; }
  std::span<const double> weights() const noexcept { return weights_; }
  std::span<const double> log_weights() const noexcept { return log_weights_; }
  std::span<const double> scaled_weights() const noexcept {
    return scaled_weights_;
  }

 private:
  friend GaussLaguerreRule build_rule(int lambda);
  std::vector<double> nodes_;
  std::vector<double> weights_;
  std::vector<double> log_weights_;
  std::vector<double> scaled_weights_;
};

inline constexpr int kMaxGaussLaguerreOrder = 200;

/// 1 <= lambda <= 200, ArgumentError otherwise. The rule is checked for
/// sum w = 1 (to 1e-12) and exactness on e^{-x} x^k, k <= 2 lambda - 1 (to
/// 1e-9 relative), before it is
/// returned (NumericalError on failure).
GaussLaguerreRule build_rule(int lambda);

/// Relative error of the rule on int_0^inf e^{-x} x^k dx = k!, evaluated in
/// log space.
double moment_error(const GaussLaguerreRule& rule, int k);

/// Nodes r_l = -x_l/(1-alpha) (values phi_l) and r~_l = x_l/alpha (values
/// phi~_l) of the split-at-zero diffusive integral.
class GLIntegratorState {
 public:
  GLIntegratorState(std::shared_ptr<const GaussLaguerreRule> rule,
                    DiffusiveState left, DiffusiveState right);

  const GaussLaguerreRule& rule() const noexcept { return *rule_; }
  const std::shared_ptr<const GaussLaguerreRule>& shared_rule() const noexcept {
    return rule_;
  }
  const DiffusiveState& left() const noexcept { return left_; }
  const DiffusiveState& right() const noexcept { return right_; }
  double current_time() const noexcept { return left_.current_time(); }

 private:
  std::shared_ptr<const GaussLaguerreRule> rule_;
  DiffusiveState left_;
  DiffusiveState right_;
};

/// Node families for a rule; `damping_window` > 0 gives the history-part
/// nodes.
std::vector<DiffusiveNode> left_nodes(const GaussLaguerreRule& rule,
                                      FractionalOrder order,
                                      double damping_window = 0.0);
std::vector<DiffusiveNode> right_nodes(const GaussLaguerreRule& rule,
                                       FractionalOrder order,
                                       double damping_window = 0.0);

/// Both families zero at t = a.
GLIntegratorState make_gl_state(std::shared_ptr<const GaussLaguerreRule> rule,
                                const FractionalProblem& problem);

GLIntegratorState gl_step(const GLIntegratorState& state,
                          const FractionalProblem& problem, double t_next,
                          StepMethod method);

/// sum_l w_l e^{x_l} [phi_l/(1-alpha) + phi~_l/alpha].
double gl_evaluate(const GLIntegratorState& state, FractionalOrder order);

/// Quadrature of two node families with the Gauss-Laguerre scaled weights;
/// shared by the full integral and the history part.
double gl_combine(const GaussLaguerreRule& rule, FractionalOrder order,
                  std::span<const double> left_values,
                  std::span<const double> right_values);

/// How the trapezoidal method takes its first step from the zero initial
/// state. The trapezoidal rule is A-stable but not L-stable: nodes with
/// h e^r >> 1 receive a factor close to -1 per step and carry the start-up
/// error almost undamped. One backward-Euler step on the first interval
/// places these nodes at their quasi-stationary values. `none` applies the
/// plain trapezoidal formula throughout.
enum class TrapezoidalStart { backward_euler, none };

struct GLOptions {
  TrapezoidalStart start = TrapezoidalStart::backward_euler;
  unsigned threads = 1;
};

/// Runs the Gauss-Laguerre scheme over the grid (which must start at a and
/// end at or before b). values[n] = gl_evaluate after the n-th step.
EvaluationTrace run_gl(const FractionalProblem& problem, const TimeGrid& grid,
                       int lambda, StepMethod method, GLOptions options = {});

EvaluationTrace run_gl(const FractionalProblem& problem, const TimeGrid& grid,
                       std::shared_ptr<const GaussLaguerreRule> rule,
                       StepMethod method, GLOptions options = {});

}  // namespace fracdiff
