#include "fracdiff/history_split.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>
#include <vector>

#include "fracdiff/errors.hpp"
#include "fracdiff/oracle.hpp"
#include "fracdiff/parallel.hpp"
#include "fracdiff/special_functions.hpp"

namespace fracdiff {

HistoryWindow::HistoryWindow(double width) : width_(width) {
  if (!(width > 0.0) || !std::isfinite(width)) {
    throw ArgumentError("history window must be finite and > 0");
  }
}

HistoryWindow::HistoryWindow(double width, const FractionalProblem& problem)
    : HistoryWindow(width) {
  if (!(width < problem.b - problem.a)) {
    std::ostringstream msg;
    msg << "history window " << width << " must be smaller than b - a = "
        << problem.b - problem.a;
    throw ArgumentError(msg.str());
  }
}

namespace {

double local_integral(const FractionalProblem& problem, double lo, double t,
                      std::size_t panels) {
  if (panels == 0) throw ArgumentError("local part needs at least one panel");
  const double width = t - lo;
  if (width <= 0.0) return 0.0;
  double sum = 0.0;
  double f_left = problem.f(lo);
  double left = lo;
  for (std::size_t j = 1; j <= panels; ++j) {
    const double right = j == panels ? t : lo + width * j / panels;
    const double f_right = problem.f(right);
    const auto w = linear_weights(problem.order, t, left, right);
    sum += w.left * f_left + w.right * f_right;
    left = right;
    f_left = f_right;
  }
  return sum / gamma(problem.order.value());
}

}  // namespace

double local_part(const FractionalProblem& problem, HistoryWindow window,
                  double t, std::size_t panels) {
  if (t > problem.b) throw ArgumentError("local part: t beyond b");
  if (t - window.width() < problem.a) {
    std::ostringstream msg;
    msg << "local part: window " << window.width() << " at t = " << t
        << " reaches before a = " << problem.a;
    throw ArgumentError(msg.str());
  }
  return local_integral(problem, t - window.width(), t, panels);
}

double mu_reference(const FractionalProblem& problem, HistoryWindow window,
                    double t, double r) {
  const double w = window.width();
  if (!(t - w >= problem.a) || t > problem.b) {
    throw ArgumentError("mu_reference needs a + w <= t <= b");
  }
  const double span = t - problem.a - w;
  if (span == 0.0) return 0.0;
  const double alpha = problem.order.value();
  const double c = c_alpha(problem.order);
  const double lambda = std::exp(r);
  if (const auto f0 = problem.f.constant_value()) {
    // c f0 e^{(1-alpha) r} e^{-w e^r} (1 - e^{-span e^r}) / e^r
    if (r > 0.0) {
      return c * *f0 * std::exp(-alpha * r - w * lambda) *
             -std::expm1(-span * lambda);
    }
    return c * *f0 * std::exp((1.0 - alpha) * r - w * lambda) * span *
           exprel(-span * lambda);
  }
  const auto integral =
      detail::damped_integral(problem.f, t, r, w, t - problem.a);
  return c * std::exp((1.0 - alpha) * r + integral.log_scale) * integral.value;
}

HistoryDiffusiveState::HistoryDiffusiveState(
    std::shared_ptr<const GaussLaguerreRule> rule, HistoryWindow window,
    DiffusiveState left, DiffusiveState right)
    : rule_(std::move(rule)),
      window_(window),
      left_(std::move(left)),
      right_(std::move(right)) {
  if (!rule_) throw ArgumentError("history state needs a rule");
  if (left_.size() != rule_->order() || right_.size() != rule_->order()) {
    throw ArgumentError("history state: value count differs from rule order");
  }
  if (left_.current_time() != right_.current_time()) {
    throw ArgumentError("history state: families at different times");
  }
}

HistoryDiffusiveState make_history_state(
    std::shared_ptr<const GaussLaguerreRule> rule,
    const FractionalProblem& problem, HistoryWindow window) {
  if (!rule) throw ArgumentError("history state needs a rule");
  const double start = problem.a + window.width();
  DiffusiveState left(left_nodes(*rule, problem.order, window.width()), start);
  DiffusiveState right(right_nodes(*rule, problem.order, window.width()),
                       start);
  return HistoryDiffusiveState(std::move(rule), window, std::move(left),
                               std::move(right));
}

namespace {

DiffusiveState delayed_step(const DiffusiveState& state, double h,
                            StepMethod method, double f_prev, double f_next,
                            double t_next) {
  std::vector<double> values(state.values().begin(), state.values().end());
  advance_values(state.nodes(), values, method, h, f_prev, f_next);
  return DiffusiveState(state.shared_nodes(), std::move(values), t_next);
}

}  // namespace

HistoryDiffusiveState history_step(const HistoryDiffusiveState& state,
                                   const FractionalProblem& problem,
                                   double t_next, StepMethod method) {
  const double w = state.window().width();
  const double t = state.current_time();
  const double h = t_next - t;
  if (!(h > 0.0)) {
    std::ostringstream msg;
    msg << "history step must move forward in time (t = " << t
        << ", t_next = " << t_next << ")";
    throw ArgumentError(msg.str());
  }
  if (t_next > problem.b) throw ArgumentError("history step beyond b");
  if (t - w < problem.a) {
    std::ostringstream msg;
    msg << "history step: delayed time " << t - w << " before a = "
        << problem.a;
    throw ArgumentError(msg.str());
  }
  const double f_next = problem.f(t_next - w);
  const double f_prev =
      method == StepMethod::trapezoidal ? problem.f(t - w) : 0.0;
  return HistoryDiffusiveState(
      state.shared_rule(), state.window(),
      delayed_step(state.left(), h, method, f_prev, f_next, t_next),
      delayed_step(state.right(), h, method, f_prev, f_next, t_next));
}

double history_evaluate(const HistoryDiffusiveState& state,
                        FractionalOrder order) {
  return gl_combine(state.rule(), order, state.left().values(),
                    state.right().values());
}

EvaluationTrace split_evaluate(const FractionalProblem& problem,
                               const TimeGrid& grid, HistoryWindow window,
                               int lambda, StepMethod method,
                               SplitOptions options) {
  const double w = window.width();
  if (grid.front() < problem.a || grid.back() > problem.b) {
    throw ArgumentError("split evaluation: grid must lie inside [a, b]");
  }
  if (!(w < problem.b - problem.a)) {
    throw ArgumentError("history window must be smaller than b - a");
  }
  const auto start_clock = std::chrono::steady_clock::now();
  const auto rule = std::make_shared<const GaussLaguerreRule>(build_rule(lambda));
  const std::size_t panels =
      options.local_panels > 0
          ? options.local_panels
          : std::max<std::size_t>(
                1, static_cast<std::size_t>(std::ceil(w / grid.min_step())));
  const auto points = grid.points();
  const double history_start = problem.a + w;

  // Local parts are independent per point.
  std::vector<double> values(grid.size(), 0.0);
  parallel_chunks(grid.size(), options.gl.threads,
                  [&](std::size_t begin, std::size_t end, std::size_t) {
                    for (std::size_t n = begin; n < end; ++n) {
                      const double lo = std::max(problem.a, points[n] - w);
                      values[n] = local_integral(problem, lo, points[n], panels);
                    }
                  });

  // History: march mu from a + w through the grid points beyond it.
  std::size_t first = 0;
  while (first < grid.size() && points[first] <= history_start) ++first;
  if (first < grid.size()) {
    const auto left_all = left_nodes(*rule, problem.order, w);
    const auto right_all = right_nodes(*rule, problem.order, w);
    const auto sw = rule->scaled_weights();
    const double alpha = problem.order.value();
    const std::size_t count = rule->order();
    std::vector<double> history(grid.size(), 0.0);
    parallel_block_sums(count, 8, options.gl.threads, history,
                        [&](std::size_t begin, std::size_t end,
                            std::vector<double>& out) {
      const std::span<const DiffusiveNode> left(left_all.data() + begin,
                                                end - begin);
      const std::span<const DiffusiveNode> right(right_all.data() + begin,
                                                 end - begin);
      std::vector<double> mu_left(end - begin, 0.0);
      std::vector<double> mu_right(end - begin, 0.0);
      double t = history_start;
      double f_prev = problem.f(t - w);
      for (std::size_t n = first; n < grid.size(); ++n) {
        const double h = points[n] - t;
        const double f_next = problem.f(points[n] - w);
        StepMethod m = method;
        if (n == first && method == StepMethod::trapezoidal &&
            options.gl.start == TrapezoidalStart::backward_euler) {
          m = StepMethod::backward_euler;
        }
        advance_values(left, mu_left, m, h, f_prev, f_next);
        advance_values(right, mu_right, m, h, f_prev, f_next);
        double sum = 0.0;
        for (std::size_t l = 0; l < end - begin; ++l) {
          sum += sw[begin + l] *
                 (mu_left[l] / (1.0 - alpha) + mu_right[l] / alpha);
        }
        out[n] += sum;
        t = points[n];
        f_prev = f_next;
      }
    });
    for (std::size_t n = first; n < grid.size(); ++n) values[n] += history[n];
  }

  TraceDiagnostics diag;
  diag.term_count = rule->order();
  diag.state_count = 2 * rule->order();
  diag.split_window = w;
  diag.wall_seconds = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start_clock)
                          .count();
  return EvaluationTrace{
      grid, std::move(values),
      method == StepMethod::backward_euler ? Method::gl_euler
                                           : Method::gl_trapezoidal,
      diag};
}

}  // namespace fracdiff
