#include "fracdiff/diffusive.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <sstream>

#include "fracdiff/errors.hpp"
#include "fracdiff/special_functions.hpp"

namespace fracdiff {

DiffusiveNode::DiffusiveNode(double r, FractionalOrder order,
                             double damping_window)
    : r_(r), window_(damping_window) {
  if (std::isnan(r)) throw ArgumentError("diffusive node r is NaN");
  if (!(damping_window >= 0.0) || !std::isfinite(damping_window)) {
    throw ArgumentError("damping window must be finite and >= 0");
  }
  const double alpha = order.value();
  const double c = c_alpha(order);
  // -w e^r, kept at exactly 0 when w == 0 so that e^r = inf cannot produce
  // 0 * inf.
  const double damping_exponent = window_ > 0.0 ? -window_ * std::exp(r) : 0.0;
  if (r > 0.0) {
    scale_ = std::exp(-r);
    rate_ = 1.0;
    forcing_ = c * std::exp(-alpha * r + damping_exponent);
  } else {
    scale_ = 1.0;
    rate_ = std::exp(r);
    forcing_ = c * std::exp((1.0 - alpha) * r + damping_exponent);
  }
}

void advance_values(std::span<const DiffusiveNode> nodes,
                    std::span<double> values, StepMethod method, double h,
                    double f_prev, double f_next) {
  const std::size_t n = nodes.size();
  if (method == StepMethod::backward_euler) {
    for (std::size_t l = 0; l < n; ++l) {
      values[l] = euler_update(nodes[l], values[l], h, f_next);
    }
  } else {
    for (std::size_t l = 0; l < n; ++l) {
      values[l] = trapezoidal_update(nodes[l], values[l], h, f_prev, f_next);
    }
  }
}

DiffusiveState::DiffusiveState(std::vector<DiffusiveNode> nodes,
                               double start_time)
    : nodes_(std::make_shared<const std::vector<DiffusiveNode>>(
          std::move(nodes))),
      values_(nodes_->size(), 0.0),
      current_time_(start_time) {}

DiffusiveState::DiffusiveState(
    std::shared_ptr<const std::vector<DiffusiveNode>> nodes,
    std::vector<double> values, double current_time)
    : nodes_(std::move(nodes)),
      values_(std::move(values)),
      current_time_(current_time) {
  if (!nodes_ || nodes_->size() != values_.size()) {
    throw ArgumentError("diffusive state: node and value counts differ");
  }
}

namespace {

double checked_step(const DiffusiveState& state,
                    const FractionalProblem& problem, double t_next) {
  const double h = t_next - state.current_time();
  if (!(h > 0.0)) {
    std::ostringstream msg;
    msg << "diffusive step must move forward in time (t = "
        << state.current_time() << ", t_next = " << t_next << ")";
    throw ArgumentError(msg.str());
  }
  if (t_next > problem.b) {
    std::ostringstream msg;
    msg << "diffusive step beyond b: t_next = " << t_next
        << " > b = " << problem.b;
    throw ArgumentError(msg.str());
  }
  return h;
}

}  // namespace

DiffusiveState step(const DiffusiveState& state,
                    const FractionalProblem& problem, double t_next,
                    StepMethod method) {
  const double h = checked_step(state, problem, t_next);
  const double f_next = problem.f(t_next);
  const double f_prev = method == StepMethod::trapezoidal
                            ? problem.f(state.current_time())
                            : 0.0;
  std::vector<double> values(state.values().begin(), state.values().end());
  advance_values(state.nodes(), values, method, h, f_prev, f_next);
  return DiffusiveState(state.shared_nodes(), std::move(values), t_next);
}

DiffusiveState step_backward_euler(const DiffusiveState& state,
                                   const FractionalProblem& problem,
                                   double t_next) {
  return step(state, problem, t_next, StepMethod::backward_euler);
}

DiffusiveState step_trapezoidal(const DiffusiveState& state,
                                const FractionalProblem& problem,
                                double t_next) {
  return step(state, problem, t_next, StepMethod::trapezoidal);
}

namespace detail {

ScaledIntegral damped_integral(const SourceFunction& f, double t, double r,
                               double u0, double u1) {
  using boost::math::quadrature::gauss_kronrod;
  constexpr double tol = 1.0e-12;
  constexpr unsigned max_depth = 30;
  // Beyond v = 60 the weight e^{-v} is under 1e-26 of its peak.
  constexpr double v_cutoff = 60.0;
  if (!(u1 > u0)) return {0.0, 0.0};
  if (r <= 0.0) {
    const double lambda = std::exp(r);
    auto integrand = [&](double u) { return std::exp(-lambda * u) * f(t - u); };
    const double value =
        gauss_kronrod<double, 31>::integrate(integrand, u0, u1, max_depth, tol);
    return {0.0, value};
  }
  // v = lambda (u - u0): the weight becomes e^{-v} on [0, lambda (u1 - u0)].
  const double lambda = std::exp(r);
  const double v_end = std::min(lambda * (u1 - u0), v_cutoff);
  auto integrand = [&](double v) {
    return std::exp(-v) * f(t - u0 - v / lambda);
  };
  const double value =
      gauss_kronrod<double, 31>::integrate(integrand, 0.0, v_end, max_depth, tol);
  return {-lambda * u0 - r, value};
}

}  // namespace detail

double phi_reference(const FractionalProblem& problem, double t, double r) {
  if (!(t >= problem.a && t <= problem.b)) {
    std::ostringstream msg;
    msg << "phi_reference: t = " << t << " outside [" << problem.a << ", "
        << problem.b << "]";
    throw ArgumentError(msg.str());
  }
  const double span = t - problem.a;
  if (span == 0.0) return 0.0;
  const double alpha = problem.order.value();
  const double c = c_alpha(problem.order);
  if (const auto f0 = problem.f.constant_value()) {
    // c f0 e^{(1-alpha) r} (1 - e^{-T e^r}) / e^r
    if (r > 0.0) {
      return c * *f0 * std::exp(-alpha * r) * -std::expm1(-span * std::exp(r));
    }
    const double x = span * std::exp(r);
    return c * *f0 * std::exp((1.0 - alpha) * r) * span * exprel(-x);
  }
  const auto integral = detail::damped_integral(problem.f, t, r, 0.0, span);
  return c * std::exp((1.0 - alpha) * r + integral.log_scale) * integral.value;
}

}  // namespace fracdiff
