#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "fracdiff/problem.hpp"

namespace fracdiff {

enum class StepMethod { backward_euler, trapezoidal };

/// One value r of the diffusive variable, with the ODE coefficients
///
///   d phi/dt = -e^r phi + c_alpha e^{(1-alpha) r} e^{-w e^r} f
///
/// stored so that every update can be written as
///
///   phi <- (scale * phi + h * forcing * f) / (scale + h * rate).
///
/// For r <= 0 this is (scale, rate, forcing) = (1, e^r, c e^{(1-alpha)r});
/// for r > 0 numerator and denominator are divided by e^r, giving
/// (e^{-r}, 1, c e^{-alpha r}). No stored value exceeds max(1, c_alpha), so
/// nodes with |r| far beyond the exp() range stay finite. The optional
/// damping window w multiplies the forcing by e^{-w e^r} (history part).
class DiffusiveNode {
 public:
  DiffusiveNode(double r, FractionalOrder order, double damping_window = 0.0);

  double r() const noexcept { return r_; }
  bool rescaled() const noexcept { return r_ > 0.0; }
  double scale() const noexcept { return scale_; }
  double rate() const noexcept { return rate_; }
  double forcing() const noexcept { return forcing_; }
  double damping_window() const noexcept { return window_; }

  /// Backward-Euler amplification factor 1 / (1 + h e^r).
  double euler_factor(double h) const noexcept {
    return scale_ / (scale_ + h * rate_);
  }
  /// Trapezoidal amplification factor (1 - h e^r / 2) / (1 + h e^r / 2).
  double trapezoidal_factor(double h) const noexcept {
    const double half = 0.5 * h * rate_;
    return (scale_ - half) / (scale_ + half);
  }

 private:
  double r_;
  double window_;
  double scale_;
  double rate_;
  double forcing_;
};

inline double euler_update(const DiffusiveNode& node, double phi, double h,
                           double f_next) noexcept {
  return (node.scale() * phi + h * node.forcing() * f_next) /
         (node.scale() + h * node.rate());
}

inline double trapezoidal_update(const DiffusiveNode& node, double phi,
                                 double h, double f_prev,
                                 double f_next) noexcept {
  const double half_h = 0.5 * h;
  return ((node.scale() - half_h * node.rate()) * phi +
          half_h * node.forcing() * (f_prev + f_next)) /
         (node.scale() + half_h * node.rate());
}

/// Advances every value by one step of length h. f_prev is ignored by
/// backward Euler.
void advance_values(std::span<const DiffusiveNode> nodes,
                    std::span<double> values, StepMethod method, double h,
                    double f_prev, double f_next);

/// Values phi_l at a set of nodes at one time.
class DiffusiveState {
 public:
  /// All values zero at `start_time`.
  DiffusiveState(std::vector<DiffusiveNode> nodes, double start_time);
  DiffusiveState(std::shared_ptr<const std::vector<DiffusiveNode>> nodes,
                 std::vector<double> values, double current_time);

  std::span<const DiffusiveNode> nodes() const noexcept { return *nodes_; }
  const std::shared_ptr<const std::vector<DiffusiveNode>>& shared_nodes()
      const noexcept {
    return nodes_;
  }
  std::span<const double> values() const noexcept { return values_; }
  double current_time() const noexcept { return current_time_; }
  std::size_t size() const noexcept { return values_.size(); }

 private:
  std::shared_ptr<const std::vector<DiffusiveNode>> nodes_;
  std::vector<double> values_;
  double current_time_;
};

/// phi_l <- (phi_l + h c e^{(1-alpha) r_l} f(t_next)) / (1 + h e^{r_l}),
/// evaluated in the rescaled form of DiffusiveNode.
DiffusiveState step_backward_euler(const DiffusiveState& state,
                                   const FractionalProblem& problem,
                                   double t_next);

/// Trapezoidal (Crank-Nicolson) step using f at both ends of the step.
DiffusiveState step_trapezoidal(const DiffusiveState& state,
                                const FractionalProblem& problem,
                                double t_next);

DiffusiveState step(const DiffusiveState& state,
                    const FractionalProblem& problem, double t_next,
                    StepMethod method);

/// phi(t, r) = c_alpha e^{(1-alpha) r} int_a^t e^{-(t - tau) e^r} f(tau) dtau.
/// Closed form for constant f, adaptive Gauss-Kronrod otherwise
/// (relative tolerance 1e-12).
double phi_reference(const FractionalProblem& problem, double t, double r);

namespace detail {
/// int_{u0}^{u1} e^{-lambda u} f(t - u) du for 0 <= u0 <= u1, lambda = e^r,
/// returned as exp(log_scale) * value so callers can fold prefactors in
/// without overflow.
struct ScaledIntegral {
  double log_scale;
  double value;
};
ScaledIntegral damped_integral(const SourceFunction& f, double t, double r,
                               double u0, double u1);
}  // namespace detail

}  // namespace fracdiff
