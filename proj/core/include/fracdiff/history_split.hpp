#pragma once

#include <cstddef>
#include <memory>

#include "fracdiff/diffusive.hpp"
#include "fracdiff/gauss_laguerre.hpp"
#include "fracdiff/problem.hpp"
#include "fracdiff/trace.hpp"

namespace fracdiff {

/// Width w of the local window [t - w, t].
class HistoryWindow {
 public:
  /// 0 < width, finite.
  explicit HistoryWindow(double width);
  /// Additionally checks width < b - a.
  HistoryWindow(double width, const FractionalProblem& problem);

  double width() const noexcept { return width_; }

 private:
  double width_;
};

/// L(t) = 1/Gamma(alpha) int_{t-w}^t (t - tau)^{alpha-1} f(tau) dtau by
/// product integration against the piecewise-linear interpolant of f on
/// `panels` equal subintervals of [t - w, t] (exact for linear f).
/// ArgumentError when t - w < a.
double local_part(const FractionalProblem& problem, HistoryWindow window,
                  double t, std::size_t panels = 256);

/// mu(t, w, r) = c_alpha e^{(1-alpha) r} int_a^{t-w} e^{-(t-tau) e^r} f dtau.
/// Closed form for constant f, adaptive quadrature otherwise.
double mu_reference(const FractionalProblem& problem, HistoryWindow window,
                    double t, double r);

/// Values mu_l at the Gauss-Laguerre nodes r_l, r~_l, forced by
/// e^{-w e^r} f(t - w). Zero at t = a + w.
class HistoryDiffusiveState {
 public:
  HistoryDiffusiveState(std::shared_ptr<const GaussLaguerreRule> rule,
                        HistoryWindow window, DiffusiveState left,
                        DiffusiveState right);

  const GaussLaguerreRule& rule() const noexcept { return *rule_; }
  const std::shared_ptr<const GaussLaguerreRule>& shared_rule() const noexcept {
    return rule_;
  }
  HistoryWindow window() const noexcept { return window_; }
  const DiffusiveState& left() const noexcept { return left_; }
  const DiffusiveState& right() const noexcept { return right_; }
  double current_time() const noexcept { return left_.current_time(); }

 private:
  std::shared_ptr<const GaussLaguerreRule> rule_;
  HistoryWindow window_;
  DiffusiveState left_;
  DiffusiveState right_;
};

HistoryDiffusiveState make_history_state(
    std::shared_ptr<const GaussLaguerreRule> rule,
    const FractionalProblem& problem, HistoryWindow window);

/// One step to t_next; f is only sampled at t_next - w (and at
/// current_time - w for the trapezoidal rule).
HistoryDiffusiveState history_step(const HistoryDiffusiveState& state,
                                   const FractionalProblem& problem,
                                   double t_next, StepMethod method);

/// Gauss-Laguerre quadrature of mu over r.
double history_evaluate(const HistoryDiffusiveState& state,
                        FractionalOrder order);

struct SplitOptions {
  GLOptions gl;
  /// Panels for the local part; 0 picks ceil(w / smallest grid step).
  std::size_t local_panels = 0;
};

/// local_part + history quadrature at every grid point. Points closer to a
/// than the window get the full integral over [a, t] from the local
/// product rule and no history contribution.
EvaluationTrace split_evaluate(const FractionalProblem& problem,
                               const TimeGrid& grid, HistoryWindow window,
                               int lambda, StepMethod method,
                               SplitOptions options = {});

}  // namespace fracdiff
