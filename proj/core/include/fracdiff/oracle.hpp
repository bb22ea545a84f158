#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "fracdiff/problem.hpp"
#include "fracdiff/trace.hpp"

namespace fracdiff {

/// I^alpha_0 tau^p (t) = Gamma(p+1) / Gamma(p+1+alpha) t^{p+alpha}.
double analytic_monomial(FractionalOrder order, double p, double t);

/// Closed-form I^alpha_a f(t) where one is known: constants, (tau - a)^p,
/// tau^p with a = 0, and sin / exp through their Mittag-Leffler type series
/// (sine only for t - a <= 10). nullopt otherwise.
std::optional<double> analytic_solution(const FractionalProblem& problem,
                                        double t);

/// Integrals of (t_n - tau)^{alpha-1} against the two hat functions of the
/// interval [t_{j-1}, t_j]: `left` pairs with f(t_{j-1}), `right` with
/// f(t_j). zeroth = left + right = int (t_n - tau)^{alpha-1} dtau.
struct LinearWeights {
  double zeroth;
  double left;
  double right;
};

/// Closed forms in u = t_n - tau, with the second-order differences
/// (1+e)^{alpha+1} - 1 - (alpha+1) e expanded in series when the interval is
/// short relative to its distance from t_n.
LinearWeights linear_weights(FractionalOrder order, double t_n, double t_jm1,
                             double t_j);

/// Moments of (t_n - tau)^{alpha-1} on every interval j = 1..n of a grid.
class MomentTable {
 public:
  MomentTable(FractionalOrder order, const TimeGrid& grid, std::size_t n);

  std::size_t intervals() const noexcept { return weights_.size(); }
  /// int_{J_j} (t_n - tau)^{alpha-1} dtau, j = 1..n.
  double zeroth(std::size_t j) const { return weights_.at(j - 1).zeroth; }
  /// int_{J_j} (t_n - tau)^{alpha-1} tau dtau.
  double first(std::size_t j) const;
  const LinearWeights& weights(std::size_t j) const {
    return weights_.at(j - 1);
  }

 private:
  std::vector<LinearWeights> weights_;
  std::vector<double> left_points_;
  std::vector<double> right_points_;
};

struct OracleOptions {
  unsigned threads = 1;
};

/// Product integration of (t_n - tau)^{alpha-1} f~(tau) / Gamma(alpha) with
/// f~ the piecewise-linear interpolant of f on the grid. O(P^2).
EvaluationTrace direct_integral(const FractionalProblem& problem,
                                const TimeGrid& grid,
                                OracleOptions options = {});

}  // namespace fracdiff
