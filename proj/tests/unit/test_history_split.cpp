#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "fracdiff/errors.hpp"
#include "fracdiff/history_split.hpp"
#include "fracdiff/oracle.hpp"
#include "reference.hpp"

using namespace fracdiff;
using fracdiff::test::reference;
using fracdiff::test::rel_diff;

namespace {

FractionalProblem make(double alpha, SourceFunction f, double a = 0.0,
                       double b = 1.0) {
  return FractionalProblem(FractionalOrder(alpha), a, b, std::move(f));
}

}  // namespace

TEST(HistoryWindow, Validates) {
  EXPECT_DOUBLE_EQ(HistoryWindow(0.5).width(), 0.5);
  EXPECT_THROW(HistoryWindow(0.0), ArgumentError);
  EXPECT_THROW(HistoryWindow(-1.0), ArgumentError);
  const auto problem = make(0.5, SourceFunction::constant(1.0));
  EXPECT_NO_THROW(HistoryWindow(0.99, problem));
  EXPECT_THROW(HistoryWindow(1.0, problem), ArgumentError);
}

TEST(LocalPart, DocumentedValues) {
  const auto one = make(0.5, SourceFunction::constant(1.0), 0.0, 2.0);
  for (double t : {0.5, 1.0, 1.7, 2.0}) {
    EXPECT_NEAR(local_part(one, HistoryWindow(0.5), t), 0.7978845608028654, 1e-14);
  }
  const auto zero = make(0.5, SourceFunction::constant(0.0));
  EXPECT_EQ(local_part(zero, HistoryWindow(0.5), 1.0), 0.0);
  const auto linear = make(0.5, SourceFunction::power(1.0));
  EXPECT_NEAR(local_part(linear, HistoryWindow(1.0), 1.0), 0.7522527780636750,
              1e-14);
  EXPECT_THROW(local_part(one, HistoryWindow(0.5), 0.4), ArgumentError);
}

TEST(LocalPart, SecondOrderInPanels) {
  const auto problem = make(0.3, SourceFunction::exponential(), 0.0, 2.0);
  const HistoryWindow w(0.8);
  const double fine = local_part(problem, w, 2.0, 8192);
  const double e1 = std::abs(local_part(problem, w, 2.0, 32) - fine);
  const double e2 = std::abs(local_part(problem, w, 2.0, 64) - fine);
  EXPECT_NEAR(e1 / e2, 4.0, 0.5);
}

TEST(MuReference, MatchesReferenceTable) {
  for (const char* alpha : {"0.25", "0.5", "0.75"}) {
    const auto linear = make(std::stod(alpha), SourceFunction::power(1.0));
    const auto cosine = make(
        std::stod(alpha),
        SourceFunction::custom([](double t) { return std::cos(t); }, "cos"), 0.0,
        2.0);
    for (const char* r : {"-3", "0", "3", "10"}) {
      const std::string key = std::string(alpha) + ":" + r;
      const double lin = reference("mu_lin:" + key);
      const double cos = reference("mu_cos:" + key);
      const double lin_got = mu_reference(linear, HistoryWindow(0.5), 1.0, std::stod(r));
      const double cos_got = mu_reference(cosine, HistoryWindow(0.5), 2.0, std::stod(r));
      if (lin == 0.0) {
        EXPECT_LT(std::abs(lin_got), 1e-300) << key;
      } else {
        EXPECT_LT(rel_diff(lin_got, lin), 1e-11) << key;
      }
      if (cos == 0.0) {
        EXPECT_LT(std::abs(cos_got), 1e-300) << key;
      } else {
        EXPECT_LT(rel_diff(cos_got, cos), 1e-11) << key;
      }
    }
  }
}

TEST(MuReference, ShiftedPhiIdentityAndClosedForm) {
  // mu(t, w, r) = e^{-w e^r} phi(t - w, r) for f = 1.
  const auto one = make(0.4, SourceFunction::constant(1.0), 0.0, 3.0);
  const auto wrapped =
      make(0.4, SourceFunction::custom([](double) { return 1.0; }), 0.0, 3.0);
  for (double r = -10.0; r <= 3.0; r += 0.5) {
    const double mu = mu_reference(one, HistoryWindow(0.7), 2.5, r);
    EXPECT_LT(rel_diff(mu, std::exp(-0.7 * std::exp(r)) * phi_reference(one, 1.8, r)),
              1e-12)
        << r;
    EXPECT_LT(rel_diff(mu_reference(wrapped, HistoryWindow(0.7), 2.5, r), mu), 1e-10)
        << r;
  }
  EXPECT_EQ(mu_reference(one, HistoryWindow(0.5), 0.5, 0.0), 0.0);
  EXPECT_THROW(mu_reference(one, HistoryWindow(0.5), 0.4, 0.0), ArgumentError);
}

TEST(MuReference, DecayEnvelope) {
  for (double alpha : {0.25, 0.5, 0.75}) {
    const auto problem = make(alpha, SourceFunction::sine(), 0.0, 2.0);
    const double c = std::sin(std::numbers::pi * alpha) / std::numbers::pi;
    const double sup = 1.0;
    const double h = 0.5;
    const double t = 2.0;
    for (double r = -40.0; r <= 40.0; r += 0.5) {
      const double mu = mu_reference(problem, HistoryWindow(h), t, r);
      const double bound =
          r >= 0 ? c * sup * std::exp(-alpha * r - h * std::exp(r))
                 : c * sup * (t - h) * std::exp((1 - alpha) * r);
      EXPECT_LE(std::abs(mu), bound * (1 + 1e-12)) << alpha << " " << r;
    }
  }
}

TEST(MuReference, TemporalDifferencesConverge) {
  const auto problem =
      make(0.5, SourceFunction::custom([](double t) { return std::cos(t); }), 0.0, 2.0);
  for (double r : {-2.0, 0.0, 2.0}) {
    auto derivative = [&](double d) {
      return (mu_reference(problem, HistoryWindow(0.5), 1.5 + d, r) -
              mu_reference(problem, HistoryWindow(0.5), 1.5 - d, r)) /
             (2 * d);
    };
    const double d1 = derivative(1e-1);
    const double d2 = derivative(1e-2);
    const double d3 = derivative(1e-3);
    EXPECT_LT(std::abs(d3 - d2), std::abs(d2 - d1)) << r;
    EXPECT_LT(std::abs(d3 - d2), 1e-4) << r;
  }
}

TEST(HistoryStep, DampedEulerUpdate) {
  // Single node r = 0, window 0.5, alpha = 0.5, f = 1, h = 0.1.
  const FractionalOrder order(0.5);
  const DiffusiveNode node(0.0, order, 0.5);
  EXPECT_NEAR(euler_update(node, 0.0, 0.1, 1.0), 0.01755133684182798, 1e-15);
  EXPECT_NEAR(euler_update(node, 0.0, 0.1, 1.0),
              0.1 / std::numbers::pi * std::exp(-0.5) / 1.1, 1e-16);
  const DiffusiveNode killed(20.0, order, 0.5);
  EXPECT_EQ(killed.forcing(), 0.0);
  double mu = 1.0;
  for (int i = 0; i < 5; ++i) {
    const double next = euler_update(killed, mu, 0.1, 1.0);
    EXPECT_LT(next, mu);
    mu = next;
  }
}

TEST(HistoryStep, VanishingWindowMatchesDiffusiveCore) {
  const auto problem = make(0.5, SourceFunction::sine());
  auto rule = std::make_shared<const GaussLaguerreRule>(build_rule(6));
  const HistoryWindow tiny(1e-300);
  auto history = make_history_state(rule, problem, tiny);
  auto plain = make_gl_state(rule, problem);
  history = history_step(history, problem, 0.1, StepMethod::backward_euler);
  plain = gl_step(plain, problem, 0.1, StepMethod::backward_euler);
  for (std::size_t l = 0; l < 6; ++l) {
    EXPECT_EQ(history.left().values()[l], plain.left().values()[l]);
    EXPECT_EQ(history.right().values()[l], plain.right().values()[l]);
  }
}

TEST(HistoryStep, NeverReadsInsideTheWindow) {
  std::vector<double> seen;
  const auto problem = make(
      0.4, SourceFunction::custom([&](double t) {
        seen.push_back(t);
        return 1.0 + t;
      }),
      0.0, 1.0);
  auto rule = std::make_shared<const GaussLaguerreRule>(build_rule(10));
  const HistoryWindow w(0.3);
  auto state = make_history_state(rule, problem, w);
  EXPECT_DOUBLE_EQ(state.current_time(), 0.3);
  for (double v : state.left().values()) EXPECT_EQ(v, 0.0);
  for (int n = 1; n <= 14; ++n) {
    const double t_next = 0.3 + 0.05 * n;
    const auto method = n % 2 ? StepMethod::trapezoidal : StepMethod::backward_euler;
    seen.clear();
    state = history_step(state, problem, t_next, method);
    ASSERT_FALSE(seen.empty());
    EXPECT_LE(*std::max_element(seen.begin(), seen.end()), t_next - w.width());
  }
  EXPECT_THROW(history_step(state, problem, state.current_time(),
                            StepMethod::backward_euler),
               ArgumentError);
}

TEST(HistoryStep, RejectsDelayedTimeBeforeA) {
  const auto problem = make(0.4, SourceFunction::constant(1.0));
  auto rule = std::make_shared<const GaussLaguerreRule>(build_rule(3));
  const auto left = left_nodes(*rule, problem.order, 0.5);
  const auto right = right_nodes(*rule, problem.order, 0.5);
  HistoryDiffusiveState early(rule, HistoryWindow(0.5), DiffusiveState(left, 0.2),
                              DiffusiveState(right, 0.2));
  EXPECT_THROW(history_step(early, problem, 0.3, StepMethod::backward_euler),
               ArgumentError);
}

TEST(SplitEvaluate, DocumentedExample) {
  const auto problem = make(0.5, SourceFunction::constant(1.0));
  const auto grid = TimeGrid::uniform(0.0, 1.0, 1024);
  const HistoryWindow w(0.5);
  const auto trace = split_evaluate(problem, grid, w, 40, StepMethod::trapezoidal);
  const double local = local_part(problem, w, 1.0);
  EXPECT_NEAR(local, 0.7978845608028654, 1e-14);
  const double history = trace.values.back() - local;
  EXPECT_NEAR(history, 0.3304946062926472, 1e-3);
  EXPECT_NEAR(trace.values.back(), 1.1283791670955126, 1e-3);
  ASSERT_TRUE(trace.diagnostics.split_window.has_value());
  EXPECT_DOUBLE_EQ(*trace.diagnostics.split_window, 0.5);

  const auto zero = make(0.5, SourceFunction::constant(0.0));
  for (double v : split_evaluate(zero, grid, w, 40, StepMethod::trapezoidal).values) {
    EXPECT_EQ(v, 0.0);
  }
}

TEST(SplitEvaluate, PointsInsideFirstWindowUseFullLocalIntegral) {
  const auto problem = make(0.5, SourceFunction::power(1.0));
  const auto grid = TimeGrid::uniform(0.0, 1.0, 10);
  const auto trace =
      split_evaluate(problem, grid, HistoryWindow(0.5), 20, StepMethod::trapezoidal);
  for (std::size_t n = 1; n <= 5; ++n) {
    EXPECT_LT(rel_diff(trace.values[n], analytic_monomial(problem.order, 1.0, grid[n])),
              1e-13)
        << n;
  }
}

TEST(SplitEvaluate, VanishingHistory) {
  const auto problem = make(0.5, SourceFunction::constant(1.0));
  double previous = INFINITY;
  for (double eps : {1e-1, 1e-2, 1e-3, 1e-4}) {
    const HistoryWindow w(1.0 - eps, problem);
    const auto trace =
        split_evaluate(problem, TimeGrid({0.0, 1.0}), w, 40, StepMethod::backward_euler);
    const double history = trace.values.back() - local_part(problem, w, 1.0);
    EXPECT_GE(history, 0.0);
    EXPECT_LT(history, previous);
    // Exact history for f = 1 is (1 - (1 - eps)^alpha) / Gamma(1 + alpha).
    const double exact = (1.0 - std::sqrt(1.0 - eps)) / std::tgamma(1.5);
    EXPECT_LT(history, 1.5 * exact);
    previous = history;
  }
  EXPECT_LT(previous, 1e-4);
}

TEST(SplitEvaluate, IdentityAgainstRunGL) {
  const auto grid = TimeGrid::uniform(0.0, 1.0, 1024);
  for (double alpha : {0.25, 0.5, 0.75}) {
    for (double p : {0.0, 1.0, 2.0}) {
      const auto problem = make(alpha, SourceFunction::power(p));
      const auto split =
          split_evaluate(problem, grid, HistoryWindow(0.5), 40, StepMethod::trapezoidal);
      const auto full = run_gl(problem, grid, 40, StepMethod::trapezoidal);
      EXPECT_LT(rel_diff(split.values.back(), full.values.back()), 1e-3)
          << alpha << " " << p;
      EXPECT_LT(rel_diff(split.values.back(), analytic_monomial(problem.order, p, 1.0)),
                1e-3)
          << alpha << " " << p;
    }
  }
}

TEST(SplitEvaluate, ThreadsAgree) {
  const auto problem = make(0.6, SourceFunction::sine());
  const auto grid = TimeGrid::uniform(0.0, 1.0, 200);
  SplitOptions threaded;
  threaded.gl.threads = 3;
  EXPECT_EQ(split_evaluate(problem, grid, HistoryWindow(0.3), 30, StepMethod::trapezoidal)
                .values,
            split_evaluate(problem, grid, HistoryWindow(0.3), 30, StepMethod::trapezoidal,
                           threaded)
                .values);
}

TEST(SplitEvaluate, RejectsOversizedWindow) {
  const auto problem = make(0.5, SourceFunction::constant(1.0));
  EXPECT_THROW(split_evaluate(problem, TimeGrid::uniform(0.0, 1.0, 4), HistoryWindow(1.0),
                              10, StepMethod::trapezoidal),
               ArgumentError);
}
