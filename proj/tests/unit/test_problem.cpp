#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "fracdiff/errors.hpp"
#include "fracdiff/problem.hpp"

using namespace fracdiff;

TEST(FractionalOrder, OpenUnitInterval) {
  EXPECT_DOUBLE_EQ(FractionalOrder(0.3).value(), 0.3);
  EXPECT_THROW(FractionalOrder(0.0), ArgumentError);
  EXPECT_THROW(FractionalOrder(1.0), ArgumentError);
  EXPECT_THROW(FractionalOrder(1.5), ArgumentError);
  EXPECT_THROW(FractionalOrder(std::nan("")), ArgumentError);
}

TEST(FractionalOrder, CAlpha) {
  EXPECT_NEAR(c_alpha(FractionalOrder(0.5)), 1.0 / M_PI, 1e-16);
  EXPECT_NEAR(c_alpha(FractionalOrder(0.25)), 0.2250790790392765, 1e-16);
}

TEST(TimeGrid, UniformAndSteps) {
  const auto grid = TimeGrid::uniform(0.0, 1.0, 4);
  ASSERT_EQ(grid.size(), 5u);
  EXPECT_EQ(grid.steps(), 4u);
  EXPECT_DOUBLE_EQ(grid.front(), 0.0);
  EXPECT_DOUBLE_EQ(grid.back(), 1.0);
  EXPECT_DOUBLE_EQ(grid.step(2), 0.25);
  EXPECT_DOUBLE_EQ(grid.min_step(), 0.25);
}

TEST(TimeGrid, MinStepIndex) {
  const TimeGrid grid({0.0, 0.5, 0.6, 1.0});
  EXPECT_NEAR(grid.min_step(), 0.1, 1e-15);
  EXPECT_EQ(grid.min_step_index(), 2u);
}

TEST(TimeGrid, Rejects) {
  EXPECT_THROW(TimeGrid({0.0}), ArgumentError);
  EXPECT_THROW(TimeGrid({0.0, 0.0, 1.0}), ArgumentError);
  EXPECT_THROW(TimeGrid({1.0, 0.5}), ArgumentError);
  EXPECT_THROW(TimeGrid({0.0, INFINITY}), ArgumentError);
  EXPECT_THROW(TimeGrid::uniform(0.0, 1.0, 0), ArgumentError);
}

TEST(SourceFunction, BuiltIns) {
  EXPECT_DOUBLE_EQ(SourceFunction::constant(2.5)(7.0), 2.5);
  EXPECT_DOUBLE_EQ(SourceFunction::power(2.0)(3.0), 9.0);
  EXPECT_DOUBLE_EQ(SourceFunction::power(0.0)(0.0), 1.0);
  EXPECT_DOUBLE_EQ(SourceFunction::shifted_power(1.0, 1.0)(3.0), 2.0);
  EXPECT_DOUBLE_EQ(SourceFunction::sine()(0.5), std::sin(0.5));
  EXPECT_DOUBLE_EQ(SourceFunction::exponential()(0.5), std::exp(0.5));
  EXPECT_THROW(SourceFunction::power(0.5)(-1.0), DomainError);
  EXPECT_THROW(SourceFunction::shifted_power(1.0, 0.5)(0.5), DomainError);
  EXPECT_EQ(SourceFunction::constant(3.0).constant_value(), 3.0);
  EXPECT_FALSE(SourceFunction::sine().constant_value().has_value());
}

TEST(SourceFunction, SampledExactAtSamplesAndLinearBetween) {
  const auto f = SourceFunction::sampled({0.0, 1.0, 3.0}, {1.0, 3.0, -1.0});
  EXPECT_DOUBLE_EQ(f(0.0), 1.0);
  EXPECT_DOUBLE_EQ(f(1.0), 3.0);
  EXPECT_DOUBLE_EQ(f(3.0), -1.0);
  EXPECT_DOUBLE_EQ(f(0.25), 1.5);
  EXPECT_DOUBLE_EQ(f(2.0), 1.0);
  for (int i = 0; i <= 10; ++i) {
    const double t = 1.0 + 0.2 * i;
    EXPECT_NEAR(f(t), 3.0 - 2.0 * (t - 1.0), 1e-15);
  }
  EXPECT_THROW(f(-0.1), DomainError);
  EXPECT_THROW(f(3.1), DomainError);
  EXPECT_TRUE(f.covers(0.0, 3.0));
  EXPECT_FALSE(f.covers(0.0, 3.5));
}

TEST(SourceFunction, SampledRejects) {
  EXPECT_THROW(SourceFunction::sampled({0.0}, {1.0}), ArgumentError);
  EXPECT_THROW(SourceFunction::sampled({0.0, 1.0}, {1.0}), ArgumentError);
  EXPECT_THROW(SourceFunction::sampled({1.0, 0.0}, {1.0, 2.0}), ArgumentError);
}

TEST(SourceFunction, CsvIngestion) {
  std::istringstream in("\xEF\xBB\xBFt,f\r\n0,0\n0.5,1\n1,4\n");
  const auto f = read_sampled_csv(in);
  EXPECT_DOUBLE_EQ(f(0.5), 1.0);
  EXPECT_DOUBLE_EQ(f(0.75), 2.5);
  std::istringstream bad_header("time,value\n0,0\n1,1\n");
  EXPECT_THROW(read_sampled_csv(bad_header), ArgumentError);
  std::istringstream bad_row("t,f\n0,0\n1,x\n");
  EXPECT_THROW(read_sampled_csv(bad_row), ArgumentError);
  EXPECT_THROW(load_sampled_csv("/nonexistent/file.csv"), ArgumentError);
}

TEST(FractionalProblem, Validates) {
  const FractionalOrder order(0.5);
  EXPECT_NO_THROW(FractionalProblem(order, 0.0, 1.0, SourceFunction::sine()));
  EXPECT_THROW(FractionalProblem(order, 1.0, 1.0, SourceFunction::sine()),
               ArgumentError);
  EXPECT_THROW(FractionalProblem(order, -1.0, 1.0, SourceFunction::power(0.5)),
               ArgumentError);
  EXPECT_THROW(
      FractionalProblem(order, 0.0, 2.0,
                        SourceFunction::sampled({0.0, 1.0}, {0.0, 1.0})),
      ArgumentError);
}
