#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace fracdiff {

/// Order alpha of the fractional integral, strictly inside (0, 1).
class FractionalOrder {
 public:
  explicit FractionalOrder(double alpha);

  double value() const noexcept { return alpha_; }

 private:
  double alpha_;
};

/// c_alpha = sin(pi alpha) / pi, the constant in front of every diffusive
/// representation.
double c_alpha(FractionalOrder order);

/// Strictly increasing time points t_0 < t_1 < ... < t_P with P >= 1.
class TimeGrid {
 public:
  explicit TimeGrid(std::vector<double> points);

  static TimeGrid uniform(double a, double b, std::size_t steps);

  std::span<const double> points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  std::size_t steps() const noexcept { return points_.size() - 1; }
  double operator[](std::size_t n) const { return points_[n]; }
  double front() const noexcept { return points_.front(); }
  double back() const noexcept { return points_.back(); }

  /// t_n - t_{n-1}, for 1 <= n <= steps().
  double step(std::size_t n) const;
  double min_step() const noexcept { return min_step_; }
  /// Index n of the smallest step.
  std::size_t min_step_index() const noexcept { return min_step_index_; }

 private:
  std::vector<double> points_;
  double min_step_ = 0.0;
  std::size_t min_step_index_ = 1;
};

/// The integrand f. Either one of the built-in closed forms, a sampled series
/// interpolated piecewise linearly, or an arbitrary callable.
class SourceFunction {
 public:
  struct Constant {
    double value;
  };
  /// tau^p, p >= 0, defined for tau >= 0.
  struct Power {
    double exponent;
  };
  /// (tau - origin)^p, p >= 0, defined for tau >= origin.
  struct ShiftedPower {
    double origin;
    double exponent;
  };
  struct Sine {};
  struct Exponential {};
  struct Sampled {
    std::vector<double> times;
    std::vector<double> values;
  };
  struct Custom {
    std::function<double(double)> fn;
    std::string label;
  };

  using Form = std::variant<Constant, Power, ShiftedPower, Sine, Exponential,
                            Sampled, Custom>;

  static SourceFunction constant(double c);
  static SourceFunction power(double p);
  static SourceFunction shifted_power(double origin, double p);
  static SourceFunction sine();
  static SourceFunction exponential();
  /// Throws ArgumentError unless times are strictly increasing, finite and
  /// the two series have equal length >= 2.
  static SourceFunction sampled(std::vector<double> times,
                                std::vector<double> values);
  static SourceFunction custom(std::function<double(double)> fn,
                               std::string label = "custom");

  /// Throws DomainError where f is undefined (sampled range, negative base).
  double operator()(double t) const;

  /// True when f can be evaluated on all of [a, b].
  bool covers(double a, double b) const;

  std::optional<double> constant_value() const;
  const Form& form() const noexcept { return form_; }
  std::string describe() const;

 private:
  explicit SourceFunction(Form form) : form_(std::move(form)) {}

  Form form_;
};

/// Reads a `t,f` CSV (header line, one pair per row) into a sampled source.
SourceFunction read_sampled_csv(std::istream& in);
SourceFunction load_sampled_csv(const std::string& path);

/// I^alpha_a f on [a, b].
struct FractionalProblem {
  FractionalProblem(FractionalOrder order, double a, double b,
                    SourceFunction f);

  FractionalOrder order;
  double a;
  double b;
  SourceFunction f;
};

}  // namespace fracdiff
