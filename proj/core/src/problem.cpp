#include "fracdiff/problem.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <sstream>

#include "fracdiff/errors.hpp"

namespace fracdiff {

FractionalOrder::FractionalOrder(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    std::ostringstream msg;
    msg << "fractional order alpha must lie strictly inside (0,1), got "
        << alpha;
    throw ArgumentError(msg.str());
  }
}

double c_alpha(FractionalOrder order) {
  return std::sin(std::numbers::pi * order.value()) / std::numbers::pi;
}

TimeGrid::TimeGrid(std::vector<double> points) : points_(std::move(points)) {
  if (points_.size() < 2) {
    throw ArgumentError("time grid needs at least two points");
  }
  for (double t : points_) {
    if (!std::isfinite(t)) {
      throw ArgumentError("time grid contains a non-finite point");
    }
  }
  min_step_ = points_[1] - points_[0];
  for (std::size_t n = 1; n < points_.size(); ++n) {
    const double dt = points_[n] - points_[n - 1];
    if (!(dt > 0.0)) {
      std::ostringstream msg;
      msg << "time grid must be strictly increasing (t_" << n - 1 << " = "
          << points_[n - 1] << ", t_" << n << " = " << points_[n] << ")";
      throw ArgumentError(msg.str());
    }
    if (dt < min_step_) {
      min_step_ = dt;
      min_step_index_ = n;
    }
  }
}

TimeGrid TimeGrid::uniform(double a, double b, std::size_t steps) {
  if (steps == 0) {
    throw ArgumentError("uniform grid needs at least one step");
  }
  if (!(a < b)) {
    throw ArgumentError("uniform grid needs a < b");
  }
  std::vector<double> points(steps + 1);
  const double width = b - a;
  for (std::size_t n = 0; n <= steps; ++n) {
    points[n] = a + width * (static_cast<double>(n) / static_cast<double>(steps));
  }
  points.back() = b;
  return TimeGrid(std::move(points));
}

double TimeGrid::step(std::size_t n) const {
  if (n == 0 || n >= points_.size()) {
    throw ArgumentError("time grid step index out of range");
  }
  return points_[n] - points_[n - 1];
}

SourceFunction SourceFunction::constant(double c) {
  if (!std::isfinite(c)) throw ArgumentError("constant source must be finite");
  return SourceFunction(Constant{c});
}

SourceFunction SourceFunction::power(double p) {
  if (!(p >= 0.0) || !std::isfinite(p)) {
    throw ArgumentError("monomial exponent must be a finite value >= 0");
  }
  return SourceFunction(Power{p});
}

SourceFunction SourceFunction::shifted_power(double origin, double p) {
  if (!(p >= 0.0) || !std::isfinite(p) || !std::isfinite(origin)) {
    throw ArgumentError("shifted monomial needs finite origin and exponent >= 0");
  }
  return SourceFunction(ShiftedPower{origin, p});
}

SourceFunction SourceFunction::sine() { return SourceFunction(Sine{}); }

SourceFunction SourceFunction::exponential() {
  return SourceFunction(Exponential{});
}

SourceFunction SourceFunction::sampled(std::vector<double> times,
                                       std::vector<double> values) {
  if (times.size() != values.size()) {
    throw ArgumentError("sampled source: time and value columns differ in length");
  }
  if (times.size() < 2) {
    throw ArgumentError("sampled source needs at least two samples");
  }
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i]) || !std::isfinite(values[i])) {
      throw ArgumentError("sampled source contains a non-finite entry");
    }
    if (i > 0 && !(times[i] > times[i - 1])) {
      throw ArgumentError("sampled source times must be strictly increasing");
    }
  }
  return SourceFunction(Sampled{std::move(times), std::move(values)});
}

SourceFunction SourceFunction::custom(std::function<double(double)> fn,
                                      std::string label) {
  if (!fn) throw ArgumentError("custom source needs a callable");
  return SourceFunction(Custom{std::move(fn), std::move(label)});
}

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double power_of(double base, double p) {
  if (base < 0.0) {
    std::ostringstream msg;
    msg << "monomial source evaluated at negative base " << base;
    throw DomainError(msg.str());
  }
  return std::pow(base, p);
}

double interpolate(const SourceFunction::Sampled& s, double t) {
  if (!(t >= s.times.front() && t <= s.times.back())) {
    std::ostringstream msg;
    msg << "sampled source evaluated at t = " << t << " outside ["
        << s.times.front() << ", " << s.times.back() << "]";
    throw DomainError(msg.str());
  }
  auto it = std::upper_bound(s.times.begin(), s.times.end(), t);
  if (it == s.times.end()) return s.values.back();
  const auto j = static_cast<std::size_t>(it - s.times.begin());
  const double t0 = s.times[j - 1];
  const double t1 = s.times[j];
  if (t == t0) return s.values[j - 1];
  const double theta = (t - t0) / (t1 - t0);
  return s.values[j - 1] + theta * (s.values[j] - s.values[j - 1]);
}

}  // namespace

double SourceFunction::operator()(double t) const {
  return std::visit(
      Overloaded{
          [](const Constant& c) { return c.value; },
          [t](const Power& p) { return power_of(t, p.exponent); },
          [t](const ShiftedPower& p) {
            return power_of(t - p.origin, p.exponent);
          },
          [t](const Sine&) { return std::sin(t); },
          [t](const Exponential&) { return std::exp(t); },
          [t](const Sampled& s) { return interpolate(s, t); },
          [t](const Custom& c) { return c.fn(t); },
      },
      form_);
}

bool SourceFunction::covers(double a, double b) const {
  return std::visit(
      Overloaded{
          [a](const Power& p) { return a >= 0.0 || p.exponent == 0.0; },
          [a](const ShiftedPower& p) {
            return a >= p.origin || p.exponent == 0.0;
          },
          [a, b](const Sampled& s) {
            return a >= s.times.front() && b <= s.times.back();
          },
          [](const auto&) { return true; },
      },
      form_);
}

std::optional<double> SourceFunction::constant_value() const {
  if (const auto* c = std::get_if<Constant>(&form_)) return c->value;
  return std::nullopt;
}

std::string SourceFunction::describe() const {
  std::ostringstream out;
  std::visit(Overloaded{
                 [&](const Constant& c) { out << "const:" << c.value; },
                 [&](const Power& p) { out << "monomial:" << p.exponent; },
                 [&](const ShiftedPower& p) {
                   out << "shifted-monomial:" << p.exponent << "@" << p.origin;
                 },
                 [&](const Sine&) { out << "sin"; },
                 [&](const Exponential&) { out << "exp"; },
                 [&](const Sampled& s) {
                   out << "sampled[" << s.times.size() << "]";
                 },
                 [&](const Custom& c) { out << c.label; },
             },
             form_);
  return out.str();
}

namespace {

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n';
  };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view field, std::size_t line) {
  field = trim(field);
  double value = 0.0;
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc() || ptr != end || field.empty()) {
    std::ostringstream msg;
    msg << "sampled CSV line " << line << ": cannot parse number '" << field
        << "'";
    throw ArgumentError(msg.str());
  }
  return value;
}

}  // namespace

SourceFunction read_sampled_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw ArgumentError("sampled CSV is empty");
  }
  std::string_view header = trim(line);
  if (header.starts_with("\xEF\xBB\xBF")) header.remove_prefix(3);
  if (header != "t,f") {
    throw ArgumentError("sampled CSV must start with header 't,f'");
  }
  std::vector<double> times;
  std::vector<double> values;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view row = trim(line);
    if (row.empty()) continue;
    const auto comma = row.find(',');
    if (comma == std::string_view::npos ||
        row.find(',', comma + 1) != std::string_view::npos) {
      std::ostringstream msg;
      msg << "sampled CSV line " << line_no << ": expected two fields";
      throw ArgumentError(msg.str());
    }
    times.push_back(parse_number(row.substr(0, comma), line_no));
    values.push_back(parse_number(row.substr(comma + 1), line_no));
  }
  return SourceFunction::sampled(std::move(times), std::move(values));
}

SourceFunction load_sampled_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ArgumentError("cannot open sampled CSV '" + path + "'");
  }
  return read_sampled_csv(in);
}

FractionalProblem::FractionalProblem(FractionalOrder order_, double a_,
                                     double b_, SourceFunction f_)
    : order(order_), a(a_), b(b_), f(std::move(f_)) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
    std::ostringstream msg;
    msg << "problem interval needs finite a < b, got [" << a << ", " << b
        << "]";
    throw ArgumentError(msg.str());
  }
  if (!f.covers(a, b)) {
    std::ostringstream msg;
    msg << "source " << f.describe() << " is not defined on all of [" << a
        << ", " << b << "]";
    throw ArgumentError(msg.str());
  }
}

}  // namespace fracdiff
