#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fracdiff/problem.hpp"

namespace fracdiff {

enum class Method { gl_euler, gl_trapezoidal, expsum, oracle };

std::string_view to_string(Method method);
/// Parses `gl-euler`, `gl-trap`, `expsum`, `oracle`.
std::optional<Method> parse_method(std::string_view name);

struct TraceDiagnostics {
  /// Lambda: quadrature nodes per family, or exp-sum terms.
  std::size_t term_count = 0;
  /// Number of reals carried from one step to the next.
  std::size_t state_count = 0;
  double wall_seconds = 0.0;
  std::optional<double> split_window;
};

/// Approximations of I^alpha_a f at every grid point (values[0] belongs to
/// t_0 = a).
struct EvaluationTrace {
  TimeGrid grid;
  std::vector<double> values;
  Method method;
  TraceDiagnostics diagnostics;
};

}  // namespace fracdiff
