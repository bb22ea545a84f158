#include "fracdiff/trace.hpp"

namespace fracdiff {

std::string_view to_string(Method method) {
  switch (method) {
    case Method::gl_euler:
      return "gl-euler";
    case Method::gl_trapezoidal:
      return "gl-trap";
    case Method::expsum:
      return "expsum";
    case Method::oracle:
      return "oracle";
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view name) {
  if (name == "gl-euler") return Method::gl_euler;
  if (name == "gl-trap") return Method::gl_trapezoidal;
  if (name == "expsum") return Method::expsum;
  if (name == "oracle") return Method::oracle;
  return std::nullopt;
}

}  // namespace fracdiff
