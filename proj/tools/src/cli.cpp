#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "format.hpp"
#include "fracdiff/fracdiff.hpp"

namespace fracdiff::cli {
namespace {

// Raised for invalid option values found after CLI11 parsing.
struct ConfigFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

[[noreturn]] void config_fail(const std::string& field,
                              const std::string& message) {
  throw ConfigFailure("--" + field + ": " + message);
}

double parse_real(const std::string& text, const std::string& field) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    config_fail(field, "not a number: '" + text + "'");
  }
  if (used != text.size() || !std::isfinite(value)) {
    config_fail(field, "not a finite number: '" + text + "'");
  }
  return value;
}

FractionalOrder make_order(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    std::ostringstream msg;
    msg << "alpha must lie in the open interval (0, 1), got " << alpha;
    config_fail("alpha", msg.str());
  }
  return FractionalOrder(alpha);
}

SourceFunction make_function(const RunConfig& cfg) {
  const std::string& text = cfg.function;
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  auto need_arg = [&] {
    if (arg.empty()) config_fail("function", "'" + kind + "' needs an argument");
  };
  if (kind == "const") {
    need_arg();
    return SourceFunction::constant(parse_real(arg, "function"));
  }
  if (kind == "monomial" || kind == "shifted-monomial") {
    need_arg();
    const double p = parse_real(arg, "function");
    if (p < 0.0) config_fail("function", "monomial exponent must be >= 0");
    if (kind == "shifted-monomial") return SourceFunction::shifted_power(cfg.a, p);
    if (cfg.a < 0.0 && p != std::floor(p)) {
      config_fail("function",
                  "tau^p with non-integer p needs a >= 0; use shifted-monomial");
    }
    return SourceFunction::power(p);
  }
  if (kind == "sin" && arg.empty()) return SourceFunction::sine();
  if (kind == "exp" && arg.empty()) return SourceFunction::exponential();
  if (kind == "csv") {
    need_arg();
    try {
      return load_sampled_csv(arg);
    } catch (const Error& e) {
      config_fail("function", e.what());
    }
  }
  config_fail("function", "unknown function '" + text +
                              "' (expected const:c, monomial:p, "
                              "shifted-monomial:p, sin, exp or csv:path)");
}

TimeGrid make_grid(const RunConfig& cfg) {
  if (!cfg.grid_file) {
    if (cfg.steps < 1) config_fail("steps", "must be >= 1");
    return TimeGrid::uniform(cfg.a, cfg.b, cfg.steps);
  }
  std::ifstream in(*cfg.grid_file);
  if (!in) config_fail("grid-file", "cannot open '" + *cfg.grid_file + "'");
  std::string line;
  std::vector<double> points;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1) {
      if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
      if (line != "t") config_fail("grid-file", "header must be 't'");
      continue;
    }
    if (line.empty()) continue;
    points.push_back(parse_real(line, "grid-file"));
  }
  try {
    TimeGrid grid(std::move(points));
    if (grid.front() != cfg.a) {
      config_fail("grid-file", "first point must equal --a");
    }
    if (grid.back() > cfg.b) config_fail("grid-file", "points beyond --b");
    return grid;
  } catch (const ArgumentError& e) {
    config_fail("grid-file", e.what());
  }
}

unsigned effective_threads(const RunConfig& cfg) {
  if (const char* env = std::getenv("FRACDIFF_THREADS")) {
    const std::string text(env);
    char* end = nullptr;
    const long value = std::strtol(text.c_str(), &end, 10);
    if (text.empty() || *end != '\0' || value < 1 || value > 1024) {
      throw ConfigFailure("FRACDIFF_THREADS: expected an integer in [1, 1024], got '" +
                          text + "'");
    }
    return static_cast<unsigned>(value);
  }
  return cfg.threads;
}

void check_common(const RunConfig& cfg) {
  if (!(cfg.a < cfg.b)) config_fail("b", "must be greater than --a");
  if (cfg.lambda < 1 || cfg.lambda > kMaxGaussLaguerreOrder) {
    config_fail("lambda", "must be in [1, 200]");
  }
  if (!(cfg.rho_step > 0.0)) config_fail("rho-step", "must be > 0");
  if (!(cfg.tol > 0.0 && cfg.tol < 1.0)) config_fail("tol", "must be in (0, 1)");
  if (cfg.delta && !(*cfg.delta > 0.0)) config_fail("delta", "must be > 0");
  if (cfg.format != "csv" && cfg.format != "json") {
    config_fail("format", "must be csv or json");
  }
}

EvaluationTrace evaluate(const FractionalProblem& problem, const TimeGrid& grid,
                         Method method, const RunConfig& cfg,
                         unsigned threads) {
  switch (method) {
    case Method::gl_euler:
    case Method::gl_trapezoidal: {
      const StepMethod step = method == Method::gl_euler
                                  ? StepMethod::backward_euler
                                  : StepMethod::trapezoidal;
      if (cfg.split_window) {
        SplitOptions options;
        options.gl.threads = threads;
        return split_evaluate(problem, grid,
                              HistoryWindow(*cfg.split_window, problem),
                              cfg.lambda, step, options);
      }
      GLOptions options;
      options.threads = threads;
      return run_gl(problem, grid, cfg.lambda, step, options);
    }
    case Method::expsum: {
      const double delta = cfg.delta.value_or(grid.min_step());
      const auto approx = build_expsum_for_range(
          problem.order, cfg.rho_step, delta, problem.b - problem.a, cfg.tol);
      FastOptions options;
      options.threads = threads;
      return evaluate_fast(problem, grid, approx, delta, options);
    }
    case Method::oracle: {
      OracleOptions options;
      options.threads = threads;
      return direct_integral(problem, grid, options);
    }
  }
  throw ConfigFailure("--method: unsupported");
}

Method make_method(const std::string& name) {
  const auto method = parse_method(name);
  if (!method) {
    config_fail("method", "unknown method '" + name +
                              "' (expected gl-euler, gl-trap, expsum or oracle)");
  }
  return *method;
}

Table cmd_integrate(const RunConfig& cfg) {
  check_common(cfg);
  const auto order = make_order(cfg.alpha);
  const Method method = make_method(cfg.method);
  if (cfg.split_window && method != Method::gl_euler &&
      method != Method::gl_trapezoidal) {
    config_fail("split-window", "only available with gl-euler or gl-trap");
  }
  if (cfg.split_window &&
      !(*cfg.split_window > 0.0 && *cfg.split_window < cfg.b - cfg.a)) {
    config_fail("split-window", "must lie in (0, b - a)");
  }
  FractionalProblem problem(order, cfg.a, cfg.b, make_function(cfg));
  const TimeGrid grid = make_grid(cfg);
  const unsigned threads = effective_threads(cfg);
  const auto trace = evaluate(problem, grid, method, cfg, threads);

  // Truth columns only when every point has a closed form.
  std::vector<double> truth;
  for (double t : grid.points()) {
    const auto value = analytic_solution(problem, t);
    if (!value) {
      truth.clear();
      break;
    }
    truth.push_back(*value);
  }
  Table table;
  table.header = {"t", "value"};
  if (!truth.empty()) {
    table.header.push_back("truth");
    table.header.push_back("rel_err");
  }
  table.numeric.assign(table.header.size(), true);
  for (std::size_t n = 0; n < grid.size(); ++n) {
    std::vector<std::string> row{format_real(grid[n]),
                                 format_real(trace.values[n])};
    if (!truth.empty()) {
      const double diff = std::abs(trace.values[n] - truth[n]);
      const double rel = truth[n] != 0.0 ? diff / std::abs(truth[n]) : diff;
      row.push_back(format_real(truth[n]));
      row.push_back(format_real(rel));
    }
    table.rows.push_back(std::move(row));
  }
  for (double v : trace.values) {
    if (!std::isfinite(v)) throw NumericalError("non-finite value in trace");
  }
  return table;
}

Table cmd_kernel(const RunConfig& cfg) {
  check_common(cfg);
  const auto order = make_order(cfg.alpha);
  const double delta = cfg.delta.value_or(1e-2);
  const double t_max = cfg.b - cfg.a;
  if (!(delta < t_max)) config_fail("delta", "must be smaller than b - a");
  const auto approx =
      build_expsum_for_range(order, cfg.rho_step, delta, t_max, cfg.tol);
  constexpr int points = 200;
  Table table;
  table.header = {"t",          "exact",       "expsum",   "rel_err",
                  "upper_bound", "lower_bound", "condition"};
  table.numeric = {true, true, true, true, true, true, false};
  const double log_lo = std::log(delta);
  const double log_hi = std::log(t_max);
  for (int i = 0; i < points; ++i) {
    const double t = i == 0            ? delta
                     : i == points - 1 ? t_max
                                       : std::exp(log_lo + (log_hi - log_lo) * i / (points - 1));
    const double exact = kernel_exact(order, t);
    const double approx_value = eval_expsum(approx, t);
    const auto bound = truncation_bounds(approx, t);
    table.rows.push_back({format_real(t), format_real(exact),
                          format_real(approx_value),
                          format_real(std::abs(approx_value - exact) / exact),
                          format_real(bound.upper_tail),
                          format_real(bound.lower_tail),
                          bound.condition_satisfied ? "true" : "false"});
  }
  return table;
}

Table cmd_bench(const RunConfig& cfg) {
  check_common(cfg);
  if (cfg.repeats < 1) config_fail("repeats", "must be >= 1");
  if (cfg.sizes.empty()) config_fail("sizes", "needs at least one P");
  const auto order = make_order(cfg.alpha);
  FractionalProblem problem(order, cfg.a, cfg.b, make_function(cfg));
  const unsigned threads = effective_threads(cfg);
  std::vector<Method> methods;
  for (const auto& name : cfg.bench_methods) methods.push_back(make_method(name));
  Table table;
  table.header = {"method", "P", "lambda", "wall_seconds", "peak_state_count"};
  table.numeric = {false, true, true, true, true};
  for (Method method : methods) {
    for (std::size_t p : cfg.sizes) {
      if (p < 1) config_fail("sizes", "every P must be >= 1");
      const auto grid = TimeGrid::uniform(cfg.a, cfg.b, p);
      double best = std::numeric_limits<double>::infinity();
      TraceDiagnostics diag;
      for (int r = 0; r < cfg.repeats; ++r) {
        const auto trace = evaluate(problem, grid, method, cfg, threads);
        best = std::min(best, trace.diagnostics.wall_seconds);
        diag = trace.diagnostics;
      }
      const std::size_t lambda = method == Method::oracle ? 0 : diag.term_count;
      table.rows.push_back({std::string(to_string(method)), std::to_string(p),
                            std::to_string(lambda), format_real(best),
                            std::to_string(diag.state_count)});
    }
  }
  return table;
}

Table cmd_nodes(const RunConfig& cfg) {
  if (cfg.lambda < 1 || cfg.lambda > kMaxGaussLaguerreOrder) {
    config_fail("lambda", "must be in [1, 200]");
  }
  if (cfg.format != "csv" && cfg.format != "json") {
    config_fail("format", "must be csv or json");
  }
  const auto rule = build_rule(cfg.lambda);
  Table table;
  table.header = {"l", "x", "w", "w_scaled"};
  table.numeric = {true, true, true, true};
  for (std::size_t l = 0; l < rule.order(); ++l) {
    table.rows.push_back({std::to_string(l + 1), format_real(rule.nodes()[l]),
                          format_real(rule.weights()[l]),
                          format_real(rule.scaled_weights()[l])});
  }
  return table;
}

void add_problem_options(CLI::App& sub, RunConfig& cfg) {
  sub.add_option("--alpha", cfg.alpha, "Order alpha in (0, 1)");
  sub.add_option("--a", cfg.a, "Lower limit a");
  sub.add_option("--b", cfg.b, "Upper limit b");
  sub.add_option("--function", cfg.function,
                 "const:c | monomial:p | shifted-monomial:p | sin | exp | "
                 "csv:path");
  sub.add_option("--lambda", cfg.lambda, "Gauss-Laguerre points per family");
  sub.add_option("--rho-step", cfg.rho_step, "Exp-sum trapezoidal step");
  sub.add_option("--tol", cfg.tol, "Exp-sum truncation tolerance");
  sub.add_option("--delta", cfg.delta,
                 "Smallest kernel lag covered by the exp-sum (default: "
                 "smallest grid step; 0.01 for kernel)");
  sub.add_option("--threads", cfg.threads,
                 "Worker threads (FRACDIFF_THREADS overrides)")
      ->check(CLI::Range(1u, 1024u));
}

void add_output_options(CLI::App& sub, RunConfig& cfg) {
  sub.add_option("--output,-o", cfg.output, "Output file (default: stdout)");
  sub.add_option("--format", cfg.format, "csv | json");
}

void write_result(const RunConfig& cfg, const Table& table, std::ostream& out) {
  const std::string text =
      cfg.format == "json" ? render_json(table) : render_csv(table);
  if (!cfg.output) {
    out << text;
    return;
  }
  // Written to a sibling temporary and renamed, so a failed run never
  // leaves a partial file behind.
  const std::filesystem::path target(*cfg.output);
  std::filesystem::path temp = target;
  temp += ".tmp";
  {
    std::ofstream file(temp, std::ios::binary | std::ios::trunc);
    if (!file) throw ConfigFailure("--output: cannot write '" + *cfg.output + "'");
    file << text;
    file.close();
    if (!file) {
      std::filesystem::remove(temp);
      throw ConfigFailure("--output: write to '" + *cfg.output + "' failed");
    }
  }
  std::filesystem::rename(temp, target);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Riemann-Liouville fractional integrals via diffusive "
               "representations",
               "fracdiff"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);

  auto* integrate = app.add_subcommand("integrate", "Evaluate I^alpha_a f on a grid");
  add_problem_options(*integrate, cfg);
  integrate->add_option("--steps", cfg.steps, "Uniform grid steps P");
  integrate->add_option("--grid-file", cfg.grid_file,
                        "CSV with header 't' listing the grid");
  integrate->add_option("--method", cfg.method, "gl-euler | gl-trap | expsum | oracle");
  integrate->add_option("--split-window", cfg.split_window,
                        "Local window width; enables the local/history split");
  add_output_options(*integrate, cfg);

  auto* kernel = app.add_subcommand("kernel", "Exp-sum kernel accuracy report");
  add_problem_options(*kernel, cfg);
  add_output_options(*kernel, cfg);

  auto* bench = app.add_subcommand("bench", "Wall time against P");
  add_problem_options(*bench, cfg);
  bench->add_option("--methods", cfg.bench_methods, "Methods to time");
  bench->add_option("--sizes", cfg.sizes, "Grid sizes P");
  bench->add_option("--repeats", cfg.repeats, "Runs per size; minimum is kept");
  add_output_options(*bench, cfg);

  auto* nodes = app.add_subcommand("nodes", "Gauss-Laguerre nodes and weights");
  nodes->add_option("--lambda", cfg.lambda, "Number of points (1..200)");
  add_output_options(*nodes, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "fracdiff: " << e.what() << "\n";
    return kConfigError;
  }
  // Subcommand help is reported through the subcommand itself.
  for (auto* sub : {integrate, kernel, bench, nodes}) {
    if (sub->parsed()) cfg.command = sub->get_name();
  }

  try {
    Table table;
    if (cfg.command == "integrate") {
      table = cmd_integrate(cfg);
    } else if (cfg.command == "kernel") {
      table = cmd_kernel(cfg);
    } else if (cfg.command == "bench") {
      table = cmd_bench(cfg);
    } else {
      table = cmd_nodes(cfg);
    }
    write_result(cfg, table, out);
    return kSuccess;
  } catch (const ConfigFailure& e) {
    err << "fracdiff: " << e.what() << "\n";
    return kConfigError;
  } catch (const NumericalError& e) {
    err << "fracdiff: numerical failure: " << e.what() << "\n";
    return kNumericalError;
  } catch (const Error& e) {
    // Argument, domain and configuration errors all trace back to inputs.
    err << "fracdiff: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    err << "fracdiff: " << e.what() << "\n";
    return kNumericalError;
  }
}

}  // namespace fracdiff::cli
