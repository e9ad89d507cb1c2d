#pragma once

// Experiment configuration and the desk-scale studies of the twisted sums
// S(X) (smooth weight) and the sharp-cutoff sums sum_{n <= X}.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "thetatwist/characters.hpp"
#include "thetatwist/circle.hpp"
#include "thetatwist/errors.hpp"
#include "thetatwist/expsums.hpp"
#include "thetatwist/fit.hpp"
#include "thetatwist/forms.hpp"
#include "thetatwist/parallel.hpp"
#include "thetatwist/theta.hpp"

namespace thetatwist {

enum class OutputFormat { Csv, Json };

struct ExperimentConfig {
  int ell = 3;
  std::int64_t p = 13;
  std::int64_t j = 1;
  int kappa = 12;
  double xmin = 1024;
  double xmax = 65536;
  std::optional<double> delta;  // empty: the experiment's default policy
  bool delta_optimal = false;   // "delta = optimal" in the config
  std::optional<double> P;      // explicit arcs; both or neither
  std::optional<double> Q;
  std::string out;  // empty: stdout
  OutputFormat format = OutputFormat::Csv;
  std::string level = "quick";
  unsigned threads = 1;

  /// Dyadic grid xmin, 2 xmin, ... <= xmax.
  std::vector<double> grid() const {
    std::vector<double> g;
    for (double X = xmin; X <= xmax * (1.0 + 1e-12); X *= 2.0) g.push_back(X);
    return g;
  }
};

namespace detail {
inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline double parse_number(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::Config, "config: '" + key + "' expects a number, got '" + value + "'");
  }
}

inline std::int64_t parse_integer(const std::string& key, const std::string& value) {
  const double v = parse_number(key, value);
  if (v != std::floor(v)) throw Error(ErrorCode::Config, "config: '" + key + "' expects an integer");
  return static_cast<std::int64_t>(v);
}
}  // namespace detail

/// Applies one key=value setting.
inline void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
  using detail::parse_integer;
  using detail::parse_number;
  if (key == "ell") {
    cfg.ell = static_cast<int>(parse_integer(key, value));
  } else if (key == "p") {
    cfg.p = parse_integer(key, value);
  } else if (key == "j" || key == "char-index") {
    cfg.j = parse_integer(key, value);
  } else if (key == "kappa") {
    cfg.kappa = static_cast<int>(parse_integer(key, value));
  } else if (key == "xmin") {
    cfg.xmin = parse_number(key, value);
  } else if (key == "xmax") {
    cfg.xmax = parse_number(key, value);
  } else if (key == "delta") {
    if (value == "optimal") {
      cfg.delta.reset();
      cfg.delta_optimal = true;
    } else {
      cfg.delta = parse_number(key, value);
      cfg.delta_optimal = false;
    }
  } else if (key == "P") {
    cfg.P = parse_number(key, value);
  } else if (key == "Q") {
    cfg.Q = parse_number(key, value);
  } else if (key == "out") {
    cfg.out = value;
  } else if (key == "format") {
    if (value == "csv") cfg.format = OutputFormat::Csv;
    else if (value == "json") cfg.format = OutputFormat::Json;
    else throw Error(ErrorCode::Config, "config: format must be csv or json");
  } else if (key == "level") {
    if (value != "quick" && value != "full") throw Error(ErrorCode::Config, "config: level must be quick or full");
    cfg.level = value;
  } else if (key == "threads") {
    const auto t = parse_integer(key, value);
    if (t < 1) throw Error(ErrorCode::Config, "config: threads must be >= 1");
    cfg.threads = static_cast<unsigned>(t);
  } else {
    throw Error(ErrorCode::Config, "config: unknown key '" + key + "'");
  }
}

/// Reads "key = value" lines; '#' starts a comment.
inline void load_config(ExperimentConfig& cfg, std::istream& in) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorCode::Config, "config line " + std::to_string(lineno) + ": expected key = value");
    apply_setting(cfg, detail::trim(line.substr(0, eq)), detail::trim(line.substr(eq + 1)));
  }
}

inline void load_config_file(ExperimentConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Config, "cannot open config file " + path);
  load_config(cfg, in);
}

inline void validate(const ExperimentConfig& cfg) {
  auto fail = [](const std::string& m) { throw Error(ErrorCode::Config, "config: " + m); };
  if (cfg.ell < 3) fail("ell must be >= 3");
  if (cfg.p < 3 || !is_prime(cfg.p)) fail("p must be an odd prime");
  if (cfg.j < 1 || cfg.j >= cfg.p - 1) fail("char-index must lie in [1, p-1)");
  if (cfg.kappa != 12) fail("only kappa = 12 is implemented");
  if (!(cfg.xmin >= 2.0) || cfg.xmax < cfg.xmin) fail("need 2 <= xmin <= xmax");
  if (cfg.xmax > static_cast<double>(kMaxFormLength)) fail("xmax exceeds the coefficient table limit");
  if (static_cast<double>(cfg.p) >= cfg.xmin) fail("p must be below every X of the grid");
  if (cfg.delta && !(*cfg.delta >= 1.0)) fail("delta must be >= 1");
  if (cfg.P.has_value() != cfg.Q.has_value()) fail("P and Q must be given together");
  if (cfg.grid().size() < 3) fail("the X grid needs at least three points");
}

using Cell = std::variant<std::int64_t, double>;

/// Rows with named columns, printable as CSV or JSON.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

inline std::string format_cell(const Cell& c) {
  if (std::holds_alternative<std::int64_t>(c)) return std::to_string(std::get<std::int64_t>(c));
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", std::get<double>(c));
  return buf;
}

inline std::string to_csv(const Table& t) {
  std::ostringstream os;
  for (std::size_t k = 0; k < t.columns.size(); ++k) os << (k ? "," : "") << t.columns[k];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) os << (k ? "," : "") << format_cell(row[k]);
    os << '\n';
  }
  return os.str();
}

inline nlohmann::ordered_json to_json(const Table& t) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json obj;
    for (std::size_t k = 0; k < row.size(); ++k) {
      std::visit([&](auto v) { obj[t.columns[k]] = v; }, row[k]);
    }
    arr.push_back(std::move(obj));
  }
  return arr;
}

struct ExperimentReport {
  std::string name;
  Table table;
  FitResult fit;
  double trivial_exp = 0.0;
  double thm_exp = 0.0;
  double heuristic_exp = 0.0;
  double slope_bound = 0.0;  // the check: fit.slope <= slope_bound
  bool passed = false;
};

inline nlohmann::ordered_json to_json(const ExperimentReport& r) {
  nlohmann::ordered_json j;
  j["experiment"] = r.name;
  j["rows"] = to_json(r.table);
  j["fit"] = {{"slope", r.fit.slope}, {"intercept", r.fit.intercept}, {"residual", r.fit.residual}};
  j["reference"] = {{"trivial_exp", r.trivial_exp}, {"thm_exp", r.thm_exp}, {"heuristic_exp", r.heuristic_exp}};
  j["slope_bound"] = r.slope_bound;
  j["passed"] = r.passed;
  return j;
}

inline std::string render(const ExperimentReport& r, OutputFormat f) {
  if (f == OutputFormat::Csv) return to_csv(r.table);
  return to_json(r).dump(2) + "\n";
}

/// l/2 - (l-2)/(l+3): exponent of X in the smooth-sum bound.
inline double thm11_exponent(int ell) { return ell / 2.0 - (ell - 2.0) / (ell + 3.0); }

/// l/2 - (l-2)/(2l+1): exponent of X in the sharp-sum bound.
inline double thm12_exponent(int ell) { return ell / 2.0 - (ell - 2.0) / (2.0 * ell + 1.0); }

namespace detail {
inline ArcParameters arc_parameters(const ExperimentConfig& cfg, double X, double delta) {
  if (cfg.P && cfg.Q) return {*cfg.P, *cfg.Q};
  return choose_Q(static_cast<double>(cfg.p), X, delta, cfg.ell);
}

inline FormTable form_for(const ExperimentConfig& cfg) {
  return delta_form(static_cast<std::size_t>(std::floor(cfg.xmax)));
}
}  // namespace detail

/// |S(X)| over the dyadic grid; fixed delta (default 1) unless delta = optimal.
inline ExperimentReport thm11_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  const FormTable t = detail::form_for(cfg);
  const CharTable chi = build_char(cfg.p, cfg.j);
  const auto grid = cfg.grid();
  struct Point {
    double delta, P, Q;
    Complex S;
  };
  const auto points = parallel_map(grid.size(), cfg.threads, [&](std::size_t i) {
    const double X = grid[i];
    const double delta = cfg.delta_optimal ? choose_Delta(static_cast<double>(cfg.p), X, cfg.ell) : cfg.delta.value_or(1.0);
    const auto pq = detail::arc_parameters(cfg, X, delta);
    return Point{delta, pq.P, pq.Q, direct_sum(X, cfg.ell, t, chi, make_weight(delta))};
  });

  ExperimentReport r;
  r.name = "thm11";
  r.trivial_exp = cfg.ell / 2.0;
  r.thm_exp = thm11_exponent(cfg.ell);
  r.heuristic_exp = (cfg.ell - 1) / 2.0;
  r.slope_bound = r.trivial_exp - 0.2;
  r.table.columns = {"ell", "p", "j", "X", "delta", "P", "Q", "S_real", "S_imag", "S_abs", "trivial_exp", "thm_exp"};
  std::vector<std::pair<double, double>> samples;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto& pt = points[i];
    r.table.rows.push_back({std::int64_t{cfg.ell}, cfg.p, cfg.j, grid[i], pt.delta, pt.P, pt.Q, pt.S.real(), pt.S.imag(),
                            std::abs(pt.S), r.trivial_exp, r.thm_exp});
    samples.emplace_back(grid[i], std::abs(pt.S));
  }
  r.fit = fit_exponent(samples);
  r.passed = r.fit.slope <= r.slope_bound;
  return r;
}

/// One dyadic block (Y/2, Y] of a sharp sum.
struct SharpBlock {
  std::size_t lo = 0;  // exclusive
  std::size_t hi = 0;  // inclusive
  double delta = 1.0;
  Complex sharp{0.0, 0.0};
  Complex smooth{0.0, 0.0};  // same block against the plateau weight of parameter delta
};

/// Splits [1, floor X] into blocks (floor(X/2^(k+1)), floor(X/2^k)].
inline std::vector<SharpBlock> sharp_blocks(double X, int ell, std::int64_t p, const FormTable& t, const CharTable& chi,
                                            std::optional<double> fixed_delta) {
  const auto N = static_cast<std::size_t>(std::floor(X));
  detail::require_table(t, static_cast<double>(N));
  const auto counts = r_ell(ell, N);
  std::vector<SharpBlock> blocks;
  for (std::size_t hi = N; hi >= 1; hi /= 2) {
    SharpBlock b;
    b.hi = hi;
    b.lo = hi / 2;
    const double Y = static_cast<double>(hi);
    b.delta = fixed_delta ? *fixed_delta
                          : (static_cast<double>(p) < Y ? choose_Delta(static_cast<double>(p), Y, ell) : 1.0);
    for (std::size_t n = b.lo + 1; n <= b.hi; ++n)
      b.sharp += t[n] * chi(static_cast<std::int64_t>(n)) * static_cast<double>(counts[n]);
    if (hi >= 2) b.smooth = direct_sum(Y, ell, t, chi, make_weight(b.delta));
    blocks.push_back(b);
  }
  return blocks;
}

/// Sharp sums sum_{n <= X} lambda r_l chi over the grid, each assembled from
/// dyadic blocks with their own delta.
inline ExperimentReport thm12_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  const FormTable t = detail::form_for(cfg);
  const CharTable chi = build_char(cfg.p, cfg.j);
  const auto grid = cfg.grid();
  const std::optional<double> fixed = cfg.delta_optimal ? std::nullopt : cfg.delta;
  const auto per_x = parallel_map(grid.size(), cfg.threads, [&](std::size_t i) {
    return sharp_blocks(grid[i], cfg.ell, cfg.p, t, chi, fixed);
  });

  ExperimentReport r;
  r.name = "thm12";
  r.trivial_exp = cfg.ell / 2.0;
  r.thm_exp = thm12_exponent(cfg.ell);
  r.heuristic_exp = (cfg.ell - 1) / 2.0;
  r.slope_bound = r.trivial_exp - 0.1;
  r.table.columns = {"ell",         "p",         "j",           "X",          "delta",  "P",      "Q",
                     "S_real",      "S_imag",    "S_abs",       "trivial_exp", "thm_exp", "smooth_real",
                     "smooth_imag", "ramp_abs",  "o_term",      "blocks"};
  std::vector<std::pair<double, double>> samples;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double X = grid[i];
    const auto& blocks = per_x[i];
    Complex sharp{0.0, 0.0}, smooth{0.0, 0.0};
    for (const auto& b : blocks) {
      sharp += b.sharp;
      smooth += b.smooth;
    }
    const double delta = blocks.front().delta;
    const auto pq = detail::arc_parameters(cfg, X, delta);
    const double o_term = std::pow(X, cfg.ell / 2.0) / std::sqrt(delta);
    r.table.rows.push_back({std::int64_t{cfg.ell}, cfg.p, cfg.j, X, delta, pq.P, pq.Q, sharp.real(), sharp.imag(),
                            std::abs(sharp), r.trivial_exp, r.thm_exp, smooth.real(), smooth.imag(),
                            std::abs(sharp - smooth), o_term, static_cast<std::int64_t>(blocks.size())});
    samples.emplace_back(X, std::abs(sharp));
  }
  r.fit = fit_exponent(samples);
  r.passed = r.fit.slope <= r.slope_bound;
  return r;
}

}  // namespace thetatwist
