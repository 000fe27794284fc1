#pragma once

// Configuration files, parameter sweeps and result emission (CSV, SVG).
//
// Config format: one `key = value` per line, `#` starts a comment, blank lines
// are ignored. Absent keys keep the ScenarioConfig defaults.

#include <algorithm>
#include <atomic>
#include <array>
#include <charconv>
#include <cstdio>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <thread>
#include <vector>

#include "mmv2v/analytics.hpp"
#include "mmv2v/error.hpp"
#include "mmv2v/montecarlo.hpp"

namespace mmv2v {

// ---------------------------------------------------------------------------
// Text helpers

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

inline std::optional<double> parse_double(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

template <class Int>
std::optional<Int> parse_int(std::string_view s) {
  s = trim(s);
  Int v{};
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

}  // namespace detail

// 17 significant digits: enough for any double to read back unchanged.
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, p);
}

// ---------------------------------------------------------------------------
// Configuration

struct LoadedConfig {
  ScenarioConfig config;
  QuadratureSpec quad;
  std::set<std::string> explicit_keys;  // keys present in the file
};

namespace detail {

using Setter = std::function<void(ScenarioConfig&, std::string_view)>;

inline Setter real(double ScenarioConfig::*field) {
  return [field](ScenarioConfig& c, std::string_view v) {
    auto x = parse_double(v);
    if (!x) throw ConfigError("");
    c.*field = *x;
  };
}

template <class Member>
Setter nested(Member member) {
  return [member](ScenarioConfig& c, std::string_view v) {
    auto x = parse_double(v);
    if (!x) throw ConfigError("");
    member(c) = *x;
  };
}

inline const std::map<std::string, Setter, std::less<>>& config_keys() {
  static const std::map<std::string, Setter, std::less<>> keys = {
      {"r_valid", real(&ScenarioConfig::r_valid)},
      {"lt", real(&ScenarioConfig::lt)},
      {"epsilon", real(&ScenarioConfig::epsilon)},
      {"rx", nested([](ScenarioConfig& c) -> double& { return c.geom.rx; })},
      {"ry", nested([](ScenarioConfig& c) -> double& { return c.geom.ry; })},
      {"eta", nested([](ScenarioConfig& c) -> double& { return c.geom.eta; })},
      {"d_safe", nested([](ScenarioConfig& c) -> double& { return c.headway.d_safe; })},
      {"mu", nested([](ScenarioConfig& c) -> double& { return c.headway.mu; })},
      {"p_t", nested([](ScenarioConfig& c) -> double& { return c.budget.p_t; })},
      {"n0", nested([](ScenarioConfig& c) -> double& { return c.budget.n0; })},
      {"b", nested([](ScenarioConfig& c) -> double& { return c.budget.b; })},
      {"alpha", nested([](ScenarioConfig& c) -> double& { return c.budget.alpha; })},
      {"sigma", nested([](ScenarioConfig& c) -> double& { return c.budget.sigma; })},
      {"t_t", nested([](ScenarioConfig& c) -> double& { return c.budget.t_t; })},
      {"t_p", nested([](ScenarioConfig& c) -> double& { return c.budget.t_p; })},
      {"t_proc", nested([](ScenarioConfig& c) -> double& { return c.budget.t_proc; })},
      {"p_s", nested([](ScenarioConfig& c) -> double& { return c.budget.p_s; })},
      {"g_main", nested([](ScenarioConfig& c) -> double& { return c.budget.antenna.g_main; })},
      {"g_side", nested([](ScenarioConfig& c) -> double& { return c.budget.antenna.g_side; })},
      {"psi_tx", nested([](ScenarioConfig& c) -> double& { return c.budget.antenna.psi_tx; })},
      {"psi_rx", nested([](ScenarioConfig& c) -> double& { return c.budget.antenna.psi_rx; })},
      {"phi_tx", nested([](ScenarioConfig& c) -> double& { return c.budget.antenna.phi_tx; })},
      {"phi_rx", nested([](ScenarioConfig& c) -> double& { return c.budget.antenna.phi_rx; })},
      {"replications",
       [](ScenarioConfig& c, std::string_view v) {
         auto x = parse_int<long>(v);
         if (!x) throw ConfigError("");
         c.replications = *x;
       }},
      {"max_hops",
       [](ScenarioConfig& c, std::string_view v) {
         auto x = parse_int<long>(v);
         if (!x) throw ConfigError("");
         c.max_hops = *x;
       }},
      {"seed",
       [](ScenarioConfig& c, std::string_view v) {
         auto x = parse_int<std::uint64_t>(v);
         if (!x) throw ConfigError("");
         c.seed = *x;
       }},
  };
  return keys;
}

}  // namespace detail

inline std::vector<std::string> config_key_names() {
  std::vector<std::string> out;
  for (const auto& [k, _] : detail::config_keys()) out.push_back(k);
  for (auto k : {"quad_abs_tol", "quad_rel_tol", "quad_max_subdivisions"}) out.emplace_back(k);
  return out;
}

// Applies one key. Throws ConfigError naming the key on unknown keys or bad values.
inline void set_config_value(ScenarioConfig& config, std::string_view key, std::string_view value) {
  const auto& keys = detail::config_keys();
  auto it = keys.find(key);
  if (it == keys.end()) throw ConfigError("unknown config key '" + std::string(key) + "'");
  try {
    it->second(config, value);
  } catch (const ConfigError&) {
    throw ConfigError("invalid value '" + std::string(value) + "' for key '" + std::string(key) + "'");
  }
}

// Quadrature keys (quad_*) go to the QuadratureSpec, everything else to the scenario.
inline void set_config_value(LoadedConfig& loaded, std::string_view key, std::string_view value) {
  auto bad = [&] { return ConfigError("invalid value '" + std::string(value) + "' for key '" + std::string(key) + "'"); };
  if (key == "quad_abs_tol" || key == "quad_rel_tol") {
    auto x = detail::parse_double(value);
    if (!x) throw bad();
    (key == "quad_abs_tol" ? loaded.quad.abs_tol : loaded.quad.rel_tol) = *x;
  } else if (key == "quad_max_subdivisions") {
    auto x = detail::parse_int<int>(value);
    if (!x) throw bad();
    loaded.quad.max_subdivisions = *x;
  } else {
    set_config_value(loaded.config, key, value);
  }
}

inline LoadedConfig parse_config(std::string_view text) {
  LoadedConfig out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    const std::string key(detail::trim(line.substr(0, eq)));
    if (out.explicit_keys.contains(key)) throw ConfigError("duplicate config key '" + key + "'");
    set_config_value(out, key, line.substr(eq + 1));
    out.explicit_keys.insert(key);
  }
  try {
    out.config.validate();
    out.quad.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  return out;
}

inline LoadedConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

// ---------------------------------------------------------------------------
// Sweeps

enum class SweepVariable { kLt, kAlpha, kDSafe, kEpsilon };

inline std::string_view to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::kLt: return "lt";
    case SweepVariable::kAlpha: return "alpha";
    case SweepVariable::kDSafe: return "d_safe";
    case SweepVariable::kEpsilon: return "epsilon";
  }
  return "?";
}

inline SweepVariable parse_sweep_variable(std::string_view s) {
  for (auto v : {SweepVariable::kLt, SweepVariable::kAlpha, SweepVariable::kDSafe, SweepVariable::kEpsilon})
    if (to_string(v) == s) return v;
  throw ConfigError("unknown sweep variable '" + std::string(s) + "' (expected lt, alpha, d_safe or epsilon)");
}

inline std::string_view unit_of(SweepVariable v) {
  switch (v) {
    case SweepVariable::kLt: return "m";
    case SweepVariable::kAlpha: return "-";
    case SweepVariable::kDSafe: return "m";
    case SweepVariable::kEpsilon: return "dB";
  }
  return "";
}

inline void apply(ScenarioConfig& c, SweepVariable v, double value) {
  switch (v) {
    case SweepVariable::kLt: c.lt = value; break;
    case SweepVariable::kAlpha: c.budget.alpha = value; break;
    case SweepVariable::kDSafe: c.headway.d_safe = value; break;
    case SweepVariable::kEpsilon: c.epsilon = value; break;
  }
}

struct Modes {
  bool analytic = true;
  bool simulated = false;
};

inline Modes parse_modes(std::string_view s) {
  Modes m{false, false};
  while (!s.empty()) {
    const auto comma = s.find(',');
    const auto tok = detail::trim(s.substr(0, comma));
    s = comma == std::string_view::npos ? std::string_view{} : s.substr(comma + 1);
    if (tok == "analytic") m.analytic = true;
    else if (tok == "simulated") m.simulated = true;
    else throw ConfigError("unknown mode '" + std::string(tok) + "' (expected analytic or simulated)");
  }
  if (!m.analytic && !m.simulated) throw ConfigError("no modes selected");
  return m;
}

inline std::vector<double> parse_values(std::string_view s) {
  std::vector<double> out;
  while (!s.empty()) {
    const auto comma = s.find(',');
    const auto tok = s.substr(0, comma);
    s = comma == std::string_view::npos ? std::string_view{} : s.substr(comma + 1);
    auto v = detail::parse_double(tok);
    if (!v) throw ConfigError("invalid sweep value '" + std::string(detail::trim(tok)) + "'");
    out.push_back(*v);
  }
  return out;
}

struct SweepSpec {
  SweepVariable variable = SweepVariable::kLt;
  std::vector<double> values;
  ScenarioConfig base;
  Modes modes;
  QuadratureSpec quad;

  // `explicit_keys` are the keys the base config set explicitly.
  void validate(const std::set<std::string>& explicit_keys = {}) const {
    if (values.empty()) throw ConfigError("sweep needs at least one value");
    for (std::size_t i = 1; i < values.size(); ++i)
      if (!(values[i] > values[i - 1])) throw ConfigError("sweep values must be strictly increasing");
    if (explicit_keys.contains(std::string(to_string(variable))))
      throw ConfigError("sweep variable '" + std::string(to_string(variable)) + "' is also set in the config");
    for (double v : values) {
      ScenarioConfig c = base;
      apply(c, variable, v);
      try {
        c.validate();
      } catch (const Error& e) {
        throw ConfigError(std::string(to_string(variable)) + "=" + format_double(v) + ": " + e.what());
      }
    }
  }
};

struct SweepRow {
  double value = 0.0;
  double analytic_delay = std::numeric_limits<double>::quiet_NaN();
  double analytic_reliability = std::numeric_limits<double>::quiet_NaN();
  double sim_delay = std::numeric_limits<double>::quiet_NaN();
  double sim_delay_ci = std::numeric_limits<double>::quiet_NaN();
  double sim_reliability = std::numeric_limits<double>::quiet_NaN();
  double sim_reliability_ci = std::numeric_limits<double>::quiet_NaN();
  double stranded_fraction = std::numeric_limits<double>::quiet_NaN();
  double hop_count_analytic = std::numeric_limits<double>::quiet_NaN();
  double mean_hops_sim = std::numeric_limits<double>::quiet_NaN();
};

struct SweepResult {
  SweepVariable variable = SweepVariable::kLt;
  std::vector<SweepRow> rows;
};

inline SweepRow evaluate_point(const ScenarioConfig& config, const Modes& modes, const QuadratureSpec& quad,
                               double value) {
  SweepRow row;
  row.value = value;
  row.hop_count_analytic = hop_count(config.r_valid, config.lt);
  if (modes.analytic) {
    row.analytic_delay = avg_total_delay(config.budget, config.r_valid, config.lt, quad).value;
    row.analytic_reliability = avg_total_reliability(config.budget, config.r_valid, config.lt, config.epsilon, quad).value;
  }
  if (modes.simulated) {
    const auto sim = estimate(config);
    row.sim_delay = sim.delay.mean;
    row.sim_delay_ci = sim.delay.ci_halfwidth;
    row.sim_reliability = sim.reliability.mean;
    row.sim_reliability_ci = sim.reliability.ci_halfwidth;
    row.stranded_fraction = sim.stranded_fraction;
    row.mean_hops_sim = sim.mean_hops;
  }
  return row;
}

namespace detail {

template <class E>
[[noreturn]] void rethrow_annotated(const E& e, std::string_view prefix) {
  if constexpr (std::is_same_v<E, NumericalError>)
    throw NumericalError(std::string(prefix) + e.what(), e.evaluations);
  else
    throw E(std::string(prefix) + e.what());
}

}  // namespace detail

// Rows come back in sweep order whatever the worker count.
inline SweepResult run_sweep(const SweepSpec& spec, unsigned workers = 1,
                             const std::set<std::string>& explicit_keys = {}) {
  spec.validate(explicit_keys);
  SweepResult result;
  result.variable = spec.variable;
  result.rows.resize(spec.values.size());

  std::vector<std::exception_ptr> errors(spec.values.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < spec.values.size();) {
      const double v = spec.values[i];
      const std::string prefix = std::string(to_string(spec.variable)) + "=" + format_double(v) + ": ";
      ScenarioConfig c = spec.base;
      apply(c, spec.variable, v);
      try {
        try {
          result.rows[i] = evaluate_point(c, spec.modes, spec.quad, v);
        } catch (const NumericalError& e) {
          detail::rethrow_annotated(e, prefix);
        } catch (const ConfigError& e) {
          detail::rethrow_annotated(e, prefix);
        } catch (const DomainError& e) {
          detail::rethrow_annotated(e, prefix);
        }
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(spec.values.size())));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return result;
}

// ---------------------------------------------------------------------------
// CSV

inline constexpr std::array<std::string_view, 9> kCsvColumns = {
    "analytic_delay_s",  "analytic_reliability", "sim_delay_s",        "sim_delay_ci_s", "sim_reliability",
    "sim_reliability_ci", "stranded_fraction",   "hop_count_analytic", "mean_hops_sim"};

inline std::string to_csv(const SweepResult& result) {
  std::string out(to_string(result.variable));
  for (auto c : kCsvColumns) {
    out += ',';
    out += c;
  }
  out += '\n';
  for (const auto& r : result.rows) {
    const double fields[] = {r.value,           r.analytic_delay,     r.analytic_reliability,
                             r.sim_delay,       r.sim_delay_ci,       r.sim_reliability,
                             r.sim_reliability_ci, r.stranded_fraction, r.hop_count_analytic,
                             r.mean_hops_sim};
    for (std::size_t i = 0; i < std::size(fields); ++i) {
      if (i) out += ',';
      out += format_double(fields[i]);
    }
    out += '\n';
  }
  return out;
}

inline SweepResult parse_csv(std::string_view text) {
  SweepResult result;
  auto next_line = [&text]() {
    const auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    return line;
  };
  const auto header = next_line();
  const auto comma = header.find(',');
  result.variable = parse_sweep_variable(header.substr(0, comma));
  std::string expected(to_string(result.variable));
  for (auto c : kCsvColumns) expected += "," + std::string(c);
  if (header != expected) throw ConfigError("unexpected CSV header");

  while (!text.empty()) {
    auto line = next_line();
    if (line.empty()) continue;
    const auto vals = parse_values(line);
    if (vals.size() != kCsvColumns.size() + 1) throw ConfigError("CSV row has wrong field count");
    result.rows.push_back({vals[0], vals[1], vals[2], vals[3], vals[4], vals[5], vals[6], vals[7], vals[8], vals[9]});
  }
  return result;
}

// ---------------------------------------------------------------------------
// SVG

namespace detail {

struct Series {
  std::string name;
  std::string color;
  bool dashed = false;
  std::vector<std::pair<double, double>> points;    // finite points only
  std::vector<double> errors;                       // CI half-widths, same order
};

inline std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

inline std::string escape_xml(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

inline std::pair<double, double> padded_range(double lo, double hi) {
  if (!(hi > lo)) {
    const double pad = lo == 0.0 ? 1.0 : std::abs(lo) * 0.1;
    return {lo - pad, hi + pad};
  }
  const double pad = 0.05 * (hi - lo);
  return {lo - pad, hi + pad};
}

inline void draw_panel(std::ostringstream& svg, double ox, double oy, double w, double h, std::string_view x_label,
                       std::string_view y_label, const std::vector<Series>& series) {
  double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
  double y_lo = x_lo, y_hi = -x_lo;
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.points.size(); ++i) {
      const auto [x, y] = s.points[i];
      const double e = i < s.errors.size() && std::isfinite(s.errors[i]) ? s.errors[i] : 0.0;
      x_lo = std::min(x_lo, x);
      x_hi = std::max(x_hi, x);
      y_lo = std::min(y_lo, y - e);
      y_hi = std::max(y_hi, y + e);
    }
  if (!std::isfinite(x_lo)) x_lo = 0.0, x_hi = 1.0, y_lo = 0.0, y_hi = 1.0;
  std::tie(x_lo, x_hi) = padded_range(x_lo, x_hi);
  std::tie(y_lo, y_hi) = padded_range(y_lo, y_hi);
  auto px = [&](double x) { return ox + (x - x_lo) / (x_hi - x_lo) * w; };
  auto py = [&](double y) { return oy + h - (y - y_lo) / (y_hi - y_lo) * h; };

  svg << "<rect x=\"" << ox << "\" y=\"" << oy << "\" width=\"" << w << "\" height=\"" << h
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double xv = x_lo + (x_hi - x_lo) * t / 4.0;
    const double yv = y_lo + (y_hi - y_lo) * t / 4.0;
    svg << "<text x=\"" << px(xv) << "\" y=\"" << oy + h + 16 << "\" font-size=\"11\" text-anchor=\"middle\">"
        << tick_label(xv) << "</text>\n";
    svg << "<text x=\"" << ox - 6 << "\" y=\"" << py(yv) + 4 << "\" font-size=\"11\" text-anchor=\"end\">"
        << tick_label(yv) << "</text>\n";
  }
  svg << "<text x=\"" << ox + w / 2 << "\" y=\"" << oy + h + 36
      << "\" font-size=\"13\" text-anchor=\"middle\">" << escape_xml(x_label) << "</text>\n";
  svg << "<text transform=\"translate(" << ox - 58 << "," << oy + h / 2
      << ") rotate(-90)\" font-size=\"13\" text-anchor=\"middle\">" << escape_xml(y_label) << "</text>\n";

  double legend_y = oy + 14;
  for (const auto& s : series) {
    if (s.points.empty()) continue;
    svg << "<g class=\"series\" data-series=\"" << escape_xml(s.name) << "\">\n";
    svg << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"2\""
        << (s.dashed ? " stroke-dasharray=\"6,4\"" : "") << " points=\"";
    for (const auto& [x, y] : s.points) svg << px(x) << "," << py(y) << " ";
    svg << "\"/>\n";
    for (std::size_t i = 0; i < s.points.size(); ++i) {
      const auto [x, y] = s.points[i];
      svg << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y) << "\" r=\"3\" fill=\"" << s.color << "\" data-x=\""
          << format_double(x) << "\" data-y=\"" << format_double(y) << "\"/>\n";
      if (i < s.errors.size() && std::isfinite(s.errors[i]) && s.errors[i] > 0.0)
        svg << "<line x1=\"" << px(x) << "\" x2=\"" << px(x) << "\" y1=\"" << py(y - s.errors[i]) << "\" y2=\""
            << py(y + s.errors[i]) << "\" stroke=\"" << s.color << "\"/>\n";
    }
    svg << "</g>\n";
    svg << "<text x=\"" << ox + w - 8 << "\" y=\"" << legend_y << "\" font-size=\"11\" text-anchor=\"end\" fill=\""
        << s.color << "\">" << escape_xml(s.name) << "</text>\n";
    legend_y += 14;
  }
}

}  // namespace detail

// Two panels (delay in ms, reliability) sharing the sweep axis; one series per mode.
inline std::string to_svg(const SweepResult& result) {
  using detail::Series;
  Series ad{"analytic delay", "#1f77b4", false, {}, {}};
  Series sd{"simulated delay", "#d62728", true, {}, {}};
  Series ar{"analytic reliability", "#1f77b4", false, {}, {}};
  Series sr{"simulated reliability", "#d62728", true, {}, {}};
  for (const auto& r : result.rows) {
    if (std::isfinite(r.analytic_delay)) ad.points.emplace_back(r.value, r.analytic_delay * 1e3);
    if (std::isfinite(r.sim_delay)) {
      sd.points.emplace_back(r.value, r.sim_delay * 1e3);
      sd.errors.push_back(r.sim_delay_ci * 1e3);
    }
    if (std::isfinite(r.analytic_reliability)) ar.points.emplace_back(r.value, r.analytic_reliability);
    if (std::isfinite(r.sim_reliability)) {
      sr.points.emplace_back(r.value, r.sim_reliability);
      sr.errors.push_back(r.sim_reliability_ci);
    }
  }
  const std::string x_label = std::string(to_string(result.variable)) + " [" + std::string(unit_of(result.variable)) + "]";
  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1000\" height=\"420\" viewBox=\"0 0 1000 420\">\n"
      << "<rect width=\"1000\" height=\"420\" fill=\"white\"/>\n";
  detail::draw_panel(svg, 90, 30, 370, 320, x_label, "average total delay [ms]", {ad, sd});
  detail::draw_panel(svg, 590, 30, 370, 320, x_label, "average total reliability [-]", {ar, sr});
  svg << "</svg>\n";
  return svg.str();
}

enum class OutputFormat { kCsv, kSvg };

inline void emit(const SweepResult& result, OutputFormat format, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << (format == OutputFormat::kCsv ? to_csv(result) : to_svg(result));
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

// road_id,x,y listing of a vehicle field; injected vehicles carry road_id -1.
inline std::string field_to_csv(const VehicleField& field) {
  std::string out = "road_id,x,y\n";
  for (const auto& v : field.vehicles())
    out += std::to_string(v.road_id) + "," + format_double(v.position.x) + "," + format_double(v.position.y) + "\n";
  return out;
}

}  // namespace mmv2v
