// Copyright 2026 The poisson-mac Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "poisson_mac/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "parallel.hpp"
#include "poisson_mac/asymptotics.hpp"
#include "poisson_mac/miso.hpp"
#include "poisson_mac/siso.hpp"
#include "poisson_mac/symmetric.hpp"

namespace poisson_mac::cli {

namespace {

constexpr const char* kDefaultLambda0 = "0.001";

struct OutOfRegime : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::invalid_argument field_error(std::string_view field,
                                  std::string_view what) {
  return std::invalid_argument(std::string(field) + ": " + std::string(what));
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_number(std::string_view text, std::string_view field) {
  text = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() ||
      !std::isfinite(v)) {
    throw field_error(field, "not a number: '" + std::string(text) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

// Option values as given on the command line or in the config file.
class Fields {
 public:
  explicit Fields(CLI::App* sub) : sub_(sub) {}

  void add(const std::string& key, const std::string& help,
           const char* fallback = nullptr) {
    values_[key] = fallback ? fallback : "";
    sub_->add_option("--" + key, values_[key], help);
  }

  void add_flag(const std::string& key, const std::string& help) {
    values_[key] = "";
    sub_->add_flag("--" + key, flags_[key], help);
  }

  // key=value lines; flags given explicitly win.
  void load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw field_error("config", "cannot open '" + path + "'");
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const std::string_view body = trim(line);
      if (body.empty() || body.front() == '#') continue;
      const auto eq = body.find('=');
      if (eq == std::string_view::npos) {
        throw field_error("config", "line " + std::to_string(lineno) +
                                        " is not key=value");
      }
      const std::string key(trim(body.substr(0, eq)));
      const std::string value(trim(body.substr(eq + 1)));
      if (!values_.contains(key)) {
        throw field_error(key, "unknown key in config file");
      }
      if (sub_->get_option("--" + key)->count() > 0) continue;
      if (flags_.contains(key)) {
        flags_[key] = value == "1" || value == "true" || value == "yes";
      } else {
        values_[key] = value;
      }
    }
  }

  bool has(const std::string& key) const { return !values_.at(key).empty(); }
  const std::string& text(const std::string& key) const {
    return values_.at(key);
  }
  bool flag(const std::string& key) const { return flags_.at(key); }

  double number(const std::string& key) const {
    if (!has(key)) throw field_error(key, "required");
    return parse_number(values_.at(key), key);
  }

  double positive(const std::string& key) const {
    const double v = number(key);
    if (!(v > 0.0)) throw field_error(key, "must be > 0");
    return v;
  }

  int count(const std::string& key) const {
    if (!has(key)) return 0;
    const double v = number(key);
    if (v < 1.0 || v != std::floor(v) || v > 1e6) {
      throw field_error(key, "must be a positive integer");
    }
    return static_cast<int>(v);
  }

  std::vector<double> grid(const std::string& key, int cells = 0) const {
    if (!has(key)) throw field_error(key, "required");
    return parse_grid(values_.at(key), cells, key);
  }

 private:
  CLI::App* sub_;
  std::map<std::string, std::string> values_;
  std::map<std::string, bool> flags_;
};

class Csv {
 public:
  void meta(const std::string& key, const std::string& value) {
    meta_ += (meta_.empty() ? "# " : " ") + key + "=" + value;
  }
  void meta(const std::string& key, double value) {
    meta(key, format_number(value));
  }
  void header(std::initializer_list<const char*> cols) { row_of(cols); }

  template <typename... Cells>
  void row(const Cells&... cells) {
    std::string line;
    ((line += (line.empty() ? "" : ",") + cell(cells)), ...);
    body_ += line + "\n";
  }

  std::string str() const { return meta_ + "\n" + body_; }

 private:
  static std::string cell(double v) { return format_number(v); }
  static std::string cell(int v) { return std::to_string(v); }
  static std::string cell(bool v) { return v ? "true" : "false"; }
  static std::string cell(std::string_view v) { return std::string(v); }
  static std::string cell(const std::string& v) { return v; }
  static std::string cell(const char* v) { return v; }

  void row_of(std::initializer_list<const char*> cols) {
    std::string line;
    for (const char* c : cols) line += (line.empty() ? "" : ",") + std::string(c);
    body_ += line + "\n";
  }

  std::string meta_;
  std::string body_;
};

std::string join(std::span<const double> xs) {
  std::string s;
  for (double x : xs) s += (s.empty() ? "" : ";") + format_number(x);
  return s;
}

oracle::GridSpec grid_spec(const Fields& f) {
  oracle::GridSpec spec{1e-3, 3};
  if (f.has("grid-step")) spec.step = f.positive("grid-step");
  if (f.has("grid-refine")) {
    const double r = f.number("grid-refine");
    if (r < 0.0 || r != std::floor(r)) {
      throw field_error("grid-refine", "must be a non-negative integer");
    }
    spec.refine_rounds = static_cast<int>(r);
  }
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw field_error("grid-step", e.what());
  }
  return spec;
}

void require_regime(bool ok, bool strict, const std::string& what) {
  if (!ok && strict) throw OutOfRegime(what + " is outside tau <= ln2/(total peak + lambda0)");
}

std::string cmd_solve(const Fields& f) {
  const ChannelParams p(f.number("a1"), f.number("a2"), f.number("lambda0"),
                        f.number("tau"));
  require_regime(p.in_regime(), f.flag("strict"), "tau");
  const SolveReport r = solve(p);
  Csv csv;
  csv.meta("command", "solve");
  csv.meta("a1", p.a1());
  csv.meta("a2", p.a2());
  csv.meta("lambda0", p.lambda0());
  csv.meta("tau", p.tau());
  csv.meta("intersections", std::to_string(r.intersections));
  csv.meta("winner", std::string(to_string(r.winner)));
  csv.header({"a1", "a2", "lambda0", "tau", "capacity_nats", "mu1", "mu2",
              "strategy", "regime_ok"});
  csv.row(p.a1(), p.a2(), p.lambda0(), p.tau(), r.capacity, r.optimum.mu1,
          r.optimum.mu2, to_string(r.strategy), r.regime_ok);
  return csv.str();
}

std::string cmd_solve_miso(const Fields& f) {
  const std::vector<double> peaks1 = f.grid("peaks1");
  const std::vector<double> peaks2 = f.grid("peaks2");
  const MisoConfig config(
      Eigen::Map<const Eigen::VectorXd>(peaks1.data(),
                                        static_cast<Eigen::Index>(peaks1.size())),
      Eigen::Map<const Eigen::VectorXd>(peaks2.data(),
                                        static_cast<Eigen::Index>(peaks2.size())),
      f.number("lambda0"), f.number("tau"));
  require_regime(config.in_regime(), f.flag("strict"), "tau");
  const MisoReport r = solve_miso(config);
  Csv csv;
  csv.meta("command", "solve-miso");
  csv.meta("peaks1", join(peaks1));
  csv.meta("peaks2", join(peaks2));
  csv.meta("lambda0", config.lambda0());
  csv.meta("tau", config.tau());
  csv.header({"antennas1", "antennas2", "a1_total", "a2_total", "lambda0",
              "tau", "capacity_nats", "mu1", "mu2", "strategy", "regime_ok"});
  csv.row(config.antennas(1), config.antennas(2), config.total_peak(1),
          config.total_peak(2), config.lambda0(), config.tau(), r.capacity,
          r.siso.optimum.mu1, r.siso.optimum.mu2, to_string(r.siso.strategy),
          r.regime_ok);
  return csv.str();
}

std::string cmd_intersections(const Fields& f) {
  const ChannelParams p(f.number("a1"), f.number("a2"), f.number("lambda0"),
                        f.number("tau"));
  require_regime(p.in_regime(), f.flag("strict"), "tau");
  const IntersectionSet set = find_intersections(p);
  Csv csv;
  csv.meta("command", "intersections");
  csv.meta("a1", p.a1());
  csv.meta("a2", p.a2());
  csv.meta("lambda0", p.lambda0());
  csv.meta("tau", p.tau());
  csv.meta("count", std::to_string(set.valid_count()));
  csv.meta("reliable", set.reliable ? "true" : "false");
  csv.header({"mu1", "mu2", "valid"});
  for (const Intersection& x : set.points) {
    csv.row(x.duty.mu1, x.duty.mu2, x.valid);
  }
  return csv.str();
}

std::string cmd_sweep_peak(const Fields& f) {
  const double a1 = f.positive("a1");
  const std::vector<double> a2s = f.grid("a2", f.count("cells"));
  const std::vector<double> taus = f.grid("tau");
  const double lambda0 = f.positive("lambda0");
  const oracle::GridSpec spec = grid_spec(f);
  for (double a2 : a2s) {
    if (!(a2 > 0.0)) throw field_error("a2", "values must be > 0");
  }
  for (double tau : taus) {
    if (tau < 0.0) throw field_error("tau", "values must be >= 0");
    if (tau == 0.0) continue;
    for (double a2 : a2s) {
      require_regime(ChannelParams(a1, a2, lambda0, tau).in_regime(),
                     f.flag("strict"), "tau=" + format_number(tau));
    }
  }

  struct Row {
    double capacity;
    DutyPair duty;
  };
  std::vector<Row> rows(taus.size() * a2s.size());
  detail::parallel_for(rows.size(), sweep_threads(), [&](std::size_t k) {
    const double tau = taus[k / a2s.size()];
    const double a2 = a2s[k % a2s.size()];
    if (tau == 0.0) {
      const oracle::GridResult g = cont_capacity({a1, a2, lambda0}, spec);
      rows[k] = {g.value, g.duty};
    } else {
      const SolveReport r = solve(ChannelParams(a1, a2, lambda0, tau));
      rows[k] = {r.capacity, r.optimum};
    }
  });

  Csv csv;
  csv.meta("command", "sweep-peak");
  csv.meta("a1", a1);
  csv.meta("lambda0", lambda0);
  csv.meta("tau", join(taus));
  csv.meta("continuous_grid_step", spec.final_step());
  csv.header({"a2", "tau", "mu1", "mu2", "capacity"});
  for (std::size_t k = 0; k < rows.size(); ++k) {
    csv.row(a2s[k % a2s.size()], taus[k / a2s.size()], rows[k].duty.mu1,
            rows[k].duty.mu2, rows[k].capacity);
  }
  return csv.str();
}

std::string cmd_sweep_region(const Fields& f) {
  const int cells = f.count("cells");
  const std::vector<double> a1s = f.grid("a1", cells);
  const std::vector<double> a2s = f.grid("a2", cells);
  const double lambda0 = f.positive("lambda0");
  for (double a : a1s) {
    if (!(a > 0.0)) throw field_error("a1", "values must be > 0");
  }
  for (double a : a2s) {
    if (!(a > 0.0)) throw field_error("a2", "values must be > 0");
  }
  TauRule rule = TauRule::regime_scaled(0.8);
  if (f.has("tau")) {
    rule = TauRule::fixed(f.positive("tau"));
    for (double a1 : a1s) {
      for (double a2 : a2s) {
        require_regime(ChannelParams(a1, a2, lambda0, rule.value).in_regime(),
                       f.flag("strict"), "tau");
      }
    }
  } else if (f.has("tau-scale")) {
    rule = TauRule::regime_scaled(f.positive("tau-scale"));
    require_regime(rule.value <= 1.0, f.flag("strict"), "tau-scale");
  }

  const StrategyGrid grid =
      sweep_strategy_region(a1s, a2s, lambda0, rule, sweep_threads());
  Csv csv;
  csv.meta("command", "sweep-region");
  csv.meta("lambda0", lambda0);
  if (rule.kind == TauRule::Kind::Fixed) {
    csv.meta("tau", rule.value);
  } else {
    csv.meta("tau_scale", rule.value);
  }
  csv.meta("rows", std::to_string(a1s.size()));
  csv.meta("cols", std::to_string(a2s.size()));
  csv.header({"a1", "a2", "strategy"});
  for (std::size_t i = 0; i < a1s.size(); ++i) {
    for (std::size_t j = 0; j < a2s.size(); ++j) {
      csv.row(a1s[i], a2s[j], to_string(grid.at(i, j)));
    }
  }
  return csv.str();
}

std::string cmd_symmetric(const Fields& f) {
  const double a = f.positive("a");
  const double lambda0 = f.positive("lambda0");
  const double tau = f.positive("tau");
  const ChannelParams p(a, a, lambda0, tau);
  require_regime(p.in_regime(), f.flag("strict"), "tau");
  const SymmetricReport r = analyze_symmetric(a, lambda0, tau);
  auto opt = [](bool present, double v) {
    return present ? format_number(v) : std::string();
  };
  Csv csv;
  csv.meta("command", "symmetric");
  csv.meta("a", a);
  csv.meta("lambda0", lambda0);
  csv.meta("tau", tau);
  csv.meta("regime_ok", r.regime_ok ? "true" : "false");
  csv.header({"a", "lambda0", "tau", "g_of_a", "a_th", "mu_s_star",
              "mu_s_prime", "fixed_point", "capacity", "schur_mode"});
  csv.row(a, lambda0, tau, r.g_of_a, opt(r.a_th.has_value(), r.a_th.value_or(0)),
          opt(r.boundary.has_value(), r.boundary ? r.boundary->mu_s_star : 0),
          opt(r.boundary.has_value(), r.boundary ? r.boundary->mu_s_prime : 0),
          r.fixed_point, r.capacity, to_string(r.schur_mode));
  return csv.str();
}

std::string cmd_converge(const Fields& f) {
  const ContinuousParams cp{f.number("a1"), f.number("a2"), f.number("lambda0")};
  cp.validate();
  const std::vector<double> taus = f.grid("tau");
  for (double tau : taus) {
    if (!(tau > 0.0)) throw field_error("tau", "values must be > 0");
    if (!ChannelParams(cp.a1, cp.a2, cp.lambda0, tau).in_regime()) {
      if (f.flag("strict")) {
        throw OutOfRegime("tau=" + format_number(tau) + " is out of regime");
      }
      throw field_error("tau", format_number(tau) + " is out of regime");
    }
  }
  const oracle::GridSpec spec = grid_spec(f);
  const std::vector<ConvergenceRow> rows = convergence_report(cp, taus, spec);
  Csv csv;
  csv.meta("command", "converge");
  csv.meta("a1", cp.a1);
  csv.meta("a2", cp.a2);
  csv.meta("lambda0", cp.lambda0);
  csv.meta("continuous_grid_step", spec.final_step());
  csv.header({"tau", "capacity", "cont_capacity", "gap", "mu1", "mu2"});
  for (const ConvergenceRow& row : rows) {
    csv.row(row.tau, row.capacity, row.cont_capacity, row.gap, row.duty.mu1,
            row.duty.mu2);
  }
  return csv.str();
}

struct Command {
  const char* name;
  const char* help;
  std::string (*body)(const Fields&);
};

}  // namespace

std::vector<double> parse_grid(std::string_view text, int cells,
                               std::string_view field) {
  text = trim(text);
  if (text.empty()) throw field_error(field, "empty value");
  std::vector<double> out;
  if (text.find(':') == std::string_view::npos) {
    for (std::string_view part : split(text, ',')) {
      out.push_back(parse_number(part, field));
    }
    return out;
  }
  const std::vector<std::string_view> parts = split(text, ':');
  if (parts.size() > 3) throw field_error(field, "range must be lo:hi[:step]");
  const double lo = parse_number(parts[0], field);
  const double hi = parse_number(parts[1], field);
  if (!(hi >= lo)) throw field_error(field, "range needs hi >= lo");
  if (parts.size() == 3) {
    const double step = parse_number(parts[2], field);
    if (!(step > 0.0)) throw field_error(field, "step must be > 0");
    const double n = std::floor((hi - lo) / step + 1e-9);
    if (n > 1e6) throw field_error(field, "range has too many points");
    for (long k = 0; k <= static_cast<long>(n); ++k) {
      out.push_back(lo + static_cast<double>(k) * step);
    }
    return out;
  }
  if (cells < 1) throw field_error(field, "lo:hi needs --cells or a step");
  if (cells == 1) return {lo};
  for (int k = 0; k < cells; ++k) {
    out.push_back(lo + (hi - lo) * k / (cells - 1));
  }
  return out;
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

unsigned sweep_threads() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* cap = std::getenv("POISSON_MAC_THREADS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(cap, &end, 10);
    if (end != cap && *end == '\0' && v > 0) {
      n = std::min<unsigned long>(n, v);
    }
  }
  return n;
}

int run(std::span<const std::string> args, std::ostream& out,
        std::ostream& err) {
  static const Command kCommands[] = {
      {"solve", "Sum-rate capacity of a two-user channel", cmd_solve},
      {"solve-miso", "Capacity with several antennas per user",
       cmd_solve_miso},
      {"intersections", "Both-active stationary points", cmd_intersections},
      {"sweep-peak", "Capacity against a2 for a list of dead times",
       cmd_sweep_peak},
      {"sweep-region", "Optimal strategy over an (a1, a2) grid",
       cmd_sweep_region},
      {"symmetric", "Threshold and boundary analysis for a1 = a2",
       cmd_symmetric},
      {"converge", "Convergence to the continuous-time channel",
       cmd_converge},
  };

  CLI::App app("Sum-rate capacity of the two-user Poisson MAC", "poisson-mac");
  app.require_subcommand(1);
  std::vector<std::unique_ptr<Fields>> fields;
  std::vector<std::string> config_paths(std::size(kCommands));
  std::string out_path;
  for (std::size_t c = 0; c < std::size(kCommands); ++c) {
    CLI::App* sub = app.add_subcommand(kCommands[c].name, kCommands[c].help);
    auto f = std::make_unique<Fields>(sub);
    const std::string name = kCommands[c].name;
    if (name == "solve-miso") {
      f->add("peaks1", "user 1 antenna peaks, comma separated");
      f->add("peaks2", "user 2 antenna peaks, comma separated");
    } else if (name == "symmetric") {
      f->add("a", "common peak rate");
    } else {
      f->add("a1", name == "sweep-region" ? "user 1 peak grid" : "user 1 peak rate");
      f->add("a2", name == "sweep-peak" || name == "sweep-region"
                       ? "user 2 peak grid"
                       : "user 2 peak rate");
    }
    f->add("lambda0", "background rate", kDefaultLambda0);
    f->add("tau", name == "sweep-peak"  ? "dead times; 0 is the continuous channel"
                  : name == "converge" ? "decreasing dead times"
                                       : "dead time");
    if (name == "sweep-region") {
      f->add("tau-scale", "tau = scale * ln2 / (a1 + a2 + lambda0)");
    }
    if (name == "sweep-peak" || name == "sweep-region") {
      f->add("cells", "points per lo:hi range");
    }
    if (name == "sweep-peak" || name == "converge") {
      f->add("grid-step", "continuous reference grid step");
      f->add("grid-refine", "continuous reference refinement rounds");
    }
    f->add_flag("strict", "exit 3 when out of regime");
    sub->add_option("--config", config_paths[c], "key=value file");
    sub->add_option("--out", out_path, "output CSV path (default stdout)");
    fields.push_back(std::move(f));
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kValidationError;
  }

  for (std::size_t c = 0; c < std::size(kCommands); ++c) {
    if (!app.got_subcommand(kCommands[c].name)) continue;
    try {
      if (!config_paths[c].empty()) fields[c]->load_config(config_paths[c]);
      const std::string csv = kCommands[c].body(*fields[c]);
      if (out_path.empty()) {
        out << csv;
      } else {
        std::ofstream file(out_path, std::ios::binary);
        if (!file) throw field_error("out", "cannot open '" + out_path + "'");
        file << csv;
        if (!file) throw field_error("out", "write failed");
      }
      return kOk;
    } catch (const OutOfRegime& e) {
      err << "error: " << e.what() << "\n";
      return kOutOfRegime;
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return kValidationError;
    }
  }
  return kValidationError;
}

}  // namespace poisson_mac::cli
