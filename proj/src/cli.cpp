// Copyright 2026 The cadwm Authors
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

#include "cadwm/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "cadwm/channels.hpp"
#include "cadwm/csv.hpp"
#include "cadwm/entanglement.hpp"
#include "cadwm/error.hpp"
#include "cadwm/measurements.hpp"
#include "cadwm/states.hpp"
#include "cadwm/sweep.hpp"
#include "cadwm/verify.hpp"

namespace cadwm {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct StateFlags {
  double alpha = 0.0;
  double alpha_im = 0.0;
  double beta_phase = 0.0;
  double gamma = 0.0;
  double eta = 0.0;
  double p = 0.0;
  std::string q = "0";
  std::string format = "text";
};

void add_state_flags(CLI::App* cmd, StateFlags& f, bool with_q) {
  cmd->add_option("--alpha", f.alpha, "Real part of the |00> amplitude")
      ->required()
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--alpha-im", f.alpha_im, "Imaginary part of the |00> amplitude")
      ->check(CLI::Range(-1.0, 1.0));
  cmd->add_option("--beta-phase", f.beta_phase, "Phase of the |11> amplitude (radians)");
  cmd->add_option("--gamma", f.gamma, "Decoherence strength")->required()->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--eta", f.eta, "Memory parameter")->required()->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--p", f.p, "Weak measurement strength")->check(CLI::Range(0.0, 1.0));
  if (with_q) cmd->add_option("--q", f.q, "Reversal strength in [0, 1] or 'auto'");
  cmd->add_option("--format", f.format, "Output format")->check(CLI::IsMember({"text", "csv"}));
}

InitialState<double> state_from_flags(const StateFlags& f) {
  const Complex<double> alpha(f.alpha, f.alpha_im);
  const double a2 = std::norm(alpha);
  if (a2 > 1.0) throw UsageError("--alpha/--alpha-im: |alpha| exceeds 1");
  return make_initial(alpha, std::polar(std::sqrt(1.0 - a2), f.beta_phase));
}

std::optional<double> parse_q(const std::string& text) {
  if (text == "auto") return std::nullopt;
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size() || !(v >= 0.0 && v <= 1.0)) {
    throw UsageError("--q: expected a number in [0, 1] or 'auto', got '" + text + "'");
  }
  return v;
}

// Key/value report that renders as aligned text or a one-row CSV.
class Report {
 public:
  void add(const std::string& key, double value) { items_.push_back({key, value, {}}); }
  void add_text(const std::string& key, const std::string& value) {
    items_.push_back({key, std::nullopt, value});
  }
  // 1/0 in CSV, true/false in text.
  void add_flag(const std::string& key, bool value) {
    items_.push_back({key, value ? 1.0 : 0.0, value ? "true" : "false"});
  }

  void write(std::ostream& os, const std::string& format) const {
    if (format == "csv") {
      bool first = true;
      for (const auto& it : items_) {
        if (!it.number) continue;
        os << (first ? "" : ",") << it.key;
        first = false;
      }
      os << '\n';
      first = true;
      for (const auto& it : items_) {
        if (!it.number) continue;
        os << (first ? "" : ",") << format_csv_number(*it.number);
        first = false;
      }
      os << '\n';
      return;
    }
    std::size_t width = 0;
    for (const auto& it : items_) width = std::max(width, it.key.size());
    for (const auto& it : items_) {
      os << it.key << std::string(width - it.key.size() + 2, ' ')
         << (it.text.empty() ? format_text_number(*it.number) : it.text) << '\n';
    }
  }

 private:
  struct Item {
    std::string key;
    std::optional<double> number;
    std::string text;
  };
  std::vector<Item> items_;
};

void add_elements(Report& r, const std::string& prefix, const XStateElements<double>& x) {
  r.add(prefix + "r11", x.r11);
  r.add(prefix + "r22", x.r22);
  r.add(prefix + "r33", x.r33);
  r.add(prefix + "r44", x.r44);
  r.add(prefix + "r14_re", x.r14.real());
  r.add(prefix + "r14_im", x.r14.imag());
}

int cmd_evolve(const StateFlags& f, std::ostream& out) {
  const auto s = state_from_flags(f);
  const ChannelParams<double> params(f.gamma, f.eta);
  const auto q_flag = parse_q(f.q);
  const double q = q_flag ? *q_flag : optimal_q(s, params, f.p);
  const MeasurementStrengths<double> strengths(f.p, q);

  const auto channel = cad(params);
  const auto outcome = run_protocol(s, channel, strengths);
  const auto numeric = extract_x_elements(outcome.state);
  const auto closed = analytic_qmr_elements(s, params, strengths);
  const double closed_prob = closed.terms.trace(q);
  const double deviation = std::max(numeric.max_abs_diff(closed.elements),
                                    std::abs(outcome.success_probability - closed_prob));

  Report r;
  r.add("q", q);
  add_elements(r, "numeric_", numeric);
  add_elements(r, "closed_", closed.elements);
  r.add("success_probability", outcome.success_probability);
  r.add("closed_success_probability", closed_prob);
  r.add("max_pipeline_deviation", deviation);
  r.add("concurrence", wootters_concurrence(outcome.state).concurrence);
  r.write(out, f.format);
  return kExitOk;
}

int cmd_concurrence(const StateFlags& f, std::ostream& out) {
  const auto s = state_from_flags(f);
  const ChannelParams<double> params(f.gamma, f.eta);
  const auto q_flag = parse_q(f.q);
  const double q = q_flag ? *q_flag : optimal_q(s, params, f.p);
  const MeasurementStrengths<double> strengths(f.p, q);

  const auto cad_report = concurrence_cad_closed(s, params);
  const auto qmr_report = concurrence_qmr_closed(s, params, strengths);
  const auto numeric = wootters_concurrence(run_protocol(s, params, strengths).state);

  Report r;
  r.add("q", q);
  r.add("closed_form_cad", cad_report.concurrence);
  r.add("delta_cad", cad_report.delta);
  r.add("closed_form_qmr", qmr_report.concurrence);
  r.add("delta_qmr", qmr_report.delta);
  r.add("numeric_wootters", numeric.concurrence);
  for (int k = 0; k < 4; ++k) r.add("sqrt_lambda" + std::to_string(k + 1), numeric.sqrt_eigenvalues[k]);
  if (std::abs(s.beta()) > 0.0) {
    r.add_flag("esd", esd_condition_cad(s, params));
    r.add_flag("esd_with_reversal", esd_condition_qmr(s, params, f.p));
  } else {
    r.add_text("esd", "n/a (beta = 0)");
  }
  r.write(out, f.format);
  return kExitOk;
}

int cmd_optimize(const StateFlags& f, std::ostream& out) {
  const auto s = state_from_flags(f);
  const ChannelParams<double> params(f.gamma, f.eta);
  const double q = optimal_q(s, params, f.p);
  const auto best = optimal_concurrence(s, params, f.p);
  const double trace = analytic_qmr_terms(s, params, f.p).trace(q);

  Report r;
  r.add("q_opt", q);
  r.add("concurrence_opt", best.concurrence);
  r.add("delta_opt", best.delta);
  r.add("delta_bound", optimal_delta_bound(s, params, f.p));
  r.add("success_probability", trace > kNullPostselection<double> ? trace : 0.0);
  r.add("concurrence_limit_p1", optimal_concurrence_limit(params));
  if (std::abs(s.beta()) > 0.0) {
    const auto pc = critical_p_diagnostics(s, params);
    r.add("p_c", pc.derived);
    if (std::isfinite(pc.alt_form)) r.add("p_c_alt_form", pc.alt_form);
    if (pc.root) r.add("p_c_root", *pc.root);
    r.add("eta_c", critical_eta(s, params.gamma));
  } else {
    r.add_text("p_c", "n/a (beta = 0)");
  }
  r.write(out, f.format);
  return kExitOk;
}

Axis parse_axis(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string tok; std::getline(ss, tok, ':');) parts.push_back(tok);
  if (parts.size() != 4) throw UsageError("--vary: expected name:start:stop:count, got '" + text + "'");
  const auto param = parse_param(parts[0]);
  if (!param) throw UsageError("--vary: unknown parameter '" + parts[0] + "'");
  try {
    std::size_t used = 0;
    const double start = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument("start");
    const double stop = std::stod(parts[2], &used);
    if (used != parts[2].size()) throw std::invalid_argument("stop");
    const int count = std::stoi(parts[3], &used);
    if (used != parts[3].size()) throw std::invalid_argument("count");
    return Axis{*param, start, stop, count};
  } catch (const std::logic_error&) {
    throw UsageError("--vary: malformed numbers in '" + text + "'");
  }
}

void emit_table(const SweepTable& table, const std::string& format, const std::string& path,
                std::ostream& out) {
  std::ostringstream buffer;
  if (format == "csv") {
    write_csv(buffer, table);
  } else {
    for (std::size_t i = 0; i < table.header.size(); ++i) buffer << (i ? " " : "") << table.header[i];
    buffer << '\n';
    for (const auto& row : table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) buffer << (i ? " " : "") << format_text_number(row[i]);
      buffer << '\n';
    }
  }
  if (path.empty()) {
    out << buffer.str();
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw UsageError("--output: cannot open '" + path + "' for writing");
  file << buffer.str();
  if (!file.flush()) throw UsageError("--output: write to '" + path + "' failed");
}

int report_error(const std::string& message, int code, std::ostream& err) {
  err << "error: " << message << '\n';
  return code;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Correlated amplitude damping with weak measurement and reversal"};
  app.require_subcommand(1);

  StateFlags evolve_flags, conc_flags, opt_flags;
  auto* evolve = app.add_subcommand("evolve", "Run WM -> CAD -> QMR and compare both pipelines");
  add_state_flags(evolve, evolve_flags, true);
  auto* concurrence = app.add_subcommand("concurrence", "Closed-form and numeric concurrence");
  add_state_flags(concurrence, conc_flags, true);
  auto* optimize = app.add_subcommand("optimize", "Optimal reversal strength and critical values");
  add_state_flags(optimize, opt_flags, false);

  struct {
    double eta = 0.0;
    double p = 0.0;
    int grid = 128;
    double ratio_max = 1.0;
    std::string output;
    std::string format = "csv";
  } map_flags;
  auto* esd_map = app.add_subcommand("esd-map", "ESD flag over (|alpha/beta|, gamma)");
  esd_map->add_option("--eta", map_flags.eta, "Memory parameter")->required()->check(CLI::Range(0.0, 1.0));
  esd_map->add_option("--p", map_flags.p, "Weak measurement strength")->check(CLI::Range(0.0, 1.0));
  esd_map->add_option("--grid", map_flags.grid, "Points per axis")->check(CLI::Range(2, 4096));
  esd_map->add_option("--ratio-max", map_flags.ratio_max, "Largest |alpha/beta|")
      ->check(CLI::PositiveNumber);
  esd_map->add_option("--output", map_flags.output, "Output file (default stdout)");
  esd_map->add_option("--format", map_flags.format)->check(CLI::IsMember({"text", "csv"}));

  struct {
    std::vector<std::string> vary;
    std::optional<double> alpha, alpha_ratio, gamma, eta, p;
    std::string q;
    std::string outputs = "concurrence_cad,concurrence_qmr,success_prob,esd_flag,delta";
    std::string output;
    std::string format = "csv";
  } sweep_flags;
  auto* sweep = app.add_subcommand("sweep", "Evaluate a 1- or 2-parameter grid");
  sweep->add_option("--vary", sweep_flags.vary, "name:start:stop:count (repeat for a 2D grid)")
      ->required();
  sweep->add_option("--alpha", sweep_flags.alpha, "|00> amplitude (converted to |alpha/beta|)")
      ->check(CLI::Range(0.0, 1.0));
  sweep->add_option("--alpha-ratio", sweep_flags.alpha_ratio, "|alpha/beta|");
  sweep->add_option("--gamma", sweep_flags.gamma)->check(CLI::Range(0.0, 1.0));
  sweep->add_option("--eta", sweep_flags.eta)->check(CLI::Range(0.0, 1.0));
  sweep->add_option("--p", sweep_flags.p)->check(CLI::Range(0.0, 1.0));
  sweep->add_option("--q", sweep_flags.q, "Reversal strength or 'auto'");
  sweep->add_option("--outputs", sweep_flags.outputs, "Comma-separated output columns");
  sweep->add_option("--output", sweep_flags.output, "Output file (default stdout)");
  sweep->add_option("--format", sweep_flags.format)->check(CLI::IsMember({"text", "csv"}));

  struct {
    std::uint64_t seed = VerifyOptions{}.seed;
    int samples = 1000;
    bool corrupt = false;
  } verify_flags;
  auto* verify = app.add_subcommand("verify", "Run the built-in oracle suites");
  verify->add_option("--seed", verify_flags.seed);
  verify->add_option("--samples", verify_flags.samples)->check(CLI::PositiveNumber);
  verify->add_flag("--corrupt", verify_flags.corrupt)->group("");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    return report_error(e.what(), kExitUsage, err);
  }

  try {
    if (*evolve) return cmd_evolve(evolve_flags, out);
    if (*concurrence) return cmd_concurrence(conc_flags, out);
    if (*optimize) return cmd_optimize(opt_flags, out);

    if (*esd_map) {
      SweepSpec spec;
      const double r = map_flags.ratio_max;
      spec.varying = {Axis{Param::AlphaRatio, r / map_flags.grid, r, map_flags.grid},
                      Axis{Param::Gamma, 0.0, 1.0, map_flags.grid}};
      spec.fixed = {{Param::Eta, map_flags.eta}, {Param::P, map_flags.p}};
      emit_table(classify_esd_region(spec), map_flags.format, map_flags.output, out);
      return kExitOk;
    }

    if (*sweep) {
      SweepSpec spec;
      for (const auto& v : sweep_flags.vary) spec.varying.push_back(parse_axis(v));
      auto bind = [&](Param p, const std::optional<double>& value) {
        if (value) spec.fixed[p] = *value;
      };
      if (sweep_flags.alpha && sweep_flags.alpha_ratio) {
        throw UsageError("--alpha and --alpha-ratio are mutually exclusive");
      }
      if (sweep_flags.alpha) {
        const double a = *sweep_flags.alpha;
        if (!(a < 1.0)) throw UsageError("--alpha: must be < 1 for a ratio sweep");
        spec.fixed[Param::AlphaRatio] = a / std::sqrt(1.0 - a * a);
      }
      bind(Param::AlphaRatio, sweep_flags.alpha_ratio);
      bind(Param::Gamma, sweep_flags.gamma);
      bind(Param::Eta, sweep_flags.eta);
      bind(Param::P, sweep_flags.p);
      auto varied = [&](Param p) {
        return std::any_of(spec.varying.begin(), spec.varying.end(),
                           [&](const Axis& a) { return a.param == p; });
      };
      if (!varied(Param::P)) spec.fixed.try_emplace(Param::P, 0.0);
      if (sweep_flags.q == "auto") {
        spec.q_mode = QMode::Optimal;
      } else {
        spec.q_mode = QMode::Explicit;
        if (!sweep_flags.q.empty()) {
          spec.fixed[Param::Q] = *parse_q(sweep_flags.q);
        } else if (!varied(Param::Q)) {
          spec.fixed[Param::Q] = 0.0;
        }
      }
      std::stringstream ss(sweep_flags.outputs);
      for (std::string tok; std::getline(ss, tok, ',');) {
        const auto o = parse_output(tok);
        if (!o) throw UsageError("--outputs: unknown column '" + tok + "'");
        spec.outputs.push_back(*o);
      }
      emit_table(run_sweep(spec), sweep_flags.format, sweep_flags.output, out);
      return kExitOk;
    }

    if (*verify) {
      VerifyOptions opts;
      opts.seed = verify_flags.seed;
      opts.samples = verify_flags.samples;
      opts.corrupt = verify_flags.corrupt;
      bool all = true;
      for (const auto& r : run_verification(opts)) {
        all = all && r.passed;
        out << (r.passed ? "PASS " : "FAIL ") << r.name << "  max_error=" << format_text_number(r.max_error)
            << "  tolerance=" << format_text_number(r.tolerance);
        if (!r.detail.empty()) out << "  (" << r.detail << ")";
        out << '\n';
      }
      out << (all ? "all suites passed" : "verification FAILED") << '\n';
      return all ? kExitOk : kExitPhysicality;
    }
  } catch (const UsageError& e) {
    return report_error(e.what(), kExitUsage, err);
  } catch (const Error& e) {
    return report_error(e.what(), is_physicality_error(e.kind()) ? kExitPhysicality : kExitUsage, err);
  } catch (const std::exception& e) {
    return report_error(e.what(), kExitPhysicality, err);
  }
  return kExitUsage;
}

}  // namespace cadwm
