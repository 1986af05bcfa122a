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

#include "cadwm/sweep.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <set>

#include "cadwm/entanglement.hpp"
#include "cadwm/error.hpp"
#include "cadwm/roots.hpp"

namespace cadwm {

namespace {

constexpr std::array<Param, 5> kParamOrder{Param::AlphaRatio, Param::Gamma, Param::Eta, Param::P,
                                           Param::Q};
constexpr std::array<Output, 5> kOutputOrder{Output::ConcurrenceCad, Output::ConcurrenceQmr,
                                             Output::SuccessProb, Output::EsdFlag, Output::Delta};

[[noreturn]] void bad_spec(const std::string& field, const std::string& why) {
  throw Error(ErrorKind::BadSpec, field + ": " + why);
}

void check_value(Param p, double v, const std::string& field) {
  if (!std::isfinite(v)) bad_spec(field, "not finite");
  if (p == Param::AlphaRatio) {
    if (!(v > 0.0)) bad_spec(field, "alpha_ratio must be > 0");
  } else if (!(v >= 0.0 && v <= 1.0)) {
    bad_spec(field, std::string(to_string(p)) + " = " + std::to_string(v) + " not in [0, 1]");
  }
}

// Shared validation; `required` lists parameters that must be bound and
// `forbidden` those that must not be.
void validate_bindings(const SweepSpec& spec, const std::set<Param>& required,
                       const std::set<Param>& forbidden) {
  if (spec.varying.empty() || spec.varying.size() > 2) {
    bad_spec("varying", "expected 1 or 2 varying parameters");
  }
  std::set<Param> bound;
  for (const auto& axis : spec.varying) {
    const std::string field = "varying." + std::string(to_string(axis.param));
    if (!bound.insert(axis.param).second) bad_spec(field, "listed twice");
    if (axis.count < 2) bad_spec(field + ".count", "must be >= 2");
    if (axis.count > 4096) bad_spec(field + ".count", "must be <= 4096");
    check_value(axis.param, axis.start, field + ".start");
    check_value(axis.param, axis.stop, field + ".stop");
    if (!(axis.start < axis.stop)) bad_spec(field, "range must satisfy start < stop");
  }
  for (const auto& [param, value] : spec.fixed) {
    const std::string field = "fixed." + std::string(to_string(param));
    if (!bound.insert(param).second) bad_spec(field, "also listed as varying");
    check_value(param, value, field);
  }
  for (Param p : required) {
    if (!bound.count(p)) bad_spec(std::string(to_string(p)), "required parameter not bound");
  }
  for (Param p : forbidden) {
    if (bound.count(p)) bad_spec(std::string(to_string(p)), "must not be bound in this mode");
  }
}

std::set<Param> required_for(const SweepSpec& spec) {
  std::set<Param> req{Param::AlphaRatio, Param::Gamma, Param::Eta, Param::P};
  if (spec.q_mode == QMode::Explicit) req.insert(Param::Q);
  return req;
}

std::vector<Param> column_params(const SweepSpec& spec) {
  std::vector<Param> cols;
  for (const auto& axis : spec.varying) cols.push_back(axis.param);
  for (Param p : kParamOrder) {
    if (spec.fixed.count(p)) cols.push_back(p);
  }
  return cols;
}

// Iterates the cartesian grid row-major, first axis outermost.
template <typename Fn>
void for_each_point(const SweepSpec& spec, Fn&& fn) {
  std::vector<std::vector<double>> axes;
  for (const auto& axis : spec.varying) axes.push_back(axis.values());
  std::map<Param, double> point = spec.fixed;
  if (axes.size() == 1) {
    for (double v : axes[0]) {
      point[spec.varying[0].param] = v;
      fn(point);
    }
  } else {
    for (double v0 : axes[0]) {
      point[spec.varying[0].param] = v0;
      for (double v1 : axes[1]) {
        point[spec.varying[1].param] = v1;
        fn(point);
      }
    }
  }
}

std::vector<Output> ordered_outputs(const std::vector<Output>& requested) {
  std::vector<Output> out;
  for (Output o : kOutputOrder) {
    if (std::find(requested.begin(), requested.end(), o) != requested.end()) out.push_back(o);
  }
  return out;
}

}  // namespace

std::string_view to_string(Param p) noexcept {
  switch (p) {
    case Param::AlphaRatio: return "alpha_ratio";
    case Param::Gamma: return "gamma";
    case Param::Eta: return "eta";
    case Param::P: return "p";
    case Param::Q: return "q";
  }
  return "unknown";
}

std::string_view to_string(Output o) noexcept {
  switch (o) {
    case Output::ConcurrenceCad: return "concurrence_cad";
    case Output::ConcurrenceQmr: return "concurrence_qmr";
    case Output::SuccessProb: return "success_prob";
    case Output::EsdFlag: return "esd_flag";
    case Output::Delta: return "delta";
  }
  return "unknown";
}

std::optional<Param> parse_param(std::string_view name) noexcept {
  for (Param p : kParamOrder) {
    if (to_string(p) == name) return p;
  }
  return std::nullopt;
}

std::optional<Output> parse_output(std::string_view name) noexcept {
  for (Output o : kOutputOrder) {
    if (to_string(o) == name) return o;
  }
  return std::nullopt;
}

std::vector<double> Axis::values() const {
  std::vector<double> v(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    v[static_cast<std::size_t>(i)] =
        i == count - 1 ? stop : start + (stop - start) * double(i) / double(count - 1);
  }
  return v;
}

void validate(const SweepSpec& spec) {
  std::set<Param> forbidden;
  if (spec.q_mode == QMode::Optimal) forbidden.insert(Param::Q);
  validate_bindings(spec, required_for(spec), forbidden);
  if (spec.outputs.empty()) bad_spec("outputs", "no outputs requested");
  std::set<Output> seen;
  for (Output o : spec.outputs) {
    if (!seen.insert(o).second) bad_spec("outputs", std::string(to_string(o)) + " listed twice");
  }
}

InitialState<double> state_from_ratio(double ratio) {
  if (!(ratio >= 0.0) || !std::isfinite(ratio)) {
    throw Error(ErrorKind::ParamRange, "alpha_ratio must be finite and >= 0");
  }
  const double norm = std::sqrt(1.0 + ratio * ratio);
  return make_initial(ratio / norm, 1.0 / norm);
}

SweepTable run_sweep(const SweepSpec& spec) {
  validate(spec);
  const auto params_cols = column_params(spec);
  const auto outputs = ordered_outputs(spec.outputs);

  SweepTable table;
  for (Param p : params_cols) table.header.emplace_back(to_string(p));
  if (spec.q_mode == QMode::Optimal) table.header.emplace_back(to_string(Param::Q));
  for (Output o : outputs) table.header.emplace_back(to_string(o));

  for_each_point(spec, [&](const std::map<Param, double>& point) {
    const auto s = state_from_ratio(point.at(Param::AlphaRatio));
    const ChannelParams<double> params(point.at(Param::Gamma), point.at(Param::Eta));
    const double p = point.at(Param::P);
    const double q = spec.q_mode == QMode::Optimal ? optimal_q(s, params, p) : point.at(Param::Q);
    const MeasurementStrengths<double> strengths(p, q);

    SweepRow row;
    for (Param c : params_cols) row.push_back(point.at(c));
    if (spec.q_mode == QMode::Optimal) row.push_back(q);

    // A vanishing post-selection probability yields no state; report zeros.
    const double trace = analytic_qmr_terms(s, params, p).trace(q);
    const bool kept = trace > kNullPostselection<double>;
    for (Output o : outputs) {
      switch (o) {
        case Output::ConcurrenceCad:
          row.push_back(concurrence_cad_closed(s, params).concurrence);
          break;
        case Output::ConcurrenceQmr:
          row.push_back(kept ? concurrence_qmr_closed(s, params, strengths).concurrence : 0.0);
          break;
        case Output::SuccessProb:
          row.push_back(kept ? trace : 0.0);
          break;
        case Output::EsdFlag:
          row.push_back(esd_condition_qmr(s, params, p) ? 1.0 : 0.0);
          break;
        case Output::Delta:
          row.push_back(kept ? concurrence_qmr_closed(s, params, strengths).delta : 0.0);
          break;
      }
    }
    table.rows.push_back(std::move(row));
  });
  return table;
}

SweepTable classify_esd_region(const SweepSpec& spec) {
  std::set<Param> varying;
  for (const auto& axis : spec.varying) varying.insert(axis.param);
  if (spec.varying.size() != 2 || varying != std::set<Param>{Param::AlphaRatio, Param::Gamma}) {
    bad_spec("varying", "ESD map must vary exactly alpha_ratio and gamma");
  }
  SweepSpec effective = spec;
  effective.fixed.try_emplace(Param::P, 0.0);
  validate_bindings(effective, {Param::AlphaRatio, Param::Gamma, Param::Eta, Param::P},
                    {Param::Q});

  const auto params_cols = column_params(effective);
  SweepTable table;
  for (Param p : params_cols) table.header.emplace_back(to_string(p));
  table.header.emplace_back(to_string(Output::EsdFlag));

  for_each_point(effective, [&](const std::map<Param, double>& point) {
    const auto s = state_from_ratio(point.at(Param::AlphaRatio));
    const ChannelParams<double> params(point.at(Param::Gamma), point.at(Param::Eta));
    SweepRow row;
    for (Param c : params_cols) row.push_back(point.at(c));
    row.push_back(esd_condition_qmr(s, params, point.at(Param::P)) ? 1.0 : 0.0);
    table.rows.push_back(std::move(row));
  });
  return table;
}

std::vector<BoundaryPoint> trace_boundary(double eta, double p) {
  constexpr int kPoints = 512;
  channel_detail::checked_unit(p, "p");
  std::vector<BoundaryPoint> out;
  out.reserve(kPoints);
  for (const double gamma : Axis{Param::Gamma, 0.0, 1.0, kPoints}.values()) {
    out.push_back({gamma, esd_threshold(ChannelParams<double>(gamma, eta), p)});
  }
  return out;
}

double ParameterSampler::uniform(double lo, double hi) {
  const double unit = double(engine_() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * unit;
}

ParameterDraw ParameterSampler::draw() {
  double a = 0.0;
  while (a == 0.0) a = uniform(0.0, 1.0);
  const double b = std::sqrt(1.0 - a * a);
  const double phase_a = uniform(0.0, 2.0 * std::numbers::pi);
  const double phase_b = uniform(0.0, 2.0 * std::numbers::pi);
  const double gamma = uniform(0.0, 1.0);
  const double eta = uniform(0.0, 1.0);
  const double p = uniform(0.0, kMaxP);
  const double q = uniform(0.0, 1.0);
  return {make_initial(std::polar(a, phase_a), std::polar(b, phase_b)),
          ChannelParams<double>(gamma, eta), MeasurementStrengths<double>(p, q)};
}

QOptimumCheck check_q_optimum(int samples, std::uint64_t seed) {
  if (samples < 1) throw Error(ErrorKind::BadSpec, "samples: must be >= 1");
  ParameterSampler sampler(seed);
  QOptimumCheck out;
  while (out.samples < samples) {
    const auto d = sampler.draw();
    // The closed-form optimum is a strict maximum only when the optimal Δ is
    // positive.
    if (!(optimal_concurrence(d.state, d.params, d.strengths.p).delta > 1e-3)) continue;
    ++out.samples;
    const auto terms = analytic_qmr_terms(d.state, d.params, d.strengths.p);
    auto delta_at = [&](double q) {
      // Δ -> 0 as q̄ -> 0; avoid the null post-selection error at the edge.
      if (!(terms.trace(q) > kNullPostselection<double>)) return 0.0;
      return concurrence_qmr_closed(d.state, d.params, MeasurementStrengths<double>(d.strengths.p, q))
          .delta;
    };
    const auto best = golden_section_max<double>(delta_at, 0.0, 1.0, 1e-8, 200);
    out.max_q_error =
        std::max(out.max_q_error, std::abs(best.x - optimal_q(d.state, d.params, d.strengths.p)));
    out.max_bound_excess = std::max(
        out.max_bound_excess, best.value - optimal_delta_bound(d.state, d.params, d.strengths.p));
  }
  return out;
}

double verify_q_optimum(int samples, std::uint64_t seed) {
  return check_q_optimum(samples, seed).max_q_error;
}

}  // namespace cadwm
