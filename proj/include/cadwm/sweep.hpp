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

// Parameter grids over (|alpha/beta|, gamma, eta, p, q). Rows are emitted
// row-major with the first varying parameter outermost; bound parameters come
// first (varying, then fixed in canonical order), then the requested outputs
// in canonical order.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cadwm/channels.hpp"
#include "cadwm/measurements.hpp"
#include "cadwm/states.hpp"

namespace cadwm {

enum class Param { AlphaRatio, Gamma, Eta, P, Q };
enum class QMode { Explicit, Optimal };
enum class Output { ConcurrenceCad, ConcurrenceQmr, SuccessProb, EsdFlag, Delta };

std::string_view to_string(Param p) noexcept;
std::string_view to_string(Output o) noexcept;
std::optional<Param> parse_param(std::string_view name) noexcept;
std::optional<Output> parse_output(std::string_view name) noexcept;

struct Axis {
  Param param;
  double start;
  double stop;
  int count;

  std::vector<double> values() const;
};

struct SweepSpec {
  std::vector<Axis> varying;
  std::map<Param, double> fixed;
  QMode q_mode = QMode::Explicit;
  std::vector<Output> outputs;
};

using SweepRow = std::vector<double>;

struct SweepTable {
  std::vector<std::string> header;
  std::vector<SweepRow> rows;
};

/// Throws Error(BadSpec) naming the offending field.
void validate(const SweepSpec& spec);

/// alpha = r / sqrt(1 + r^2), beta = 1 / sqrt(1 + r^2).
InitialState<double> state_from_ratio(double ratio);

SweepTable run_sweep(const SweepSpec& spec);

/// ESD map over (alpha_ratio, gamma) at fixed eta and optional fixed p
/// (default 0). Output column: esd_flag.
SweepTable classify_esd_region(const SweepSpec& spec);

struct BoundaryPoint {
  double gamma;
  double alpha_ratio;
};

/// ESD boundary r(γ) = (1-p)η̄γ√γ̄/(η̄√γ̄+η) on a 512-point γ grid over [0, 1].
std::vector<BoundaryPoint> trace_boundary(double eta, double p);

/// Deterministic parameter draws for property checks.
struct ParameterDraw {
  InitialState<double> state;
  ChannelParams<double> params;
  MeasurementStrengths<double> strengths;
};

class ParameterSampler {
 public:
  static constexpr double kMaxP = 1.0 - 1e-6;

  explicit ParameterSampler(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [lo, hi) built from the top 53 bits of one engine output.
  double uniform(double lo, double hi);

  /// |alpha| uniform on (0, 1) with independent uniform phases on alpha and
  /// beta; gamma, eta, q uniform on [0, 1]; p uniform on [0, 1 - 1e-6].
  ParameterDraw draw();

 private:
  std::mt19937_64 engine_;
};

struct QOptimumCheck {
  int samples = 0;
  double max_q_error = 0.0;       // max |q_search - q_closed_form|
  double max_bound_excess = 0.0;  // max (Δ_search - bound), <= 0 when the bound holds
};

/// Golden-section search on Δ_QMR(q) over [0, 1] for `samples` seeded draws
/// with a positive optimum, compared against optimal_q and
/// optimal_delta_bound.
QOptimumCheck check_q_optimum(int samples, std::uint64_t seed);

/// check_q_optimum(...).max_q_error.
double verify_q_optimum(int samples, std::uint64_t seed);

}  // namespace cadwm
