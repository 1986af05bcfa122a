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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cadwm {

enum class ErrorKind {
  Shape,
  NotHermitian,
  NoConvergence,
  NotPsd,
  NotDensity,
  NullState,
  BadNorm,
  NotXState,
  ParamRange,
  NotCptp,
  NullPostselection,
  DegenerateState,
  NumericBreakdown,
  BadSpec,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Shape: return "shape";
    case ErrorKind::NotHermitian: return "not_hermitian";
    case ErrorKind::NoConvergence: return "no_convergence";
    case ErrorKind::NotPsd: return "not_psd";
    case ErrorKind::NotDensity: return "not_density";
    case ErrorKind::NullState: return "null_state";
    case ErrorKind::BadNorm: return "bad_norm";
    case ErrorKind::NotXState: return "not_x_state";
    case ErrorKind::ParamRange: return "param_range";
    case ErrorKind::NotCptp: return "not_cptp";
    case ErrorKind::NullPostselection: return "null_postselection";
    case ErrorKind::DegenerateState: return "degenerate_state";
    case ErrorKind::NumericBreakdown: return "numeric_breakdown";
    case ErrorKind::BadSpec: return "bad_spec";
  }
  return "unknown";
}

// True for failures that indicate an unphysical state or channel rather than
// bad user input.
constexpr bool is_physicality_error(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotHermitian:
    case ErrorKind::NoConvergence:
    case ErrorKind::NotPsd:
    case ErrorKind::NotDensity:
    case ErrorKind::NotCptp:
    case ErrorKind::NumericBreakdown:
      return true;
    default:
      return false;
  }
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace cadwm
