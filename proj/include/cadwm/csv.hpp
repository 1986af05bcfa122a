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

#include <ostream>
#include <string>

#include "cadwm/sweep.hpp"

namespace cadwm {

/// Shortest form with at most 12 significant digits; fixed notation for
/// magnitudes in [1e-4, 1e12), scientific otherwise. Locale independent.
std::string format_csv_number(double v);

/// Fixed 12 significant digits with trailing zeros kept, for text reports.
std::string format_text_number(double v);

/// Header row plus one line per row, comma separated, LF terminated.
void write_csv(std::ostream& os, const SweepTable& table);

}  // namespace cadwm
