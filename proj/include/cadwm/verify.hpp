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

// Self-check suites backing the `verify` command.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cadwm {

struct VerifyOptions {
  std::uint64_t seed = 20140601;
  int samples = 1000;
  bool corrupt = false;  // swap in a channel with a missing Kraus operator
};

struct SuiteResult {
  std::string name;
  bool passed = false;
  double max_error = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

std::vector<SuiteResult> run_verification(const VerifyOptions& options);

}  // namespace cadwm
