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

#include "cadwm/verify.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>

#include "cadwm/channels.hpp"
#include "cadwm/entanglement.hpp"
#include "cadwm/measurements.hpp"
#include "cadwm/sweep.hpp"

namespace cadwm {

namespace {

using Channel = KrausChannel<double>;

Channel channel_for(const ChannelParams<double>& params, bool corrupt) {
  Channel good = cad(params);
  if (!corrupt) return good;
  // Drop the correlated jump operator; the family is no longer complete.
  auto ops = good.operators();
  auto weights = good.weights();
  ops.pop_back();
  weights.pop_back();
  return Channel(std::move(ops), std::move(weights));
}

// Runs `body`, which returns the worst error seen; any exception fails the
// suite.
SuiteResult run_suite(const std::string& name, double tolerance,
                      const std::function<double()>& body) {
  SuiteResult r;
  r.name = name;
  r.tolerance = tolerance;
  try {
    r.max_error = body();
    r.passed = r.max_error <= tolerance;
  } catch (const std::exception& e) {
    r.passed = false;
    r.max_error = std::numeric_limits<double>::infinity();
    r.detail = e.what();
  }
  return r;
}

}  // namespace

std::vector<SuiteResult> run_verification(const VerifyOptions& options) {
  const bool corrupt = options.corrupt;
  const int samples = options.samples;
  std::vector<SuiteResult> results;

  results.push_back(run_suite("cptp_grid", 1e-12, [&] {
    double worst = 0.0;
    for (int i = 0; i <= 20; ++i) {
      const double g = i / 20.0;
      worst = std::max(worst, validate_cptp(ad_single(g)));
      worst = std::max(worst, validate_cptp(ad_two_qubit(g)));
      worst = std::max(worst, validate_cptp(fcad(g)));
      for (int j = 0; j <= 20; ++j) {
        worst = std::max(worst, validate_cptp(channel_for(ChannelParams<double>(g, j / 20.0), corrupt)));
      }
    }
    return worst;
  }));

  results.push_back(run_suite("convexity", 1e-12, [&] {
    ParameterSampler sampler(options.seed);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const auto d = sampler.draw();
      const auto rho = to_density(d.state);
      const auto mixed = apply_map(channel_for(d.params, corrupt), rho.matrix());
      const ComplexMatrix parts = (1.0 - d.params.eta) * apply_map(ad_two_qubit(d.params.gamma), rho.matrix()) +
                                  d.params.eta * apply_map(fcad(d.params.gamma), rho.matrix());
      worst = std::max(worst, max_abs_diff<double>(mixed, parts));
    }
    return worst;
  }));

  results.push_back(run_suite("cad_closed_form", 1e-11, [&] {
    ParameterSampler sampler(options.seed + 1);
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
      const auto d = sampler.draw();
      const auto numeric = extract_x_elements(apply(channel_for(d.params, corrupt), to_density(d.state)));
      worst = std::max(worst, numeric.max_abs_diff(analytic_cad_elements(d.state, d.params)));
    }
    return worst;
  }));

  results.push_back(run_suite("qmr_closed_form", 1e-11, [&] {
    ParameterSampler sampler(options.seed + 2);
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
      const auto d = sampler.draw();
      const auto outcome = run_protocol(d.state, channel_for(d.params, corrupt), d.strengths);
      const auto closed = analytic_qmr_elements(d.state, d.params, d.strengths);
      worst = std::max(worst, extract_x_elements(outcome.state).max_abs_diff(closed.elements));
      worst = std::max(worst, std::abs(outcome.success_probability - closed.terms.trace(d.strengths.q)));
    }
    return worst;
  }));

  results.push_back(run_suite("wootters_vs_closed_form", 1e-9, [&] {
    ParameterSampler sampler(options.seed + 2);
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
      const auto d = sampler.draw();
      const auto channel = channel_for(d.params, corrupt);
      const auto damped = apply(channel, to_density(d.state));
      worst = std::max(worst, std::abs(wootters_concurrence(damped).concurrence -
                                       concurrence_cad_closed(d.state, d.params).concurrence));
      const auto outcome = run_protocol(d.state, channel, d.strengths);
      worst = std::max(worst, std::abs(wootters_concurrence(outcome.state).concurrence -
                                       concurrence_qmr_closed(d.state, d.params, d.strengths).concurrence));
    }
    return worst;
  }));

  const int q_samples = std::min(samples, 200);
  results.push_back(run_suite("q_optimum", 1e-4, [&] {
    return verify_q_optimum(q_samples, options.seed + 3);
  }));

  results.push_back(run_suite("q_bound", 1e-9, [&] {
    return std::max(0.0, check_q_optimum(q_samples, options.seed + 3).max_bound_excess);
  }));

  results.push_back(run_suite("esd_boundary", 0.0, [&] {
    const auto s = make_initial(1.0 / 3.0, std::sqrt(8.0) / 3.0);
    double disagreements = 0.0;
    for (int i = 0; i < 50; ++i) {
      for (int j = 0; j < 50; ++j) {
        const ChannelParams<double> params(i / 49.0, j / 49.0);
        const auto c = concurrence_cad_closed(s, params);
        const bool zero = c.concurrence == 0.0 && c.delta < -1e-14;
        if (esd_condition_cad(s, params) != zero) disagreements += 1.0;
      }
    }
    return disagreements;
  }));

  return results;
}

}  // namespace cadwm
