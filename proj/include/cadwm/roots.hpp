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

// Scalar root bracketing and unimodal maximization.

#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "cadwm/error.hpp"

namespace cadwm {

/// Root of f on [lo, hi] given f(lo) and f(hi) of opposite sign (a zero at
/// either end is returned directly). Stops when the bracket is below `tol`.
template <typename Real, typename F>
Real bisect(F&& f, Real lo, Real hi, Real tol = Real(1e-10)) {
  Real flo = f(lo);
  const Real fhi = f(hi);
  if (flo == Real(0)) return lo;
  if (fhi == Real(0)) return hi;
  if ((flo < Real(0)) == (fhi < Real(0))) {
    throw Error(ErrorKind::NumericBreakdown, "bisect: endpoints do not bracket a root");
  }
  while (hi - lo > tol) {
    const Real mid = lo + (hi - lo) / Real(2);
    const Real fmid = f(mid);
    if (fmid == Real(0)) return mid;
    if ((fmid < Real(0)) == (flo < Real(0))) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return lo + (hi - lo) / Real(2);
}

/// Roots of f on [lo, hi]: samples `points` equally spaced abscissae
/// (endpoints included), then bisects every interval whose end values differ
/// in sign. Zero counts as non-negative.
template <typename Real, typename F>
std::vector<Real> scan_roots(F&& f, Real lo, Real hi, int points, Real tol = Real(1e-10)) {
  std::vector<Real> roots;
  auto negative = [&](Real x) { return f(x) < Real(0); };
  Real prev_x = lo;
  bool prev_neg = negative(lo);
  for (int i = 1; i < points; ++i) {
    const Real x = lo + (hi - lo) * Real(i) / Real(points - 1);
    const bool neg = negative(x);
    if (neg != prev_neg) roots.push_back(bisect<Real>(f, prev_x, x, tol));
    prev_x = x;
    prev_neg = neg;
  }
  return roots;
}

template <typename Real>
struct Maximum {
  Real x;
  Real value;
  int iterations;
};

/// Golden-section search for the maximum of a unimodal f on [lo, hi].
template <typename Real, typename F>
Maximum<Real> golden_section_max(F&& f, Real lo, Real hi, Real tol = Real(1e-8),
                                 int max_iterations = 200) {
  const Real inv_phi = (std::sqrt(Real(5)) - Real(1)) / Real(2);
  Real a = lo;
  Real b = hi;
  Real c = b - inv_phi * (b - a);
  Real d = a + inv_phi * (b - a);
  Real fc = f(c);
  Real fd = f(d);
  int it = 0;
  while (b - a > tol && it < max_iterations) {
    ++it;
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  if (fd > fc) return {d, fd, it};
  return {c, fc, it};
}

}  // namespace cadwm
