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

// Concurrence of two-qubit states, numerically (Wootters) and in closed form
// for the damped / measured |00>,|11> family, plus the sudden-death (ESD)
// predicates and the critical parameters derived from them.
//
// Notation: x̄ = 1 - x, r = |alpha/beta|.
//
//   C_CAD  = 2 max{0, Δ_CAD},  Δ_CAD = (η̄γ̄ + η√γ̄)|αβ| - η̄γγ̄|β|²
//   C_QMR  = max{0, Δ_QMR},    Δ_QMR = 2q̄(|X| - V) / (q̄²U + 2q̄V + W)
//
// The factor 2 sits outside Δ for the bare channel and inside Δ after
// reversal; reports keep each Δ in its own convention.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "cadwm/channels.hpp"
#include "cadwm/error.hpp"
#include "cadwm/linalg.hpp"
#include "cadwm/measurements.hpp"
#include "cadwm/roots.hpp"
#include "cadwm/states.hpp"

namespace cadwm {

enum class ConcurrenceMethod { NumericWootters, ClosedFormCad, ClosedFormQmr };

constexpr std::string_view to_string(ConcurrenceMethod m) noexcept {
  switch (m) {
    case ConcurrenceMethod::NumericWootters: return "numeric_wootters";
    case ConcurrenceMethod::ClosedFormCad: return "closed_form_cad";
    case ConcurrenceMethod::ClosedFormQmr: return "closed_form_qmr";
  }
  return "unknown";
}

template <typename Real>
struct ConcurrenceReport {
  Real concurrence = 0;
  Real delta = 0;                           // signed, in the method's own convention
  std::array<Real, 4> sqrt_eigenvalues{};   // descending
  ConcurrenceMethod method = ConcurrenceMethod::NumericWootters;
};

template <typename Real>
struct CriticalParams {
  std::optional<Real> eta_c;
  std::optional<Real> p_c;
  std::optional<std::pair<Real, Real>> esd_interval;  // (gamma_low, gamma_high)
  std::vector<Real> gamma_roots;
};

namespace entanglement_detail {

template <typename Real>
Real clamp_unit(Real x) {
  return std::clamp(x, Real(0), Real(1));
}

// √λ of ρρ̃ for an X-state with only the r14 coherence: the |00>,|11> block
// gives √(r11 r44) ± |r14|, the |01>,|10> block gives √(r22 r33) twice.
template <typename Real>
std::array<Real, 4> x_state_sqrt_eigenvalues(const XStateElements<Real>& x) {
  const Real outer = std::sqrt(std::max(x.r11 * x.r44, Real(0)));
  const Real inner = std::sqrt(std::max(x.r22 * x.r33, Real(0)));
  const Real coh = std::abs(x.r14);
  std::array<Real, 4> v{outer + coh, std::abs(outer - coh), inner, inner};
  std::sort(v.begin(), v.end(), std::greater<Real>());
  return v;
}

template <typename Real>
Real beta_abs_checked(const InitialState<Real>& s) {
  const Real b = std::abs(s.beta());
  if (b == Real(0)) throw Error(ErrorKind::DegenerateState, "beta = 0");
  return b;
}

}  // namespace entanglement_detail

/// Spin-flip matrix σy ⊗ σy.
template <typename Real>
CMatrix<Real> spin_flip() {
  CMatrix<Real> y = CMatrix<Real>::Zero(4, 4);
  y(0, 3) = -1;
  y(1, 2) = 1;
  y(2, 1) = 1;
  y(3, 0) = -1;
  return y;
}

/// C = max{0, √λ1 - √λ2 - √λ3 - √λ4}, λ the eigenvalues of ρρ̃ with
/// ρ̃ = (σy⊗σy) ρ* (σy⊗σy). The spectrum is taken from the Hermitian
/// matrix √ρ ρ̃ √ρ, which is similar to ρρ̃.
template <typename Real>
ConcurrenceReport<Real> wootters_concurrence(const DensityMatrix<Real>& rho) {
  const CMatrix<Real> flip = spin_flip<Real>();
  const CMatrix<Real> tilde = flip * rho.matrix().conjugate() * flip;
  const CMatrix<Real> root = hermitian_sqrt<Real>(rho.matrix());
  CMatrix<Real> h = root * tilde * root;
  h = ((h + h.adjoint()) * Real(0.5)).eval();
  const auto es = hermitian_eigensystem<Real>(h);

  // Below this the sign and size of λ are rounding noise.
  const Real floor = Real(16) * std::numeric_limits<Real>::epsilon() * std::abs(es.values(0));
  ConcurrenceReport<Real> r;
  r.method = ConcurrenceMethod::NumericWootters;
  for (int k = 0; k < 4; ++k) {
    const Real lambda = es.values(k);
    if (lambda < Real(-1e-10)) {
      throw Error(ErrorKind::NumericBreakdown,
                  "eigenvalue of √ρ ρ̃ √ρ = " + std::to_string(lambda));
    }
    r.sqrt_eigenvalues[k] = lambda <= floor ? Real(0) : std::sqrt(lambda);
  }
  r.delta = r.sqrt_eigenvalues[0] - r.sqrt_eigenvalues[1] - r.sqrt_eigenvalues[2] -
            r.sqrt_eigenvalues[3];
  r.concurrence = std::max(Real(0), r.delta);
  return r;
}

template <typename Real>
Real delta_cad(const InitialState<Real>& s, const ChannelParams<Real>& params) {
  const Real g = params.gamma;
  const Real e = params.eta;
  const Real gb = Real(1) - g;
  const Real eb = Real(1) - e;
  const Real a = std::abs(s.alpha());
  const Real b = std::abs(s.beta());
  return (eb * gb + e * std::sqrt(gb)) * a * b - eb * g * gb * b * b;
}

template <typename Real>
ConcurrenceReport<Real> concurrence_cad_closed(const InitialState<Real>& s,
                                               const ChannelParams<Real>& params) {
  ConcurrenceReport<Real> r;
  r.method = ConcurrenceMethod::ClosedFormCad;
  r.delta = delta_cad(s, params);
  r.concurrence = Real(2) * std::max(Real(0), r.delta);
  r.sqrt_eigenvalues = entanglement_detail::x_state_sqrt_eigenvalues(analytic_cad_elements(s, params));
  return r;
}

template <typename Real>
ConcurrenceReport<Real> concurrence_qmr_closed(const InitialState<Real>& s,
                                               const ChannelParams<Real>& params,
                                               const MeasurementStrengths<Real>& strengths) {
  const auto terms = analytic_qmr_terms(s, params, strengths.p);
  const Real qb = Real(1) - strengths.q;
  const Real denom = terms.trace(strengths.q);
  if (!(denom > kNullPostselection<Real>)) {
    throw Error(ErrorKind::NullPostselection, "q̄²U + 2q̄V + W = " + std::to_string(denom));
  }
  ConcurrenceReport<Real> r;
  r.method = ConcurrenceMethod::ClosedFormQmr;
  r.delta = Real(2) * qb * (std::abs(terms.X) - terms.V) / denom;
  r.concurrence = std::max(Real(0), r.delta);

  XStateElements<Real> x;
  x.r11 = qb * qb * terms.U / denom;
  x.r22 = x.r33 = qb * terms.V / denom;
  x.r44 = terms.W / denom;
  x.r14 = qb * terms.X / denom;
  r.sqrt_eigenvalues = entanglement_detail::x_state_sqrt_eigenvalues(x);
  return r;
}

/// Reversal strength maximizing Δ_QMR: q̄ = √(W/U). A state with no |11>
/// component has nothing to reverse and gets q = 0.
template <typename Real>
Real optimal_q(const InitialState<Real>& s, const ChannelParams<Real>& params, Real p) {
  channel_detail::checked_unit(p, "p");
  if (std::abs(s.alpha()) == Real(0)) {
    throw Error(ErrorKind::DegenerateState, "alpha = 0, optimal reversal undefined");
  }
  if (std::abs(s.beta()) == Real(0)) return Real(0);
  const auto t = analytic_qmr_terms(s, params, p);
  const Real qb = std::sqrt(t.W / t.U);
  return entanglement_detail::clamp_unit(Real(1) - qb);
}

/// Upper bound on Δ_QMR over q, reached at q̄ = √(W/U):
///
///   ((η̄γ̄ + η√γ̄)|α| - p̄η̄γγ̄|β|) /
///   (p̄η̄γγ̄|β| + √([|α|² + p̄²(η̄γ² + ηγ)|β|²](η̄γ̄² + ηγ̄)))
///
/// At γ = 1 nothing survives the channel and the bound is reported as 0.
template <typename Real>
Real optimal_delta_bound(const InitialState<Real>& s, const ChannelParams<Real>& params, Real p) {
  channel_detail::checked_unit(p, "p");
  const Real g = params.gamma;
  const Real e = params.eta;
  const Real gb = Real(1) - g;
  const Real eb = Real(1) - e;
  const Real pb = Real(1) - p;
  const Real a = std::abs(s.alpha());
  const Real b = std::abs(s.beta());

  const Real leak = pb * eb * g * gb * b;
  const Real numer = (eb * gb + e * std::sqrt(gb)) * a - leak;
  const Real denom =
      leak + std::sqrt((a * a + pb * pb * (eb * g * g + e * g) * b * b) * (eb * gb * gb + e * gb));
  return denom > Real(0) ? numer / denom : Real(0);
}

/// Δ_QMR at the best physical reversal strength. This is the bound above
/// whenever √(W/U) <= 1; otherwise the bound would need q < 0 and the best
/// attainable choice is q = 0. Both cases share the bound's sign.
template <typename Real>
ConcurrenceReport<Real> optimal_concurrence(const InitialState<Real>& s,
                                            const ChannelParams<Real>& params, Real p) {
  ConcurrenceReport<Real> r;
  r.method = ConcurrenceMethod::ClosedFormQmr;
  r.delta = optimal_delta_bound(s, params, p);
  r.concurrence = std::max(Real(0), r.delta);
  if (std::abs(s.alpha()) == Real(0)) return r;

  const auto terms = analytic_qmr_terms(s, params, p);
  if (terms.W > terms.U) return concurrence_qmr_closed(s, params, MeasurementStrengths<Real>(p, Real(0)));
  const Real q = optimal_q(s, params, p);
  if (terms.trace(q) > kNullPostselection<Real>) {
    r.sqrt_eigenvalues =
        concurrence_qmr_closed(s, params, MeasurementStrengths<Real>(p, q)).sqrt_eigenvalues;
  }
  return r;
}

/// p -> 1 limit of the optimal Δ: (η̄√γ̄ + η) / √(η̄γ̄ + η). Independent of
/// the initial amplitudes; 0 at γ = 1.
template <typename Real>
Real optimal_concurrence_limit(const ChannelParams<Real>& params) {
  const Real gb = Real(1) - params.gamma;
  const Real eb = Real(1) - params.eta;
  const Real denom = std::sqrt(eb * gb + params.eta);
  if (gb == Real(0) || denom == Real(0)) return Real(0);
  return (eb * std::sqrt(gb) + params.eta) / denom;
}

/// Right-hand side of the ESD inequality r < (1-p)η̄γ√γ̄ / (η̄√γ̄ + η).
template <typename Real>
Real esd_threshold(const ChannelParams<Real>& params, Real p) {
  const Real sgb = std::sqrt(Real(1) - params.gamma);
  const Real eb = Real(1) - params.eta;
  const Real numer = (Real(1) - p) * eb * params.gamma * sgb;
  const Real denom = eb * sgb + params.eta;
  return numer > Real(0) ? numer / denom : Real(0);
}

/// True when the state loses all entanglement under the bare channel.
template <typename Real>
bool esd_condition_cad(const InitialState<Real>& s, const ChannelParams<Real>& params) {
  entanglement_detail::beta_abs_checked(s);
  return s.abs_ratio() < esd_threshold(params, Real(0));
}

/// True when the state loses all entanglement even with optimal reversal
/// after a WM of strength p.
template <typename Real>
bool esd_condition_qmr(const InitialState<Real>& s, const ChannelParams<Real>& params, Real p) {
  channel_detail::checked_unit(p, "p");
  entanglement_detail::beta_abs_checked(s);
  return s.abs_ratio() < esd_threshold(params, p);
}

/// Memory strength above which the bare channel never causes ESD:
/// η_c = (γ√γ̄ - r√γ̄) / (r(1 - √γ̄) + γ√γ̄), clamped to [0, 1].
template <typename Real>
Real critical_eta(const InitialState<Real>& s, Real gamma) {
  channel_detail::checked_unit(gamma, "gamma");
  entanglement_detail::beta_abs_checked(s);
  const Real r = s.abs_ratio();
  const Real sgb = std::sqrt(Real(1) - gamma);
  const Real numer = gamma * sgb - r * sgb;
  if (!(numer > Real(0))) return Real(0);
  const Real denom = r * (Real(1) - sgb) + gamma * sgb;
  return entanglement_detail::clamp_unit(numer / denom);
}

template <typename Real>
struct CriticalPDiagnostics {
  Real derived;                // 1 - r(η̄√γ̄ + η)/(η̄γ√γ̄), clamped
  Real alt_form;               // r(1 - (η̄√γ̄ + η)/(η̄γ√γ̄)), unclamped
  std::optional<Real> root;    // bisection root of the optimal-Δ numerator in p
};

/// WM strength above which optimal reversal avoids ESD. Zero whenever the
/// bare channel already has no ESD (γ = 0, γ = 1, η = 1, or r large).
template <typename Real>
CriticalPDiagnostics<Real> critical_p_diagnostics(const InitialState<Real>& s,
                                                  const ChannelParams<Real>& params) {
  const Real b = entanglement_detail::beta_abs_checked(s);
  const Real r = s.abs_ratio();
  const Real g = params.gamma;
  const Real e = params.eta;
  const Real gb = Real(1) - g;
  const Real eb = Real(1) - e;
  const Real sgb = std::sqrt(gb);

  CriticalPDiagnostics<Real> d;
  const Real leak = eb * g * sgb;
  if (leak > Real(0)) {
    const Real ratio = (eb * sgb + e) / leak;
    d.derived = entanglement_detail::clamp_unit(Real(1) - r * ratio);
    d.alt_form = r * (Real(1) - ratio);
  } else {
    d.derived = Real(0);
    d.alt_form = std::numeric_limits<Real>::quiet_NaN();
  }

  const Real a = std::abs(s.alpha());
  auto numerator = [&](Real p) {
    return (eb * gb + e * sgb) * a - (Real(1) - p) * eb * g * gb * b;
  };
  if (numerator(Real(0)) < Real(0) && numerator(Real(1)) >= Real(0)) {
    d.root = bisect<Real>(numerator, Real(0), Real(1), Real(1e-10));
  }
  return d;
}

template <typename Real>
Real critical_p(const InitialState<Real>& s, const ChannelParams<Real>& params) {
  return critical_p_diagnostics(s, params).derived;
}

/// Sign changes of Δ_CAD(γ) on (0, 1), located by a 2048-point scan and
/// bisection to 1e-10. One root means ESD persists up to γ = 1; two roots
/// mean entanglement revives above the second.
template <typename Real>
CriticalParams<Real> esd_gamma_interval(const InitialState<Real>& s, Real eta) {
  constexpr int kScanPoints = 2048;
  channel_detail::checked_unit(eta, "eta");
  entanglement_detail::beta_abs_checked(s);
  auto delta = [&](Real gamma) { return delta_cad(s, ChannelParams<Real>(gamma, eta)); };
  const Real lo = Real(1) / Real(kScanPoints + 1);
  const Real hi = Real(kScanPoints) / Real(kScanPoints + 1);

  CriticalParams<Real> out;
  out.gamma_roots = scan_roots<Real>(delta, lo, hi, kScanPoints, Real(1e-10));
  const bool starts_negative = delta(lo) < Real(0);
  const auto& roots = out.gamma_roots;
  if (starts_negative) {
    out.esd_interval = std::pair<Real, Real>(Real(0), roots.empty() ? Real(1) : roots[0]);
  } else if (!roots.empty()) {
    out.esd_interval = std::pair<Real, Real>(roots[0], roots.size() > 1 ? roots[1] : Real(1));
  }
  return out;
}

}  // namespace cadwm
