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

// Weak measurement (WM) before the channel and measurement reversal (QMR)
// after it. The protocol keeps only the "no click" branch of each, so the
// final state is post-selected and comes with a success probability.
//
// Two independent pipelines are provided: run_protocol() chains the 4x4
// operators numerically, analytic_qmr_elements() evaluates the closed form.
// Neither calls the other.

#pragma once

#include <cmath>
#include <string>

#include "cadwm/channels.hpp"
#include "cadwm/error.hpp"
#include "cadwm/linalg.hpp"
#include "cadwm/states.hpp"

namespace cadwm {

/// Post-selected traces at or below this are treated as a failed protocol.
template <typename Real>
inline constexpr Real kNullPostselection = Real(1e-14);

template <typename Real>
struct MeasurementStrengths {
  Real p;  // WM
  Real q;  // QMR

  MeasurementStrengths(Real p_, Real q_)
      : p(channel_detail::checked_unit(p_, "p")), q(channel_detail::checked_unit(q_, "q")) {}
};

/// diag(1, sqrt(1-p)) on each qubit.
template <typename Real>
CMatrix<Real> wm_operator(Real p) {
  channel_detail::checked_unit(p, "p");
  CMatrix<Real> m = CMatrix<Real>::Zero(2, 2);
  m(0, 0) = 1;
  m(1, 1) = std::sqrt(Real(1) - p);
  return tensor<Real>(m, m);
}

/// diag(sqrt(1-q), 1) on each qubit.
template <typename Real>
CMatrix<Real> qmr_operator(Real q) {
  channel_detail::checked_unit(q, "q");
  CMatrix<Real> m = CMatrix<Real>::Zero(2, 2);
  m(0, 0) = std::sqrt(Real(1) - q);
  m(1, 1) = 1;
  return tensor<Real>(m, m);
}

template <typename Real>
struct NonunitaryResult {
  CMatrix<Real> unnormalized;
  Real probability;
};

template <typename Real>
NonunitaryResult<Real> apply_nonunitary(const CMatrix<Real>& op, const DensityMatrix<Real>& rho) {
  if (op.rows() != 4 || op.cols() != 4) {
    throw Error(ErrorKind::Shape, "measurement operator must be 4x4");
  }
  CMatrix<Real> out = op * rho.matrix() * op.adjoint();
  const Complex<Real> tr = out.trace();
  if (std::abs(tr.imag()) > Real(1e-12)) {
    throw Error(ErrorKind::NumericBreakdown, "complex trace after measurement");
  }
  return {std::move(out), tr.real()};
}

template <typename Real>
struct ProtocolOutcome {
  DensityMatrix<Real> state;
  Real success_probability;
  Real unnormalized_trace;
};

namespace measurement_detail {

template <typename Real>
DensityMatrix<Real> normalized(const CMatrix<Real>& m, Real trace, const char* stage) {
  if (!(trace > kNullPostselection<Real>)) {
    throw Error(ErrorKind::NullPostselection,
                std::string(stage) + " keeps probability " + std::to_string(trace));
  }
  return DensityMatrix<Real>(m / trace);
}

}  // namespace measurement_detail

/// WM -> channel -> QMR on |psi><psi|. The success probability is the
/// product of the two stage-wise post-selection probabilities; the
/// unnormalized trace is taken from the literal un-normalized chain.
template <typename Real>
ProtocolOutcome<Real> run_protocol(const InitialState<Real>& s, const KrausChannel<Real>& channel,
                                   const MeasurementStrengths<Real>& strengths) {
  const auto rho = to_density(s);
  const CMatrix<Real> wm = wm_operator(strengths.p);
  const CMatrix<Real> qmr = qmr_operator(strengths.q);

  const auto weak = apply_nonunitary(wm, rho);
  const auto after_wm = measurement_detail::normalized(weak.unnormalized, weak.probability, "WM");
  const auto damped = apply(channel, after_wm);
  const auto reversal = apply_nonunitary(qmr, damped);
  const Real success = weak.probability * reversal.probability;

  const CMatrix<Real> chain = qmr * apply_map(channel, CMatrix<Real>(wm * rho.matrix() * wm.adjoint())) *
                              qmr.adjoint();
  const Real chain_trace = chain.trace().real();

  auto state = measurement_detail::normalized(reversal.unnormalized, reversal.probability, "QMR");
  if (!(success > kNullPostselection<Real>)) {
    throw Error(ErrorKind::NullPostselection,
                "joint success probability " + std::to_string(success));
  }
  return {std::move(state), success, chain_trace};
}

template <typename Real>
ProtocolOutcome<Real> run_protocol(const InitialState<Real>& s, const ChannelParams<Real>& params,
                                   const MeasurementStrengths<Real>& strengths) {
  return run_protocol(s, cad(params), strengths);
}

/// U, V, W, X and the normalization N of the closed-form post-QMR state.
template <typename Real>
struct AnalyticQmrTerms {
  Real U = 0;
  Real V = 0;
  Real W = 0;
  Complex<Real> X{};
  Real N = 0;

  /// q̄^2 U + 2 q̄ V + W, the trace of the unnormalized final state.
  Real trace(Real q) const {
    const Real qb = Real(1) - q;
    return qb * qb * U + Real(2) * qb * V + W;
  }
};

template <typename Real>
AnalyticQmrTerms<Real> analytic_qmr_terms(const InitialState<Real>& s,
                                          const ChannelParams<Real>& params, Real p) {
  const Real g = params.gamma;
  const Real e = params.eta;
  const Real gb = Real(1) - g;
  const Real eb = Real(1) - e;
  const Real pb = Real(1) - p;
  const Real a2 = std::norm(s.alpha());
  const Real b2 = std::norm(s.beta());

  AnalyticQmrTerms<Real> t;
  t.U = a2 + pb * pb * (eb * g * g + e * g) * b2;
  t.V = pb * pb * eb * g * gb * b2;
  t.W = pb * pb * (eb * gb * gb + e * gb) * b2;
  t.X = pb * (eb * gb + e * std::sqrt(gb)) * s.alpha() * std::conj(s.beta());
  return t;
}

template <typename Real>
struct QmrClosedForm {
  XStateElements<Real> elements;
  AnalyticQmrTerms<Real> terms;
};

template <typename Real>
QmrClosedForm<Real> analytic_qmr_elements(const InitialState<Real>& s,
                                          const ChannelParams<Real>& params,
                                          const MeasurementStrengths<Real>& strengths) {
  auto terms = analytic_qmr_terms(s, params, strengths.p);
  const Real pb = Real(1) - strengths.p;
  const Real qb = Real(1) - strengths.q;
  const Real wm_prob = std::norm(s.alpha()) + pb * pb * std::norm(s.beta());
  if (!(wm_prob > kNullPostselection<Real>)) {
    throw Error(ErrorKind::NullPostselection, "WM keeps probability " + std::to_string(wm_prob));
  }
  terms.N = terms.trace(strengths.q) / wm_prob;
  const Real denom = terms.N * wm_prob;
  if (!(denom > kNullPostselection<Real>)) {
    throw Error(ErrorKind::NullPostselection, "N(|a|^2 + p̄^2|b|^2) = " + std::to_string(denom));
  }

  XStateElements<Real> x;
  x.r11 = qb * qb * terms.U / denom;
  x.r22 = qb * terms.V / denom;
  x.r33 = x.r22;
  x.r44 = terms.W / denom;
  x.r14 = qb * terms.X / denom;
  return {x, terms};
}

}  // namespace cadwm
