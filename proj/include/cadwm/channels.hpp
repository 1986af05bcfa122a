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

// Amplitude-damping channels in Kraus form:
//
//   single qubit AD:   E0 = diag(1, sqrt(1-g)),  E1 = sqrt(g)|0><1|
//   memoryless pair:   {Ei (x) Ej}
//   fully correlated:  A0 = diag(1, 1, 1, sqrt(1-g)),  A1 = sqrt(g)|00><11|
//   correlated (CAD):  sqrt(1-eta) {Ei (x) Ej}  +  sqrt(eta) {A0, A1}
//
// The CAD family is one Kraus decomposition of the convex mixture
// (1-eta) AD(x)AD + eta FCAD.

#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "cadwm/error.hpp"
#include "cadwm/linalg.hpp"
#include "cadwm/states.hpp"

namespace cadwm {

template <typename Real>
inline constexpr Real kCptpTol = Real(1e-12);

namespace channel_detail {

template <typename Real>
Real checked_unit(Real value, const char* name) {
  if (!(value >= Real(0) && value <= Real(1))) {
    throw Error(ErrorKind::ParamRange,
                std::string(name) + " = " + std::to_string(value) + " not in [0, 1]");
  }
  return value;
}

}  // namespace channel_detail

/// Decoherence strength gamma and memory parameter eta, both in [0, 1].
template <typename Real>
struct ChannelParams {
  Real gamma;
  Real eta;

  ChannelParams(Real gamma_, Real eta_)
      : gamma(channel_detail::checked_unit(gamma_, "gamma")),
        eta(channel_detail::checked_unit(eta_, "eta")) {}
};

template <typename Real>
class KrausChannel {
 public:
  /// Does not reject incomplete families; see is_trace_preserving().
  KrausChannel(std::vector<CMatrix<Real>> operators, std::vector<Real> weights)
      : operators_(std::move(operators)), weights_(std::move(weights)) {
    if (operators_.empty()) throw Error(ErrorKind::Shape, "channel has no operators");
    if (weights_.size() != operators_.size()) {
      throw Error(ErrorKind::Shape, "one weight per operator required");
    }
    dim_ = operators_.front().rows();
    for (const auto& k : operators_) {
      if (k.rows() != dim_ || k.cols() != dim_) {
        throw Error(ErrorKind::Shape, "Kraus operators must share one square shape");
      }
    }
    CMatrix<Real> completeness = CMatrix<Real>::Zero(dim_, dim_);
    for (const auto& k : operators_) completeness += k.adjoint() * k;
    deviation_ = max_abs_diff<Real>(completeness, identity<Real>(dim_));
  }

  Eigen::Index dim() const noexcept { return dim_; }
  const std::vector<CMatrix<Real>>& operators() const noexcept { return operators_; }
  const std::vector<Real>& weights() const noexcept { return weights_; }

  /// max |sum_i K_i^dagger K_i - I| computed at construction.
  Real completeness_deviation() const noexcept { return deviation_; }
  bool is_trace_preserving() const noexcept { return deviation_ <= kCptpTol<Real>; }

  const KrausChannel& require_cptp() const {
    if (!is_trace_preserving()) {
      throw Error(ErrorKind::NotCptp,
                  "completeness deviation " + std::to_string(deviation_));
    }
    return *this;
  }

 private:
  Eigen::Index dim_ = 0;
  std::vector<CMatrix<Real>> operators_;
  std::vector<Real> weights_;
  Real deviation_ = 0;
};

template <typename Real>
Real validate_cptp(const KrausChannel<Real>& channel) {
  return channel.completeness_deviation();
}

template <typename Real>
KrausChannel<Real> ad_single(Real gamma) {
  channel_detail::checked_unit(gamma, "gamma");
  CMatrix<Real> e0 = CMatrix<Real>::Zero(2, 2);
  CMatrix<Real> e1 = CMatrix<Real>::Zero(2, 2);
  e0(0, 0) = 1;
  e0(1, 1) = std::sqrt(Real(1) - gamma);
  e1(0, 1) = std::sqrt(gamma);
  KrausChannel<Real> ch({e0, e1}, {Real(1), Real(1)});
  ch.require_cptp();
  return ch;
}

/// {Ei (x) Ej : i, j in {0, 1}}. At gamma = 0 only I4 remains.
template <typename Real>
KrausChannel<Real> ad_two_qubit(Real gamma) {
  const auto single = ad_single(gamma);
  std::vector<CMatrix<Real>> ops;
  for (const auto& a : single.operators()) {
    for (const auto& b : single.operators()) {
      CMatrix<Real> k = tensor<Real>(a, b);
      if (k.cwiseAbs().maxCoeff() > Real(0)) ops.push_back(std::move(k));
    }
  }
  std::vector<Real> weights(ops.size(), Real(1));
  KrausChannel<Real> ch(std::move(ops), std::move(weights));
  ch.require_cptp();
  return ch;
}

template <typename Real>
KrausChannel<Real> fcad(Real gamma) {
  channel_detail::checked_unit(gamma, "gamma");
  CMatrix<Real> a0 = CMatrix<Real>::Identity(4, 4);
  a0(3, 3) = std::sqrt(Real(1) - gamma);
  CMatrix<Real> a1 = CMatrix<Real>::Zero(4, 4);
  a1(0, 3) = std::sqrt(gamma);
  KrausChannel<Real> ch({a0, a1}, {Real(1), Real(1)});
  ch.require_cptp();
  return ch;
}

/// Six operators: sqrt(1-eta) Ei(x)Ej followed by sqrt(eta) A0, sqrt(eta) A1.
template <typename Real>
KrausChannel<Real> cad(const ChannelParams<Real>& params) {
  const Real memoryless = std::sqrt(Real(1) - params.eta);
  const Real correlated = std::sqrt(params.eta);
  const auto single = ad_single(params.gamma);
  std::vector<CMatrix<Real>> ops;
  std::vector<Real> weights;
  for (const auto& a : single.operators()) {
    for (const auto& b : single.operators()) {
      ops.push_back(memoryless * tensor<Real>(a, b));
      weights.push_back(Real(1) - params.eta);
    }
  }
  const auto full = fcad(params.gamma);
  for (const auto& a : full.operators()) {
    ops.push_back(correlated * a);
    weights.push_back(params.eta);
  }
  KrausChannel<Real> ch(std::move(ops), std::move(weights));
  ch.require_cptp();
  return ch;
}

/// sum_i K_i m K_i^dagger on an arbitrary (possibly unnormalized) operator.
template <typename Real>
CMatrix<Real> apply_map(const KrausChannel<Real>& channel, const CMatrix<Real>& m) {
  if (m.rows() != channel.dim() || m.cols() != channel.dim()) {
    throw Error(ErrorKind::Shape, "operator is " + std::to_string(m.rows()) + "x" +
                                      std::to_string(m.cols()) + ", channel acts on dim " +
                                      std::to_string(channel.dim()));
  }
  CMatrix<Real> out = CMatrix<Real>::Zero(m.rows(), m.cols());
  for (const auto& k : channel.operators()) out += k * m * k.adjoint();
  return out;
}

template <typename Real>
DensityMatrix<Real> apply(const KrausChannel<Real>& channel, const DensityMatrix<Real>& rho) {
  return DensityMatrix<Real>(apply_map(channel, rho.matrix()));
}

/// Closed-form X-state elements of CAD(|psi><psi|) for psi = alpha|00> + beta|11>.
template <typename Real>
XStateElements<Real> analytic_cad_elements(const InitialState<Real>& s,
                                           const ChannelParams<Real>& params) {
  const Real g = params.gamma;
  const Real e = params.eta;
  const Real gb = Real(1) - g;
  const Real eb = Real(1) - e;
  const Real a2 = std::norm(s.alpha());
  const Real b2 = std::norm(s.beta());

  XStateElements<Real> x;
  x.r11 = a2 + (eb * g * g + e * g) * b2;
  x.r22 = eb * g * gb * b2;
  x.r33 = x.r22;
  x.r44 = (eb * gb * gb + e * gb) * b2;
  x.r14 = (eb * gb + e * std::sqrt(gb)) * s.alpha() * std::conj(s.beta());
  return x;
}

}  // namespace cadwm
