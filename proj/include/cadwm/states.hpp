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

#include <cmath>
#include <complex>
#include <string>

#include "cadwm/error.hpp"
#include "cadwm/linalg.hpp"

namespace cadwm {

/// alpha|00> + beta|11>, unit norm.
template <typename Real>
class InitialState {
 public:
  const Complex<Real>& alpha() const noexcept { return alpha_; }
  const Complex<Real>& beta() const noexcept { return beta_; }

  /// |alpha / beta|; requires beta != 0.
  Real abs_ratio() const {
    if (std::abs(beta_) == Real(0)) {
      throw Error(ErrorKind::DegenerateState, "beta = 0, |alpha/beta| undefined");
    }
    return std::abs(alpha_) / std::abs(beta_);
  }

  template <typename R>
  friend InitialState<R> make_initial(Complex<R> alpha, Complex<R> beta);

 private:
  InitialState(Complex<Real> alpha, Complex<Real> beta) : alpha_(alpha), beta_(beta) {}

  Complex<Real> alpha_;
  Complex<Real> beta_;
};

/// Validates and renormalizes (alpha, beta). Inputs whose squared norm is
/// within 1e-9 of one are rescaled to exact unit norm; anything further off
/// is rejected.
template <typename Real>
InitialState<Real> make_initial(Complex<Real> alpha, Complex<Real> beta) {
  for (Real x : {alpha.real(), alpha.imag(), beta.real(), beta.imag()}) {
    if (!std::isfinite(x)) throw Error(ErrorKind::BadNorm, "non-finite amplitude");
  }
  const Real norm2 = std::norm(alpha) + std::norm(beta);
  if (norm2 == Real(0)) throw Error(ErrorKind::NullState, "alpha = beta = 0");
  if (std::abs(norm2 - Real(1)) > Real(1e-9)) {
    throw Error(ErrorKind::BadNorm,
                "|alpha|^2 + |beta|^2 = " + std::to_string(norm2) + " is not 1");
  }
  const Real scale = Real(1) / std::sqrt(norm2);
  return InitialState<Real>(alpha * scale, beta * scale);
}

template <typename Real>
InitialState<Real> make_initial(Real alpha, Real beta) {
  return make_initial<Real>(Complex<Real>(alpha), Complex<Real>(beta));
}

/// Two-qubit density matrix: 4x4, Hermitian, unit trace, positive
/// semidefinite (all within 1e-10). Construction validates.
template <typename Real>
class DensityMatrix {
 public:
  explicit DensityMatrix(CMatrix<Real> m, Real tol = kHermitianTol<Real>)
      : m_(std::move(m)) {
    if (m_.rows() != 4 || m_.cols() != 4) {
      throw Error(ErrorKind::Shape, "density matrix must be 4x4");
    }
    if (!all_finite<Real>(m_)) throw Error(ErrorKind::NotDensity, "non-finite entry");
    const Real defect = hermiticity_defect<Real>(m_);
    if (defect > tol) {
      throw Error(ErrorKind::NotHermitian, "max |m - m^dagger| = " + std::to_string(defect));
    }
    const Complex<Real> tr = m_.trace();
    if (std::abs(tr - Complex<Real>(1)) > tol) {
      throw Error(ErrorKind::NotDensity, "trace = " + std::to_string(tr.real()) + " + " +
                                             std::to_string(tr.imag()) + "i");
    }
    const auto es = hermitian_eigensystem<Real>(m_, tol);
    if (es.values(3) < -tol) {
      throw Error(ErrorKind::NotPsd, "smallest eigenvalue " + std::to_string(es.values(3)));
    }
  }

  const CMatrix<Real>& matrix() const noexcept { return m_; }
  const Complex<Real>& operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

 private:
  CMatrix<Real> m_;
};

/// The entries of an X-shaped state that this model can populate: the four
/// populations and the |00><11| coherence. 1-based names follow the usual
/// r_ij convention.
template <typename Real>
struct XStateElements {
  Real r11 = 0;
  Real r22 = 0;
  Real r33 = 0;
  Real r44 = 0;
  Complex<Real> r14{};

  CMatrix<Real> to_matrix() const {
    CMatrix<Real> m = CMatrix<Real>::Zero(4, 4);
    m(0, 0) = r11;
    m(1, 1) = r22;
    m(2, 2) = r33;
    m(3, 3) = r44;
    m(0, 3) = r14;
    m(3, 0) = std::conj(r14);
    return m;
  }

  /// Largest entrywise difference from `other`.
  Real max_abs_diff(const XStateElements& other) const {
    using std::abs;
    return std::max({abs(r11 - other.r11), abs(r22 - other.r22), abs(r33 - other.r33),
                     abs(r44 - other.r44), abs(r14 - other.r14)});
  }
};

template <typename Real>
DensityMatrix<Real> to_density(const InitialState<Real>& s) {
  CMatrix<Real> psi = CMatrix<Real>::Zero(4, 1);
  psi(0, 0) = s.alpha();
  psi(3, 0) = s.beta();
  return DensityMatrix<Real>(psi * psi.adjoint());
}

/// Reads the X-pattern entries; every other entry must be within `tol` of 0.
template <typename Real>
XStateElements<Real> extract_x_elements(const DensityMatrix<Real>& d,
                                        Real tol = kHermitianTol<Real>) {
  const auto& m = d.matrix();
  for (Eigen::Index i = 0; i < 4; ++i) {
    for (Eigen::Index j = 0; j < 4; ++j) {
      const bool on_pattern = i == j || (i == 0 && j == 3) || (i == 3 && j == 0);
      if (!on_pattern && std::abs(m(i, j)) > tol) {
        throw Error(ErrorKind::NotXState, "entry (" + std::to_string(i + 1) + "," +
                                              std::to_string(j + 1) + ") = " +
                                              std::to_string(std::abs(m(i, j))));
      }
    }
  }
  XStateElements<Real> x;
  x.r11 = m(0, 0).real();
  x.r22 = m(1, 1).real();
  x.r33 = m(2, 2).real();
  x.r44 = m(3, 3).real();
  x.r14 = m(0, 3);
  return x;
}

}  // namespace cadwm
