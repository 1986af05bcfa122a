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

// Dense complex linear algebra for the 2x2 and 4x4 operators used by the
// channel and measurement modules. Basis order for two qubits is
// |00>, |01>, |10>, |11> with the first qubit as the slow index.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "cadwm/error.hpp"

namespace cadwm {

template <typename Real>
using Complex = std::complex<Real>;

template <typename Real>
using CMatrix = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Real>
using RVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

using ComplexMatrix = CMatrix<double>;

template <typename Real>
inline constexpr Real kHermitianTol = Real(1e-10);

namespace linalg_detail {

inline std::string dims(Eigen::Index r, Eigen::Index c) {
  return std::to_string(r) + "x" + std::to_string(c);
}

}  // namespace linalg_detail

template <typename Real>
bool all_finite(const CMatrix<Real>& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const auto& z = m.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

template <typename Real>
CMatrix<Real> identity(Eigen::Index n) {
  return CMatrix<Real>::Identity(n, n);
}

template <typename Real>
CMatrix<Real> multiply(const CMatrix<Real>& a, const CMatrix<Real>& b) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorKind::Shape,
                "cannot multiply " + linalg_detail::dims(a.rows(), a.cols()) +
                    " by " + linalg_detail::dims(b.rows(), b.cols()));
  }
  return a * b;
}

template <typename Real>
CMatrix<Real> adjoint(const CMatrix<Real>& a) {
  return a.adjoint();
}

/// Kronecker product; `a` indexes the slow (first-qubit) axis.
template <typename Real>
CMatrix<Real> tensor(const CMatrix<Real>& a, const CMatrix<Real>& b) {
  CMatrix<Real> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

template <typename Real>
Real max_abs_diff(const CMatrix<Real>& a, const CMatrix<Real>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::Shape,
                "cannot compare " + linalg_detail::dims(a.rows(), a.cols()) +
                    " with " + linalg_detail::dims(b.rows(), b.cols()));
  }
  if (a.size() == 0) return Real(0);
  return (a - b).cwiseAbs().maxCoeff();
}

/// Largest entry of |m - m^dagger|.
template <typename Real>
Real hermiticity_defect(const CMatrix<Real>& m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorKind::Shape, "expected a square matrix, got " +
                                      linalg_detail::dims(m.rows(), m.cols()));
  }
  return max_abs_diff<Real>(m, m.adjoint());
}

template <typename Real>
Complex<Real> trace(const CMatrix<Real>& m) {
  return m.trace();
}

template <typename Real>
struct Eigensystem {
  RVector<Real> values;   // descending
  CMatrix<Real> vectors;  // columns pair with `values`
  int sweeps = 0;
};

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations. Eigenvalues are returned in descending order with matching
/// eigenvector columns, so that m = V diag(values) V^dagger.
template <typename Real>
Eigensystem<Real> hermitian_eigensystem(const CMatrix<Real>& m,
                                        Real tol = kHermitianTol<Real>) {
  constexpr int kMaxSweeps = 100;
  const Real rel_tol =
      std::max(Real(1e-14), Real(8) * std::numeric_limits<Real>::epsilon());

  const Real defect = hermiticity_defect<Real>(m);
  if (!(defect <= tol)) {
    throw Error(ErrorKind::NotHermitian,
                "max |m - m^dagger| = " + std::to_string(defect));
  }
  const Eigen::Index n = m.rows();
  CMatrix<Real> a = (m + m.adjoint()) * Real(0.5);
  CMatrix<Real> v = CMatrix<Real>::Identity(n, n);

  auto off_norm = [&] {
    Real s = 0;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
  };
  auto diag_norm = [&] {
    Real s = 0;
    for (Eigen::Index i = 0; i < n; ++i) s += std::norm(a(i, i));
    return std::sqrt(s);
  };

  int sweep = 0;
  while (!(off_norm() <= rel_tol * diag_norm())) {
    if (sweep == kMaxSweeps) {
      throw Error(ErrorKind::NoConvergence,
                  "Jacobi did not converge in " + std::to_string(kMaxSweeps) +
                      " sweeps");
    }
    ++sweep;
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Complex<Real> b = a(p, q);
        const Real mag = std::abs(b);
        if (mag == Real(0)) continue;
        const Complex<Real> phase = b / mag;

        // Real symmetric rotation on the phase-stripped pair.
        const Real theta = (a(q, q).real() - a(p, p).real()) / (Real(2) * mag);
        const Real t = (theta >= Real(0) ? Real(1) : Real(-1)) /
                       (std::abs(theta) + std::sqrt(theta * theta + Real(1)));
        const Real c = Real(1) / std::sqrt(t * t + Real(1));
        const Real s = t * c;

        CMatrix<Real> g = CMatrix<Real>::Identity(n, n);
        g(p, p) = c;
        g(p, q) = s;
        g(q, p) = -s * std::conj(phase);
        g(q, q) = c * std::conj(phase);

        a = (g.adjoint() * a * g).eval();
        v = (v * g).eval();
        a(p, q) = Complex<Real>(0);
        a(q, p) = Complex<Real>(0);
        for (Eigen::Index k = 0; k < n; ++k) a(k, k) = a(k, k).real();
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    return a(i, i).real() > a(j, j).real();
  });

  Eigensystem<Real> out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  out.sweeps = sweep;
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = a(order[k], order[k]).real();
    out.vectors.col(k) = v.col(order[k]);
  }
  return out;
}

/// Principal square root of a positive semidefinite Hermitian matrix.
/// Eigenvalues in [-1e-10, 0) are treated as zero.
template <typename Real>
CMatrix<Real> hermitian_sqrt(const CMatrix<Real>& m,
                             Real tol = kHermitianTol<Real>) {
  const auto es = hermitian_eigensystem<Real>(m, tol);
  const Eigen::Index n = m.rows();
  if (n > 0 && es.values(n - 1) < -tol) {
    throw Error(ErrorKind::NotPsd,
                "smallest eigenvalue " + std::to_string(es.values(n - 1)));
  }
  RVector<Real> root(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    root(k) = std::sqrt(std::max(es.values(k), Real(0)));
  }
  CMatrix<Real> s = es.vectors * root.template cast<Complex<Real>>().asDiagonal() *
                    es.vectors.adjoint();
  return (s + s.adjoint()) * Real(0.5);
}

}  // namespace cadwm
