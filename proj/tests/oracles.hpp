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

// Reference implementations used only by the tests. Nothing here calls into
// the library's channel, measurement or concurrence code.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < out.rows(); ++r) {
    for (Eigen::Index c = 0; c < out.cols(); ++c) {
      out(r, c) = a(r / b.rows(), c / b.cols()) * b(r % b.rows(), c % b.cols());
    }
  }
  return out;
}

inline Mat diag(std::initializer_list<double> d) {
  Mat m = Mat::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
  Eigen::Index i = 0;
  for (double x : d) m(i, i) = x, ++i;
  return m;
}

inline Mat pure(cd alpha, cd beta) {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(4);
  psi(0) = alpha;
  psi(3) = beta;
  return psi * psi.adjoint();
}

inline Mat kraus_sum(const std::vector<Mat>& ops, const Mat& rho) {
  Mat out = Mat::Zero(rho.rows(), rho.cols());
  for (const auto& k : ops) out += k * rho * k.adjoint();
  return out;
}

// Memoryless two-qubit damping written out as 4x4 arrays.
inline std::vector<Mat> ad_pair_ops(double g) {
  Mat e0(2, 2), e1(2, 2);
  e0 << 1, 0, 0, std::sqrt(1 - g);
  e1 << 0, std::sqrt(g), 0, 0;
  return {kron(e0, e0), kron(e0, e1), kron(e1, e0), kron(e1, e1)};
}

inline std::vector<Mat> fcad_ops(double g) {
  Mat a0 = diag({1, 1, 1, std::sqrt(1 - g)});
  Mat a1 = Mat::Zero(4, 4);
  a1(0, 3) = std::sqrt(g);
  return {a0, a1};
}

// (1 - eta) * AD(rho) + eta * FCAD(rho), evaluated as a mixture of maps.
inline Mat cad_map(double g, double eta, const Mat& rho) {
  return (1 - eta) * kraus_sum(ad_pair_ops(g), rho) + eta * kraus_sum(fcad_ops(g), rho);
}

inline Mat wm(double p) {
  const double s = std::sqrt(1 - p);
  return diag({1, s, s, 1 - p});
}

inline Mat qmr(double q) {
  const double s = std::sqrt(1 - q);
  return diag({1 - q, s, s, 1});
}

struct Protocol {
  Mat state;
  double probability;
};

inline Protocol protocol(cd alpha, cd beta, double g, double eta, double p, double q) {
  const Mat m = qmr(q) * cad_map(g, eta, wm(p) * pure(alpha, beta) * wm(p)) * qmr(q);
  const double tr = m.trace().real();
  return {m / tr, tr};
}

inline Mat spin_flip(const Mat& rho) {
  Mat y(2, 2);
  y << 0, cd(0, -1), cd(0, 1), 0;
  const Mat yy = kron(y, y);
  return yy * rho.conjugate() * yy;
}

// Square roots of the eigenvalues of rho * rho~ from a general complex
// eigensolver, descending.
inline std::array<double, 4> wootters_roots(const Mat& rho) {
  Eigen::ComplexEigenSolver<Mat> es(rho * spin_flip(rho));
  std::array<double, 4> r{};
  for (int i = 0; i < 4; ++i) r[i] = std::sqrt(std::max(0.0, es.eigenvalues()(i).real()));
  std::sort(r.begin(), r.end(), std::greater<>());
  return r;
}

inline double wootters(const Mat& rho) {
  const auto r = wootters_roots(rho);
  return std::max(0.0, r[0] - r[1] - r[2] - r[3]);
}

// X state with only r14 as coherence: C = 2 max(0, |r14| - sqrt(r22 r33)).
inline double x_concurrence(const Mat& rho) {
  return 2 * std::max(0.0, std::abs(rho(0, 3)) - std::sqrt(rho(1, 1).real() * rho(2, 2).real()));
}

inline Eigen::VectorXd eigenvalues_desc(const Mat& h) {
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  return es.eigenvalues().reverse();
}

inline double max_abs(const Mat& a, const Mat& b) { return (a - b).cwiseAbs().maxCoeff(); }

template <typename F>
double bisect(F f, double lo, double hi) {
  double flo = f(lo);
  for (int i = 0; i < 200 && hi - lo > 1e-13; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Dense scan followed by ternary refinement around the best sample.
template <typename F>
double argmax(F f, double lo, double hi) {
  constexpr int kPoints = 4001;
  int best = 0;
  double best_v = f(lo);
  for (int i = 1; i < kPoints; ++i) {
    const double v = f(lo + (hi - lo) * i / (kPoints - 1));
    if (v > best_v) best_v = v, best = i;
  }
  const double step = (hi - lo) / (kPoints - 1);
  double a = std::max(lo, lo + (best - 1) * step);
  double b = std::min(hi, lo + (best + 1) * step);
  for (int i = 0; i < 200; ++i) {
    const double m1 = a + (b - a) / 3, m2 = b - (b - a) / 3;
    if (f(m1) < f(m2)) a = m1; else b = m2;
  }
  return 0.5 * (a + b);
}

struct Draw {
  cd alpha, beta;
  double gamma, eta, p, q;
};

class Sampler {
 public:
  explicit Sampler(unsigned seed) : rng_(seed) {}

  Draw next() {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_real_distribution<double> phase(0.0, 2 * M_PI);
    const double a = 0.02 + 0.96 * u(rng_);
    Draw d;
    d.alpha = std::polar(a, phase(rng_));
    d.beta = std::polar(std::sqrt(1 - a * a), phase(rng_));
    d.gamma = u(rng_);
    d.eta = u(rng_);
    d.p = 0.98 * u(rng_);
    d.q = 0.98 * u(rng_);
    return d;
  }

 private:
  std::mt19937 rng_;
};

}  // namespace oracle
