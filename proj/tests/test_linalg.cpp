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

#include <catch_amalgamated.hpp>

#include <random>

#include "cadwm/linalg.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace cadwm;
using Catch::Approx;
using oracle::cd;
using oracle::Mat;

namespace {

Mat random_matrix(std::mt19937& rng, int n) {
  std::normal_distribution<double> g;
  Mat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = cd(g(rng), g(rng));
  return m;
}

Mat random_hermitian(std::mt19937& rng, int n) {
  const Mat b = random_matrix(rng, n);
  return (b + b.adjoint()) * 0.5;
}

}  // namespace

TEST_CASE("multiply", "[linalg]") {
  std::mt19937 rng(7);
  const Mat m = random_matrix(rng, 2);
  CHECK(oracle::max_abs(multiply<double>(identity<double>(2), m), m) == 0.0);

  Mat e1 = Mat::Zero(2, 2);
  e1(0, 1) = 1.0;
  CHECK(multiply<double>(e1, e1).cwiseAbs().maxCoeff() == 0.0);

  const double g = 0.3;
  Mat a1 = Mat::Zero(4, 4);
  a1(0, 3) = std::sqrt(g);
  CHECK(oracle::max_abs(multiply<double>(a1, a1.transpose()), oracle::diag({g, 0, 0, 0})) < 1e-15);

  CHECK(error_kind([] { multiply<double>(Mat::Zero(2, 3), Mat::Zero(2, 3)); }) == ErrorKind::Shape);
}

TEST_CASE("adjoint", "[linalg]") {
  const Mat d = oracle::diag({1, -2, 3});
  CHECK(oracle::max_abs(adjoint<double>(d), d) == 0.0);

  Mat m = Mat::Zero(2, 2);
  m(0, 1) = cd(0, 1);
  Mat expected = Mat::Zero(2, 2);
  expected(1, 0) = cd(0, -1);
  CHECK(oracle::max_abs(adjoint<double>(m), expected) == 0.0);

  std::mt19937 rng(11);
  const Mat r = random_matrix(rng, 4);
  CHECK(oracle::max_abs(adjoint<double>(adjoint<double>(r)), r) == 0.0);
}

TEST_CASE("tensor", "[linalg]") {
  CHECK(oracle::max_abs(tensor<double>(identity<double>(2), identity<double>(2)), identity<double>(4)) == 0.0);

  const double g = 0.36;
  const Mat e0 = oracle::diag({1, std::sqrt(1 - g)});
  CHECK(oracle::max_abs(tensor<double>(e0, e0), oracle::diag({1, 0.8, 0.8, 0.64})) < 1e-15);

  Mat y(2, 2);
  y << 0, cd(0, -1), cd(0, 1), 0;
  Mat yy = Mat::Zero(4, 4);
  yy(0, 3) = -1;
  yy(1, 2) = 1;
  yy(2, 1) = 1;
  yy(3, 0) = -1;
  CHECK(oracle::max_abs(tensor<double>(y, y), yy) == 0.0);

  std::mt19937 rng(3);
  const Mat a = random_matrix(rng, 2);
  const Mat b = random_matrix(rng, 3);
  CHECK(oracle::max_abs(tensor<double>(a, b), oracle::kron(a, b)) == 0.0);
}

TEST_CASE("eigensystem on small known spectra", "[linalg]") {
  auto es = hermitian_eigensystem<double>(oracle::diag({3, 1, 2}));
  CHECK(es.values(0) == 3.0);
  CHECK(es.values(1) == 2.0);
  CHECK(es.values(2) == 1.0);

  Mat x(2, 2);
  x << 0, 1, 1, 0;
  es = hermitian_eigensystem<double>(x);
  CHECK(es.values(0) == Approx(1.0).margin(1e-15));
  CHECK(es.values(1) == Approx(-1.0).margin(1e-15));
}

TEST_CASE("eigensystem matches an independent solver", "[linalg]") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 3;
    const Mat h = random_hermitian(rng, n);
    const auto es = hermitian_eigensystem<double>(h);
    const Eigen::VectorXd ref = oracle::eigenvalues_desc(h);
    for (int k = 0; k < n; ++k) CHECK(es.values(k) == Approx(ref(k)).margin(1e-12));

    // Reconstruction and orthonormality.
    const Mat rebuilt = es.vectors * es.values.cast<cd>().asDiagonal() * es.vectors.adjoint();
    CHECK(oracle::max_abs(rebuilt, h) < 1e-12);
    CHECK(oracle::max_abs(es.vectors.adjoint() * es.vectors, Mat::Identity(n, n)) < 1e-12);
    CHECK(es.sweeps <= 100);
  }
}

TEST_CASE("eigensystem on degenerate and diagonal input", "[linalg]") {
  const auto es = hermitian_eigensystem<double>(identity<double>(4));
  CHECK(es.sweeps == 0);
  for (int k = 0; k < 4; ++k) CHECK(es.values(k) == 1.0);

  Mat m = oracle::diag({0.5, 0.5, 0.25, 0.25});
  m(0, 3) = cd(0.0, 0.25);
  m(3, 0) = cd(0.0, -0.25);
  const auto e2 = hermitian_eigensystem<double>(m);
  const Eigen::VectorXd ref = oracle::eigenvalues_desc(m);
  for (int k = 0; k < 4; ++k) CHECK(e2.values(k) == Approx(ref(k)).margin(1e-14));
}

TEST_CASE("eigensystem rejects non-Hermitian input", "[linalg]") {
  Mat m = Mat::Zero(2, 2);
  m(0, 1) = 1.0;
  CHECK(error_kind([&] { hermitian_eigensystem<double>(m); }) == ErrorKind::NotHermitian);
}

TEST_CASE("hermitian_sqrt", "[linalg]") {
  CHECK(oracle::max_abs(hermitian_sqrt<double>(identity<double>(4)), identity<double>(4)) < 1e-15);
  CHECK(oracle::max_abs(hermitian_sqrt<double>(oracle::diag({4, 1, 0, 0})), oracle::diag({2, 1, 0, 0})) <
        1e-15);

  std::mt19937 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const Mat b = random_matrix(rng, 4);
    const Mat p = b * b.adjoint();
    const Mat s = hermitian_sqrt<double>(p);
    CHECK(oracle::max_abs(s * s, p) < 1e-10);
    CHECK(oracle::max_abs(s * p, p * s) < 1e-10);
    CHECK(oracle::eigenvalues_desc(s)(3) > -1e-12);
  }

  CHECK(error_kind([] { hermitian_sqrt<double>(oracle::diag({1, -0.5})); }) == ErrorKind::NotPsd);
  // Rounding-level negatives are clamped.
  CHECK(hermitian_sqrt<double>(oracle::diag({1, -1e-13}))(1, 1) == cd(0.0));
}

TEST_CASE("checks on finite values and trace", "[linalg]") {
  Mat m = identity<double>(2);
  CHECK(all_finite<double>(m));
  CHECK(trace<double>(m) == cd(2.0));
  m(1, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_FALSE(all_finite<double>(m));
  CHECK(error_kind([] { max_abs_diff<double>(Mat::Zero(2, 2), Mat::Zero(4, 4)); }) == ErrorKind::Shape);
}
