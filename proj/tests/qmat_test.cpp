// Copyright 2026 The eofkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "eofkit/qmat.hpp"

#include <cmath>

#include "gtest/gtest.h"

#include "eofkit/errors.hpp"
#include "eofkit/random.hpp"

using namespace eofkit;

namespace {

CMatrix random_hermitian(std::size_t n, std::uint64_t seed) {
  GaussianStream rng(seed);
  const CMatrix g = rng.complex_gaussian(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  return (g + g.adjoint()) * 0.5;
}

CMatrix diag(std::initializer_list<double> d) {
  CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
  Eigen::Index k = 0;
  for (double x : d) m(k, k) = x, ++k;
  return m;
}

}  // namespace

TEST(qmat, kron_identity) {
  EXPECT_LT(frobenius_distance(kron(identity(2), identity(2)), identity(4)), 1e-15);
}

TEST(qmat, kron_diagonal) {
  EXPECT_LT(frobenius_distance(kron(diag({1, 0}), diag({0, 1})), diag({0, 1, 0, 0})), 1e-15);
}

TEST(qmat, kron_mixed_product) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    GaussianStream rng(s);
    const CMatrix a = rng.complex_gaussian(2, 2), b = rng.complex_gaussian(2, 2);
    const CMatrix x = rng.complex_gaussian(2, 1), y = rng.complex_gaussian(2, 1);
    EXPECT_LT(frobenius_distance(kron(a, b) * kron(x, y), kron(a * x, b * y)), 1e-12);
  }
}

TEST(qmat, kron_size_limit) {
  EXPECT_THROW(kron(identity(65), identity(64)), SizeError);
  EXPECT_THROW(kron(identity(3), identity(3), 8), SizeError);
  EXPECT_NO_THROW(kron(identity(64), identity(64)));
}

TEST(qmat, dagger) {
  EXPECT_LT(frobenius_distance(dagger(identity(3)), identity(3)), 1e-15);
  GaussianStream rng(3);
  const CMatrix a = rng.complex_gaussian(3, 4);
  EXPECT_LT(frobenius_distance(dagger(dagger(a)), a), 1e-15);
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 1) = Complex(0, 1);
  CMatrix want = CMatrix::Zero(2, 2);
  want(1, 0) = Complex(0, -1);
  EXPECT_LT(frobenius_distance(dagger(m), want), 1e-15);
}

TEST(qmat, herm_eig_diagonal) {
  const HermEig e = herm_eig(diag({0.25, 0.5, 0.25}));
  EXPECT_NEAR(e.eigenvalues(0), 0.5, 1e-15);
  EXPECT_NEAR(e.eigenvalues(1), 0.25, 1e-15);
  EXPECT_NEAR(e.eigenvalues(2), 0.25, 1e-15);
  // tied eigenvalues: ordered by the index of the leading component
  EXPECT_NEAR(std::abs(e.eigenvectors(1, 0)), 1.0, 1e-12);
  EXPECT_NEAR(std::abs(e.eigenvectors(0, 1)), 1.0, 1e-12);
  EXPECT_NEAR(std::abs(e.eigenvectors(2, 2)), 1.0, 1e-12);
}

TEST(qmat, herm_eig_pauli_x) {
  CMatrix x = CMatrix::Zero(2, 2);
  x(0, 1) = x(1, 0) = 1.0;
  const HermEig e = herm_eig(x);
  EXPECT_NEAR(e.eigenvalues(0), 1.0, 1e-14);
  EXPECT_NEAR(e.eigenvalues(1), -1.0, 1e-14);
}

TEST(qmat, herm_eig_reconstruction_and_phase) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const CMatrix h = random_hermitian(4, s);
    const HermEig e = herm_eig(h);
    const CMatrix& v = e.eigenvectors;
    EXPECT_LT(isometry_defect(v), 1e-10);
    const CMatrix back = v * e.eigenvalues.cast<Complex>().asDiagonal() * v.adjoint();
    EXPECT_LT(frobenius_distance(back, h), 1e-10);
    for (Eigen::Index k = 0; k + 1 < e.eigenvalues.size(); ++k) {
      EXPECT_GE(e.eigenvalues(k), e.eigenvalues(k + 1));
    }
    for (Eigen::Index c = 0; c < v.cols(); ++c) {
      Eigen::Index lead = 0;
      while (std::abs(v(lead, c)) <= 1e-8) ++lead;
      EXPECT_NEAR(v(lead, c).imag(), 0.0, 1e-14);
      EXPECT_GT(v(lead, c).real(), 0.0);
    }
  }
}

TEST(qmat, herm_eig_deterministic) {
  const CMatrix h = random_hermitian(5, 9);
  const HermEig a = herm_eig(h), b = herm_eig(h);
  EXPECT_EQ(a.eigenvalues, b.eigenvalues);
  EXPECT_EQ(a.eigenvectors, b.eigenvectors);
}

TEST(qmat, herm_eig_errors) {
  EXPECT_THROW(herm_eig(CMatrix::Zero(2, 3)), ShapeError);
  CMatrix a = CMatrix::Zero(2, 2);
  a(0, 1) = 1.0;
  EXPECT_THROW(herm_eig(a), SymmetryError);
  EXPECT_THROW(herm_eigenvalues(a), SymmetryError);
  a(1, 0) = 1.0 + 1e-11;  // inside tolerance
  EXPECT_NO_THROW(herm_eig(a));
}

TEST(qmat, svd_cases) {
  const Svd id = svd(identity(3));
  for (Eigen::Index k = 0; k < 3; ++k) EXPECT_NEAR(id.s(k), 1.0, 1e-15);

  GaussianStream rng(1);
  CVector u = rng.complex_gaussian(3, 1).col(0), v = rng.complex_gaussian(3, 1).col(0);
  u.normalize();
  v.normalize();
  const Svd r1 = svd(u * v.adjoint());
  EXPECT_NEAR(r1.s(0), 1.0, 1e-14);
  EXPECT_NEAR(r1.s(1), 0.0, 1e-14);

  const CMatrix a = rng.complex_gaussian(3, 2);
  const Svd s = svd(a);
  const RVector ev = herm_eigenvalues(a.adjoint() * a);
  for (Eigen::Index k = 0; k < 2; ++k) EXPECT_NEAR(s.s(k), std::sqrt(ev(k)), 1e-10);
  EXPECT_LT(frobenius_distance(s.u * s.s.cast<Complex>().asDiagonal() * s.v.adjoint(), a), 1e-12);
}

TEST(qmat, expm_cases) {
  EXPECT_LT(frobenius_distance(expm_antihermitian(CMatrix::Zero(3, 3)), identity(3)), 1e-15);
  const CMatrix w = expm_antihermitian(M_PI * diag({1, 0}));
  EXPECT_LT(frobenius_distance(w, diag({-1, 1})), 1e-14);
  for (std::uint64_t s = 0; s < 10; ++s) {
    EXPECT_LT(isometry_defect(expm_antihermitian(random_hermitian(4, s))), 1e-9);
  }
  CMatrix bad = CMatrix::Zero(2, 2);
  bad(0, 1) = 1.0;
  EXPECT_THROW(expm_antihermitian(bad), SymmetryError);
}

TEST(qmat, expm_matches_series) {
  const CMatrix h = random_hermitian(3, 4) * 0.1;
  CMatrix term = identity(3), sum = identity(3);
  for (int k = 1; k < 30; ++k) {
    term = term * (Complex(0, 1) * h) / static_cast<double>(k);
    sum += term;
  }
  EXPECT_LT(frobenius_distance(expm_antihermitian(h), sum), 1e-13);
}
