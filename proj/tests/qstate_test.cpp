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

#include "eofkit/qstate.hpp"

#include <cmath>

#include "gtest/gtest.h"

#include "eofkit/errors.hpp"
#include "eofkit/statezoo.hpp"

using namespace eofkit;

namespace {

PureState bell() {
  CVector v = CVector::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return PureState({2, 2}, v);
}

CMatrix diag(std::initializer_list<double> d) {
  CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
  Eigen::Index k = 0;
  for (double x : d) m(k, k) = x, ++k;
  return m;
}

}  // namespace

TEST(qstate, density_validation) {
  EXPECT_NO_THROW(DensityMatrix({2}, diag({0.5, 0.5})));
  EXPECT_THROW(DensityMatrix({2}, diag({0.5, 0.6})), NormalizationError);
  EXPECT_THROW(DensityMatrix({2}, diag({1.5, -0.5})), ArgumentError);
  EXPECT_THROW(DensityMatrix({3}, diag({0.5, 0.5})), ShapeError);
  CMatrix a = diag({0.5, 0.5});
  a(0, 1) = 0.1;
  EXPECT_THROW(DensityMatrix({2}, a), SymmetryError);
  a(0, 0) = std::nan("");
  EXPECT_THROW(DensityMatrix({2}, a), ArgumentError);
  EXPECT_THROW(DensityMatrix({0, 2}, diag({0.5, 0.5})), ArgumentError);
}

TEST(qstate, pure_validation) {
  EXPECT_THROW(PureState({2}, CVector::Ones(2)), NormalizationError);
  EXPECT_THROW(PureState({3}, CVector::Ones(2) / std::sqrt(2.0)), ShapeError);
  EXPECT_EQ(PureState::basis({2, 2}, 3).vector()(3), Complex(1.0));
  EXPECT_THROW(PureState::basis({2, 2}, 4), ArgumentError);
}

TEST(qstate, cut_validation) {
  const Cut c({2, 0}, 4);
  EXPECT_EQ(c.left(), (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(c.right(), (std::vector<std::size_t>{1, 3}));
  EXPECT_THROW(Cut({}, 2), ArgumentError);
  EXPECT_THROW(Cut({0, 1}, 2), ArgumentError);
  EXPECT_THROW(Cut({0, 0}, 3), ArgumentError);
  EXPECT_THROW(Cut({5}, 3), ArgumentError);
}

TEST(qstate, partial_trace_examples) {
  const DensityMatrix b = projector(bell());
  EXPECT_LT(frobenius_distance(partial_trace(b, {0}).matrix(), identity(2) * 0.5), 1e-15);
  const DensityMatrix d({2, 2}, diag({0.5, 0, 0, 0.5}));
  EXPECT_LT(frobenius_distance(partial_trace(d, {1}).matrix(), diag({0.5, 0.5})), 1e-15);
  const DensityMatrix r = random_density(2, 2, 1), s = random_density(3, 2, 2);
  EXPECT_LT(frobenius_distance(partial_trace(tensor(r, s), {0}).matrix(), r.matrix()), 1e-14);
  EXPECT_LT(frobenius_distance(partial_trace(tensor(r, s), {1}).matrix(), s.matrix()), 1e-14);
  EXPECT_THROW(partial_trace(b, {}), ArgumentError);
  EXPECT_THROW(partial_trace(b, {2}), ArgumentError);
}

TEST(qstate, partial_trace_subsystem_order) {
  // keep {0, 2} of a three-party product returns the factors in ascending order.
  const DensityMatrix a = random_density(2, 2, 3), b = random_density(3, 2, 4), c = random_density(2, 1, 5);
  const DensityMatrix abc = tensor(tensor(a, b), c);
  EXPECT_LT(frobenius_distance(partial_trace(abc, {2, 0}).matrix(), kron(a.matrix(), c.matrix())), 1e-14);
}

TEST(qstate, entropy_examples) {
  EXPECT_NEAR(von_neumann_entropy(maximally_mixed({4})), 2.0, 1e-14);
  EXPECT_NEAR(von_neumann_entropy(maximally_mixed({3})), std::log2(3.0), 1e-14);
  EXPECT_NEAR(von_neumann_entropy(projector(bell())), 0.0, 1e-14);
  EXPECT_NEAR(von_neumann_entropy(DensityMatrix({3}, diag({0.5, 0.25, 0.25}))), 1.5, 1e-14);
  EXPECT_NEAR(matrix_entropy(diag({0.5, 0.5, 0.0})), 1.0, 1e-14);
}

TEST(qstate, shannon_examples) {
  const double h1[] = {0.5, 0.5}, h2[] = {1.0, 0.0}, h3[] = {0.5, 0.25, 0.25}, bad[] = {0.5, 0.4};
  EXPECT_NEAR(shannon_entropy(h1), 1.0, 1e-15);
  EXPECT_NEAR(shannon_entropy(h2), 0.0, 1e-15);
  EXPECT_NEAR(shannon_entropy(h3), 1.5, 1e-15);
  EXPECT_THROW(shannon_entropy(bad), NormalizationError);
}

TEST(qstate, schmidt_examples) {
  const SchmidtDecomposition b = schmidt(bell(), Cut({0}, 2));
  ASSERT_EQ(b.coeffs.size(), 2);
  EXPECT_NEAR(b.coeffs(0), 1.0 / std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(b.coeffs(1), 1.0 / std::sqrt(2.0), 1e-14);

  const SchmidtDecomposition p = schmidt(PureState::basis({2, 2}, 1), Cut({0}, 2));
  EXPECT_NEAR(p.coeffs(0), 1.0, 1e-14);
  for (Eigen::Index k = 1; k < p.coeffs.size(); ++k) EXPECT_NEAR(p.coeffs(k), 0.0, 1e-14);

  CVector v = CVector::Zero(4);
  v(0) = std::sqrt(0.9);
  v(3) = std::sqrt(0.1);
  const SchmidtDecomposition s = schmidt(PureState({2, 2}, v), Cut({1}, 2));
  EXPECT_NEAR(s.coeffs(0), std::sqrt(0.9), 1e-14);
  EXPECT_NEAR(s.coeffs(1), std::sqrt(0.1), 1e-14);
  EXPECT_THROW(schmidt(bell(), Cut({0}, 3)), ArgumentError);
}

TEST(qstate, schmidt_properties_random) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const PureState psi = random_pure({2, 3, 2}, seed);
    const Cut cut({0, 2}, 3);
    const SchmidtDecomposition s = schmidt(psi, cut);
    EXPECT_NEAR(s.coeffs.squaredNorm(), 1.0, 1e-9);
    EXPECT_LT((s.reconstruct().vector() - psi.vector()).norm(), 1e-9);
    RVector sq = s.coeffs.cwiseAbs2();
    std::vector<double> spec(sq.data(), sq.data() + sq.size());
    EXPECT_NEAR(entropy_from_spectrum(spec), von_neumann_entropy(reduced_state(psi, {0, 2})), 1e-9);
    EXPECT_NEAR(von_neumann_entropy(reduced_state(psi, {1})), von_neumann_entropy(reduced_state(psi, {0, 2})),
                1e-9);
  }
}

TEST(qstate, reduced_state_examples) {
  EXPECT_LT(frobenius_distance(reduced_state(bell(), {0}).matrix(), identity(2) * 0.5), 1e-15);
  const DensityMatrix r = reduced_state(PureState::basis({2, 2}, 2), {0});
  EXPECT_NEAR(von_neumann_entropy(r), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(r.matrix()(1, 1)), 1.0, 1e-14);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const PureState psi = random_pure({3, 3}, seed);
    const SchmidtDecomposition s = schmidt(psi, Cut({0}, 2));
    RVector sq = s.coeffs.cwiseAbs2();
    std::vector<double> spec(sq.data(), sq.data() + sq.size());
    EXPECT_NEAR(von_neumann_entropy(reduced_state(psi, {0})), entropy_from_spectrum(spec), 1e-9);
  }
}

TEST(qstate, tensor_examples) {
  const DensityMatrix half = maximally_mixed({2});
  const DensityMatrix t = tensor(half, half);
  EXPECT_LT(frobenius_distance(t.matrix(), identity(4) * 0.25), 1e-15);
  EXPECT_NEAR(von_neumann_entropy(t), 2.0, 1e-14);
  EXPECT_EQ(t.dims(), (Dims{2, 2}));
  EXPECT_NEAR(von_neumann_entropy(projector(tensor(bell(), PureState::basis({2}, 0)))), 0.0, 1e-14);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const DensityMatrix a = random_density(Dims{2, 2}, 3, seed), b = random_density(Dims{2, 2}, 4, seed + 100);
    EXPECT_NEAR(von_neumann_entropy(tensor(a, b)), von_neumann_entropy(a) + von_neumann_entropy(b), 1e-9);
  }
}

TEST(qstate, permute_subsystems) {
  const PureState a = random_pure({2}, 1), b = random_pure({3}, 2);
  const PureState ab = tensor(a, b), ba = tensor(b, a);
  EXPECT_LT((permute_subsystems(ab, {1, 0}).vector() - ba.vector()).norm(), 1e-14);
  EXPECT_EQ(permute_subsystems(ab, {1, 0}).dims(), (Dims{3, 2}));
  const DensityMatrix r = tensor(random_density(2, 2, 3), random_density(3, 2, 4));
  const DensityMatrix p = permute_subsystems(r, {1, 0});
  EXPECT_LT(frobenius_distance(partial_trace(p, {1}).matrix(), partial_trace(r, {0}).matrix()), 1e-14);
  EXPECT_THROW(permute_subsystems(ab, {0, 0}), ArgumentError);
}
