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

#include "eofkit/eof.hpp"

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

DensityMatrix classical_mixture() {
  CMatrix m = CMatrix::Zero(4, 4);
  m(0, 0) = m(3, 3) = 0.5;
  return DensityMatrix({2, 2}, m);
}

EofOptions quick(std::size_t restarts = 6) {
  EofOptions o;
  o.restarts = restarts;
  return o;
}

}  // namespace

TEST(eof, binary_entropy) {
  EXPECT_EQ(binary_entropy(0.0), 0.0);
  EXPECT_EQ(binary_entropy(1.0), 0.0);
  EXPECT_NEAR(binary_entropy(0.5), 1.0, 1e-15);
  EXPECT_NEAR(binary_entropy(0.25), 0.8112781244591328, 1e-14);
}

TEST(eof, auto_ensemble_size) {
  EXPECT_EQ(auto_ensemble_size(1), 1u);
  EXPECT_EQ(auto_ensemble_size(3), 9u);
  EXPECT_EQ(auto_ensemble_size(4), 16u);
  EXPECT_EQ(auto_ensemble_size(9), 16u);
  EXPECT_EQ(auto_ensemble_size(20), 20u);
}

TEST(eof, eof_pure_examples) {
  EXPECT_NEAR(eof_pure(bell(), Cut({0}, 2)), 1.0, 1e-14);
  EXPECT_NEAR(eof_pure(PureState::basis({2, 3}, 4), Cut({0}, 2)), 0.0, 1e-14);
  RMatrix l(2, 2);
  l.setConstant(0.25);
  EXPECT_NEAR(eof_pure(case1_state(Case1Spec{l}), Cut({0, 2}, 4)), 2.0, 1e-12);
  EXPECT_THROW(eof_pure(bell(), Cut({0}, 3)), ArgumentError);
}

TEST(eof, ensemble_average_examples) {
  EXPECT_NEAR(ensemble_average_entanglement(Ensemble({{1.0, bell()}}), Cut({0}, 2)), 1.0, 1e-14);
  const Ensemble prod({{0.3, PureState::basis({2, 2}, 0)}, {0.7, PureState::basis({2, 2}, 3)}});
  EXPECT_NEAR(ensemble_average_entanglement(prod, Cut({0}, 2)), 0.0, 1e-14);
  const Ensemble singlet = eigen_ensemble(werner_state(2, -1.0));
  ASSERT_EQ(singlet.size(), 1u);
  EXPECT_NEAR(ensemble_average_entanglement(singlet, Cut({0}, 2)), 1.0, 1e-12);
}

TEST(eof, wootters_examples) {
  EXPECT_NEAR(eof_wootters_2q(projector(bell())), 1.0, 1e-12);
  EXPECT_NEAR(concurrence_2q(projector(bell())), 1.0, 1e-12);
  EXPECT_NEAR(eof_wootters_2q(maximally_mixed({2, 2})), 0.0, 1e-15);
  EXPECT_NEAR(eof_wootters_2q(werner_state(2, werner_phi_from_singlet_weight(0.9))), 0.78935, 5e-5);
  EXPECT_NEAR(eof_wootters_2q(werner_state(2, -1.0)), 1.0, 1e-12);
  EXPECT_NEAR(eof_wootters_2q(werner_state(2, 1.0 / 3.0)), 0.0, 1e-15);
  EXPECT_NEAR(eof_wootters_2q(werner_state(2, 0.0)), 0.0, 1e-15);
  EXPECT_THROW(eof_wootters_2q(maximally_mixed({4})), ShapeError);
  EXPECT_THROW(eof_wootters_2q(maximally_mixed({2, 3})), ShapeError);
}

TEST(eof, wootters_matches_pure_entropy) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const PureState psi = random_pure({2, 2}, s);
    EXPECT_NEAR(eof_wootters_2q(projector(psi)), eof_pure(psi, Cut({0}, 2)), 1e-9);
  }
}

TEST(eof, weighted_helpers) {
  const DensityMatrix r = random_density(Dims{2, 2}, 3, 4);
  EXPECT_NEAR(weighted_wootters(0.3 * r.matrix()), 0.3 * eof_wootters_2q(r), 1e-12);
  const DensityMatrix q = random_density(3, 3, 5);
  EXPECT_NEAR(weighted_entropy(0.4 * q.matrix()), 0.4 * von_neumann_entropy(q), 1e-12);
  const DensityMatrix t = random_density(2, 2, 6);
  EXPECT_NEAR(weighted_entropy(0.7 * t.matrix()), 0.7 * von_neumann_entropy(t), 1e-12);
  EXPECT_EQ(weighted_entropy(CMatrix::Zero(2, 2)), 0.0);
}

TEST(eof, generator_matches_expm) {
  const std::size_t m = 4;
  const CMatrix u0 = random_unitary(m, 3);
  for (std::size_t p = 0; p < m * m; ++p) {
    std::vector<double> x(m * m, 0.0);
    x[p] = 0.37;
    const CMatrix want = u0 * expm_antihermitian(detail::hermitian_from_parameters(x, m));
    CMatrix got = u0;
    detail::apply_generator(got, p, 0.37);
    EXPECT_LT(frobenius_distance(got, want), 1e-12) << "generator " << p;
  }
  CMatrix u = identity(2);
  EXPECT_THROW(detail::apply_generator(u, 4, 0.1), ArgumentError);
}

TEST(eof, hermitian_from_parameters_layout) {
  const std::vector<double> x{1, 2, 3, 4, 5, 6, 7, 8, 9};
  const CMatrix h = detail::hermitian_from_parameters(x, 3);
  EXPECT_EQ(h(0, 0), Complex(1));
  EXPECT_EQ(h(2, 2), Complex(3));
  EXPECT_EQ(h(0, 1), Complex(4, 5));
  EXPECT_EQ(h(0, 2), Complex(6, 7));
  EXPECT_EQ(h(1, 2), Complex(8, 9));
  EXPECT_EQ(h(2, 1), Complex(8, -9));
}

TEST(eof, minimize_pure_rank_one) {
  for (std::uint64_t s = 0; s < 5; ++s) {
    const PureState psi = random_pure({2, 3}, s);
    const EofEstimate e = eof_minimize(projector(psi), Cut({0}, 2), quick(2));
    EXPECT_NEAR(e.value, eof_pure(psi, Cut({0}, 2)), 1e-9);
  }
}

TEST(eof, minimize_classical_mixture) {
  EXPECT_NEAR(eof_minimize(classical_mixture(), Cut({0}, 2), quick()).value, 0.0, 1e-6);
}

TEST(eof, minimize_werner_matches_wootters) {
  const DensityMatrix w = werner_state(2, werner_phi_from_singlet_weight(0.9));
  const EofEstimate e = eof_minimize(w, Cut({0}, 2), quick());
  EXPECT_NEAR(e.value, eof_wootters_2q(w), 1e-3);
  EXPECT_LT(frobenius_distance(mix(e.best_ensemble).matrix(), w.matrix()), 1e-8);
  EXPECT_NEAR(ensemble_average_entanglement(e.best_ensemble, Cut({0}, 2)), e.value, 1e-12);
  EXPECT_EQ(e.restarts_used, 6u);
  EXPECT_EQ(e.traces.size(), 6u);
  EXPECT_EQ(e.ensemble_size, 16u);
}

TEST(eof, minimize_upper_bounds_eigen_ensemble) {
  const DensityMatrix r = random_density(Dims{2, 3}, 3, 12);
  const EofEstimate e = eof_minimize(r, Cut({0}, 2), quick(3));
  EXPECT_LE(e.value, ensemble_average_entanglement(eigen_ensemble(r), Cut({0}, 2)) + 1e-12);
  EXPECT_GE(e.value, 0.0);
}

TEST(eof, minimize_deterministic_across_threads) {
  const DensityMatrix r = random_density(Dims{2, 2}, 4, 21);
  EofOptions one = quick(5);
  EofOptions many = one;
  many.threads = 3;
  const EofEstimate a = eof_minimize(r, Cut({0}, 2), one);
  const EofEstimate b = eof_minimize(r, Cut({0}, 2), many);
  const EofEstimate c = eof_minimize(r, Cut({0}, 2), one);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.value, c.value);
  EXPECT_EQ(a.best_restart, b.best_restart);
  ASSERT_EQ(a.traces.size(), b.traces.size());
  for (std::size_t k = 0; k < a.traces.size(); ++k) EXPECT_EQ(a.traces[k].final_value, b.traces[k].final_value);
}

TEST(eof, minimize_warm_start_is_extra_restart) {
  const DensityMatrix w = werner_state(2, -0.6);
  const Ensemble warm[] = {eigen_ensemble(w)};
  const EofEstimate e = eof_minimize(w, Cut({0}, 2), quick(2), warm);
  EXPECT_EQ(e.restarts_used, 3u);
  EXPECT_TRUE(e.traces.back().warm_start);
}

TEST(eof, minimize_errors) {
  const DensityMatrix r = random_density(Dims{2, 2}, 3, 2);
  EofOptions o = quick();
  o.ensemble_size = 2;
  EXPECT_THROW(eof_minimize(r, Cut({0}, 2), o), ArgumentError);
  o = quick();
  o.restarts = 0;
  EXPECT_THROW(eof_minimize(r, Cut({0}, 2), o), ArgumentError);
  EXPECT_THROW(eof_minimize(r, Cut({0}, 3), quick()), ArgumentError);
}

TEST(eof, nonconvergence_is_not_an_error) {
  EofOptions o = quick(2);
  o.max_iterations = 1;
  const DensityMatrix r = random_density(Dims{2, 2}, 4, 3);
  EofEstimate e = eof_minimize(r, Cut({0}, 2), o);
  EXPECT_GE(e.value, 0.0);
  EXPECT_LE(e.value, ensemble_average_entanglement(eigen_ensemble(r), Cut({0}, 2)) + 1e-12);
}

TEST(eof, custom_cost_matches_entanglement_cost) {
  const DensityMatrix r = random_density(Dims{2, 2}, 2, 7);
  const EntanglementCost cost(r.dims(), Cut({0}, 2));
  const EofEstimate a = minimize_over_ensembles(r, cost, quick(3));
  const EofEstimate b = eof_minimize(r, Cut({0}, 2), quick(3));
  EXPECT_NEAR(a.value, b.value, 1e-12);
}
