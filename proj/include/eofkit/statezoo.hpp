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

// statezoo.hpp - generators for the state families under study.
//
// Schmidt-correlated four-party states (case I):
//   |Psi> = sum_{a,b} sqrt(lambda_ab) |a>_A |a>_B |b>_A' |b>_B'
// on subsystems ordered (A, B, A', B').
//
// Block-diagonal factors (case II): rho_AB = sum_J w_J |J><J| where each
// block state |J> lives on its own range of A basis states and its own range
// of B basis states, ranges pairwise disjoint on each side.
//
// Werner states on d (x) d, parameterized by the swap expectation
// phi = Tr(rho F):
//   rho = ((d - phi) I + (d phi - 1) F) / (d (d^2 - 1)).
// For d = 2 the mixture p |singlet><singlet| + (1 - p) I/4 has
// phi = (1 - 3p) / 2; see werner_phi_from_singlet_weight.

#pragma once

#include <cstdint>
#include <vector>

#include "eofkit/ensembles.hpp"

namespace eofkit {

struct Case1Spec {
  RMatrix lambda;  // rows index A (and B), cols index A' (and B')

  /// Throws ArgumentError for negative entries, empty shape or entries that
  /// do not sum to 1 within 1e-9.
  void validate() const;
  /// lambda_a = sum_b lambda_ab
  RVector row_marginals() const { return lambda.rowwise().sum(); }
  /// lambda_b = sum_a lambda_ab
  RVector col_marginals() const { return lambda.colwise().sum().transpose(); }
};

struct LocalRange {
  std::size_t begin;
  std::size_t end;  // exclusive
};

struct Case2Block {
  double weight;
  PureState state;  // on (dim_a, dim_b)
  LocalRange a_range;
  LocalRange b_range;
};

struct Case2Spec {
  std::size_t dim_a = 0;
  std::size_t dim_b = 0;
  std::vector<Case2Block> blocks;

  /// Weights must sum to 1; ranges must lie inside the local dimensions and
  /// be pairwise disjoint on each side (ConstraintError otherwise); each
  /// block state must vanish outside its ranges (ConstraintError).
  void validate() const;
};

PureState case1_state(const Case1Spec& spec);

/// rho_A'B' = sum_a lambda_a |Psi^a><Psi^a| with
/// |Psi^a> = lambda_a^{-1/2} sum_b sqrt(lambda_ab) |b b>; zero rows skipped.
Ensemble case1_primed_decomposition(const Case1Spec& spec);

/// rho_AB = sum_b lambda_b |Psi^b><Psi^b| with
/// |Psi^b> = lambda_b^{-1/2} sum_a sqrt(lambda_ab) |a a>; zero columns skipped.
Ensemble case1_unprimed_decomposition(const Case1Spec& spec);

DensityMatrix case2_factor(const Case2Spec& spec);

/// Blocks as an explicit spectral decomposition (values = weights).
EigenBasis case2_basis(const Case2Spec& spec);

/// lambda |00><00| + (1 - lambda) |Phi><Phi|, |Phi> = (|11> + |22>)/sqrt(2), on 3 (x) 3.
Case2Spec case2_example(double lambda);

DensityMatrix werner_state(std::size_t d, double phi);

/// phi of p |singlet><singlet| + (1 - p) I/4 (two qubits).
double werner_phi_from_singlet_weight(double p);

/// Swap operator on d (x) d.
CMatrix swap_operator(std::size_t d);

/// G G^dagger / Tr(G G^dagger), G a d x rank complex Gaussian matrix.
DensityMatrix random_density(std::size_t d, std::size_t rank, std::uint64_t seed);
DensityMatrix random_density(const Dims& dims, std::size_t rank, std::uint64_t seed);

PureState random_pure(const Dims& dims, std::uint64_t seed);

/// Column orthonormalization (QR with R's diagonal made positive) of an
/// m x n complex Gaussian matrix.
Isometry random_isometry(std::size_t m, std::size_t n, std::uint64_t seed);

CMatrix random_unitary(std::size_t d, std::uint64_t seed);

}  // namespace eofkit
