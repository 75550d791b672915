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

// eof.hpp - entanglement of formation estimators.
//
// E_f(rho) = min over ensembles {p_i, psi_i} of rho of sum_i p_i S(Tr_right psi_i).
//
// eof_minimize searches the ensemble manifold through HJW isometries. An
// m x m unitary is written as U = U_base * exp(i H(x)), where H(x) is the
// Hermitian matrix built from m^2 real parameters (see
// detail::hermitian_from_parameters); the first rank(rho) columns of U are the
// isometry. Gradients are central finite differences in x taken at x = 0,
// and the base point moves to the accepted iterate after every BFGS step.
// Only generators that touch one of the first rank(rho) columns move the
// isometry, so the others are held at zero.
//
// The value returned is always the average entanglement of an explicit
// ensemble of rho, so it is an upper bound on the true EoF.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "eofkit/ensembles.hpp"

namespace eofkit {

struct EofOptions {
  std::size_t restarts = 20;
  std::size_t max_iterations = 500;
  std::optional<std::size_t> ensemble_size;  // empty = auto
  double gradient_step = 1e-5;
  double convergence_tol = 1e-7;
  std::uint64_t seed = 0;
  std::size_t threads = 1;  // 0 = hardware concurrency
};

struct RestartTrace {
  std::size_t index = 0;
  bool warm_start = false;
  double initial_value = 0.0;
  double final_value = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

struct EofEstimate {
  double value = 0.0;
  Ensemble best_ensemble;
  bool converged = false;
  std::size_t restarts_used = 0;
  std::size_t iterations = 0;
  std::size_t ensemble_size = 0;
  std::size_t best_restart = 0;
  std::vector<RestartTrace> traces;
};

/// max(rank, min(rank^2, 16)).
std::size_t auto_ensemble_size(std::size_t rank);

double binary_entropy(double x);

/// Entropy of the left-block reduction of psi.
double eof_pure(const PureState& psi, const Cut& cut);

/// sum_i p_i S(Tr_right |psi_i><psi_i|); no minimization.
double ensemble_average_entanglement(const Ensemble& e, const Cut& cut);

/// Two-qubit concurrence from the spin-flipped spectrum. ShapeError unless dims == (2, 2).
double concurrence_2q(const DensityMatrix& rho);

/// Closed-form two-qubit EoF: h2((1 + sqrt(1 - C^2)) / 2).
double eof_wootters_2q(const DensityMatrix& rho);

/// p * E_W(sigma / p) for an unnormalized two-qubit operator sigma of trace p.
double weighted_wootters(const CMatrix& sigma);

/// p * S(sigma / p) for an unnormalized Hermitian PSD sigma of trace p.
/// Normalized eigenvalues at or below kEntropyFloor contribute zero.
double weighted_entropy(const CMatrix& sigma);

/// Contribution of one ensemble member, given sqrt(p_i) |psi_i>. Must be
/// safe to call concurrently.
using MemberCost = std::function<double(const CVector& unnormalized_member)>;

/// Member cost p * S(Tr_right |psi><psi| / p) for a fixed cut.
class EntanglementCost {
 public:
  EntanglementCost(const Dims& dims, const Cut& cut);
  double operator()(const CVector& member) const;

 private:
  SubsystemSplit split_;
};

/// Minimizes sum_i cost(sqrt(p_i) psi_i) over HJW ensembles of rho. Restart 0
/// starts at the eigen-ensemble, restarts 1..restarts-1 from seeded random
/// unitaries, and each warm-start ensemble adds one more restart.
EofEstimate minimize_over_ensembles(const DensityMatrix& rho, const MemberCost& cost,
                                    const EofOptions& opts = {},
                                    std::span<const Ensemble> warm_starts = {});

EofEstimate eof_minimize(const DensityMatrix& rho, const Cut& cut, const EofOptions& opts = {},
                         std::span<const Ensemble> warm_starts = {});

namespace detail {

/// Hermitian m x m matrix from m^2 reals: x[a] is H(a,a) for a < m; then for
/// each pair a < b in row-major order, two entries give Re and Im of H(a,b).
CMatrix hermitian_from_parameters(std::span<const double> x, std::size_t m);

/// U <- U * exp(i theta G_p), G_p the unit generator of parameter p.
void apply_generator(CMatrix& u, std::size_t p, double theta);

}  // namespace detail

}  // namespace eofkit
