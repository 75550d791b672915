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

// ensembles.hpp - pure-state ensembles realizing a density matrix.
//
// Every ensemble {p_i, |psi_i>} with sum_i p_i |psi_i><psi_i| = rho arises
// from the spectral decomposition rho = sum_j lambda_j |e_j><e_j| through an
// isometry U (rows = ensemble size, cols = rank):
//
//   sqrt(p_i) |psi_i> = sum_j U_ij sqrt(lambda_j) |e_j>,
//   p_i = sum_j |U_ij|^2 lambda_j.
//
// The spectral basis comes from herm_eig, so an ensemble is a deterministic
// function of (rho, U).

#pragma once

#include <span>
#include <vector>

#include "eofkit/qstate.hpp"

namespace eofkit {

inline constexpr double kRankTol = 1e-10;
inline constexpr double kPruneTol = 1e-12;

struct EnsembleMember {
  double weight;
  PureState state;
};

class Ensemble {
 public:
  /// Weights must be non-negative and sum to 1 within tol; all states must
  /// share dims. Empty ensembles are rejected.
  explicit Ensemble(std::vector<EnsembleMember> members, double tol = kStateTol);

  const std::vector<EnsembleMember>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  const Dims& dims() const { return members_.front().state.dims(); }

 private:
  std::vector<EnsembleMember> members_;
};

/// Matrix with orthonormal columns (rows >= cols).
class Isometry {
 public:
  /// Throws ShapeError when rows < cols, ArgumentError when
  /// ||U^dagger U - I||_F > tol.
  explicit Isometry(CMatrix mat, double tol = kStateTol);

  const CMatrix& matrix() const { return mat_; }
  std::size_t rows() const { return static_cast<std::size_t>(mat_.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(mat_.cols()); }

 private:
  CMatrix mat_;
};

/// Spectral data restricted to the support of a density matrix.
struct EigenBasis {
  RVector values;   // eigenvalues above the rank tolerance, non-increasing
  CMatrix vectors;  // matching orthonormal columns
  Dims dims;

  std::size_t rank() const { return static_cast<std::size_t>(values.size()); }
};

EigenBasis support_basis(const DensityMatrix& rho, double rank_tol = kRankTol);

/// Columns sqrt(p_i) |psi_i> for every row i of u (no pruning).
CMatrix hjw_unnormalized(const EigenBasis& basis, const CMatrix& u);

/// p_i = sum_j |U_ij|^2 lambda_j, before pruning.
std::vector<double> hjw_weights(const DensityMatrix& rho, const Isometry& u);

/// HJW decomposition; members with p_i < ptol are dropped and the remaining
/// weights renormalized. Throws ShapeError when u.cols() != rank(rho).
Ensemble hjw_ensemble(const DensityMatrix& rho, const Isometry& u, double ptol = kPruneTol);
Ensemble hjw_ensemble(const EigenBasis& basis, const Isometry& u, double ptol = kPruneTol);

/// {(lambda_j, |e_j>)} over the support.
Ensemble eigen_ensemble(const DensityMatrix& rho);

/// Inverse HJW map: the rows x rank isometry reproducing `e` (zero rows pad
/// the ensemble up to `rows`). Throws ArgumentError when `e` has more
/// members than rows or does not lie in the support of the basis.
Isometry isometry_for_ensemble(const EigenBasis& basis, const Ensemble& e, std::size_t rows);

DensityMatrix mix(const Ensemble& e);

/// sum_i w_i rho_i (x) |i><i| with the classical register appended as the
/// last subsystem (dimension = number of members).
DensityMatrix flagged_state(std::span<const double> weights, std::span<const DensityMatrix> states);

}  // namespace eofkit
