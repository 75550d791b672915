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

// qstate.hpp - states over tensor-factor structures.
//
// Composite basis index convention: the index of |i_0 i_1 ... i_{n-1}> is the
// mixed-radix number with radices dims, subsystem 0 most significant. All
// entropies are in bits.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "eofkit/qmat.hpp"

namespace eofkit {

using Dims = std::vector<std::size_t>;

inline constexpr double kStateTol = 1e-9;
/// Eigenvalues at or below this floor contribute zero entropy.
inline constexpr double kEntropyFloor = 1e-12;

std::size_t total_dimension(const Dims& dims);

/// Hermitian, unit-trace, positive semidefinite operator with subsystem dims.
class DensityMatrix {
 public:
  /// Validates Hermiticity, trace and minimum eigenvalue against tol; the
  /// stored matrix is Hermitized.
  DensityMatrix(Dims dims, CMatrix mat, double tol = kStateTol);

  const Dims& dims() const { return dims_; }
  const CMatrix& matrix() const { return mat_; }
  std::size_t dim() const { return static_cast<std::size_t>(mat_.rows()); }
  std::size_t num_subsystems() const { return dims_.size(); }

 private:
  Dims dims_;
  CMatrix mat_;
};

/// Normalized state vector with subsystem dims.
class PureState {
 public:
  PureState(Dims dims, CVector vec, double tol = kStateTol);

  /// Computational basis state |index>.
  static PureState basis(Dims dims, std::size_t index);

  const Dims& dims() const { return dims_; }
  const CVector& vector() const { return vec_; }
  std::size_t dim() const { return static_cast<std::size_t>(vec_.size()); }
  std::size_t num_subsystems() const { return dims_.size(); }

 private:
  Dims dims_;
  CVector vec_;
};

/// Bipartition of subsystem indices into two nonempty blocks.
class Cut {
 public:
  /// `left` lists the left-block subsystems; the right block is the
  /// complement in [0, num_subsystems). Throws ArgumentError on empty blocks,
  /// duplicates or out-of-range indices.
  Cut(std::vector<std::size_t> left, std::size_t num_subsystems);

  const std::vector<std::size_t>& left() const { return left_; }
  const std::vector<std::size_t>& right() const { return right_; }
  std::size_t num_subsystems() const { return left_.size() + right_.size(); }

 private:
  std::vector<std::size_t> left_;
  std::vector<std::size_t> right_;
};

/// Index tables splitting a composite index into a "first" block (the given
/// subsystems, in ascending order) and a "second" block (the complement).
class SubsystemSplit {
 public:
  SubsystemSplit(const Dims& dims, std::vector<std::size_t> first);

  std::size_t first_dim() const { return first_dim_; }
  std::size_t second_dim() const { return second_dim_; }
  /// Composite index of (first = a, second = t).
  std::size_t composite(std::size_t a, std::size_t t) const {
    return composite_[a * second_dim_ + t];
  }

  /// Vector reshaped to a first_dim x second_dim matrix.
  CMatrix reshape(const CVector& v) const;
  /// Partial trace of an operator over the second block.
  CMatrix trace_second(const CMatrix& m) const;
  /// Tr_second |v><v| without forming the projector.
  CMatrix reduce_vector(const CVector& v) const;

 private:
  std::size_t first_dim_ = 1;
  std::size_t second_dim_ = 1;
  std::vector<std::size_t> composite_;
};

struct SchmidtDecomposition {
  RVector coeffs;         // non-increasing, squares sum to 1
  CMatrix left_vectors;   // columns: orthonormal states of the left block
  CMatrix right_vectors;  // columns: orthonormal states of the right block
  Dims dims;
  std::vector<std::size_t> left;  // left-block subsystems

  /// sum_k coeffs_k |left_k> (x) |right_k>, mapped back to the original layout.
  PureState reconstruct() const;
};

DensityMatrix partial_trace(const DensityMatrix& rho, std::vector<std::size_t> keep);

/// -sum lambda log2 lambda over eigenvalues above kEntropyFloor.
double entropy_from_spectrum(std::span<const double> eigenvalues);
double von_neumann_entropy(const DensityMatrix& rho);
/// Entropy of a raw Hermitian matrix (no trace or positivity validation).
double matrix_entropy(const CMatrix& hermitian);

/// Shannon entropy in bits. Entries >= -1e-12 (negatives clipped) and a sum
/// within tol of 1 are required; otherwise NormalizationError.
double shannon_entropy(std::span<const double> p, double tol = kStateTol);

SchmidtDecomposition schmidt(const PureState& psi, const Cut& cut);

DensityMatrix reduced_state(const PureState& psi, std::vector<std::size_t> keep);

DensityMatrix projector(const PureState& psi);

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);
PureState tensor(const PureState& a, const PureState& b);

/// Reorders subsystems: new subsystem k is old subsystem order[k].
PureState permute_subsystems(const PureState& psi, const std::vector<std::size_t>& order);
DensityMatrix permute_subsystems(const DensityMatrix& rho, const std::vector<std::size_t>& order);

DensityMatrix maximally_mixed(Dims dims);

}  // namespace eofkit
