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

#include <algorithm>
#include <cmath>
#include <string>

#include "eofkit/errors.hpp"

namespace eofkit {

namespace {

void check_dims(const Dims& dims, const char* what) {
  if (dims.empty()) throw ArgumentError(std::string(what) + ": empty dims");
  for (std::size_t d : dims) {
    if (d == 0) throw ArgumentError(std::string(what) + ": zero subsystem dimension");
  }
  if (total_dimension(dims) > kMaxDimension) {
    throw SizeError(std::string(what) + ": total dimension exceeds " +
                    std::to_string(kMaxDimension));
  }
}

std::vector<std::size_t> normalized_subset(std::vector<std::size_t> idx, std::size_t n,
                                           const char* what) {
  std::sort(idx.begin(), idx.end());
  if (std::adjacent_find(idx.begin(), idx.end()) != idx.end()) {
    throw ArgumentError(std::string(what) + ": duplicate subsystem index");
  }
  for (std::size_t k : idx) {
    if (k >= n) {
      throw ArgumentError(std::string(what) + ": subsystem index " + std::to_string(k) +
                          " out of range for " + std::to_string(n) + " subsystems");
    }
  }
  return idx;
}

Dims select(const Dims& dims, const std::vector<std::size_t>& idx) {
  Dims out;
  out.reserve(idx.size());
  for (std::size_t k : idx) out.push_back(dims[k]);
  return out;
}

// old composite index of every new composite index after reordering.
std::vector<std::size_t> permutation_table(const Dims& dims, const std::vector<std::size_t>& order) {
  const std::size_t n = dims.size();
  if (order.size() != n) throw ArgumentError("permute_subsystems: order has wrong length");
  std::vector<std::size_t> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t k = 0; k < n; ++k) {
    if (sorted[k] != k) throw ArgumentError("permute_subsystems: order is not a permutation");
  }
  std::vector<std::size_t> old_stride(n, 1);
  for (std::size_t k = n; k-- > 1;) old_stride[k - 1] = old_stride[k] * dims[k];
  const std::size_t total = total_dimension(dims);
  std::vector<std::size_t> table(total);
  std::vector<std::size_t> digits(n, 0);  // digits in the new layout
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t old = 0;
    for (std::size_t k = 0; k < n; ++k) old += digits[k] * old_stride[order[k]];
    table[idx] = old;
    for (std::size_t k = n; k-- > 0;) {
      if (++digits[k] < dims[order[k]]) break;
      digits[k] = 0;
    }
  }
  return table;
}

}  // namespace

std::size_t total_dimension(const Dims& dims) {
  std::size_t d = 1;
  for (std::size_t x : dims) {
    d *= x;
    if (d > kMaxDimension * kMaxDimension) break;
  }
  return d;
}

DensityMatrix::DensityMatrix(Dims dims, CMatrix mat, double tol) : dims_(std::move(dims)) {
  check_dims(dims_, "DensityMatrix");
  const auto d = static_cast<Eigen::Index>(total_dimension(dims_));
  if (mat.rows() != d || mat.cols() != d) {
    throw ShapeError("DensityMatrix: matrix is " + std::to_string(mat.rows()) + "x" +
                     std::to_string(mat.cols()) + ", dims imply " + std::to_string(d));
  }
  if (!mat.allFinite()) throw ArgumentError("DensityMatrix: non-finite entry");
  const RVector spectrum = herm_eigenvalues(mat, tol);
  const double trace = mat.trace().real();
  if (std::abs(trace - 1.0) > tol) {
    throw NormalizationError("DensityMatrix: trace " + std::to_string(trace) + " differs from 1");
  }
  if (spectrum(spectrum.size() - 1) < -tol) {
    throw ArgumentError("DensityMatrix: minimum eigenvalue " +
                        std::to_string(spectrum(spectrum.size() - 1)) + " is negative");
  }
  mat_ = (mat + mat.adjoint()) * 0.5;
}

PureState::PureState(Dims dims, CVector vec, double tol) : dims_(std::move(dims)), vec_(std::move(vec)) {
  check_dims(dims_, "PureState");
  if (static_cast<std::size_t>(vec_.size()) != total_dimension(dims_)) {
    throw ShapeError("PureState: vector length " + std::to_string(vec_.size()) +
                     " does not match dims");
  }
  if (!vec_.allFinite()) throw ArgumentError("PureState: non-finite entry");
  const double norm = vec_.norm();
  if (std::abs(norm - 1.0) > tol) {
    throw NormalizationError("PureState: norm " + std::to_string(norm) + " differs from 1");
  }
}

PureState PureState::basis(Dims dims, std::size_t index) {
  const std::size_t d = total_dimension(dims);
  if (index >= d) throw ArgumentError("PureState::basis: index out of range");
  CVector v = CVector::Zero(static_cast<Eigen::Index>(d));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return PureState(std::move(dims), std::move(v));
}

Cut::Cut(std::vector<std::size_t> left, std::size_t num_subsystems)
    : left_(normalized_subset(std::move(left), num_subsystems, "Cut")) {
  if (left_.empty()) throw ArgumentError("Cut: left block is empty");
  for (std::size_t k = 0; k < num_subsystems; ++k) {
    if (!std::binary_search(left_.begin(), left_.end(), k)) right_.push_back(k);
  }
  if (right_.empty()) throw ArgumentError("Cut: right block is empty");
}

SubsystemSplit::SubsystemSplit(const Dims& dims, std::vector<std::size_t> first) {
  first = normalized_subset(std::move(first), dims.size(), "SubsystemSplit");
  std::vector<std::size_t> order = first;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (!std::binary_search(first.begin(), first.end(), k)) order.push_back(k);
  }
  for (std::size_t k : first) first_dim_ *= dims[k];
  second_dim_ = total_dimension(dims) / first_dim_;
  // New layout (first block, then second) is exactly the permuted layout.
  composite_ = permutation_table(dims, order);
}

CMatrix SubsystemSplit::reshape(const CVector& v) const {
  CMatrix m(static_cast<Eigen::Index>(first_dim_), static_cast<Eigen::Index>(second_dim_));
  for (std::size_t a = 0; a < first_dim_; ++a) {
    for (std::size_t t = 0; t < second_dim_; ++t) {
      m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(t)) =
          v(static_cast<Eigen::Index>(composite(a, t)));
    }
  }
  return m;
}

CMatrix SubsystemSplit::trace_second(const CMatrix& m) const {
  const auto n1 = static_cast<Eigen::Index>(first_dim_);
  CMatrix out = CMatrix::Zero(n1, n1);
  for (std::size_t a = 0; a < first_dim_; ++a) {
    for (std::size_t b = 0; b < first_dim_; ++b) {
      Complex acc = 0.0;
      for (std::size_t t = 0; t < second_dim_; ++t) {
        acc += m(static_cast<Eigen::Index>(composite(a, t)), static_cast<Eigen::Index>(composite(b, t)));
      }
      out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = acc;
    }
  }
  return out;
}

CMatrix SubsystemSplit::reduce_vector(const CVector& v) const {
  const CMatrix m = reshape(v);
  return m * m.adjoint();
}

PureState SchmidtDecomposition::reconstruct() const {
  const SubsystemSplit split(dims, left);
  CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(split.first_dim()),
                            static_cast<Eigen::Index>(split.second_dim()));
  for (Eigen::Index k = 0; k < coeffs.size(); ++k) {
    m += coeffs(k) * left_vectors.col(k) * right_vectors.col(k).transpose();
  }
  CVector v(static_cast<Eigen::Index>(total_dimension(dims)));
  for (std::size_t a = 0; a < split.first_dim(); ++a) {
    for (std::size_t t = 0; t < split.second_dim(); ++t) {
      v(static_cast<Eigen::Index>(split.composite(a, t))) =
          m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(t));
    }
  }
  return PureState(dims, std::move(v));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::vector<std::size_t> keep) {
  if (keep.empty()) throw ArgumentError("partial_trace: empty keep set");
  std::vector<std::size_t> kept = normalized_subset(std::move(keep), rho.num_subsystems(), "partial_trace");
  const SubsystemSplit split(rho.dims(), kept);
  return DensityMatrix(select(rho.dims(), kept), split.trace_second(rho.matrix()));
}

double entropy_from_spectrum(std::span<const double> eigenvalues) {
  double s = 0.0;
  for (double l : eigenvalues) {
    if (l > kEntropyFloor) s -= l * std::log2(l);
  }
  return s;
}

double matrix_entropy(const CMatrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver((hermitian + hermitian.adjoint()) * 0.5,
                                                Eigen::EigenvaluesOnly);
  const RVector& ev = solver.eigenvalues();
  return entropy_from_spectrum(std::span<const double>(ev.data(), static_cast<std::size_t>(ev.size())));
}

double von_neumann_entropy(const DensityMatrix& rho) { return matrix_entropy(rho.matrix()); }

double shannon_entropy(std::span<const double> p, double tol) {
  double sum = 0.0;
  for (double x : p) {
    if (x < -1e-12) throw NormalizationError("shannon_entropy: negative probability");
    sum += std::max(x, 0.0);
  }
  if (std::abs(sum - 1.0) > tol) {
    throw NormalizationError("shannon_entropy: probabilities sum to " + std::to_string(sum));
  }
  double h = 0.0;
  for (double x : p) {
    if (x > 0.0) h -= x * std::log2(x);
  }
  return h;
}

SchmidtDecomposition schmidt(const PureState& psi, const Cut& cut) {
  if (cut.num_subsystems() != psi.num_subsystems()) {
    throw ArgumentError("schmidt: cut does not match the state's subsystem count");
  }
  const SubsystemSplit split(psi.dims(), cut.left());
  const Svd dec = svd(split.reshape(psi.vector()));
  return SchmidtDecomposition{dec.s, dec.u, dec.v.conjugate(), psi.dims(), cut.left()};
}

DensityMatrix reduced_state(const PureState& psi, std::vector<std::size_t> keep) {
  if (keep.empty()) throw ArgumentError("reduced_state: empty keep set");
  std::vector<std::size_t> kept = normalized_subset(keep, psi.num_subsystems(), "reduced_state");
  const SubsystemSplit split(psi.dims(), kept);
  return DensityMatrix(select(psi.dims(), kept), split.reduce_vector(psi.vector()));
}

DensityMatrix projector(const PureState& psi) {
  return DensityMatrix(psi.dims(), psi.vector() * psi.vector().adjoint());
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  Dims dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return DensityMatrix(std::move(dims), kron(a.matrix(), b.matrix()));
}

PureState tensor(const PureState& a, const PureState& b) {
  Dims dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  const CMatrix v = kron(a.vector(), b.vector());
  return PureState(std::move(dims), v.col(0));
}

PureState permute_subsystems(const PureState& psi, const std::vector<std::size_t>& order) {
  const auto table = permutation_table(psi.dims(), order);
  CVector v(psi.vector().size());
  for (std::size_t k = 0; k < table.size(); ++k) {
    v(static_cast<Eigen::Index>(k)) = psi.vector()(static_cast<Eigen::Index>(table[k]));
  }
  Dims dims;
  for (std::size_t k : order) dims.push_back(psi.dims()[k]);
  return PureState(std::move(dims), std::move(v));
}

DensityMatrix permute_subsystems(const DensityMatrix& rho, const std::vector<std::size_t>& order) {
  const auto table = permutation_table(rho.dims(), order);
  const auto n = static_cast<Eigen::Index>(table.size());
  CMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      m(i, j) = rho.matrix()(static_cast<Eigen::Index>(table[static_cast<std::size_t>(i)]),
                             static_cast<Eigen::Index>(table[static_cast<std::size_t>(j)]));
    }
  }
  Dims dims;
  for (std::size_t k : order) dims.push_back(rho.dims()[k]);
  return DensityMatrix(std::move(dims), std::move(m));
}

DensityMatrix maximally_mixed(Dims dims) {
  const std::size_t d = total_dimension(dims);
  return DensityMatrix(std::move(dims), identity(d) / static_cast<double>(d));
}

}  // namespace eofkit
