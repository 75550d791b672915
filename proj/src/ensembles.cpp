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

#include "eofkit/ensembles.hpp"

#include <cmath>
#include <string>

#include "eofkit/errors.hpp"

namespace eofkit {

Ensemble::Ensemble(std::vector<EnsembleMember> members, double tol) : members_(std::move(members)) {
  if (members_.empty()) throw ArgumentError("Ensemble: no members");
  double sum = 0.0;
  for (const auto& m : members_) {
    if (!(m.weight >= 0.0)) throw ArgumentError("Ensemble: negative weight");
    if (m.state.dims() != members_.front().state.dims()) {
      throw ArgumentError("Ensemble: members have different dims");
    }
    sum += m.weight;
  }
  if (std::abs(sum - 1.0) > tol) {
    throw NormalizationError("Ensemble: weights sum to " + std::to_string(sum));
  }
}

Isometry::Isometry(CMatrix mat, double tol) : mat_(std::move(mat)) {
  if (mat_.rows() < mat_.cols() || mat_.cols() == 0) {
    throw ShapeError("Isometry: shape " + std::to_string(mat_.rows()) + "x" +
                     std::to_string(mat_.cols()) + " needs rows >= cols >= 1");
  }
  const double defect = isometry_defect(mat_);
  if (!(defect <= tol)) {
    throw ArgumentError("Isometry: defect " + std::to_string(defect) + " exceeds tolerance");
  }
}

EigenBasis support_basis(const DensityMatrix& rho, double rank_tol) {
  const HermEig eig = herm_eig(rho.matrix());
  Eigen::Index rank = 0;
  while (rank < eig.eigenvalues.size() && eig.eigenvalues(rank) > rank_tol) ++rank;
  return EigenBasis{eig.eigenvalues.head(rank), eig.eigenvectors.leftCols(rank), rho.dims()};
}

CMatrix hjw_unnormalized(const EigenBasis& basis, const CMatrix& u) {
  if (static_cast<std::size_t>(u.cols()) != basis.rank()) {
    throw ShapeError("hjw: isometry has " + std::to_string(u.cols()) + " columns but rank is " +
                     std::to_string(basis.rank()));
  }
  const CMatrix weighted = basis.vectors * basis.values.cwiseSqrt().asDiagonal();
  return weighted * u.transpose();
}

std::vector<double> hjw_weights(const DensityMatrix& rho, const Isometry& u) {
  const EigenBasis basis = support_basis(rho);
  if (u.cols() != basis.rank()) {
    throw ShapeError("hjw_weights: isometry columns do not match rank");
  }
  std::vector<double> p(u.rows(), 0.0);
  for (std::size_t i = 0; i < u.rows(); ++i) {
    for (std::size_t j = 0; j < u.cols(); ++j) {
      p[i] += std::norm(u.matrix()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))) *
              basis.values(static_cast<Eigen::Index>(j));
    }
  }
  return p;
}

Ensemble hjw_ensemble(const EigenBasis& basis, const Isometry& u, double ptol) {
  const CMatrix columns = hjw_unnormalized(basis, u.matrix());
  std::vector<double> weights;
  std::vector<CVector> states;
  double total = 0.0;
  for (Eigen::Index i = 0; i < columns.cols(); ++i) {
    const double p = columns.col(i).squaredNorm();
    if (p < ptol) continue;
    weights.push_back(p);
    states.push_back(columns.col(i) / std::sqrt(p));
    total += p;
  }
  std::vector<EnsembleMember> members;
  members.reserve(states.size());
  for (std::size_t k = 0; k < states.size(); ++k) {
    members.push_back({weights[k] / total, PureState(basis.dims, std::move(states[k]))});
  }
  return Ensemble(std::move(members));
}

Ensemble hjw_ensemble(const DensityMatrix& rho, const Isometry& u, double ptol) {
  return hjw_ensemble(support_basis(rho), u, ptol);
}

Ensemble eigen_ensemble(const DensityMatrix& rho) {
  const EigenBasis basis = support_basis(rho);
  return hjw_ensemble(basis, Isometry(identity(basis.rank())));
}

Isometry isometry_for_ensemble(const EigenBasis& basis, const Ensemble& e, std::size_t rows) {
  if (e.size() > rows) {
    throw ArgumentError("isometry_for_ensemble: ensemble has " + std::to_string(e.size()) +
                        " members, more than " + std::to_string(rows) + " rows");
  }
  if (e.dims() != basis.dims) throw ArgumentError("isometry_for_ensemble: dims mismatch");
  CMatrix u = CMatrix::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(basis.rank()));
  for (std::size_t i = 0; i < e.size(); ++i) {
    const auto& m = e.members()[i];
    const CVector overlaps = basis.vectors.adjoint() * m.state.vector();
    for (Eigen::Index j = 0; j < overlaps.size(); ++j) {
      u(static_cast<Eigen::Index>(i), j) =
          std::sqrt(m.weight) * overlaps(j) / std::sqrt(basis.values(j));
    }
  }
  return Isometry(std::move(u), 1e-7);
}

DensityMatrix mix(const Ensemble& e) {
  const auto d = static_cast<Eigen::Index>(e.members().front().state.dim());
  CMatrix rho = CMatrix::Zero(d, d);
  for (const auto& m : e.members()) {
    rho += m.weight * m.state.vector() * m.state.vector().adjoint();
  }
  return DensityMatrix(e.dims(), std::move(rho));
}

DensityMatrix flagged_state(std::span<const double> weights, std::span<const DensityMatrix> states) {
  if (weights.size() != states.size() || states.empty()) {
    throw ArgumentError("flagged_state: need one weight per state and at least one state");
  }
  double sum = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw NormalizationError("flagged_state: negative weight");
    sum += w;
  }
  if (std::abs(sum - 1.0) > kStateTol) {
    throw NormalizationError("flagged_state: weights sum to " + std::to_string(sum));
  }
  const Dims& dims = states.front().dims();
  for (const auto& s : states) {
    if (s.dims() != dims) throw ArgumentError("flagged_state: states have different dims");
  }
  const std::size_t n = states.size();
  const auto d = static_cast<Eigen::Index>(states.front().dim());
  CMatrix out = CMatrix::Zero(d * static_cast<Eigen::Index>(n), d * static_cast<Eigen::Index>(n));
  // Register is the last (least significant) factor: entry (a*n+i, b*n+i).
  for (std::size_t i = 0; i < n; ++i) {
    const CMatrix& m = states[i].matrix();
    for (Eigen::Index a = 0; a < d; ++a) {
      for (Eigen::Index b = 0; b < d; ++b) {
        out(a * static_cast<Eigen::Index>(n) + static_cast<Eigen::Index>(i),
            b * static_cast<Eigen::Index>(n) + static_cast<Eigen::Index>(i)) = weights[i] * m(a, b);
      }
    }
  }
  Dims out_dims = dims;
  out_dims.push_back(n);
  return DensityMatrix(std::move(out_dims), std::move(out));
}

}  // namespace eofkit
