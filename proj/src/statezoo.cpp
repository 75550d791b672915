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

#include "eofkit/statezoo.hpp"

#include <cmath>
#include <string>

#include "eofkit/errors.hpp"
#include "eofkit/random.hpp"

namespace eofkit {

namespace {

bool overlaps(const LocalRange& x, const LocalRange& y) {
  return x.begin < y.end && y.begin < x.end;
}

void check_range(const LocalRange& r, std::size_t dim, const char* side) {
  if (r.begin >= r.end || r.end > dim) {
    throw ConstraintError(std::string("Case2Spec: invalid ") + side + " range [" +
                          std::to_string(r.begin) + ", " + std::to_string(r.end) + ")");
  }
}

bool in_range(std::size_t i, const LocalRange& r) { return i >= r.begin && i < r.end; }

}  // namespace

void Case1Spec::validate() const {
  if (lambda.rows() == 0 || lambda.cols() == 0) throw ArgumentError("Case1Spec: empty lambda");
  if (!lambda.allFinite()) throw ArgumentError("Case1Spec: non-finite lambda");
  if (lambda.minCoeff() < 0.0) throw ArgumentError("Case1Spec: negative lambda entry");
  const double sum = lambda.sum();
  if (std::abs(sum - 1.0) > 1e-9) {
    throw ArgumentError("Case1Spec: lambda sums to " + std::to_string(sum));
  }
}

PureState case1_state(const Case1Spec& spec) {
  spec.validate();
  const auto r = static_cast<std::size_t>(spec.lambda.rows());
  const auto c = static_cast<std::size_t>(spec.lambda.cols());
  CVector v = CVector::Zero(static_cast<Eigen::Index>(r * r * c * c));
  for (std::size_t a = 0; a < r; ++a) {
    for (std::size_t b = 0; b < c; ++b) {
      const std::size_t idx = ((a * r + a) * c + b) * c + b;
      v(static_cast<Eigen::Index>(idx)) =
          std::sqrt(spec.lambda(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)));
    }
  }
  return PureState({r, r, c, c}, std::move(v));
}

namespace {

// sum over rows (or columns) of sqrt(lambda) |k k> states, one member per line.
Ensemble diagonal_decomposition(const RMatrix& lambda) {
  const auto lines = lambda.rows();
  const auto d = static_cast<std::size_t>(lambda.cols());
  std::vector<EnsembleMember> members;
  double total = 0.0;
  for (Eigen::Index a = 0; a < lines; ++a) total += lambda.row(a).sum();
  for (Eigen::Index a = 0; a < lines; ++a) {
    const double weight = lambda.row(a).sum();
    if (weight <= 0.0) continue;
    CVector v = CVector::Zero(static_cast<Eigen::Index>(d * d));
    for (std::size_t b = 0; b < d; ++b) {
      v(static_cast<Eigen::Index>(b * d + b)) = std::sqrt(lambda(a, static_cast<Eigen::Index>(b)) / weight);
    }
    members.push_back({weight / total, PureState({d, d}, std::move(v))});
  }
  return Ensemble(std::move(members));
}

}  // namespace

Ensemble case1_primed_decomposition(const Case1Spec& spec) {
  spec.validate();
  return diagonal_decomposition(spec.lambda);
}

Ensemble case1_unprimed_decomposition(const Case1Spec& spec) {
  spec.validate();
  return diagonal_decomposition(spec.lambda.transpose());
}

void Case2Spec::validate() const {
  if (blocks.empty()) throw ArgumentError("Case2Spec: no blocks");
  double sum = 0.0;
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    const auto& blk = blocks[j];
    if (!(blk.weight >= 0.0)) throw ArgumentError("Case2Spec: negative weight");
    sum += blk.weight;
    if (blk.state.dims() != Dims{dim_a, dim_b}) {
      throw ArgumentError("Case2Spec: block state dims do not match (dim_a, dim_b)");
    }
    check_range(blk.a_range, dim_a, "A");
    check_range(blk.b_range, dim_b, "B");
    for (std::size_t k = 0; k < j; ++k) {
      if (overlaps(blk.a_range, blocks[k].a_range) || overlaps(blk.b_range, blocks[k].b_range)) {
        throw ConstraintError("Case2Spec: local supports of blocks " + std::to_string(k) + " and " +
                              std::to_string(j) + " overlap");
      }
    }
    for (std::size_t a = 0; a < dim_a; ++a) {
      for (std::size_t b = 0; b < dim_b; ++b) {
        if (in_range(a, blk.a_range) && in_range(b, blk.b_range)) continue;
        if (std::abs(blk.state.vector()(static_cast<Eigen::Index>(a * dim_b + b))) > 1e-12) {
          throw ConstraintError("Case2Spec: block " + std::to_string(j) +
                                " has amplitude outside its local ranges");
        }
      }
    }
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw NormalizationError("Case2Spec: weights sum to " + std::to_string(sum));
  }
}

DensityMatrix case2_factor(const Case2Spec& spec) {
  spec.validate();
  const auto d = static_cast<Eigen::Index>(spec.dim_a * spec.dim_b);
  CMatrix rho = CMatrix::Zero(d, d);
  for (const auto& blk : spec.blocks) {
    rho += blk.weight * blk.state.vector() * blk.state.vector().adjoint();
  }
  return DensityMatrix({spec.dim_a, spec.dim_b}, std::move(rho));
}

EigenBasis case2_basis(const Case2Spec& spec) {
  spec.validate();
  std::vector<std::size_t> kept;
  for (std::size_t j = 0; j < spec.blocks.size(); ++j) {
    if (spec.blocks[j].weight > kRankTol) kept.push_back(j);
  }
  const auto d = static_cast<Eigen::Index>(spec.dim_a * spec.dim_b);
  EigenBasis basis{RVector(static_cast<Eigen::Index>(kept.size())),
                   CMatrix(d, static_cast<Eigen::Index>(kept.size())),
                   {spec.dim_a, spec.dim_b}};
  for (std::size_t k = 0; k < kept.size(); ++k) {
    basis.values(static_cast<Eigen::Index>(k)) = spec.blocks[kept[k]].weight;
    basis.vectors.col(static_cast<Eigen::Index>(k)) = spec.blocks[kept[k]].state.vector();
  }
  return basis;
}

Case2Spec case2_example(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw ArgumentError("case2_example: lambda outside [0, 1]");
  CVector bell = CVector::Zero(9);
  bell(4) = 1.0 / std::sqrt(2.0);  // |11>
  bell(8) = 1.0 / std::sqrt(2.0);  // |22>
  Case2Spec spec;
  spec.dim_a = 3;
  spec.dim_b = 3;
  spec.blocks.push_back({lambda, PureState::basis({3, 3}, 0), {0, 1}, {0, 1}});
  spec.blocks.push_back({1.0 - lambda, PureState({3, 3}, bell), {1, 3}, {1, 3}});
  return spec;
}

CMatrix swap_operator(std::size_t d) {
  const auto n = static_cast<Eigen::Index>(d * d);
  CMatrix f = CMatrix::Zero(n, n);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      f(static_cast<Eigen::Index>(j * d + i), static_cast<Eigen::Index>(i * d + j)) = 1.0;
    }
  }
  return f;
}

DensityMatrix werner_state(std::size_t d, double phi) {
  if (d < 2) throw ArgumentError("werner_state: d must be at least 2");
  if (!(phi >= -1.0 && phi <= 1.0)) throw ArgumentError("werner_state: phi outside [-1, 1]");
  const double dd = static_cast<double>(d);
  const CMatrix rho = ((dd - phi) * identity(d * d) + (dd * phi - 1.0) * swap_operator(d)) /
                      (dd * (dd * dd - 1.0));
  return DensityMatrix({d, d}, rho);
}

double werner_phi_from_singlet_weight(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw ArgumentError("werner_phi_from_singlet_weight: p outside [0, 1]");
  return (1.0 - 3.0 * p) / 2.0;
}

DensityMatrix random_density(const Dims& dims, std::size_t rank, std::uint64_t seed) {
  const std::size_t d = total_dimension(dims);
  if (rank < 1 || rank > d) {
    throw ArgumentError("random_density: rank " + std::to_string(rank) + " outside [1, " +
                        std::to_string(d) + "]");
  }
  GaussianStream rng(seed);
  const CMatrix g = rng.complex_gaussian(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(rank));
  const CMatrix gg = g * g.adjoint();
  return DensityMatrix(dims, gg / gg.trace().real());
}

DensityMatrix random_density(std::size_t d, std::size_t rank, std::uint64_t seed) {
  return random_density(Dims{d}, rank, seed);
}

PureState random_pure(const Dims& dims, std::uint64_t seed) {
  GaussianStream rng(seed);
  CVector v = rng.complex_gaussian(static_cast<Eigen::Index>(total_dimension(dims)), 1).col(0);
  v /= v.norm();
  return PureState(dims, std::move(v));
}

Isometry random_isometry(std::size_t m, std::size_t n, std::uint64_t seed) {
  if (n == 0 || m < n) {
    throw ArgumentError("random_isometry: need m >= n >= 1, got m=" + std::to_string(m) +
                        " n=" + std::to_string(n));
  }
  GaussianStream rng(seed);
  const CMatrix g = rng.complex_gaussian(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
  const CMatrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    const Complex dj = r(j, j);
    if (std::abs(dj) > 0.0) q.col(j) *= dj / std::abs(dj);
  }
  return Isometry(std::move(q), 1e-10);
}

CMatrix random_unitary(std::size_t d, std::uint64_t seed) {
  return random_isometry(d, d, seed).matrix();
}

}  // namespace eofkit
