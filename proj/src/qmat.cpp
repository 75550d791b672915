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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "eofkit/errors.hpp"

namespace eofkit {

namespace {

constexpr double kLeadingComponentTol = 1e-8;
constexpr double kDegenerateTol = 1e-12;

void check_size(Eigen::Index rows, Eigen::Index cols, std::size_t max_dim, const char* what) {
  if (static_cast<std::size_t>(rows) > max_dim || static_cast<std::size_t>(cols) > max_dim) {
    throw SizeError(std::string(what) + ": result " + std::to_string(rows) + "x" +
                    std::to_string(cols) + " exceeds maximum dimension " +
                    std::to_string(max_dim));
  }
}

CMatrix hermitized(const CMatrix& a, double tol) {
  if (a.rows() != a.cols()) {
    throw ShapeError("herm_eig: matrix is " + std::to_string(a.rows()) + "x" +
                     std::to_string(a.cols()) + ", expected square");
  }
  const double asym = (a - a.adjoint()).norm();
  if (!(asym <= tol)) {
    throw SymmetryError("herm_eig: ||a - a^dagger||_F = " + std::to_string(asym) +
                        " exceeds tolerance " + std::to_string(tol));
  }
  return (a + a.adjoint()) * 0.5;
}

Eigen::Index leading_component(const CVector& v) {
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    if (std::abs(v(k)) > kLeadingComponentTol) return k;
  }
  return 0;
}

}  // namespace

CMatrix kron(const CMatrix& a, const CMatrix& b, std::size_t max_dim) {
  const Eigen::Index rows = a.rows() * b.rows();
  const Eigen::Index cols = a.cols() * b.cols();
  check_size(rows, cols, max_dim, "kron");
  CMatrix out(rows, cols);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CMatrix dagger(const CMatrix& a) { return a.adjoint(); }

CMatrix identity(std::size_t n) {
  return CMatrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
}

double frobenius_distance(const CMatrix& a, const CMatrix& b) { return (a - b).norm(); }

double isometry_defect(const CMatrix& u) {
  return (u.adjoint() * u - CMatrix::Identity(u.cols(), u.cols())).norm();
}

HermEig herm_eig(const CMatrix& a, double tol) {
  const CMatrix h = hermitized(a, tol);
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h);
  const Eigen::Index n = h.rows();
  const RVector& vals = solver.eigenvalues();  // ascending
  const CMatrix& vecs = solver.eigenvectors();

  // Phase-fix each eigenvector and remember its leading component.
  std::vector<CVector> fixed(static_cast<std::size_t>(n));
  std::vector<Eigen::Index> lead(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) {
    CVector v = vecs.col(k);
    const Eigen::Index l = leading_component(v);
    const Complex z = v(l);
    if (std::abs(z) > 0.0) v *= std::conj(z) / std::abs(z);
    fixed[static_cast<std::size_t>(k)] = std::move(v);
    lead[static_cast<std::size_t>(k)] = l;
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index x, Eigen::Index y) { return vals(x) > vals(y); });
  // Within runs of degenerate eigenvalues, order by leading component index.
  for (std::size_t start = 0; start < order.size();) {
    std::size_t end = start + 1;
    while (end < order.size() && vals(order[start]) - vals(order[end]) <= kDegenerateTol) ++end;
    std::stable_sort(order.begin() + static_cast<std::ptrdiff_t>(start),
                     order.begin() + static_cast<std::ptrdiff_t>(end),
                     [&](Eigen::Index x, Eigen::Index y) {
                       return lead[static_cast<std::size_t>(x)] < lead[static_cast<std::size_t>(y)];
                     });
    start = end;
  }

  HermEig out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    out.eigenvalues(k) = vals(src);
    out.eigenvectors.col(k) = fixed[static_cast<std::size_t>(src)];
  }
  return out;
}

RVector herm_eigenvalues(const CMatrix& a, double tol) {
  const CMatrix h = hermitized(a, tol);
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().reverse();
}

Svd svd(const CMatrix& a) {
  check_size(a.rows(), a.cols(), kMaxDimension, "svd");
  Eigen::JacobiSVD<CMatrix> solver(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return Svd{solver.matrixU(), solver.singularValues(), solver.matrixV()};
}

CMatrix expm_antihermitian(const CMatrix& h, double tol) {
  const HermEig eig = herm_eig(h, tol);
  CVector phases(eig.eigenvalues.size());
  for (Eigen::Index k = 0; k < phases.size(); ++k) {
    phases(k) = std::polar(1.0, eig.eigenvalues(k));
  }
  return eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
}

}  // namespace eofkit
