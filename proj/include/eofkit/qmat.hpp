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

// qmat.hpp - dense complex matrix kernel.
//
// Thin layer over Eigen that fixes the conventions the rest of the library
// relies on: eigenvalues in non-increasing order with a deterministic
// eigenvector phase, explicit tolerances, and a hard cap on matrix size.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>

namespace eofkit {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

inline constexpr std::size_t kMaxDimension = 4096;
inline constexpr double kHermitianTol = 1e-9;

struct HermEig {
  RVector eigenvalues;   // non-increasing
  CMatrix eigenvectors;  // columns orthonormal, matching eigenvalues
};

struct Svd {
  CMatrix u;  // rows(a) x k, orthonormal columns
  RVector s;  // k = min(rows, cols), non-increasing
  CMatrix v;  // cols(a) x k, orthonormal columns
};

/// Kronecker product. Entry (i*b.rows+k, j*b.cols+l) = a(i,j) * b(k,l).
/// Throws SizeError when either result dimension exceeds max_dim.
CMatrix kron(const CMatrix& a, const CMatrix& b, std::size_t max_dim = kMaxDimension);

CMatrix dagger(const CMatrix& a);

CMatrix identity(std::size_t n);

double frobenius_distance(const CMatrix& a, const CMatrix& b);

/// Frobenius norm of U^dagger U - I.
double isometry_defect(const CMatrix& u);

/// Hermitian eigendecomposition.
///
/// The input is Hermitized as (a + a^dagger)/2 first. Each eigenvector is
/// rotated so that its first component with magnitude above 1e-8 is real and
/// positive; eigenvalues within 1e-12 of each other are ordered by the index
/// of that leading component.
///
/// Throws ShapeError for non-square input and SymmetryError when
/// ||a - a^dagger||_F > tol.
HermEig herm_eig(const CMatrix& a, double tol = kHermitianTol);

/// Eigenvalues only, non-increasing; same validation as herm_eig.
RVector herm_eigenvalues(const CMatrix& a, double tol = kHermitianTol);

/// Thin SVD with a = u * diag(s) * v^dagger.
Svd svd(const CMatrix& a);

/// exp(i h) for Hermitian h, computed through herm_eig.
CMatrix expm_antihermitian(const CMatrix& h, double tol = kHermitianTol);

}  // namespace eofkit
