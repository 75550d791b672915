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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <string>
#include <thread>

#include "eofkit/errors.hpp"
#include "eofkit/random.hpp"

namespace eofkit {

namespace {

constexpr std::size_t kAutoEnsembleCap = 16;
constexpr double kArmijo = 1e-4;
constexpr int kMaxHalvings = 40;
constexpr std::size_t kStallIterations = 3;
constexpr std::size_t kReorthonormalizeEvery = 25;

struct Generator {
  std::size_t a;
  std::size_t b;
  int kind;  // 0 diagonal, 1 real off-diagonal, 2 imaginary off-diagonal
};

Generator generator_of(std::size_t p, std::size_t m) {
  if (p < m) return {p, p, 0};
  std::size_t q = (p - m) / 2;
  const int kind = static_cast<int>((p - m) % 2) + 1;
  for (std::size_t a = 0; a < m; ++a) {
    const std::size_t row = m - a - 1;
    if (q < row) return {a, a + 1 + q, kind};
    q -= row;
  }
  throw ArgumentError("generator index out of range");
}

// Columns a and b of U * exp(i theta G) as (new_a, new_b).
void rotate_columns(const CMatrix& u, const Generator& g, double theta, CVector& col_a, CVector& col_b) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  if (g.kind == 0) {
    col_a = u.col(static_cast<Eigen::Index>(g.a)) * std::polar(1.0, theta);
    return;
  }
  const auto ua = u.col(static_cast<Eigen::Index>(g.a));
  const auto ub = u.col(static_cast<Eigen::Index>(g.b));
  if (g.kind == 1) {
    // exp(i theta (E_ab + E_ba)) = [[c, i s], [i s, c]]
    col_a = c * ua + Complex(0.0, s) * ub;
    col_b = Complex(0.0, s) * ua + c * ub;
  } else {
    // exp(i theta (i E_ab - i E_ba)) = [[c, -s], [s, c]]
    col_a = c * ua + s * ub;
    col_b = -s * ua + c * ub;
  }
}

CMatrix unitary_completion(const CMatrix& v) {
  const Eigen::Index m = v.rows();
  const Eigen::Index r = v.cols();
  Eigen::HouseholderQR<CMatrix> qr(v);
  CMatrix q = qr.householderQ() * CMatrix::Identity(m, m);
  q.leftCols(r) = v;
  return q;
}

void reorthonormalize(CMatrix& u) {
  Eigen::HouseholderQR<CMatrix> qr(u);
  CMatrix q = qr.householderQ() * CMatrix::Identity(u.rows(), u.cols());
  const CMatrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < u.cols(); ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  u = q;
}

struct RestartOutcome {
  CMatrix unitary;
  double value = 0.0;
  double initial_value = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

class UnitarySearch {
 public:
  UnitarySearch(const EigenBasis& basis, std::size_t m, const MemberCost& cost, const EofOptions& opts)
      : weighted_(basis.vectors * basis.values.cwiseSqrt().asDiagonal()),
        m_(m),
        r_(basis.rank()),
        cost_(cost),
        opts_(opts) {
    for (std::size_t p = 0; p < m_ * m_; ++p) {
      const Generator g = generator_of(p, m_);
      if (g.a < r_) active_.push_back(p);
    }
  }

  std::size_t num_active() const { return active_.size(); }

  RestartOutcome run(CMatrix u) const {
    RestartOutcome out;
    CMatrix members = members_of(u);
    double f = total(members);
    out.initial_value = f;
    const std::size_t n = active_.size();
    if (n == 0) {
      out.unitary = std::move(u);
      out.value = f;
      out.converged = true;
      return out;
    }
    Eigen::VectorXd g = gradient(u, members);
    Eigen::MatrixXd hinv = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    bool hinv_is_identity = true;
    bool first_step = true;
    std::size_t stall = 0;
    std::size_t it = 0;
    for (; it < opts_.max_iterations; ++it) {
      if (g.lpNorm<Eigen::Infinity>() < opts_.convergence_tol) {
        out.converged = true;
        break;
      }
      Eigen::VectorXd d = -hinv * g;
      double slope = g.dot(d);
      if (!(slope < 0.0)) {
        hinv.setIdentity();
        hinv_is_identity = true;
        d = -g;
        slope = -g.squaredNorm();
      }
      double t = 1.0;
      bool accepted = false;
      CMatrix trial;
      CMatrix trial_members;
      double f_trial = 0.0;
      for (int h = 0; h < kMaxHalvings; ++h, t *= 0.5) {
        trial = step(u, d, t);
        trial_members = members_of(trial);
        f_trial = total(trial_members);
        if (f_trial <= f + kArmijo * t * slope) {
          accepted = true;
          break;
        }
      }
      if (!accepted) {
        if (hinv_is_identity) {
          // No descent along the gradient: stationary up to FD noise.
          out.converged = true;
          break;
        }
        hinv.setIdentity();
        hinv_is_identity = true;
        continue;
      }
      const double f_prev = f;
      u = std::move(trial);
      if ((it + 1) % kReorthonormalizeEvery == 0) {
        reorthonormalize(u);
        members = members_of(u);
        f = total(members);
      } else {
        members = std::move(trial_members);
        f = f_trial;
      }
      const Eigen::VectorXd g_new = gradient(u, members);
      const Eigen::VectorXd s = t * d;
      const Eigen::VectorXd y = g_new - g;
      const double sy = s.dot(y);
      if (sy > 1e-12 * s.norm() * y.norm()) {
        if (first_step) {
          hinv *= sy / y.squaredNorm();
          first_step = false;
        }
        const Eigen::VectorXd hy = hinv * y;
        const double rho = 1.0 / sy;
        const double yhy = y.dot(hy);
        hinv += rho * rho * (sy + yhy) * (s * s.transpose()) - rho * (hy * s.transpose() + s * hy.transpose());
        hinv_is_identity = false;
      }
      g = g_new;
      if (f_prev - f < opts_.convergence_tol * (1.0 + std::abs(f))) {
        if (++stall >= kStallIterations) {
          out.converged = true;
          ++it;
          break;
        }
      } else {
        stall = 0;
      }
    }
    out.unitary = std::move(u);
    out.value = f;
    out.iterations = it;
    return out;
  }

  CMatrix members_of(const CMatrix& u) const { return weighted_ * u.leftCols(static_cast<Eigen::Index>(r_)).transpose(); }

  double total(const CMatrix& members) const {
    double f = 0.0;
    for (Eigen::Index i = 0; i < members.cols(); ++i) f += cost_(members.col(i));
    return f;
  }

 private:
  CMatrix step(const CMatrix& u, const Eigen::VectorXd& d, double t) const {
    std::vector<double> x(m_ * m_, 0.0);
    for (std::size_t k = 0; k < active_.size(); ++k) x[active_[k]] = t * d(static_cast<Eigen::Index>(k));
    return u * expm_antihermitian(detail::hermitian_from_parameters(x, m_));
  }

  // Value after rotating by theta along generator p, via a rank-one update
  // of the member matrix.
  double shifted(const CMatrix& u, const CMatrix& members, std::size_t p, double theta) const {
    const Generator g = generator_of(p, m_);
    CVector col_a;
    CVector col_b;
    rotate_columns(u, g, theta, col_a, col_b);
    CMatrix shifted_members = members;
    const auto a = static_cast<Eigen::Index>(g.a);
    shifted_members += weighted_.col(a) * (col_a - u.col(a)).transpose();
    if (g.kind != 0 && g.b < r_) {
      const auto b = static_cast<Eigen::Index>(g.b);
      shifted_members += weighted_.col(b) * (col_b - u.col(b)).transpose();
    }
    return total(shifted_members);
  }

  Eigen::VectorXd gradient(const CMatrix& u, const CMatrix& members) const {
    const double h = opts_.gradient_step;
    Eigen::VectorXd g(static_cast<Eigen::Index>(active_.size()));
    for (std::size_t k = 0; k < active_.size(); ++k) {
      g(static_cast<Eigen::Index>(k)) =
          (shifted(u, members, active_[k], h) - shifted(u, members, active_[k], -h)) / (2.0 * h);
    }
    return g;
  }

  CMatrix weighted_;  // D x r, columns sqrt(lambda_j) |e_j>
  std::size_t m_;
  std::size_t r_;
  const MemberCost& cost_;
  const EofOptions& opts_;
  std::vector<std::size_t> active_;
};

double safe_xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

}  // namespace

namespace detail {

CMatrix hermitian_from_parameters(std::span<const double> x, std::size_t m) {
  if (x.size() != m * m) throw ShapeError("hermitian_from_parameters: need m^2 parameters");
  const auto mi = static_cast<Eigen::Index>(m);
  CMatrix h = CMatrix::Zero(mi, mi);
  for (std::size_t a = 0; a < m; ++a) h(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(a)) = x[a];
  std::size_t p = m;
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b, p += 2) {
      const Complex z(x[p], x[p + 1]);
      h(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = z;
      h(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a)) = std::conj(z);
    }
  }
  return h;
}

void apply_generator(CMatrix& u, std::size_t p, double theta) {
  const auto m = static_cast<std::size_t>(u.cols());
  if (p >= m * m) throw ArgumentError("apply_generator: parameter index out of range");
  const Generator g = generator_of(p, m);
  CVector col_a;
  CVector col_b;
  rotate_columns(u, g, theta, col_a, col_b);
  u.col(static_cast<Eigen::Index>(g.a)) = col_a;
  if (g.kind != 0) u.col(static_cast<Eigen::Index>(g.b)) = col_b;
}

}  // namespace detail

std::size_t auto_ensemble_size(std::size_t rank) {
  return std::max(rank, std::min(rank * rank, kAutoEnsembleCap));
}

double binary_entropy(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return -safe_xlog2x(x) - safe_xlog2x(1.0 - x);
}

double weighted_entropy(const CMatrix& sigma) {
  double p = sigma.trace().real();
  if (p <= 0.0) return 0.0;
  double s = 0.0;
  if (sigma.rows() == 1) return 0.0;
  if (sigma.rows() == 2) {
    const double a = sigma(0, 0).real();
    const double b = sigma(1, 1).real();
    const double half = 0.5 * (a + b);
    const double disc = std::sqrt(0.25 * (a - b) * (a - b) + std::norm(sigma(0, 1)));
    const double l0 = half + disc;
    const double l1 = half - disc;
    if (l0 > kEntropyFloor * p) s -= l0 * std::log2(l0 / p);
    if (l1 > kEntropyFloor * p) s -= l1 * std::log2(l1 / p);
    return s;
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(sigma, Eigen::EigenvaluesOnly);
  for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
    const double l = solver.eigenvalues()(k);
    if (l > kEntropyFloor * p) s -= l * std::log2(l / p);
  }
  return s;
}

EntanglementCost::EntanglementCost(const Dims& dims, const Cut& cut) : split_(dims, cut.left()) {
  if (cut.num_subsystems() != dims.size()) {
    throw ArgumentError("EntanglementCost: cut does not match the state's subsystem count");
  }
}

double EntanglementCost::operator()(const CVector& member) const {
  const CMatrix m = split_.reshape(member);
  // The smaller Gram matrix carries the same nonzero spectrum.
  if (m.rows() <= m.cols()) return weighted_entropy(m * m.adjoint());
  return weighted_entropy(m.adjoint() * m);
}

double eof_pure(const PureState& psi, const Cut& cut) {
  if (cut.num_subsystems() != psi.num_subsystems()) {
    throw ArgumentError("eof_pure: cut does not match the state's subsystem count");
  }
  return von_neumann_entropy(reduced_state(psi, cut.left()));
}

double ensemble_average_entanglement(const Ensemble& e, const Cut& cut) {
  double total = 0.0;
  for (const auto& m : e.members()) total += m.weight * eof_pure(m.state, cut);
  return total;
}

namespace {

CMatrix spin_flip_operator() {
  CMatrix yy = CMatrix::Zero(4, 4);
  // sigma_y (x) sigma_y: anti-diagonal (-1, 1, 1, -1).
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  return yy;
}

// Singular values of tau = X^T (Y(x)Y) X, X = eigen-ensemble columns sqrt(l_j)|e_j>.
// Same numbers as sqrt(eig(rho rho~)) but no square roots of rounding noise.
double concurrence_of(const CMatrix& rho) {
  static const CMatrix yy = spin_flip_operator();
  Eigen::SelfAdjointEigenSolver<CMatrix> es((rho + rho.adjoint()) * 0.5);
  const double floor = 1e-14 * std::max(1.0, rho.trace().real());
  Eigen::Index keep = 0;
  for (Eigen::Index k = 0; k < 4; ++k) keep += es.eigenvalues()(k) > floor ? 1 : 0;
  if (keep == 0) return 0.0;
  CMatrix x(4, keep);
  for (Eigen::Index k = 4 - keep, c = 0; k < 4; ++k, ++c) {
    x.col(c) = std::sqrt(es.eigenvalues()(k)) * es.eigenvectors().col(k);
  }
  const CMatrix tau = x.transpose() * yy * x;
  Eigen::JacobiSVD<CMatrix> sv(tau);
  const RVector& s = sv.singularValues();  // descending
  double c = s(0);
  for (Eigen::Index k = 1; k < s.size(); ++k) c -= s(k);
  return std::max(0.0, c);
}

double wootters_from_concurrence(double c) {
  c = std::min(c, 1.0);
  return binary_entropy(0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c))));
}

}  // namespace

double concurrence_2q(const DensityMatrix& rho) {
  if (rho.dims() != Dims{2, 2}) throw ShapeError("concurrence_2q: dims must be (2, 2)");
  return concurrence_of(rho.matrix());
}

double eof_wootters_2q(const DensityMatrix& rho) {
  return wootters_from_concurrence(concurrence_2q(rho));
}

double weighted_wootters(const CMatrix& sigma) {
  if (sigma.rows() != 4 || sigma.cols() != 4) throw ShapeError("weighted_wootters: need 4x4");
  const double p = sigma.trace().real();
  if (p <= 0.0) return 0.0;
  return p * wootters_from_concurrence(concurrence_of(sigma / p));
}

EofEstimate minimize_over_ensembles(const DensityMatrix& rho, const MemberCost& cost,
                                    const EofOptions& opts, std::span<const Ensemble> warm_starts) {
  if (opts.restarts == 0) throw ArgumentError("eof_minimize: restarts must be positive");
  if (opts.max_iterations == 0) throw ArgumentError("eof_minimize: max_iterations must be positive");
  if (!(opts.gradient_step > 0.0) || !(opts.convergence_tol > 0.0)) {
    throw ArgumentError("eof_minimize: gradient_step and convergence_tol must be positive");
  }
  const EigenBasis basis = support_basis(rho);
  const std::size_t r = basis.rank();
  const std::size_t m = opts.ensemble_size.value_or(auto_ensemble_size(r));
  if (m < r) {
    throw ArgumentError("eof_minimize: ensemble size " + std::to_string(m) + " below rank " +
                        std::to_string(r));
  }
  if (m > kMaxDimension) throw SizeError("eof_minimize: ensemble size too large");

  const UnitarySearch search(basis, m, cost, opts);
  const std::size_t total_restarts = opts.restarts + warm_starts.size();
  std::vector<CMatrix> starts;
  starts.reserve(total_restarts);
  starts.push_back(identity(m));
  for (std::size_t k = 1; k < opts.restarts; ++k) {
    GaussianStream rng(derive_seed(opts.seed, k));
    std::vector<double> x(m * m);
    for (double& v : x) v = rng.normal();
    starts.push_back(expm_antihermitian(detail::hermitian_from_parameters(x, m)));
  }
  for (const Ensemble& e : warm_starts) {
    starts.push_back(unitary_completion(isometry_for_ensemble(basis, e, m).matrix()));
  }

  std::vector<RestartOutcome> outcomes(total_restarts);
  std::size_t threads = opts.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : opts.threads;
  threads = std::min(threads, total_restarts);
  if (threads <= 1) {
    for (std::size_t k = 0; k < total_restarts; ++k) outcomes[k] = search.run(starts[k]);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t k = next++; k < total_restarts; k = next++) outcomes[k] = search.run(starts[k]);
      });
    }
    for (auto& th : pool) th.join();
  }

  // Merge by restart index; ties keep the lowest index.
  std::size_t best = 0;
  std::vector<RestartTrace> traces;
  std::size_t iterations = 0;
  for (std::size_t k = 0; k < total_restarts; ++k) {
    const auto& o = outcomes[k];
    traces.push_back({k, k >= opts.restarts, o.initial_value, o.value, o.iterations, o.converged});
    iterations += o.iterations;
    if (o.value < outcomes[best].value) best = k;
  }
  const CMatrix v = outcomes[best].unitary.leftCols(static_cast<Eigen::Index>(r));
  Ensemble ensemble = hjw_ensemble(basis, Isometry(v, 1e-8));
  return EofEstimate{.value = outcomes[best].value,
                     .best_ensemble = std::move(ensemble),
                     .converged = outcomes[best].converged,
                     .restarts_used = total_restarts,
                     .iterations = iterations,
                     .ensemble_size = m,
                     .best_restart = best,
                     .traces = std::move(traces)};
}

EofEstimate eof_minimize(const DensityMatrix& rho, const Cut& cut, const EofOptions& opts,
                         std::span<const Ensemble> warm_starts) {
  if (cut.num_subsystems() != rho.num_subsystems()) {
    throw ArgumentError("eof_minimize: cut does not match the state's subsystem count");
  }
  const EntanglementCost cost(rho.dims(), cut);
  EofEstimate est = minimize_over_ensembles(
      rho, [&cost](const CVector& member) { return cost(member); }, opts, warm_starts);
  est.value = std::max(0.0, ensemble_average_entanglement(est.best_ensemble, cut));
  return est;
}

}  // namespace eofkit
