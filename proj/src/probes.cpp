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

#include "eofkit/probes.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "eofkit/errors.hpp"
#include "eofkit/random.hpp"

namespace eofkit {

const char* const kProbeCaveat =
    "This probe can FALSIFY the relation (a reproducible negative gap beyond slack) but never "
    "verifies it: numerical EoF is an upper bound on the true EoF, so positive gaps using "
    "upper-bounded factor terms are conservative evidence only.";

std::string to_string(Semantics s) {
  switch (s) {
    case Semantics::kIdentity:
      return "identity";
    case Semantics::kInequality:
      return "inequality";
    case Semantics::kViolationSearch:
      return "violation-search";
  }
  return "unknown";
}

std::string to_string(Tier t) { return t == Tier::kEntropy ? "entropy" : "optimizer"; }

void CheckReport::add_relation(std::string relation, Semantics semantics, Tier tier, double tol) {
  relations.push_back(RelationSummary{std::move(relation), semantics, tier, tol});
}

void CheckReport::record(std::size_t sample, const std::string& relation, std::string descriptor, double gap) {
  auto it = std::find_if(relations.begin(), relations.end(),
                         [&](const RelationSummary& r) { return r.name == relation; });
  if (it == relations.end()) throw ArgumentError("CheckReport: unknown relation '" + relation + "'");
  ++it->evaluations;
  if (std::isnan(gap)) {
    it->passed = false;
  } else if (it->semantics == Semantics::kIdentity) {
    it->max_abs_residual = std::max(it->max_abs_residual, std::abs(gap));
    if (std::abs(gap) > it->tol) it->passed = false;
  } else {
    it->min_gap = std::min(it->min_gap, gap);
    if (gap < -it->tol) it->passed = false;
  }
  per_sample.push_back({sample, relation, std::move(descriptor), gap});
}

void CheckReport::finalize() {
  min_gap = std::numeric_limits<double>::infinity();
  max_abs_residual = 0.0;
  passed = true;
  for (const auto& r : relations) {
    if (r.semantics == Semantics::kIdentity) {
      max_abs_residual = std::max(max_abs_residual, r.max_abs_residual);
    } else {
      min_gap = std::min(min_gap, r.min_gap);
    }
    passed = passed && r.passed;
  }
}

std::string CheckReport::semantics() const {
  bool identity = false;
  bool inequality = false;
  for (const auto& r : relations) {
    (r.semantics == Semantics::kIdentity ? identity : inequality) = true;
  }
  if (identity && inequality) return "mixed";
  return identity ? "identity" : "inequality";
}

namespace {

Json finite_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string number(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

}  // namespace

Json report_to_json(const CheckReport& r) {
  Json relations = Json::array();
  for (const auto& rel : r.relations) {
    relations.push_back({{"name", rel.name},
                         {"semantics", to_string(rel.semantics)},
                         {"tier", to_string(rel.tier)},
                         {"tol", rel.tol},
                         {"min_gap", finite_or_null(rel.min_gap)},
                         {"max_abs_residual", rel.max_abs_residual},
                         {"evaluations", rel.evaluations},
                         {"passed", rel.passed}});
  }
  Json samples = Json::array();
  for (const auto& s : r.per_sample) {
    samples.push_back({{"sample", s.sample},
                       {"relation", s.relation},
                       {"descriptor", s.descriptor},
                       {"gap", finite_or_null(s.gap)}});
  }
  return Json{{"name", r.name},
              {"semantics", r.semantics()},
              {"samples", r.samples},
              {"seed", r.seed},
              {"min_gap", finite_or_null(r.min_gap)},
              {"max_abs_residual", r.max_abs_residual},
              {"passed", r.passed},
              {"relations", relations},
              {"per_sample", samples},
              {"details", r.details}};
}

Json report_to_json(const ProbeResult& r) {
  Json per_trial = Json::array();
  for (double g : r.per_trial) per_trial.push_back(finite_or_null(g));
  return Json{{"name", r.name},
              {"source", r.source},
              {"semantics", to_string(Semantics::kViolationSearch)},
              {"caveat", kProbeCaveat},
              {"trials", r.trials},
              {"seed", r.seed},
              {"slack", r.slack},
              {"min_gap", finite_or_null(r.min_gap)},
              {"argmin_trial", r.argmin_trial},
              {"argmin", r.argmin},
              {"violation_found", r.violation_found},
              {"per_trial", per_trial},
              {"details", r.details}};
}

std::string report_to_csv(const CheckReport& r) {
  std::string out = "check,sample,relation,descriptor,gap\n";
  for (const auto& s : r.per_sample) {
    out += csv_field(r.name) + "," + std::to_string(s.sample) + "," + csv_field(s.relation) + "," +
           csv_field(s.descriptor) + "," + number(s.gap) + "\n";
  }
  return out;
}

std::string report_to_csv(const ProbeResult& r) {
  std::string out = "probe,trial,gap\n";
  for (std::size_t t = 0; t < r.per_trial.size(); ++t) {
    out += csv_field(r.name) + "," + std::to_string(t) + "," + number(r.per_trial[t]) + "\n";
  }
  return out;
}

namespace {

// Flat Dirichlet sample.
std::vector<double> random_weights(GaussianStream& rng, std::size_t n) {
  std::vector<double> w(n);
  double total = 0.0;
  for (double& x : w) {
    x = -std::log1p(-rng.uniform()) + 1e-300;
    total += x;
  }
  for (double& x : w) x /= total;
  return w;
}

template <typename T>
T pick(GaussianStream& rng, const std::vector<T>& v) {
  return v[rng.uniform_index(0, v.size() - 1)];
}

double entropy_of(const CVector& v, const Dims& dims, std::vector<std::size_t> keep) {
  return matrix_entropy(SubsystemSplit(dims, std::move(keep)).reduce_vector(v));
}

CMatrix mix_matrices(const std::vector<double>& w, const std::vector<CMatrix>& ms) {
  CMatrix out = CMatrix::Zero(ms.front().rows(), ms.front().cols());
  for (std::size_t i = 0; i < w.size(); ++i) out += w[i] * ms[i];
  return out;
}

std::string dims_string(const Dims& d) {
  std::string s;
  for (std::size_t k = 0; k < d.size(); ++k) s += (k ? "x" : "") + std::to_string(d[k]);
  return s;
}

void require_bipartite(const DensityMatrix& rho, const char* who) {
  if (rho.num_subsystems() != 2) {
    throw ArgumentError(std::string(who) + ": state must have exactly two subsystems");
  }
}

}  // namespace

CheckReport check_flagged_identity(const SamplingOptions& opts) {
  const std::vector<std::size_t> dims = opts.dims.empty() ? std::vector<std::size_t>{2, 3, 4} : opts.dims;
  CheckReport r;
  r.name = "flagged";
  r.seed = opts.seed;
  r.samples = opts.samples;
  r.add_relation("flagged_identity", Semantics::kIdentity, Tier::kEntropy, opts.tol);
  for (std::size_t s = 0; s < opts.samples; ++s) {
    const std::uint64_t ss = derive_seed(opts.seed, s);
    GaussianStream rng(ss);
    const std::size_t n = rng.uniform_index(2, 4);
    const std::size_t d = pick(rng, dims);
    const std::vector<double> w = random_weights(rng, n);
    std::vector<DensityMatrix> states;
    double mixed = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t rank = rng.uniform_index(1, d);
      states.push_back(random_density(d, rank, derive_seed(ss, k + 1)));
      mixed += w[k] * von_neumann_entropy(states.back());
    }
    const double lhs = von_neumann_entropy(flagged_state(w, states));
    const double rhs = shannon_entropy(w) + mixed;
    r.record(s, "flagged_identity", "members=" + std::to_string(n) + " d=" + std::to_string(d), lhs - rhs);
  }
  r.finalize();
  return r;
}

CheckReport check_strong_concavity(const SamplingOptions& opts) {
  const std::vector<std::size_t> dims = opts.dims.empty() ? std::vector<std::size_t>{2, 3} : opts.dims;
  CheckReport r;
  r.name = "strong_concavity";
  r.seed = opts.seed;
  r.samples = opts.samples;
  r.add_relation("strong_concavity_first", Semantics::kInequality, Tier::kEntropy, opts.tol);
  r.add_relation("strong_concavity_second", Semantics::kInequality, Tier::kEntropy, opts.tol);
  r.add_relation("concavity", Semantics::kInequality, Tier::kEntropy, opts.tol);
  r.add_relation("mixing_bound_pure", Semantics::kInequality, Tier::kEntropy, opts.tol);
  r.add_relation("mixing_bound_holevo", Semantics::kInequality, Tier::kEntropy, opts.tol);
  for (std::size_t s = 0; s < opts.samples; ++s) {
    const std::uint64_t ss = derive_seed(opts.seed, s);
    GaussianStream rng(ss);
    const std::size_t n = rng.uniform_index(2, 4);
    const std::size_t d1 = pick(rng, dims);
    const std::size_t d2 = pick(rng, dims);
    const std::vector<double> w = random_weights(rng, n);
    std::vector<CMatrix> r1, r2, joint, pure;
    double avg1 = 0.0, avg2 = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const DensityMatrix a = random_density(d1, rng.uniform_index(1, d1), derive_seed(ss, 3 * k + 1));
      const DensityMatrix b = random_density(d2, rng.uniform_index(1, d2), derive_seed(ss, 3 * k + 2));
      const PureState psi = random_pure({d1}, derive_seed(ss, 3 * k + 3));
      avg1 += w[k] * von_neumann_entropy(a);
      avg2 += w[k] * von_neumann_entropy(b);
      r1.push_back(a.matrix());
      r2.push_back(b.matrix());
      joint.push_back(kron(a.matrix(), b.matrix()));
      pure.push_back(psi.vector() * psi.vector().adjoint());
    }
    const double s_joint = matrix_entropy(mix_matrices(w, joint));
    const double s_mix1 = matrix_entropy(mix_matrices(w, r1));
    const double s_mix2 = matrix_entropy(mix_matrices(w, r2));
    const double h = shannon_entropy(w);
    const std::string desc = "members=" + std::to_string(n) + " dims=" + std::to_string(d1) + "x" +
                             std::to_string(d2);
    r.record(s, "strong_concavity_first", desc, s_joint - avg1 - s_mix2);
    r.record(s, "strong_concavity_second", desc, s_joint - s_mix1 - avg2);
    r.record(s, "concavity", desc, s_joint - avg1 - avg2);
    r.record(s, "mixing_bound_pure", desc, h - matrix_entropy(mix_matrices(w, pure)));
    r.record(s, "mixing_bound_holevo", desc, h + avg1 - s_mix1);
  }
  r.finalize();
  return r;
}

CheckReport check_ssa(const SamplingOptions& opts) {
  Dims d = opts.dims.empty() ? Dims{2, 2, 2} : Dims(opts.dims.begin(), opts.dims.end());
  if (d.size() != 3) throw ArgumentError("check_ssa: dims must list three dimensions");
  CheckReport r;
  r.name = "ssa";
  r.seed = opts.seed;
  r.samples = opts.samples;
  r.add_relation("ssa", Semantics::kInequality, Tier::kEntropy, opts.tol);
  r.add_relation("ssa_product_equality", Semantics::kIdentity, Tier::kEntropy, opts.tol);
  const Dims full{d[0], d[1], d[2], d[0] * d[1] * d[2]};
  const std::string desc = "dims=" + dims_string(d);
  for (std::size_t s = 0; s < opts.samples; ++s) {
    const PureState psi = random_pure(full, derive_seed(opts.seed, s));
    const CVector& v = psi.vector();
    const double s123 = entropy_of(v, full, {0, 1, 2});
    const double s12 = entropy_of(v, full, {0, 1});
    const double s23 = entropy_of(v, full, {1, 2});
    const double s2 = entropy_of(v, full, {1});
    r.record(s, "ssa", desc, s12 + s23 - s123 - s2);

    const DensityMatrix rho12 = reduced_state(psi, {0, 1});
    const DensityMatrix rho3 = reduced_state(psi, {2});
    const DensityMatrix prod = tensor(rho12, rho3);
    const double p123 = von_neumann_entropy(prod);
    const double p12 = von_neumann_entropy(partial_trace(prod, {0, 1}));
    const double p23 = von_neumann_entropy(partial_trace(prod, {1, 2}));
    const double p2 = von_neumann_entropy(partial_trace(prod, {1}));
    r.record(s, "ssa_product_equality", desc, p12 + p23 - p123 - p2);
  }
  r.finalize();
  return r;
}

CheckReport check_hjw_roundtrip(const SamplingOptions& opts) {
  std::size_t max_d = 6;
  if (!opts.dims.empty()) max_d = *std::max_element(opts.dims.begin(), opts.dims.end());
  if (max_d < 2) throw ArgumentError("check_hjw_roundtrip: dimension must be at least 2");
  CheckReport r;
  r.name = "hjw";
  r.seed = opts.seed;
  r.samples = opts.samples;
  r.add_relation("hjw_roundtrip", Semantics::kIdentity, Tier::kEntropy, opts.tol);
  r.add_relation("hjw_weight_sum", Semantics::kIdentity, Tier::kEntropy, opts.tol);
  for (std::size_t s = 0; s < opts.samples; ++s) {
    const std::uint64_t ss = derive_seed(opts.seed, s);
    GaussianStream rng(ss);
    const std::size_t d = rng.uniform_index(2, max_d);
    const std::size_t rank = rng.uniform_index(1, std::min<std::size_t>(d, 4));
    const DensityMatrix rho = random_density(d, rank, derive_seed(ss, 1));
    const std::size_t r_eff = support_basis(rho).rank();
    const std::size_t m = rng.uniform_index(r_eff, std::max<std::size_t>(r_eff, 12));
    const Isometry u = random_isometry(m, r_eff, derive_seed(ss, 2));
    const std::string desc = "d=" + std::to_string(d) + " rank=" + std::to_string(r_eff) +
                             " members=" + std::to_string(m);
    r.record(s, "hjw_roundtrip", desc, frobenius_distance(mix(hjw_ensemble(rho, u)).matrix(), rho.matrix()));
    double total = 0.0;
    for (double p : hjw_weights(rho, u)) total += p;
    r.record(s, "hjw_weight_sum", desc, total - 1.0);
  }
  r.finalize();
  return r;
}

double eof_estimate(const DensityMatrix& rho, const EofOptions& opts, std::span<const Ensemble> warm_starts) {
  require_bipartite(rho, "eof_estimate");
  const Dims& d = rho.dims();
  if (d[0] == 1 || d[1] == 1) return 0.0;
  if (d[0] == 2 && d[1] == 2) return eof_wootters_2q(rho);
  return eof_minimize(rho, Cut({0}, 2), opts, warm_starts).value;
}

CheckReport check_case1(const Case1Spec& spec, const Case1Options& opts) {
  const PureState psi = case1_state(spec);
  const CVector& v = psi.vector();
  const Dims& dims = psi.dims();
  const double s_aa2 = entropy_of(v, dims, {0, 2});
  const double s_a = entropy_of(v, dims, {0});
  const double s_a2 = entropy_of(v, dims, {2});

  const Ensemble primed = case1_primed_decomposition(spec);
  const Ensemble unprimed = case1_unprimed_decomposition(spec);
  const double avg_primed = ensemble_average_entanglement(primed, Cut({0}, 2));
  const double avg_unprimed = ensemble_average_entanglement(unprimed, Cut({0}, 2));

  const Ensemble warm_primed[] = {primed};
  const Ensemble warm_unprimed[] = {unprimed};
  const double ef_primed = eof_estimate(reduced_state(psi, {2, 3}), opts.eof, warm_primed);
  const double ef_unprimed = eof_estimate(reduced_state(psi, {0, 1}), opts.eof, warm_unprimed);

  CheckReport r;
  r.name = "case1";
  r.samples = 1;
  r.seed = opts.eof.seed;
  r.add_relation("medium_identity", Semantics::kIdentity, Tier::kEntropy, opts.tol);
  r.add_relation("medium_identity_mirror", Semantics::kIdentity, Tier::kEntropy, opts.tol);
  r.add_relation("entropy_vs_entropy_plus_eof", Semantics::kInequality, Tier::kOptimizer, opts.slack);
  r.add_relation("entropy_vs_eof_sum", Semantics::kInequality, Tier::kOptimizer, opts.slack);
  const std::string desc =
      "lambda " + std::to_string(spec.lambda.rows()) + "x" + std::to_string(spec.lambda.cols());
  r.record(0, "medium_identity", desc, s_aa2 - s_a - avg_primed);
  r.record(0, "medium_identity_mirror", desc, s_aa2 - s_a2 - avg_unprimed);
  r.record(0, "entropy_vs_entropy_plus_eof", desc, s_aa2 - s_a - ef_primed);
  r.record(0, "entropy_vs_eof_sum", desc, s_aa2 - ef_unprimed - ef_primed);
  r.details = Json{{"S_AA'", s_aa2},
                   {"S_A", s_a},
                   {"S_A'", s_a2},
                   {"decomposition_average_A'B'", avg_primed},
                   {"decomposition_average_AB", avg_unprimed},
                   {"E_f(A'B')", ef_primed},
                   {"E_f(AB)", ef_unprimed}};
  r.finalize();
  return r;
}

namespace {

void merge_into(CheckReport& dst, const CheckReport& src, std::size_t sample, const std::string& prefix) {
  for (const auto& rel : src.relations) {
    const bool known = std::any_of(dst.relations.begin(), dst.relations.end(),
                                   [&](const RelationSummary& x) { return x.name == rel.name; });
    if (!known) dst.add_relation(rel.name, rel.semantics, rel.tier, rel.tol);
  }
  for (const auto& g : src.per_sample) dst.record(sample, g.relation, prefix + g.descriptor, g.gap);
}

}  // namespace

CheckReport check_case1_suite(std::size_t samples, std::size_t max_dim, std::uint64_t seed,
                              const Case1Options& opts) {
  if (max_dim < 1) throw ArgumentError("check_case1_suite: max_dim must be positive");
  CheckReport r;
  r.name = "case1";
  r.seed = seed;
  r.add_relation("exact_values", Semantics::kIdentity, Tier::kOptimizer, 1e-6);
  Json per = Json::array();
  std::size_t sample = 0;

  // Fixed cases with known values: 2 = 1 + 1 and 1 = 1 + 0.
  struct Fixed {
    const char* name;
    RMatrix lambda;
    double s_aa2, ef_ab, ef_a2b2;
  };
  RMatrix bell2(2, 2);
  bell2.setConstant(0.25);
  RMatrix classical(2, 2);
  classical << 0.5, 0.0, 0.0, 0.5;
  const Fixed fixed[] = {{"double_bell", bell2, 2.0, 1.0, 1.0}, {"classical", classical, 1.0, 0.0, 0.0}};
  for (const auto& f : fixed) {
    Case1Options o = opts;
    o.eof.seed = derive_seed(seed, sample);
    const CheckReport one = check_case1(Case1Spec{f.lambda}, o);
    merge_into(r, one, sample, std::string(f.name) + " ");
    const Json& d = one.details;
    const double err = std::max({std::abs(d["S_AA'"].get<double>() - f.s_aa2),
                                 std::abs(d["E_f(AB)"].get<double>() - f.ef_ab),
                                 std::abs(d["E_f(A'B')"].get<double>() - f.ef_a2b2)});
    r.record(sample, "exact_values", f.name, err);
    per.push_back({{"sample", sample}, {"case", f.name}, {"values", d}});
    ++sample;
  }
  for (std::size_t s = 0; s < samples; ++s, ++sample) {
    const std::uint64_t ss = derive_seed(seed, sample);
    GaussianStream rng(ss);
    const std::size_t rows = max_dim == 1 ? 1 : rng.uniform_index(2, max_dim);
    const std::size_t cols = max_dim == 1 ? 1 : rng.uniform_index(2, max_dim);
    const std::vector<double> w = random_weights(rng, rows * cols);
    RMatrix lambda(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t k = 0; k < w.size(); ++k) {
      lambda(static_cast<Eigen::Index>(k / cols), static_cast<Eigen::Index>(k % cols)) = w[k];
    }
    Case1Options o = opts;
    o.eof.seed = derive_seed(ss, 1);
    const CheckReport one = check_case1(Case1Spec{lambda}, o);
    merge_into(r, one, sample, "");
    per.push_back({{"sample", sample}, {"case", "random"}, {"values", one.details}});
  }
  r.samples = sample;
  r.details = Json{{"cases", per}};
  r.finalize();
  return r;
}

// ---------------------------------------------------------------------------
// Product-instance member analysis.

namespace {

struct MemberTerms {
  double weight = 0.0;
  double s_aa2 = 0.0;
  double s_a = 0.0;
  double s_a2 = 0.0;
  double term_k = 0.0;  // sum_K q_K S(A^{iK})
  double term_j = 0.0;  // sum_J q_J S(A'^{iJ})
  double s_x1 = 0.0;
  double s_x2 = 0.0;
  double s_x3 = 0.0;
  CVector member;  // normalized, on (A, B, A', B')
};

void check_instance(const ProductInstance& inst) {
  if (inst.factor_a.dims.size() != 2 || inst.factor_a2.dims.size() != 2) {
    throw ArgumentError("ProductInstance: factors must be bipartite");
  }
  const auto n = static_cast<Eigen::Index>(inst.factor_a.rank() * inst.factor_a2.rank());
  if (inst.isometry.cols() != n) throw ShapeError("ProductInstance: isometry columns must equal rank product");
  if (inst.isometry.rows() < n) throw ShapeError("ProductInstance: isometry has fewer rows than columns");
  if (inst.member >= static_cast<std::size_t>(inst.isometry.rows())) {
    throw ArgumentError("ProductInstance: member index out of range");
  }
}

double member_weight(const ProductInstance& inst, Eigen::Index i) {
  const auto nk = static_cast<Eigen::Index>(inst.factor_a2.rank());
  double p = 0.0;
  for (Eigen::Index c = 0; c < inst.isometry.cols(); ++c) {
    p += std::norm(inst.isometry(i, c)) * inst.factor_a.values(c / nk) * inst.factor_a2.values(c % nk);
  }
  return p;
}

MemberTerms analyze_member(const ProductInstance& inst) {
  check_instance(inst);
  const EigenBasis& fa = inst.factor_a;
  const EigenBasis& fb = inst.factor_a2;
  const auto nj = static_cast<Eigen::Index>(fa.rank());
  const auto nk = static_cast<Eigen::Index>(fb.rank());
  const auto i = static_cast<Eigen::Index>(inst.member);
  MemberTerms t;
  t.weight = member_weight(inst, i);
  if (t.weight <= 1e-14) throw ArgumentError("ProductInstance: member has zero weight");
  const double norm = 1.0 / std::sqrt(t.weight);

  CMatrix ur(nj, nk);
  for (Eigen::Index j = 0; j < nj; ++j) {
    for (Eigen::Index k = 0; k < nk; ++k) ur(j, k) = inst.isometry(i, j * nk + k);
  }
  const RVector sj = fa.values.cwiseSqrt();
  const RVector sk = fb.values.cwiseSqrt();
  const CMatrix c = sj.asDiagonal() * ur * sk.asDiagonal();

  // |Psi> as a (AB) x (A'B') matrix, flattened row-major onto (A, B, A', B').
  const CMatrix mat = fa.vectors * c * fb.vectors.transpose() * norm;
  const Eigen::Index da = mat.rows(), da2 = mat.cols();
  t.member.resize(da * da2);
  for (Eigen::Index a = 0; a < da; ++a) {
    for (Eigen::Index b = 0; b < da2; ++b) t.member(a * da2 + b) = mat(a, b);
  }
  const Dims dims{fa.dims[0], fa.dims[1], fb.dims[0], fb.dims[1]};
  t.s_aa2 = entropy_of(t.member, dims, {0, 2});
  t.s_a = entropy_of(t.member, dims, {0});
  t.s_a2 = entropy_of(t.member, dims, {2});

  const SubsystemSplit split_a(fa.dims, {0});
  const SubsystemSplit split_a2(fb.dims, {0});
  std::vector<CMatrix> red_j, red_k;
  for (Eigen::Index j = 0; j < nj; ++j) red_j.push_back(split_a.reduce_vector(fa.vectors.col(j)));
  for (Eigen::Index k = 0; k < nk; ++k) red_k.push_back(split_a2.reduce_vector(fb.vectors.col(k)));

  const auto la = static_cast<Eigen::Index>(fa.dims[0]);
  const auto la2 = static_cast<Eigen::Index>(fb.dims[0]);
  CMatrix x1 = CMatrix::Zero(la * la2, la * la2);
  CMatrix x2 = x1, x3 = x1;
  for (Eigen::Index k = 0; k < nk; ++k) {
    const CVector phi = fa.vectors * (sj.asDiagonal() * ur.col(k)) * norm;
    const CMatrix sigma = split_a.reduce_vector(phi);
    t.term_k += fb.values(k) * weighted_entropy(sigma);
    x1 += fb.values(k) * kron(sigma, red_k[static_cast<std::size_t>(k)]);
  }
  for (Eigen::Index j = 0; j < nj; ++j) {
    const CVector chi = fb.vectors * (sk.asDiagonal() * ur.row(j).transpose()) * norm;
    const CMatrix sigma = split_a2.reduce_vector(chi);
    t.term_j += fa.values(j) * weighted_entropy(sigma);
    x2 += fa.values(j) * kron(red_j[static_cast<std::size_t>(j)], sigma);
    for (Eigen::Index k = 0; k < nk; ++k) {
      const double q = fa.values(j) * fb.values(k) * std::norm(ur(j, k)) / t.weight;
      x3 += q * kron(red_j[static_cast<std::size_t>(j)], red_k[static_cast<std::size_t>(k)]);
    }
  }
  t.s_x1 = matrix_entropy(x1);
  t.s_x2 = matrix_entropy(x2);
  t.s_x3 = matrix_entropy(x3);
  return t;
}

Json basis_to_json(const EigenBasis& b) {
  Json values = Json::array();
  for (Eigen::Index k = 0; k < b.values.size(); ++k) values.push_back(b.values(k));
  return Json{{"dims", b.dims}, {"values", values}, {"vectors", matrix_to_json(b.vectors)}};
}

EigenBasis basis_from_json(const Json& doc) {
  if (!doc.is_object() || !doc.contains("dims") || !doc.contains("values") || !doc.contains("vectors")) {
    throw ArgumentError("instance: factor needs dims, values and vectors");
  }
  EigenBasis b;
  b.dims = doc["dims"].get<Dims>();
  const auto n = static_cast<Eigen::Index>(doc["values"].size());
  b.values.resize(n);
  for (Eigen::Index k = 0; k < n; ++k) b.values(k) = doc["values"][static_cast<std::size_t>(k)].get<double>();
  b.vectors = matrix_from_json(doc["vectors"], static_cast<Eigen::Index>(total_dimension(b.dims)), n);
  return b;
}

}  // namespace

QuestionGaps evaluate_questions(const ProductInstance& inst) {
  const MemberTerms t = analyze_member(inst);
  return QuestionGaps{t.s_aa2 - t.term_k - t.term_j, t.s_aa2 - t.s_x1 - t.s_x2 + t.s_x3, t.weight};
}

PureState product_member(const ProductInstance& inst) {
  MemberTerms t = analyze_member(inst);
  return PureState({inst.factor_a.dims[0], inst.factor_a.dims[1], inst.factor_a2.dims[0], inst.factor_a2.dims[1]},
                   std::move(t.member), 1e-8);
}

Json instance_to_json(const ProductInstance& inst) {
  return Json{{"factor_a", basis_to_json(inst.factor_a)},
              {"factor_a2", basis_to_json(inst.factor_a2)},
              {"isometry",
               {{"rows", inst.isometry.rows()}, {"cols", inst.isometry.cols()}, {"data", matrix_to_json(inst.isometry)}}},
              {"member", inst.member}};
}

ProductInstance instance_from_json(const Json& doc) {
  if (!doc.is_object() || !doc.contains("isometry") || !doc.contains("member")) {
    throw ArgumentError("instance: missing isometry or member");
  }
  ProductInstance inst{basis_from_json(doc.at("factor_a")), basis_from_json(doc.at("factor_a2")), CMatrix(),
                       doc["member"].get<std::size_t>()};
  const Json& iso = doc["isometry"];
  inst.isometry = matrix_from_json(iso.at("data"), iso.at("rows").get<Eigen::Index>(), iso.at("cols").get<Eigen::Index>());
  check_instance(inst);
  return inst;
}

// ---------------------------------------------------------------------------
// Case II chain.

CheckReport check_case2(const Case2Spec& spec_a, const Case2Spec& spec_a2, const Case2Options& opts) {
  const DensityMatrix fa = case2_factor(spec_a);
  const DensityMatrix fa2 = case2_factor(spec_a2);
  const EigenBasis ba = case2_basis(spec_a);
  const EigenBasis ba2 = case2_basis(spec_a2);
  const std::size_t n = ba.rank() * ba2.rank();

  CheckReport r;
  r.name = "case2";
  r.seed = opts.seed;
  r.samples = opts.decompositions;
  r.add_relation("member_bound", Semantics::kInequality, Tier::kEntropy, opts.member_tol);
  r.add_relation("decomposition_average", Semantics::kInequality, Tier::kOptimizer, opts.slack);
  r.add_relation("factor_block_eof", Semantics::kIdentity, Tier::kOptimizer, opts.slack);
  r.add_relation("additivity", Semantics::kIdentity, Tier::kOptimizer, opts.slack);

  EofOptions eo = opts.eof;
  eo.seed = derive_seed(opts.seed, 1000001);
  const double e_a = eof_estimate(fa, eo);
  eo.seed = derive_seed(opts.seed, 1000002);
  const double e_a2 = eof_estimate(fa2, eo);
  eo.seed = derive_seed(opts.seed, 1000003);
  const EofEstimate prod = eof_minimize(tensor(fa, fa2), Cut({0, 2}, 4), eo);

  for (std::size_t k = 0; k < opts.decompositions; ++k) {
    const Isometry u = random_isometry(n + opts.extra_members, n, derive_seed(opts.seed, k));
    ProductInstance inst{ba, ba2, u.matrix(), 0};
    double average = 0.0;
    for (std::size_t i = 0; i < u.rows(); ++i) {
      inst.member = i;
      if (member_weight(inst, static_cast<Eigen::Index>(i)) <= 1e-12) continue;
      const MemberTerms t = analyze_member(inst);
      average += t.weight * t.s_aa2;
      r.record(k, "member_bound", "decomposition=" + std::to_string(k) + " member=" + std::to_string(i),
               t.s_aa2 - t.term_k - t.s_a2);
    }
    r.record(k, "decomposition_average", "decomposition=" + std::to_string(k), average - e_a - e_a2);
  }

  // Each factor's EoF is the weighted sum of its block entanglements.
  const Case2Spec* specs[] = {&spec_a, &spec_a2};
  const double estimates[] = {e_a, e_a2};
  for (std::size_t f = 0; f < 2; ++f) {
    double blocks = 0.0;
    for (const auto& blk : specs[f]->blocks) blocks += blk.weight * eof_pure(blk.state, Cut({0}, 2));
    r.record(0, "factor_block_eof", f == 0 ? "factor AB" : "factor A'B'", estimates[f] - blocks);
  }
  r.record(0, "additivity", "product AA'|BB'", prod.value - e_a - e_a2);
  r.details = Json{{"E_f(AB)", e_a},
                   {"E_f(A'B')", e_a2},
                   {"E_f(product)", prod.value},
                   {"product_converged", prod.converged},
                   {"product_ensemble_size", prod.ensemble_size}};
  r.finalize();
  return r;
}

// ---------------------------------------------------------------------------
// Relation chain.

CheckReport relation_chain_check(const DensityMatrix& rho_a, const DensityMatrix& rho_b, const ChainOptions& opts) {
  require_bipartite(rho_a, "relation_chain_check");
  require_bipartite(rho_b, "relation_chain_check");
  if (rho_a.dim() > 4 || rho_b.dim() > 4) {
    throw SizeError("relation_chain_check: each factor must have total dimension <= 4");
  }
  const DensityMatrix prod = tensor(rho_a, rho_b);
  const Dims dims = prod.dims();

  struct Term {
    SubsystemSplit split;
    bool entangled;  // E_f of the pair instead of the entropy of the single side
    Dims pair_dims;
  };
  auto term_value = [](const Term& t, const CVector& v) {
    const CMatrix sigma = t.split.reduce_vector(v);
    if (!t.entangled) return weighted_entropy(sigma);
    if (t.pair_dims[0] == 1 || t.pair_dims[1] == 1) return 0.0;
    return weighted_wootters(sigma);
  };
  const Term s_a{SubsystemSplit(dims, {0}), false, {}};
  const Term s_a2{SubsystemSplit(dims, {2}), false, {}};
  const Term e_ab{SubsystemSplit(dims, {0, 1}), true, rho_a.dims()};
  const Term e_a2b2{SubsystemSplit(dims, {2, 3}), true, rho_b.dims()};
  const std::pair<const Term*, const Term*> costs[] = {{&s_a, &s_a2}, {&s_a, &e_a2b2}, {&e_ab, &s_a2}, {&e_ab, &e_a2b2}};
  const char* names[] = {"S(A)+S(A')", "S(A)+E_f(A'B')", "E_f(AB)+S(A')", "E_f(AB)+E_f(A'B')"};

  CheckReport r;
  r.name = "relation_chain";
  r.seed = opts.eof.seed;
  r.samples = 1;
  r.add_relation("chain_spread", Semantics::kIdentity, Tier::kOptimizer, opts.slack);
  r.add_relation("chain_vs_factor_sum", Semantics::kIdentity, Tier::kOptimizer, opts.slack);
  const double sum = eof_estimate(rho_a, opts.eof) + eof_estimate(rho_b, opts.eof);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  Json values = Json::object();
  for (std::size_t c = 0; c < 4; ++c) {
    const Term* x = costs[c].first;
    const Term* y = costs[c].second;
    const MemberCost cost = [&, x, y](const CVector& v) { return term_value(*x, v) + term_value(*y, v); };
    EofOptions eo = opts.eof;
    eo.seed = derive_seed(opts.eof.seed, c);
    const double value = minimize_over_ensembles(prod, cost, eo).value;
    values[names[c]] = value;
    lo = std::min(lo, value);
    hi = std::max(hi, value);
    r.record(0, "chain_vs_factor_sum", names[c], value - sum);
  }
  r.record(0, "chain_spread", "max - min", hi - lo);
  values["E_f(AB)+E_f(A'B') separately"] = sum;
  r.details = values;
  r.finalize();
  return r;
}

// ---------------------------------------------------------------------------
// Weak additivity.

CheckReport weak_additivity_check(const std::vector<std::pair<DensityMatrix, DensityMatrix>>& pairs,
                                  const WeakAdditivityOptions& opts) {
  CheckReport r;
  r.name = "weak_additivity";
  r.seed = opts.eof.seed;
  r.samples = pairs.size();
  r.add_relation("weak_additivity", Semantics::kInequality, Tier::kOptimizer, opts.slack);
  Json per = Json::array();
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto& [a, b] = pairs[k];
    require_bipartite(a, "weak_additivity_check");
    require_bipartite(b, "weak_additivity_check");
    EofOptions eo = opts.eof;
    eo.seed = derive_seed(opts.eof.seed, 3 * k);
    const EofEstimate ea = eof_minimize(a, Cut({0}, 2), eo);
    eo.seed = derive_seed(opts.eof.seed, 3 * k + 1);
    const EofEstimate eb = eof_minimize(b, Cut({0}, 2), eo);

    const DensityMatrix prod = tensor(a, b);
    const std::size_t m = opts.eof.ensemble_size.value_or(auto_ensemble_size(support_basis(prod).rank()));
    std::vector<Ensemble> warm;
    if (opts.warm_start && ea.best_ensemble.size() * eb.best_ensemble.size() <= m) {
      std::vector<EnsembleMember> members;
      for (const auto& x : ea.best_ensemble.members()) {
        for (const auto& y : eb.best_ensemble.members()) {
          members.push_back({x.weight * y.weight, tensor(x.state, y.state)});
        }
      }
      warm.emplace_back(std::move(members), 1e-8);
    }
    eo.seed = derive_seed(opts.eof.seed, 3 * k + 2);
    const EofEstimate eab = eof_minimize(prod, Cut({0, 2}, 4), eo, warm);
    r.record(k, "weak_additivity", "pair=" + std::to_string(k), ea.value + eb.value - eab.value);
    per.push_back({{"pair", k},
                   {"E_f(a)", ea.value},
                   {"E_f(b)", eb.value},
                   {"E_f(a x b)", eab.value},
                   {"warm_start_used", !warm.empty()}});
  }
  r.details = Json{{"pairs", per}};
  r.finalize();
  return r;
}

// ---------------------------------------------------------------------------
// Violation searches.

namespace {

EigenBasis random_factor_basis(GaussianStream& rng, std::uint64_t seed) {
  return support_basis(random_density(Dims{2, 2}, rng.uniform_index(1, 4), seed));
}

ProductInstance question_instance(const std::string& source, std::uint64_t ts) {
  GaussianStream rng(ts);
  ProductInstance inst;
  if (source == "random") {
    inst.factor_a = random_factor_basis(rng, derive_seed(ts, 1));
    inst.factor_a2 = random_factor_basis(rng, derive_seed(ts, 2));
  } else if (source == "case2") {
    inst.factor_a = case2_basis(case2_example(0.05 + 0.9 * rng.uniform()));
    inst.factor_a2 = case2_basis(case2_example(0.05 + 0.9 * rng.uniform()));
  } else {
    throw ArgumentError("question probe: unknown source '" + source + "' (random | case2)");
  }
  const std::size_t n = inst.factor_a.rank() * inst.factor_a2.rank();
  inst.isometry = random_isometry(n + rng.uniform_index(0, 2), n, derive_seed(ts, 3)).matrix();
  return inst;
}

ProbeResult question_probe(const ProbeOptions& opts, bool second) {
  ProbeResult res;
  res.name = second ? "question2" : "question1";
  res.source = opts.source;
  res.trials = opts.trials;
  res.seed = opts.seed;
  res.slack = opts.slack;
  std::size_t implication_failures = 0;
  std::size_t members_evaluated = 0;
  double min_q1 = std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < opts.trials; ++t) {
    ProductInstance inst = question_instance(opts.source, derive_seed(opts.seed, t));
    double trial_min = std::numeric_limits<double>::infinity();
    std::size_t trial_member = 0;
    QuestionGaps trial_gaps;
    for (std::size_t i = 0; i < static_cast<std::size_t>(inst.isometry.rows()); ++i) {
      inst.member = i;
      if (member_weight(inst, static_cast<Eigen::Index>(i)) <= 1e-12) continue;
      const QuestionGaps g = evaluate_questions(inst);
      ++members_evaluated;
      min_q1 = std::min(min_q1, g.q1);
      if (g.q2 >= 0.0 && g.q1 < -1e-6) ++implication_failures;
      const double gap = second ? g.q2 : g.q1;
      if (gap < trial_min) {
        trial_min = gap;
        trial_member = i;
        trial_gaps = g;
      }
    }
    res.per_trial.push_back(trial_min);
    if (trial_min < res.min_gap) {
      res.min_gap = trial_min;
      res.argmin_trial = t;
      inst.member = trial_member;
      res.argmin = Json{{"trial", t},
                        {"member", trial_member},
                        {"gap", trial_min},
                        {"q1", trial_gaps.q1},
                        {"q2", trial_gaps.q2},
                        {"weight", trial_gaps.weight},
                        {"instance", instance_to_json(inst)}};
    }
  }
  res.violation_found = res.min_gap < -opts.slack;
  res.details = Json{{"members_evaluated", members_evaluated}};
  if (second) {
    res.details["implication_failures"] = implication_failures;
    res.details["min_q1"] = finite_or_null(min_q1);
  }
  return res;
}

}  // namespace

ProbeResult probe_question1(const ProbeOptions& opts) { return question_probe(opts, false); }
ProbeResult probe_question2(const ProbeOptions& opts) { return question_probe(opts, true); }

double superadditivity_gap(const PureState& psi, const EofOptions& opts) {
  if (psi.num_subsystems() != 4) throw ArgumentError("superadditivity_gap: state must be on (A, B, A', B')");
  const double s_aa2 = entropy_of(psi.vector(), psi.dims(), {0, 2});
  EofOptions eo = opts;
  const double e_ab = eof_estimate(reduced_state(psi, {0, 1}), eo);
  eo.seed = derive_seed(opts.seed, 1);
  const double e_a2b2 = eof_estimate(reduced_state(psi, {2, 3}), eo);
  return s_aa2 - e_ab - e_a2b2;
}

ProbeResult superadditivity_probe(const ProbeOptions& opts) {
  const std::string& src = opts.source;
  if (src != "random" && src != "case1" && src != "werner" && src != "product") {
    throw ArgumentError("superadditivity probe: unknown source '" + src + "' (random | case1 | werner | product)");
  }
  ProbeResult res;
  res.name = "superadditivity";
  res.source = src;
  res.trials = opts.trials;
  res.seed = opts.seed;
  res.slack = opts.slack;
  std::size_t members_evaluated = 0;
  for (std::size_t t = 0; t < opts.trials; ++t) {
    const std::uint64_t ts = derive_seed(opts.seed, t);
    GaussianStream rng(ts);
    std::vector<PureState> members;
    Json extra = Json::object();
    if (src == "random") {
      members.push_back(random_pure({2, 2, 2, 2}, derive_seed(ts, 1)));
    } else if (src == "product") {
      members.push_back(tensor(random_pure({2, 2}, derive_seed(ts, 1)), random_pure({2, 2}, derive_seed(ts, 2))));
    } else if (src == "case1") {
      const std::vector<double> w = random_weights(rng, 4);
      RMatrix lambda(2, 2);
      lambda << w[0], w[1], w[2], w[3];
      members.push_back(case1_state(Case1Spec{lambda}));
    } else {
      // d = 4 Werner state on AA'|BB', relabelled to (A, B, A', B').
      const double phi = -1.0 + 2.0 * rng.uniform();
      const DensityMatrix w4 = werner_state(4, phi);
      const DensityMatrix rho = permute_subsystems(DensityMatrix({2, 2, 2, 2}, w4.matrix()), {0, 2, 1, 3});
      const EigenBasis basis = support_basis(rho);
      const Isometry u = random_isometry(basis.rank(), basis.rank(), derive_seed(ts, 1));
      const Ensemble e = hjw_ensemble(basis, u);
      for (const auto& m : e.members()) members.push_back(m.state);
      extra = Json{{"werner_phi", phi},
                   {"isometry", {{"rows", u.rows()}, {"cols", u.cols()}, {"data", matrix_to_json(u.matrix())}}}};
    }
    double trial_min = std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    for (std::size_t i = 0; i < members.size(); ++i) {
      const double g = superadditivity_gap(members[i], opts.eof);
      ++members_evaluated;
      if (g < trial_min) {
        trial_min = g;
        arg = i;
      }
    }
    res.per_trial.push_back(trial_min);
    if (trial_min < res.min_gap) {
      res.min_gap = trial_min;
      res.argmin_trial = t;
      res.argmin = extra;
      res.argmin["trial"] = t;
      res.argmin["member"] = arg;
      res.argmin["gap"] = trial_min;
      res.argmin["state"] = state_to_json(members[arg]);
    }
  }
  res.violation_found = res.min_gap < -opts.slack;
  res.details = Json{{"members_evaluated", members_evaluated}};
  return res;
}

double reevaluate_argmin(const std::string& probe_name, const Json& argmin, const EofOptions& opts) {
  if (probe_name == "superadditivity") {
    if (!argmin.contains("state")) throw ArgumentError("argmin: missing state");
    AnyState s = state_from_json(argmin["state"]);
    const auto* psi = std::get_if<PureState>(&s);
    if (psi == nullptr) throw ArgumentError("argmin: superadditivity state must be pure");
    return superadditivity_gap(*psi, opts);
  }
  if (probe_name == "question1" || probe_name == "question2") {
    if (!argmin.contains("instance")) throw ArgumentError("argmin: missing instance");
    const QuestionGaps g = evaluate_questions(instance_from_json(argmin["instance"]));
    return probe_name == "question1" ? g.q1 : g.q2;
  }
  throw ArgumentError("argmin: unknown probe '" + probe_name + "'");
}

}  // namespace eofkit
