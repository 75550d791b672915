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

// probes.hpp - verification suites and violation searches.
//
// Orientation: every gap is LHS - RHS arranged so that gap >= 0 means the
// relation under test holds. Identities report residuals instead.
//
// Two tolerance tiers:
//   entropy    1e-9        relations built from entropies and partial traces
//   optimizer  2e-3..5e-2  relations containing a minimized EoF
//
// Checks (CheckReport) test relations that are theorems. Probes
// (ProbeResult) search for counterexamples; a probe can only falsify.

#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "eofkit/eof.hpp"
#include "eofkit/io.hpp"
#include "eofkit/statezoo.hpp"

namespace eofkit {

inline constexpr double kEntropyTierTol = 1e-9;
inline constexpr double kOptimizerSlack = 2e-3;
inline constexpr double kAdditivitySlack = 2e-2;
inline constexpr double kChainSlack = 5e-2;

enum class Semantics { kIdentity, kInequality, kViolationSearch };
enum class Tier { kEntropy, kOptimizer };

std::string to_string(Semantics s);
std::string to_string(Tier t);

struct SampleGap {
  std::size_t sample;
  std::string relation;
  std::string descriptor;
  double gap;
};

/// One relation inside a check. For identities `gap` is the signed residual.
struct RelationSummary {
  std::string name;
  Semantics semantics;
  Tier tier;
  double tol;
  double min_gap = std::numeric_limits<double>::infinity();
  double max_abs_residual = 0.0;
  std::size_t evaluations = 0;
  bool passed = true;
};

struct CheckReport {
  std::string name;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  double min_gap = std::numeric_limits<double>::infinity();  // over inequalities
  double max_abs_residual = 0.0;                             // over identities
  bool passed = true;
  std::vector<RelationSummary> relations;
  std::vector<SampleGap> per_sample;
  Json details = Json::object();

  /// Adds a relation; its gap values are folded in by record().
  void add_relation(std::string relation, Semantics semantics, Tier tier, double tol);
  void record(std::size_t sample, const std::string& relation, std::string descriptor, double gap);
  /// Recomputes the top-level aggregates from the relations.
  void finalize();
  std::string semantics() const;
};

struct ProbeResult {
  std::string name;
  std::string source;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  double slack = kOptimizerSlack;
  double min_gap = std::numeric_limits<double>::infinity();
  std::size_t argmin_trial = 0;
  Json argmin = Json::object();
  bool violation_found = false;
  std::vector<double> per_trial;
  Json details = Json::object();
};

/// Caveat attached to every probe report.
extern const char* const kProbeCaveat;

Json report_to_json(const CheckReport& r);
Json report_to_json(const ProbeResult& r);
/// One row per sample gap: check,sample,relation,descriptor,gap.
std::string report_to_csv(const CheckReport& r);
/// One row per trial: probe,trial,gap.
std::string report_to_csv(const ProbeResult& r);

// ---------------------------------------------------------------------------
// Entropy-tier checks.

struct SamplingOptions {
  std::size_t samples = 100;
  std::vector<std::size_t> dims;  // candidate dimensions; empty = check default
  std::uint64_t seed = 0;
  double tol = kEntropyTierTol;
};

/// S(sum p_i rho_i (x) |i><i|) = H(p) + sum p_i S(rho_i). 2-4 members.
/// Default dims {2, 3, 4}.
CheckReport check_flagged_identity(const SamplingOptions& opts);

/// Strong concavity in both orientations, ordinary concavity,
/// H(p) >= S(sum p_i psi_i) for pure members and its mixed-member (Holevo)
/// form H(p) + sum p_i S(rho_i) >= S(sum p_i rho_i). Default dims {2, 3}.
CheckReport check_strong_concavity(const SamplingOptions& opts);

/// S(123) + S(2) <= S(12) + S(23) on reductions of random pure states of
/// d1 (x) d2 (x) d3 (x) d1 d2 d3, plus the saturating case rho_12 (x) rho_3.
/// dims = (d1, d2, d3), default (2, 2, 2).
CheckReport check_ssa(const SamplingOptions& opts);

/// ||mix(hjw_ensemble(rho, U)) - rho||_F over random (rho, U): dimension
/// 2..max(dims) (default 6), rank 1..min(d, 4), ensemble size rank..12.
CheckReport check_hjw_roundtrip(const SamplingOptions& opts);

// ---------------------------------------------------------------------------
// Schmidt-correlated (case I) chain.

struct Case1Options {
  double tol = kEntropyTierTol;
  double slack = 1e-3;  // inequalities with EoF terms
  EofOptions eof;
};

/// Identities (medium) S(AA') = S(A) + sum_a lambda_a S(Tr_B' Psi^a) and
/// (medium2) S(AA') = S(A') + sum_b lambda_b S(Tr_B Psi^b); inequalities
/// S(AA') >= S(A) + E_f(A'B') and S(AA') >= E_f(AB) + E_f(A'B').
/// E_f of a 2 (x) 2 reduction is the closed form, otherwise eof_minimize
/// warm-started from the explicit decomposition.
CheckReport check_case1(const Case1Spec& spec, const Case1Options& opts = {});

/// check_case1 over `samples` seeded random lambda matrices with shapes up
/// to max_dim x max_dim, plus the double-Bell and classical cases.
CheckReport check_case1_suite(std::size_t samples, std::size_t max_dim, std::uint64_t seed,
                              const Case1Options& opts = {});

/// E_f estimate of a bipartite (d_A, d_B) state: closed form on two qubits,
/// zero when one side is one-dimensional, eof_minimize otherwise.
double eof_estimate(const DensityMatrix& rho, const EofOptions& opts,
                    std::span<const Ensemble> warm_starts = {});

// ---------------------------------------------------------------------------
// Block-diagonal (case II) chain.

struct Case2Options {
  EofOptions eof;
  double slack = kAdditivitySlack;  // additivity residual
  double member_tol = kOptimizerSlack;
  std::size_t decompositions = 10;  // random isometries of the product
  std::size_t extra_members = 2;    // ensemble size = rank + extra_members
  std::uint64_t seed = 0;
};

CheckReport check_case2(const Case2Spec& spec_a, const Case2Spec& spec_a2, const Case2Options& opts = {});

// ---------------------------------------------------------------------------
// Minimization identities over decompositions of a product state.

struct ChainOptions {
  EofOptions eof;
  double slack = kChainSlack;
};

/// Estimates
///   min sum p_i (S(A_i) + S(A'_i)),     min sum p_i (S(A_i) + E_f(A'B'_i)),
///   min sum p_i (E_f(AB_i) + S(A'_i)),  min sum p_i (E_f(AB_i) + E_f(A'B'_i))
/// over ensembles of rho_a (x) rho_b and compares them with each other and
/// with E_f(rho_a) + E_f(rho_b). Each factor must be bipartite with total
/// dimension <= 4.
CheckReport relation_chain_check(const DensityMatrix& rho_a, const DensityMatrix& rho_b,
                                 const ChainOptions& opts = {});

// ---------------------------------------------------------------------------
// Weak additivity.

struct WeakAdditivityOptions {
  EofOptions eof;
  double slack = kOptimizerSlack;
  bool warm_start = true;  // also seed the product search with the product of the factor optima
};

/// eof_minimize(rho_a (x) rho_b, AA'|BB') <= eof_minimize(rho_a) + eof_minimize(rho_b) + slack.
CheckReport weak_additivity_check(const std::vector<std::pair<DensityMatrix, DensityMatrix>>& pairs,
                                  const WeakAdditivityOptions& opts = {});

// ---------------------------------------------------------------------------
// Violation searches.

/// One member of an HJW decomposition of rho_AB (x) rho_A'B', with the
/// isometry's columns indexed by J * rank(A') + K.
struct ProductInstance {
  EigenBasis factor_a;
  EigenBasis factor_a2;
  CMatrix isometry;
  std::size_t member = 0;
};

struct QuestionGaps {
  double q1 = 0.0;  // S(AA'_i) - sum_K q_K S(A^{iK}) - sum_J q_J S(A'^{iJ})
  double q2 = 0.0;  // S(AA'_i) - S(X1) - S(X2) + S(X3)
  double weight = 0.0;  // p_i
};

QuestionGaps evaluate_questions(const ProductInstance& inst);

/// Four-party member |Psi^i> on (A, B, A', B').
PureState product_member(const ProductInstance& inst);

Json instance_to_json(const ProductInstance& inst);
ProductInstance instance_from_json(const Json& doc);

struct ProbeOptions {
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  double slack = kOptimizerSlack;
  std::string source = "random";  // question probes: random | case2; superadditivity: random | case1 | werner | product
  EofOptions eof;  // factor EoFs that are not two-qubit
};

ProbeResult probe_question1(const ProbeOptions& opts);
ProbeResult probe_question2(const ProbeOptions& opts);

/// S(AA') - E_f(AB) - E_f(A'B') on four-party pure states.
ProbeResult superadditivity_probe(const ProbeOptions& opts);

double superadditivity_gap(const PureState& psi, const EofOptions& opts = {});

/// Recomputes the gap stored in a probe's argmin document.
double reevaluate_argmin(const std::string& probe_name, const Json& argmin, const EofOptions& opts = {});

}  // namespace eofkit
