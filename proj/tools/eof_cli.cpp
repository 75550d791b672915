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

// eof - command line front end.
//
//   eof compute <statefile> --cut 0,2 [--restarts N --seed S --ensemble-size M]
//   eof verify <check|all> [--samples N --dims d1,d2 --seed S --tol T]
//   eof probe <question1|question2|superadditivity> [--trials N --seed S --slack X --source NAME]
//   eof zoo <case1|case2|werner|random> [family parameters] --out FILE
//
// Options are global so that a key=value --config file can set any of them;
// command line flags win over the file. Exit codes: 0 passed / no violation,
// 1 failed / violation found, 2 usage error.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "eofkit/errors.hpp"
#include "eofkit/io.hpp"
#include "eofkit/probes.hpp"

namespace {

using namespace eofkit;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Args {
  std::string format = "json";
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> restarts;
  std::optional<std::size_t> ensemble_size;
  std::optional<std::size_t> threads;
  std::optional<std::size_t> samples;
  std::optional<std::size_t> trials;
  std::optional<double> tol;
  std::optional<double> slack;
  std::vector<std::size_t> dims;
  std::vector<std::size_t> cut;
  std::string source = "random";
  std::string out;
  std::string dump_ensemble;

  // zoo parameters
  std::vector<double> lambda;
  std::size_t rows = 0;
  std::size_t d = 2;
  std::optional<double> phi;
  std::optional<double> singlet_weight;
  std::optional<std::size_t> rank;
  bool pure = false;

  std::string target;  // positional of the active subcommand
};

EofOptions eof_options(const Args& a, std::size_t default_restarts) {
  EofOptions o;
  o.restarts = a.restarts.value_or(default_restarts);
  o.seed = a.seed.value_or(0);
  o.ensemble_size = a.ensemble_size;
  o.threads = a.threads.value_or(1);
  return o;
}

void emit(const Args& a, const Json& doc, const std::string& csv) {
  std::string text = a.format == "csv" ? csv : doc.dump(2) + "\n";
  if (a.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(a.out);
    if (!f) throw ArgumentError("cannot write " + a.out);
    f << text;
  }
}

int run_compute(const Args& a) {
  const DensityMatrix rho = density_from_json(read_json_file(a.target));
  if (a.cut.empty()) throw ArgumentError("compute: --cut is required");
  const Cut cut(a.cut, rho.num_subsystems());
  const EofEstimate est = eof_minimize(rho, cut, eof_options(a, 20));
  Json doc = estimate_to_json(est, !a.dump_ensemble.empty());
  doc["cut"] = a.cut;
  if (rho.dims() == Dims{2, 2} && cut.left() == std::vector<std::size_t>{0}) {
    doc["closed_form"] = eof_wootters_2q(rho);
  }
  if (!a.dump_ensemble.empty()) {
    write_json_file(a.dump_ensemble, doc["ensemble"]);
    doc.erase("ensemble");
  }
  std::string csv = "value,converged,restarts_used,ensemble_size,iterations\n";
  csv += std::to_string(est.value) + "," + (est.converged ? "true" : "false") + "," +
         std::to_string(est.restarts_used) + "," + std::to_string(est.ensemble_size) + "," +
         std::to_string(est.iterations) + "\n";
  emit(a, doc, csv);
  return kExitPass;
}

CheckReport run_check(const std::string& name, const Args& a) {
  SamplingOptions s;
  s.samples = a.samples.value_or(100);
  s.dims = a.dims;
  s.seed = a.seed.value_or(0);
  s.tol = a.tol.value_or(kEntropyTierTol);
  if (name == "flagged") return check_flagged_identity(s);
  if (name == "strong_concavity") return check_strong_concavity(s);
  if (name == "ssa") return check_ssa(s);
  if (name == "hjw") return check_hjw_roundtrip(s);
  if (name == "case1") {
    Case1Options o;
    o.tol = s.tol;
    o.slack = a.slack.value_or(o.slack);
    o.eof = eof_options(a, 20);
    const std::size_t max_dim = a.dims.empty() ? 3 : a.dims.front();
    return check_case1_suite(a.samples.value_or(20), max_dim, s.seed, o);
  }
  if (name == "case2") {
    Case2Options o;
    o.eof = eof_options(a, 4);
    o.seed = s.seed;
    o.slack = a.slack.value_or(o.slack);
    if (a.samples) o.decompositions = *a.samples;
    const double l1 = a.lambda.size() > 0 ? a.lambda[0] : 0.5;
    const double l2 = a.lambda.size() > 1 ? a.lambda[1] : l1;
    return check_case2(case2_example(l1), case2_example(l2), o);
  }
  if (name == "relation_chain") {
    ChainOptions o;
    o.eof = eof_options(a, 4);
    o.slack = a.slack.value_or(o.slack);
    const double phi = a.phi.value_or(-0.5);
    CVector bell = CVector::Zero(4);
    bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
    return relation_chain_check(werner_state(2, phi), projector(PureState({2, 2}, bell)), o);
  }
  throw ArgumentError("verify: unknown check '" + name + "'");
}

int run_verify(const Args& a) {
  const std::vector<std::string> all = {"flagged", "strong_concavity", "ssa", "hjw",
                                        "case1", "case2", "relation_chain"};
  if (a.target != "all") {
    const CheckReport r = run_check(a.target, a);
    emit(a, report_to_json(r), report_to_csv(r));
    return r.passed ? kExitPass : kExitFail;
  }
  Json reports = Json::array();
  std::string csv;
  bool passed = true;
  for (const auto& name : all) {
    const CheckReport r = run_check(name, a);
    reports.push_back(report_to_json(r));
    std::string part = report_to_csv(r);
    csv += csv.empty() ? part : part.substr(part.find('\n') + 1);
    passed = passed && r.passed;
  }
  emit(a, Json{{"passed", passed}, {"checks", reports}}, csv);
  return passed ? kExitPass : kExitFail;
}

int run_probe(const Args& a) {
  ProbeOptions o;
  o.trials = a.trials.value_or(100);
  o.seed = a.seed.value_or(0);
  o.slack = a.slack.value_or(kOptimizerSlack);
  o.source = a.source;
  o.eof = eof_options(a, 20);
  ProbeResult r;
  if (a.target == "question1") {
    r = probe_question1(o);
  } else if (a.target == "question2") {
    r = probe_question2(o);
  } else if (a.target == "superadditivity") {
    r = superadditivity_probe(o);
  } else {
    throw ArgumentError("probe: unknown probe '" + a.target + "'");
  }
  emit(a, report_to_json(r), report_to_csv(r));
  return r.violation_found ? kExitFail : kExitPass;
}

int run_zoo(const Args& a) {
  Json doc;
  if (a.target == "case1") {
    if (a.lambda.empty()) throw ArgumentError("zoo case1: --lambda is required");
    const std::size_t rows = a.rows == 0 ? 1 : a.rows;
    if (a.lambda.size() % rows != 0) throw ArgumentError("zoo case1: --lambda size not divisible by --rows");
    const std::size_t cols = a.lambda.size() / rows;
    RMatrix l(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t k = 0; k < a.lambda.size(); ++k) {
      l(static_cast<Eigen::Index>(k / cols), static_cast<Eigen::Index>(k % cols)) = a.lambda[k];
    }
    doc = state_to_json(case1_state(Case1Spec{l}));
  } else if (a.target == "case2") {
    doc = state_to_json(case2_factor(case2_example(a.lambda.empty() ? 0.5 : a.lambda.front())));
  } else if (a.target == "werner") {
    if (a.phi && a.singlet_weight) throw ArgumentError("zoo werner: give --phi or --singlet-weight, not both");
    double phi = a.phi.value_or(-1.0);
    if (a.singlet_weight) {
      if (a.d != 2) throw ArgumentError("zoo werner: --singlet-weight needs --d 2");
      phi = werner_phi_from_singlet_weight(*a.singlet_weight);
    }
    doc = state_to_json(werner_state(a.d, phi));
  } else if (a.target == "random") {
    const Dims dims = a.dims.empty() ? Dims{2, 2} : Dims(a.dims.begin(), a.dims.end());
    const std::uint64_t seed = a.seed.value_or(0);
    if (a.pure) {
      doc = state_to_json(random_pure(dims, seed));
    } else {
      doc = state_to_json(random_density(dims, a.rank.value_or(total_dimension(dims)), seed));
    }
  } else {
    throw ArgumentError("zoo: unknown family '" + a.target + "'");
  }
  if (a.format == "csv") throw ArgumentError("zoo: only json output is supported");
  emit(a, doc, "");
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement of formation toolkit"};
  app.set_config("--config", "", "key=value file; flags override it");
  app.require_subcommand(1);
  app.fallthrough();
  Args a;

  app.add_option("--format", a.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--seed", a.seed, "RNG seed");
  app.add_option("--restarts", a.restarts, "optimizer restarts");
  app.add_option("--ensemble-size", a.ensemble_size, "ensemble size (default: auto)");
  app.add_option("--threads", a.threads, "restart threads (0 = all cores)");
  app.add_option("--samples", a.samples, "samples per check");
  app.add_option("--trials", a.trials, "probe trials");
  app.add_option("--tol", a.tol, "entropy-tier tolerance");
  app.add_option("--slack", a.slack, "optimizer-tier slack");
  app.add_option("--dims", a.dims, "dimensions, comma separated")->delimiter(',');
  app.add_option("--cut", a.cut, "left-block subsystems, comma separated")->delimiter(',');
  app.add_option("--source", a.source, "probe input family");
  app.add_option("--out", a.out, "output file (default stdout)");
  app.add_option("--dump-ensemble", a.dump_ensemble, "write the optimal ensemble to this file");
  app.add_option("--lambda", a.lambda, "family weights, comma separated")->delimiter(',');
  app.add_option("--rows", a.rows, "rows of the case1 lambda matrix");
  app.add_option("--d", a.d, "local dimension (werner)");
  app.add_option("--phi", a.phi, "Werner parameter Tr(rho F)");
  app.add_option("--singlet-weight", a.singlet_weight, "two-qubit singlet mixing weight");
  app.add_option("--rank", a.rank, "rank of a random density matrix");
  app.add_flag("--pure", a.pure, "random pure state instead of density matrix");

  auto* compute = app.add_subcommand("compute", "estimate EoF of a state file");
  compute->add_option("statefile", a.target)->required();
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("check", a.target)
      ->required()
      ->check(CLI::IsMember({"flagged", "strong_concavity", "ssa", "hjw", "case1", "case2", "relation_chain", "all"}));
  auto* probe = app.add_subcommand("probe", "run a violation search");
  probe->add_option("probe", a.target)->required()->check(CLI::IsMember({"question1", "question2", "superadditivity"}));
  auto* zoo = app.add_subcommand("zoo", "write a state from a family");
  zoo->add_option("family", a.target)->required()->check(CLI::IsMember({"case1", "case2", "werner", "random"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (compute->parsed()) return run_compute(a);
    if (verify->parsed()) return run_verify(a);
    if (probe->parsed()) return run_probe(a);
    return run_zoo(a);
  } catch (const eofkit::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
