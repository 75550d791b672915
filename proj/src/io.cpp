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

#include "eofkit/io.hpp"

#include <fstream>

#include "eofkit/errors.hpp"

namespace eofkit {

namespace {

Dims dims_from_json(const Json& doc) {
  if (!doc.contains("dims") || !doc["dims"].is_array()) throw ArgumentError("state: missing dims array");
  Dims dims;
  for (const auto& d : doc["dims"]) {
    if (!d.is_number_integer() || d.get<long long>() <= 0) {
      throw ArgumentError("state: dims must be positive integers");
    }
    dims.push_back(d.get<std::size_t>());
  }
  return dims;
}

Complex entry_from_json(const Json& e) {
  if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
    throw ArgumentError("state: data entries must be [re, im] pairs");
  }
  return {e[0].get<double>(), e[1].get<double>()};
}

}  // namespace

Json matrix_to_json(const CMatrix& m) {
  Json data = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) data.push_back({m(i, j).real(), m(i, j).imag()});
  }
  return data;
}

CMatrix matrix_from_json(const Json& data, Eigen::Index rows, Eigen::Index cols) {
  if (!data.is_array() || static_cast<Eigen::Index>(data.size()) != rows * cols) {
    throw ArgumentError("matrix: expected " + std::to_string(rows * cols) + " entries");
  }
  CMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = entry_from_json(data[static_cast<std::size_t>(i * cols + j)]);
  }
  return m;
}

Json state_to_json(const DensityMatrix& rho) {
  return Json{{"dims", rho.dims()}, {"kind", "density"}, {"data", matrix_to_json(rho.matrix())}};
}

Json state_to_json(const PureState& psi) {
  return Json{{"dims", psi.dims()}, {"kind", "pure"}, {"data", matrix_to_json(psi.vector())}};
}

AnyState state_from_json(const Json& doc) {
  if (!doc.is_object()) throw ArgumentError("state: document must be an object");
  Dims dims = dims_from_json(doc);
  if (!doc.contains("kind") || !doc["kind"].is_string()) throw ArgumentError("state: missing kind");
  if (!doc.contains("data")) throw ArgumentError("state: missing data");
  const auto d = static_cast<Eigen::Index>(total_dimension(dims));
  const std::string kind = doc["kind"].get<std::string>();
  if (kind == "density") return DensityMatrix(std::move(dims), matrix_from_json(doc["data"], d, d));
  if (kind == "pure") return PureState(std::move(dims), matrix_from_json(doc["data"], d, 1).col(0));
  throw ArgumentError("state: unknown kind '" + kind + "'");
}

DensityMatrix density_from_json(const Json& doc) {
  AnyState s = state_from_json(doc);
  if (auto* rho = std::get_if<DensityMatrix>(&s)) return std::move(*rho);
  return projector(std::get<PureState>(s));
}

Json ensemble_to_json(const Ensemble& e) {
  Json out = Json::array();
  for (const auto& m : e.members()) out.push_back({{"weight", m.weight}, {"state", state_to_json(m.state)}});
  return out;
}

Ensemble ensemble_from_json(const Json& doc) {
  if (!doc.is_array()) throw ArgumentError("ensemble: document must be an array");
  std::vector<EnsembleMember> members;
  for (const auto& item : doc) {
    if (!item.contains("weight") || !item.contains("state")) {
      throw ArgumentError("ensemble: members need weight and state");
    }
    AnyState s = state_from_json(item["state"]);
    auto* psi = std::get_if<PureState>(&s);
    if (psi == nullptr) throw ArgumentError("ensemble: member states must be pure");
    members.push_back({item["weight"].get<double>(), std::move(*psi)});
  }
  return Ensemble(std::move(members));
}

Json estimate_to_json(const EofEstimate& est, bool include_ensemble) {
  Json traces = Json::array();
  for (const auto& t : est.traces) {
    traces.push_back({{"restart", t.index},
                      {"warm_start", t.warm_start},
                      {"initial_value", t.initial_value},
                      {"final_value", t.final_value},
                      {"iterations", t.iterations},
                      {"converged", t.converged}});
  }
  Json out{{"value", est.value},
           {"converged", est.converged},
           {"restarts_used", est.restarts_used},
           {"iterations", est.iterations},
           {"ensemble_size", est.ensemble_size},
           {"best_restart", est.best_restart},
           {"traces", traces}};
  if (include_ensemble) out["ensemble"] = ensemble_to_json(est.best_ensemble);
  return out;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ArgumentError("invalid JSON in " + path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& doc) {
  std::ofstream out(path);
  if (!out) throw ArgumentError("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

}  // namespace eofkit
