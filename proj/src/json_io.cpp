#include "qot/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "qot/version.hpp"

namespace qot::io {

namespace {

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw SchemaError(std::string("missing field '") + key + "'");
  return j.at(key);
}

}  // namespace

double round_sig(double v) {
  if (v == 0.0 || !std::isfinite(v)) return v;
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return std::strtod(buf, nullptr);
}

json spec_to_json(const TargetSpec& spec) {
  json j;
  j["n"] = spec.n;
  j["subsets"] = spec.subsets;
  j["topology_tag"] = spec.topology_tag;
  return j;
}

TargetSpec spec_from_json(const json& j) {
  TargetSpec spec;
  try {
    spec.n = require(j, "n").get<int>();
    spec.subsets = require(j, "subsets").get<std::vector<std::vector<int>>>();
    spec.topology_tag = require(j, "topology_tag").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("bad target spec: ") + e.what());
  }
  try {
    validate_spec(spec);
  } catch (const std::invalid_argument& e) {
    throw SchemaError(std::string("bad target spec: ") + e.what());
  }
  return spec;
}

json schedule_to_json(const Schedule& sched) {
  json j;
  j["n"] = sched.n;
  j["method"] = method_name(sched.method);
  if (sched.seed)
    j["seed"] = *sched.seed;
  else
    j["seed"] = nullptr;
  j["optimal"] = optimality_name(sched.optimal);
  j["target_hash"] = sched.target_hash;
  json settings = json::array();
  for (const Setting& g : sched.settings) settings.push_back(g.str());
  j["settings"] = settings;
  return j;
}

Schedule schedule_from_json(const json& j) {
  Schedule sched;
  try {
    sched.n = require(j, "n").get<int>();
    sched.method = method_from_name(require(j, "method").get<std::string>());
    const json& seed = require(j, "seed");
    if (!seed.is_null()) sched.seed = seed.get<std::int64_t>();
    sched.optimal = optimality_from_name(require(j, "optimal").get<std::string>());
    sched.target_hash = require(j, "target_hash").get<std::string>();
    for (const auto& s : require(j, "settings"))
      sched.settings.push_back(Setting::from_string(s.get<std::string>()));
    validate_schedule(sched);
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("bad schedule: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw SchemaError(std::string("bad schedule: ") + e.what());
  }
  return sched;
}

json record_to_json(const MeasurementRecord& rec) {
  json j;
  j["setting"] = rec.setting.str();
  j["mode"] = rec.mode == RecordMode::Exact ? "exact" : "sampled";
  if (rec.mode == RecordMode::Exact) {
    json dist = json::array();
    for (double p : rec.distribution) dist.push_back(round_sig(p));
    j["distribution"] = dist;
    j["counts"] = nullptr;
    j["shots"] = nullptr;
    j["seed"] = nullptr;
  } else {
    j["distribution"] = nullptr;
    json counts = json::object();
    for (const auto& [bits, c] : rec.counts) counts[bits] = c;
    j["counts"] = counts;
    j["shots"] = rec.shots;
    if (rec.seed)
      j["seed"] = *rec.seed;
    else
      j["seed"] = nullptr;
  }
  return j;
}

MeasurementRecord record_from_json(const json& j) {
  MeasurementRecord rec;
  try {
    rec.setting = Setting::from_string(require(j, "setting").get<std::string>());
    const std::string mode = require(j, "mode").get<std::string>();
    if (mode == "exact") {
      rec.mode = RecordMode::Exact;
      rec.distribution = require(j, "distribution").get<std::vector<double>>();
      if (rec.distribution.size() != (std::uint64_t{1} << rec.setting.size()))
        throw SchemaError("distribution length must be 2^n");
    } else if (mode == "sampled") {
      rec.mode = RecordMode::Sampled;
      std::int64_t total = 0;
      for (const auto& [bits, c] : require(j, "counts").items()) {
        if (static_cast<int>(bits.size()) != rec.setting.size())
          throw SchemaError("count bitstring length must equal n");
        const std::int64_t v = c.get<std::int64_t>();
        if (v < 0) throw SchemaError("negative count");
        rec.counts[bits] = v;
        total += v;
      }
      rec.shots = require(j, "shots").get<std::int64_t>();
      if (total != rec.shots) throw SchemaError("counts do not sum to declared shots");
      const json& seed = require(j, "seed");
      if (!seed.is_null()) rec.seed = seed.get<std::int64_t>();
    } else {
      throw SchemaError("unknown record mode: " + mode);
    }
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("bad measurement record: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw SchemaError(std::string("bad measurement record: ") + e.what());
  }
  return rec;
}

json table_to_json(const ExpectationTable& table) {
  json entries = json::array();
  for (const auto& [obs, entry] : table.entries) {
    json e;
    e["observable"] = obs.str();
    e["value"] = round_sig(entry.value);
    e["n_compatible"] = entry.n_compatible;
    entries.push_back(e);
  }
  json j;
  j["entries"] = entries;
  return j;
}

ExpectationTable table_from_json(const json& j) {
  ExpectationTable table;
  try {
    for (const auto& e : require(j, "entries")) {
      LocalObservable obs = LocalObservable::from_string(require(e, "observable").get<std::string>());
      ExpectationEntry entry;
      entry.value = require(e, "value").get<double>();
      entry.n_compatible = require(e, "n_compatible").get<int>();
      if (entry.value < -1.0 || entry.value > 1.0)
        throw SchemaError("expectation outside [-1, 1]");
      table.entries.emplace(std::move(obs), entry);
    }
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("bad expectation table: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw SchemaError(std::string("bad expectation table: ") + e.what());
  }
  return table;
}

json rdm_to_json(const RdmEstimate& est) {
  json j;
  j["subset"] = est.subset;
  const auto dim = est.matrix.rows();
  json re = json::array(), im = json::array();
  for (Eigen::Index r = 0; r < dim; ++r) {
    json rrow = json::array(), irow = json::array();
    for (Eigen::Index c = 0; c < dim; ++c) {
      rrow.push_back(round_sig(est.matrix(r, c).real()));
      irow.push_back(round_sig(est.matrix(r, c).imag()));
    }
    re.push_back(rrow);
    im.push_back(irow);
  }
  j["matrix_re"] = re;
  j["matrix_im"] = im;
  j["projected"] = est.projected;
  return j;
}

RdmEstimate rdm_from_json(const json& j) {
  RdmEstimate est;
  try {
    est.subset = require(j, "subset").get<std::vector<int>>();
    const auto re = require(j, "matrix_re").get<std::vector<std::vector<double>>>();
    const auto im = require(j, "matrix_im").get<std::vector<std::vector<double>>>();
    const std::size_t dim = re.size();
    if (dim == 0 || im.size() != dim) throw SchemaError("bad matrix dimensions");
    est.matrix = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::size_t r = 0; r < dim; ++r) {
      if (re[r].size() != dim || im[r].size() != dim) throw SchemaError("bad matrix dimensions");
      for (std::size_t c = 0; c < dim; ++c) est.matrix(r, c) = cplx(re[r][c], im[r][c]);
    }
    est.projected = require(j, "projected").get<bool>();
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("bad rdm estimate: ") + e.what());
  }
  return est;
}

StateVector state_from_file(const std::filesystem::path& path) {
  json j = load_json_file(path);
  try {
    const int n = require(j, "n").get<int>();
    std::vector<cplx> amps;
    for (const auto& pair : require(j, "amplitudes")) {
      if (!pair.is_array() || pair.size() != 2) throw SchemaError("amplitudes must be [re, im] pairs");
      amps.push_back(cplx(pair[0].get<double>(), pair[1].get<double>()));
    }
    if (n < 1 || amps.size() != (std::uint64_t{1} << n))
      throw SchemaError("amplitude count must be 2^n");
    return state_from_amplitudes(n, std::move(amps));
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("bad state file: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw SchemaError(std::string("bad state file: ") + e.what());
  }
}

json manifest_to_json(const RunManifest& m) {
  json j;
  j["command"] = m.command;
  j["inputs"] = m.inputs;
  j["outputs"] = m.outputs;
  if (m.seed)
    j["seed"] = *m.seed;
  else
    j["seed"] = nullptr;
  j["version"] = kVersion;
  return j;
}

json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open file: " + path.string());
  try {
    return json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError("cannot parse " + path.string() + ": " + e.what());
  }
}

void save_json_file(const std::filesystem::path& path, const json& j) {
  save_text_file(path, j.dump(2) + "\n");
}

void save_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path.string());
  out << text;
}

}  // namespace qot::io
