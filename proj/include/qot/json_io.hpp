#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qot/cover.hpp"
#include "qot/reconstruct.hpp"
#include "qot/simulator.hpp"
#include "qot/targets.hpp"

namespace qot::io {

using json = nlohmann::ordered_json;

// A file does not match its schema.
struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Rounds to 12 significant digits so emitted files are byte-stable and
// diff-friendly regression fixtures.
double round_sig(double v);

json spec_to_json(const TargetSpec& spec);
TargetSpec spec_from_json(const json& j);

json schedule_to_json(const Schedule& sched);
Schedule schedule_from_json(const json& j);

json record_to_json(const MeasurementRecord& rec);
MeasurementRecord record_from_json(const json& j);

json table_to_json(const ExpectationTable& table);
ExpectationTable table_from_json(const json& j);

json rdm_to_json(const RdmEstimate& est);
RdmEstimate rdm_from_json(const json& j);

// Amplitude list for custom states: {"n": int, "amplitudes": [[re, im], ...]}.
StateVector state_from_file(const std::filesystem::path& path);

// Provenance block stamped into every output file. Wall-clock duration is
// reported on stderr, not persisted, so outputs stay byte-identical across
// runs.
struct RunManifest {
  std::string command;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::optional<std::int64_t> seed;
};

json manifest_to_json(const RunManifest& m);

json load_json_file(const std::filesystem::path& path);
void save_json_file(const std::filesystem::path& path, const json& j);
void save_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace qot::io
