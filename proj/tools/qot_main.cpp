#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "qot/baselines.hpp"
#include "qot/cover.hpp"
#include "qot/json_io.hpp"
#include "qot/reconstruct.hpp"
#include "qot/simulator.hpp"
#include "qot/version.hpp"

namespace {

using qot::io::json;

std::size_t candidate_cap_from_env() {
  if (const char* env = std::getenv("QOT_CANDIDATE_CAP")) {
    char* end = nullptr;
    unsigned long long cap = std::strtoull(env, &end, 10);
    if (end != env && cap >= 1) return static_cast<std::size_t>(cap);
  }
  return qot::kDefaultCandidateCap;
}

struct TopologyRequest {
  enum Kind { All, Chain, Lattice, Custom, Mixed } kind = All;
  int k = 0;
  int rows = 0, cols = 0;
  std::vector<std::string> paths;
};

TopologyRequest parse_topology(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("topology must look like all:k, chain:k, lattice:RxC, "
                                "custom:<path>, or mixed:<path,...>");
  const std::string head = text.substr(0, colon);
  const std::string rest = text.substr(colon + 1);
  TopologyRequest req;
  if (head == "all" || head == "chain") {
    req.kind = head == "all" ? TopologyRequest::All : TopologyRequest::Chain;
    req.k = std::stoi(rest);
  } else if (head == "lattice") {
    const auto x = rest.find('x');
    if (x == std::string::npos) throw std::invalid_argument("lattice topology needs RxC");
    req.kind = TopologyRequest::Lattice;
    req.rows = std::stoi(rest.substr(0, x));
    req.cols = std::stoi(rest.substr(x + 1));
  } else if (head == "custom") {
    req.kind = TopologyRequest::Custom;
    req.paths.push_back(rest);
  } else if (head == "mixed") {
    req.kind = TopologyRequest::Mixed;
    std::stringstream ss(rest);
    std::string part;
    while (std::getline(ss, part, ','))
      if (!part.empty()) req.paths.push_back(part);
    if (req.paths.empty()) throw std::invalid_argument("mixed topology needs file paths");
  } else {
    throw std::invalid_argument("unknown topology family: " + head);
  }
  return req;
}

qot::TargetSpec build_spec(const TopologyRequest& req, int n_flag) {
  qot::TargetSpec spec;
  switch (req.kind) {
    case TopologyRequest::All:
      if (n_flag <= 0) throw std::invalid_argument("--n is required for all:k");
      spec = qot::all_k_subsets(n_flag, req.k);
      break;
    case TopologyRequest::Chain:
      if (n_flag <= 0) throw std::invalid_argument("--n is required for chain:k");
      spec = qot::chain_windows(n_flag, req.k);
      break;
    case TopologyRequest::Lattice:
      spec = qot::lattice_edges(req.rows, req.cols);
      break;
    case TopologyRequest::Custom:
      spec = qot::io::spec_from_json(qot::io::load_json_file(req.paths[0]));
      break;
    case TopologyRequest::Mixed: {
      std::vector<qot::TargetSpec> parts;
      for (const auto& p : req.paths)
        parts.push_back(qot::io::spec_from_json(qot::io::load_json_file(p)));
      spec = qot::mixed_spec(parts);
      break;
    }
  }
  if (n_flag > 0 && spec.n != n_flag)
    throw std::invalid_argument("--n = " + std::to_string(n_flag) +
                                " does not match topology n = " + std::to_string(spec.n));
  return spec;
}

qot::StateVector build_state(const std::string& name, int n) {
  if (name.rfind("custom:", 0) == 0) {
    qot::StateVector state = qot::io::state_from_file(name.substr(7));
    if (state.n != n)
      throw std::invalid_argument("custom state has n = " + std::to_string(state.n) +
                                  " but the schedule needs n = " + std::to_string(n));
    return state;
  }
  return qot::make_state(name, n);
}

// ---------------------------------------------------------------------------

struct ScheduleArgs {
  int n = 0;
  std::string topology;
  std::string method;
  std::int64_t seed = 0;
  int restarts = 8;
  double time_limit = 60.0;
  std::string out;
  std::string emit_targets;
};

int cmd_schedule(const ScheduleArgs& args) {
  TopologyRequest req = parse_topology(args.topology);
  qot::TargetSpec spec = build_spec(req, args.n);
  qot::CoverUniverse universe = qot::expand_universe(spec);

  std::size_t max_subset = 0;
  for (const auto& s : spec.subsets) max_subset = std::max(max_subset, s.size());

  qot::Schedule sched;
  if (args.method == "exact") {
    qot::CoverInstance inst{universe, candidate_cap_from_env(), args.time_limit};
    sched = qot::exact_bnb(inst);
  } else if (args.method == "greedy") {
    qot::CoverInstance inst{universe, candidate_cap_from_env(), args.time_limit};
    sched = qot::greedy_density(inst, args.seed, args.restarts);
  } else if (args.method == "chain") {
    if (req.kind != TopologyRequest::Chain)
      throw std::invalid_argument("method 'chain' requires a chain:k topology");
    sched = qot::chain_periodic(spec.n, req.k);
  } else if (args.method == "bipartite") {
    sched = qot::bipartite_coloring(spec);
  } else if (args.method == "baseline-binary" || args.method == "baseline-ternary") {
    if (max_subset > 2)
      throw std::invalid_argument("pair-hash baselines only cover 2-local targets (k = 2)");
    sched = args.method == "baseline-binary" ? qot::binary_hash_pairs(spec.n)
                                             : qot::ternary_hash_pairs(spec.n);
  } else if (args.method == "naive") {
    sched = qot::naive_per_rdm(spec);
  } else {
    throw std::invalid_argument("unknown method: " + args.method);
  }

  qot::CoverReport rep = qot::verify_cover(sched, universe);
  if (!rep.covered) throw std::logic_error("schedule failed verification");
  sched.target_hash = qot::target_hash(spec);

  qot::io::RunManifest manifest;
  manifest.command = "schedule";
  manifest.outputs.push_back(args.out);
  if (args.method == "greedy") manifest.seed = args.seed;

  json out = qot::io::schedule_to_json(sched);
  json wrapped;
  wrapped["manifest"] = qot::io::manifest_to_json(manifest);
  for (auto& [key, value] : out.items()) wrapped[key] = value;
  qot::io::save_json_file(args.out, wrapped);

  if (!args.emit_targets.empty()) qot::io::save_json_file(args.emit_targets, qot::io::spec_to_json(spec));

  std::cout << "settings=" << sched.size() << " optimal=" << qot::optimality_name(sched.optimal)
            << "\n";
  return 0;
}

// ---------------------------------------------------------------------------

struct CompareArgs {
  int n_min = 0, n_max = 0, k_min = 2, k_max = 2;
  std::string methods;
  std::string family = "all";
  std::int64_t seed = 0;
  int restarts = 32;
  double time_limit = 60.0;
  std::string out;
};

int cmd_compare(const CompareArgs& args) {
  std::vector<std::string> methods;
  std::stringstream ss(args.methods);
  std::string m;
  while (std::getline(ss, m, ','))
    if (!m.empty()) methods.push_back(m);
  if (methods.empty()) throw std::invalid_argument("empty method list");
  if (args.family != "all" && args.family != "chain")
    throw std::invalid_argument("family must be all or chain");
  if (args.n_min < 2 || args.n_max < args.n_min || args.k_min < 1 || args.k_max < args.k_min)
    throw std::invalid_argument("bad n/k range");

  const std::size_t cap = candidate_cap_from_env();
  for (const auto& method : methods) {
    if (method == "exact") {
      std::uint64_t cands = 1;
      for (int i = 0; i < args.n_max; ++i) cands *= 3;
      if (cands > cap)
        throw qot::CapExceeded("exact requested for n = " + std::to_string(args.n_max) +
                               " beyond candidate cap");
    }
  }

  std::ostringstream csv;
  csv << "n,k,method,settings,optimal,lower_bound\n";
  for (int n = args.n_min; n <= args.n_max; ++n) {
    for (int k = args.k_min; k <= std::min(args.k_max, n); ++k) {
      qot::TargetSpec spec =
          args.family == "all" ? qot::all_k_subsets(n, k) : qot::chain_windows(n, k);
      qot::CoverUniverse universe = qot::expand_universe(spec);
      const int lb = qot::lower_bound(universe);
      for (const auto& method : methods) {
        std::optional<qot::Schedule> sched;
        if (method == "exact") {
          qot::CoverInstance inst{universe, cap, args.time_limit};
          sched = qot::exact_bnb(inst);
        } else if (method == "greedy") {
          qot::CoverInstance inst{universe, cap, args.time_limit};
          sched = qot::greedy_density(inst, args.seed, args.restarts);
        } else if (method == "chain") {
          if (args.family == "chain") sched = qot::chain_periodic(n, k);
        } else if (method == "baseline-binary") {
          if (k == 2) sched = qot::binary_hash_pairs(n);
        } else if (method == "baseline-ternary") {
          if (k == 2) sched = qot::ternary_hash_pairs(n);
        } else if (method == "naive") {
          sched = qot::naive_per_rdm(spec);
        } else {
          throw std::invalid_argument("unknown method: " + method);
        }
        if (!sched) continue;  // method not applicable to this (n, k) cell
        // The naive column counts one measurement per local observable
        // (sum of 3^|s|), the accounting every comparison uses; the emitted
        // schedule object itself is Z-padded and deduplicated.
        const std::size_t shown =
            method == "naive" ? universe.size() : static_cast<std::size_t>(sched->size());
        csv << n << "," << k << "," << qot::method_name(sched->method) << "," << shown << ","
            << qot::optimality_name(sched->optimal) << "," << lb << "\n";
      }
    }
  }

  qot::io::RunManifest manifest;
  manifest.command = "compare";
  manifest.outputs.push_back(args.out);
  qot::io::save_text_file(args.out, "# manifest " +
                                        qot::io::manifest_to_json(manifest).dump() + "\n" +
                                        csv.str());
  std::cout << "wrote " << args.out << "\n";
  return 0;
}

// ---------------------------------------------------------------------------

struct SimulateArgs {
  std::string schedule;
  std::string state;
  std::string mode = "exact";
  std::int64_t shots = 0;
  std::int64_t seed = 0;
  std::int64_t local_random_seed = -1;
  bool has_local_random = false;
  std::string out;
};

int cmd_simulate(const SimulateArgs& args) {
  qot::Schedule sched = qot::io::schedule_from_json(qot::io::load_json_file(args.schedule));

  qot::StateVector state = build_state(args.state, sched.n);
  if (args.has_local_random) state = qot::apply_local_random(state, args.local_random_seed);

  qot::RecordMode mode;
  if (args.mode == "exact")
    mode = qot::RecordMode::Exact;
  else if (args.mode == "sampled")
    mode = qot::RecordMode::Sampled;
  else
    throw std::invalid_argument("mode must be exact or sampled");
  if (mode == qot::RecordMode::Sampled && args.shots < 1)
    throw std::invalid_argument("sampled mode needs --shots >= 1");

  json records = json::array();
  for (std::size_t i = 0; i < sched.settings.size(); ++i) {
    qot::MeasurementRecord rec =
        qot::measure_setting(state, sched.settings[i], mode, args.shots,
                             qot::derive_seed(args.seed, static_cast<std::int64_t>(i)));
    records.push_back(qot::io::record_to_json(rec));
  }

  qot::io::RunManifest manifest;
  manifest.command = "simulate";
  manifest.inputs.push_back(args.schedule);
  manifest.outputs.push_back(args.out);
  if (mode == qot::RecordMode::Sampled) manifest.seed = args.seed;

  json out;
  out["manifest"] = qot::io::manifest_to_json(manifest);
  out["n"] = sched.n;
  out["state"] = args.state;
  out["mode"] = args.mode;
  if (mode == qot::RecordMode::Sampled) {
    out["shots"] = args.shots;
    out["seed"] = args.seed;
  } else {
    out["shots"] = nullptr;
    out["seed"] = nullptr;
  }
  out["records"] = records;
  qot::io::save_json_file(args.out, out);

  std::cout << "records=" << records.size() << "\n";
  return 0;
}

// ---------------------------------------------------------------------------

struct ReconstructArgs {
  std::string records;
  std::string schedule;
  int n = 0;
  std::string topology;
  bool project = false;
  std::string out;
  std::string emit_expectations;
};

int cmd_reconstruct(const ReconstructArgs& args) {
  qot::TargetSpec spec = build_spec(parse_topology(args.topology), args.n);
  qot::Schedule sched = qot::io::schedule_from_json(qot::io::load_json_file(args.schedule));
  if (sched.n != spec.n) throw std::invalid_argument("schedule n does not match topology n");

  json records_json = qot::io::load_json_file(args.records);
  std::vector<qot::MeasurementRecord> records;
  if (!records_json.contains("records") || !records_json.at("records").is_array())
    throw qot::io::SchemaError("records file needs a 'records' array");
  for (const auto& r : records_json.at("records"))
    records.push_back(qot::io::record_from_json(r));

  qot::CoverUniverse universe = qot::expand_universe(spec);
  qot::CoverReport rep = qot::verify_cover(sched, universe);
  if (!rep.covered)
    throw qot::UnverifiedSchedule("schedule leaves " +
                                  std::to_string(rep.uncovered_elements.size()) +
                                  " target observables uncovered");

  qot::ExpectationTable table = qot::estimate_expectations(records, sched, spec);

  qot::io::RunManifest manifest;
  manifest.command = "reconstruct";
  manifest.inputs = {args.records, args.schedule};
  manifest.outputs.push_back(args.out);

  json rdms = json::array();
  for (const auto& subset : spec.subsets) {
    qot::RdmEstimate est = qot::assemble_rdm(subset, table);
    if (args.project) est = qot::project_psd(est);
    rdms.push_back(qot::io::rdm_to_json(est));
  }
  json out;
  out["manifest"] = qot::io::manifest_to_json(manifest);
  out["n"] = spec.n;
  out["rdms"] = rdms;
  qot::io::save_json_file(args.out, out);

  if (!args.emit_expectations.empty()) {
    json tj;
    tj["manifest"] = qot::io::manifest_to_json(manifest);
    tj["n"] = spec.n;
    tj["entries"] = qot::io::table_to_json(table)["entries"];
    qot::io::save_json_file(args.emit_expectations, tj);
  }

  std::cout << "rdms=" << rdms.size() << "\n";
  return 0;
}

// ---------------------------------------------------------------------------

struct MetricsArgs {
  std::string expectations;
  std::string sched_a;
  std::string sched_b;
  int n = 0;
  std::string topology;
  std::string state;
  std::string out;
};

int cmd_metrics(const MetricsArgs& args) {
  qot::TargetSpec spec = build_spec(parse_topology(args.topology), args.n);
  qot::CoverUniverse universe = qot::expand_universe(spec);
  qot::ExpectationTable table =
      qot::io::table_from_json(qot::io::load_json_file(args.expectations));

  auto load_verified = [&](const std::string& path) {
    qot::Schedule s = qot::io::schedule_from_json(qot::io::load_json_file(path));
    if (s.n != spec.n) throw std::invalid_argument("schedule n does not match topology n");
    if (!qot::verify_cover(s, universe).covered)
      throw qot::UnverifiedSchedule("schedule " + path + " does not cover the targets");
    return s;
  };
  qot::Schedule sched_a = load_verified(args.sched_a);
  std::optional<qot::Schedule> sched_b;
  if (!args.sched_b.empty()) sched_b = load_verified(args.sched_b);

  std::optional<qot::StateVector> state;
  if (!args.state.empty()) state = build_state(args.state, spec.n);

  auto report = [&](const qot::Schedule& sched) {
    json per_subset = json::array();
    double worst = 0, sum = 0;
    for (const auto& subset : spec.subsets) {
      const double d = qot::one_shot_d(sched, table, subset);
      worst = std::max(worst, d);
      sum += d;
      json row;
      row["subset"] = subset;
      row["d"] = qot::io::round_sig(d);
      row["fidelity_vs_oracle"] = nullptr;
      row["concurrence"] = nullptr;
      qot::RdmEstimate est = qot::assemble_rdm(subset, table);
      // Raw estimates from noisy counts can dip below PSD; project before
      // spectrum-based metrics.
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(est.matrix);
      if (es.eigenvalues().minCoeff() < -1e-10) est = qot::project_psd(est);
      if (state)
        row["fidelity_vs_oracle"] =
            qot::io::round_sig(qot::fidelity(est.matrix, qot::rdm_oracle(*state, subset)));
      if (subset.size() == 2) row["concurrence"] = qot::io::round_sig(qot::concurrence(est.matrix));
      per_subset.push_back(row);
    }
    json rep;
    rep["per_subset"] = per_subset;
    rep["worst_d"] = qot::io::round_sig(worst);
    rep["mean_d"] = qot::io::round_sig(sum / static_cast<double>(spec.subsets.size()));
    return rep;
  };

  qot::io::RunManifest manifest;
  manifest.command = "metrics";
  manifest.inputs = {args.expectations, args.sched_a};
  if (sched_b) manifest.inputs.push_back(args.sched_b);
  manifest.outputs.push_back(args.out);

  json out;
  out["manifest"] = qot::io::manifest_to_json(manifest);
  out["schedule_a"] = report(sched_a);
  if (sched_b) {
    out["schedule_b"] = report(*sched_b);
    qot::SampleRatioReport ratios = qot::sample_ratio(sched_a, *sched_b, table, spec);
    out["worst_ratio"] = qot::io::round_sig(ratios.worst_ratio);
    out["mean_ratio"] = qot::io::round_sig(ratios.mean_ratio);
  } else {
    out["schedule_b"] = nullptr;
    out["worst_ratio"] = nullptr;
    out["mean_ratio"] = nullptr;
  }
  qot::io::save_json_file(args.out, out);

  std::cout << "worst_d=" << out["schedule_a"]["worst_d"].dump();
  if (sched_b) std::cout << " worst_ratio=" << out["worst_ratio"].dump();
  std::cout << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parallel Pauli measurement scheduling and RDM reconstruction"};
  app.set_version_flag("--version", qot::kVersion);
  app.require_subcommand(1);

  ScheduleArgs sa;
  CLI::App* sched_cmd = app.add_subcommand("schedule", "Compute a measurement schedule");
  sched_cmd->add_option("--n", sa.n, "System size (qubits)");
  sched_cmd->add_option("--topology", sa.topology, "all:k | chain:k | lattice:RxC | custom:<path> | mixed:<p1,p2,...>")->required();
  sched_cmd->add_option("--method", sa.method, "exact | greedy | chain | bipartite | baseline-binary | baseline-ternary | naive")->required();
  sched_cmd->add_option("--seed", sa.seed, "Greedy restart seed");
  sched_cmd->add_option("--restarts", sa.restarts, "Greedy restarts");
  sched_cmd->add_option("--time-limit", sa.time_limit, "Exact search budget (seconds)");
  sched_cmd->add_option("--out", sa.out, "Schedule JSON path")->required();
  sched_cmd->add_option("--emit-targets", sa.emit_targets, "Also write the target spec JSON");

  CompareArgs ca;
  CLI::App* comp_cmd = app.add_subcommand("compare", "Tabulate setting counts across methods");
  comp_cmd->add_option("--n-min", ca.n_min)->required();
  comp_cmd->add_option("--n-max", ca.n_max)->required();
  comp_cmd->add_option("--k-min", ca.k_min);
  comp_cmd->add_option("--k-max", ca.k_max);
  comp_cmd->add_option("--methods", ca.methods, "Comma-separated method list")->required();
  comp_cmd->add_option("--family", ca.family, "all | chain");
  comp_cmd->add_option("--seed", ca.seed);
  comp_cmd->add_option("--restarts", ca.restarts);
  comp_cmd->add_option("--time-limit", ca.time_limit);
  comp_cmd->add_option("--out", ca.out, "CSV path")->required();

  SimulateArgs ma;
  CLI::App* sim_cmd = app.add_subcommand("simulate", "Produce measurement records for a schedule");
  sim_cmd->add_option("--schedule", ma.schedule)->required();
  sim_cmd->add_option("--state", ma.state, "ghz | w | psi4 | zero | custom:<path>")->required();
  sim_cmd->add_option("--mode", ma.mode, "exact | sampled");
  sim_cmd->add_option("--shots", ma.shots);
  sim_cmd->add_option("--seed", ma.seed);
  auto* lr = sim_cmd->add_option("--local-random-seed", ma.local_random_seed,
                                 "Apply a seeded Haar-random local unitary per qubit");
  sim_cmd->add_option("--out", ma.out)->required();

  ReconstructArgs ra;
  CLI::App* rec_cmd = app.add_subcommand("reconstruct", "Assemble RDM estimates from records");
  rec_cmd->add_option("--records", ra.records)->required();
  rec_cmd->add_option("--schedule", ra.schedule)->required();
  rec_cmd->add_option("--n", ra.n);
  rec_cmd->add_option("--topology", ra.topology)->required();
  rec_cmd->add_flag("--project-psd", ra.project, "Clip negative eigenvalues and renormalize");
  rec_cmd->add_option("--out", ra.out)->required();
  rec_cmd->add_option("--emit-expectations", ra.emit_expectations,
                      "Also write the expectation table JSON");

  MetricsArgs ta;
  CLI::App* met_cmd = app.add_subcommand("metrics", "One-shot norm distances and sample ratios");
  met_cmd->add_option("--expectations", ta.expectations)->required();
  met_cmd->add_option("--sched-a", ta.sched_a)->required();
  met_cmd->add_option("--sched-b", ta.sched_b);
  met_cmd->add_option("--n", ta.n);
  met_cmd->add_option("--topology", ta.topology)->required();
  met_cmd->add_option("--state", ta.state, "Oracle state for fidelity columns");
  met_cmd->add_option("--out", ta.out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }
  ma.has_local_random = lr->count() > 0;

  const auto start = std::chrono::steady_clock::now();
  int code = 1;
  try {
    if (sched_cmd->parsed())
      code = cmd_schedule(sa);
    else if (comp_cmd->parsed())
      code = cmd_compare(ca);
    else if (sim_cmd->parsed())
      code = cmd_simulate(ma);
    else if (rec_cmd->parsed())
      code = cmd_reconstruct(ra);
    else if (met_cmd->parsed())
      code = cmd_metrics(ta);
  } catch (const qot::CapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    code = 3;
  } catch (const qot::UnverifiedSchedule& e) {
    std::cerr << "error: " << e.what() << "\n";
    code = 4;
  } catch (const qot::NonBipartiteError& e) {
    std::cerr << "error: " << e.what() << "\n";
    code = 2;
  } catch (const qot::io::SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    code = 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    code = 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    code = 1;
  }
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  std::fprintf(stderr, "completed in %.3f s\n", elapsed.count());
  return code;
}
