#include "qswitch/cli.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "qswitch/bmatch.hpp"
#include "qswitch/egs.hpp"
#include "qswitch/errors.hpp"
#include "qswitch/lleg.hpp"
#include "qswitch/utility.hpp"

namespace qswitch {

using nlohmann::json;

namespace {

// ---- formatting -----------------------------------------------------------

// 17 significant digits round-trip any double exactly.
std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt10(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string fmt10_signed(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%+.10g", v);
  return buf;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

// ---- result table ----------------------------------------------------------

// One artifact row set: every cell is pre-formatted text, masked cells are
// empty strings.
struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::vector<std::string>& new_row() {
    rows.emplace_back(columns.size());
    return rows.back();
  }
};

std::string to_csv(const ResultTable& table) {
  std::string out;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out += ',';
    out += csv_escape(table.columns[c]);
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += csv_escape(row[c]);
    }
    out += '\n';
  }
  return out;
}

// ---- config hash ------------------------------------------------------------

std::string fnv1a64_hex(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

// ---- json helpers ------------------------------------------------------------

[[noreturn]] void bad_key(const std::string& where, const std::string& key) {
  throw config_error("unknown key '" + key + "' in " + where);
}

double expect_number(const json& v, const std::string& key) {
  if (!v.is_number()) throw config_error("'" + key + "' must be a number");
  return v.get<double>();
}

std::int64_t expect_int(const json& v, const std::string& key) {
  if (!v.is_number_integer()) throw config_error("'" + key + "' must be an integer");
  return v.get<std::int64_t>();
}

std::string expect_string(const json& v, const std::string& key) {
  if (!v.is_string()) throw config_error("'" + key + "' must be a string");
  return v.get<std::string>();
}

std::vector<int> expect_int_vector(const json& v, const std::string& key, int n) {
  std::vector<int> out;
  if (v.is_number_integer()) {
    out.assign(n, static_cast<int>(v.get<std::int64_t>()));
  } else if (v.is_array()) {
    for (const auto& e : v) out.push_back(static_cast<int>(expect_int(e, key)));
  } else {
    throw config_error("'" + key + "' must be an integer or an array of integers");
  }
  return out;
}

std::vector<double> parse_axis(const json& v, const std::string& key) {
  if (v.is_array()) {
    std::vector<double> values;
    values.reserve(v.size());
    for (const auto& e : v) values.push_back(expect_number(e, key));
    if (values.empty()) throw config_error("'" + key + "' must be non-empty");
    return values;
  }
  if (!v.is_object())
    throw config_error("'" + key + "' must be an array or a grid object");
  if (v.contains("start") || v.contains("stop") || v.contains("step")) {
    for (const auto& [k, _] : v.items())
      if (k != "start" && k != "stop" && k != "step") bad_key("'" + key + "'", k);
    return make_range_axis(key, "", expect_number(v.at("start"), key),
                           expect_number(v.at("stop"), key),
                           expect_number(v.at("step"), key))
        .values;
  }
  if (v.contains("min") || v.contains("max") || v.contains("points")) {
    std::string scale = "log";
    for (const auto& [k, val] : v.items()) {
      if (k == "scale")
        scale = expect_string(val, key + ".scale");
      else if (k != "min" && k != "max" && k != "points")
        bad_key("'" + key + "'", k);
    }
    const double lo = expect_number(v.at("min"), key);
    const double hi = expect_number(v.at("max"), key);
    const int points = static_cast<int>(expect_int(v.at("points"), key));
    if (scale == "log") return make_log_axis(key, "", lo, hi, points).values;
    if (scale == "linear") {
      if (points < 2 || !(hi > lo))
        throw config_error("'" + key + "': need min < max and >= 2 points");
      std::vector<double> values;
      for (int i = 0; i < points; ++i)
        values.push_back(lo + (hi - lo) * i / (points - 1));
      return values;
    }
    throw config_error("'" + key + ".scale' must be \"log\" or \"linear\"");
  }
  throw config_error("'" + key + "' grid object needs start/stop/step or min/max/points");
}

void parse_profile_section(const json& section, HardwareProfile& p) {
  if (!section.is_object()) throw config_error("'profile' must be an object");
  json multiplex_raw, mem_raw, p_swap_raw;
  for (const auto& [key, v] : section.items()) {
    if (key == "n_clients") p.n_clients = static_cast<int>(expect_int(v, key));
    else if (key == "multiplex") multiplex_raw = v;
    else if (key == "mem_per_client") mem_raw = v;
    else if (key == "bsm_budget") p.bsm_budget = static_cast<int>(expect_int(v, key));
    else if (key == "detector_eff") p.detector_eff = expect_number(v, key);
    else if (key == "p_bsa") p.p_bsa = expect_number(v, key);
    else if (key == "p_swap") p_swap_raw = v;
    else if (key == "attenuation") p.attenuation = expect_number(v, key);
    else if (key == "link_length") p.link_length = expect_number(v, key);
    else if (key == "gate_eff_mem") p.gate_eff_mem = expect_number(v, key);
    else if (key == "gate_eff_switch") p.gate_eff_switch = expect_number(v, key);
    else if (key == "beta") p.beta = expect_number(v, key);
    else if (key == "light_speed") p.light_speed = expect_number(v, key);
    else if (key == "tau_c") p.tau_c = expect_number(v, key);
    else if (key == "tau_a") p.tau_a = expect_number(v, key);
    else if (key == "pulse_rate") p.pulse_rate = expect_number(v, key);
    else if (key == "coherence_time") p.coherence_time = expect_number(v, key);
    else if (key == "q_bsm") p.q_bsm = expect_number(v, key);
    else bad_key("'profile'", key);
  }
  if (!multiplex_raw.is_null())
    p.multiplex = expect_int_vector(multiplex_raw, "multiplex", p.n_clients);
  else if (static_cast<int>(p.multiplex.size()) != p.n_clients)
    p.multiplex.assign(p.n_clients, 3);
  if (!mem_raw.is_null())
    p.mem_per_client = expect_int_vector(mem_raw, "mem_per_client", p.n_clients);
  else if (static_cast<int>(p.mem_per_client.size()) != p.n_clients)
    p.mem_per_client.assign(p.n_clients, 3);
  if (!p_swap_raw.is_null()) {
    // "optical" selects the linear-optics swap xi^2 * p_BSA
    if (p_swap_raw.is_string() && p_swap_raw.get<std::string>() == "optical")
      p.p_swap = p.detector_eff * p.detector_eff * p.p_bsa;
    else
      p.p_swap = expect_number(p_swap_raw, "p_swap");
  }
}

ScenarioOverride parse_scenario(const json& v, std::size_t index) {
  if (!v.is_object()) throw config_error("'scenarios' entries must be objects");
  ScenarioOverride s;
  std::optional<int> n_clients, bsm_budget;
  for (const auto& [key, val] : v.items()) {
    if (key == "label") s.label = expect_string(val, "scenarios.label");
    else if (key == "pulse_rate") s.pulse_rate = expect_number(val, key);
    else if (key == "link_length") s.link_length = expect_number(val, key);
    else if (key == "n_clients") n_clients = static_cast<int>(expect_int(val, key));
    else if (key == "bsm_budget") bsm_budget = static_cast<int>(expect_int(val, key));
    else bad_key("'scenarios'", key);
  }
  if (n_clients.has_value() != bsm_budget.has_value())
    throw config_error("scenario overrides set n_clients and bsm_budget together");
  if (n_clients) s.n_and_b = std::make_pair(*n_clients, *bsm_budget);
  const int groups = (s.pulse_rate ? 1 : 0) + (s.link_length ? 1 : 0) + (s.n_and_b ? 1 : 0);
  if (groups > 1)
    throw config_error("a scenario overrides one parameter group only");
  if (s.label.empty()) s.label = "scenario" + std::to_string(index);
  return s;
}

MemProtocol parse_protocol(const std::string& name) {
  if (name == "block") return MemProtocol::block;
  if (name == "single") return MemProtocol::single_attempt;
  throw config_error("'protocol' must be \"block\" or \"single\"");
}

Objective parse_objective(const std::string& name) {
  if (name == "rate") return Objective::rate;
  if (name == "de") return Objective::utility_de;
  if (name == "skf") return Objective::utility_skf;
  if (name == "ngt") return Objective::utility_ngt;
  throw config_error("'objective' must be one of rate, de, skf, ngt");
}

const char* protocol_name(MemProtocol p) {
  return p == MemProtocol::block ? "block" : "single";
}

const char* objective_name(Objective o) {
  switch (o) {
    case Objective::rate: return "rate";
    case Objective::utility_de: return "de";
    case Objective::utility_skf: return "skf";
    default: return "ngt";
  }
}

const char* estimator_kind_name(Estimator::Kind k) {
  switch (k) {
    case Estimator::Kind::exact: return "exact";
    case Estimator::Kind::mc: return "mc";
    default: return "auto";
  }
}

void parse_run_section(const json& section, RunConfig& cfg) {
  if (!section.is_object()) throw config_error("'run' must be an object");
  for (const auto& [key, v] : section.items()) {
    if (key == "k_range") {
      if (!v.is_array() || v.size() != 2)
        throw config_error("'k_range' must be [lo, hi]");
      cfg.k_range = {static_cast<int>(expect_int(v[0], key)),
                     static_cast<int>(expect_int(v[1], key))};
    } else if (key == "k") {
      cfg.block_size = static_cast<int>(expect_int(v, key));
    } else if (key == "protocol") {
      cfg.protocol = parse_protocol(expect_string(v, key));
    } else if (key == "estimator") {
      const std::string name = expect_string(v, key);
      if (name == "exact") cfg.estimator.kind = Estimator::Kind::exact;
      else if (name == "mc") cfg.estimator.kind = Estimator::Kind::mc;
      else if (name == "auto") cfg.estimator.kind = Estimator::Kind::auto_select;
      else throw config_error("'estimator' must be one of exact, mc, auto");
    } else if (key == "n_samples") {
      cfg.estimator.n_samples = expect_int(v, key);
    } else if (key == "seed") {
      if (!v.is_number_integer())
        throw config_error("'seed' must be an integer");
      if (!v.is_number_unsigned() && v.get<std::int64_t>() < 0)
        throw config_error("'seed' must be >= 0");
      cfg.estimator.seed = v.get<std::uint64_t>();
    } else if (key == "workers") {
      cfg.estimator.workers = static_cast<int>(expect_int(v, key));
    } else if (key == "objective") {
      cfg.objective = parse_objective(expect_string(v, key));
    } else if (key == "beta_axis") {
      cfg.beta_axis = parse_axis(v, key);
    } else if (key == "dominance_beta_axis") {
      cfg.dominance_beta_axis = parse_axis(v, key);
    } else if (key == "l_axis_km") {
      cfg.l_axis_km = parse_axis(v, key);
    } else if (key == "f_axis_hz") {
      cfg.f_axis_hz = parse_axis(v, key);
    } else if (key == "scenarios") {
      if (!v.is_array() || v.empty())
        throw config_error("'scenarios' must be a non-empty array");
      cfg.scenarios.clear();
      for (std::size_t i = 0; i < v.size(); ++i)
        cfg.scenarios.push_back(parse_scenario(v[i], i));
    } else if (key == "out") {
      cfg.out_path = expect_string(v, key);
    } else if (key == "format") {
      cfg.format = expect_string(v, key);
      if (cfg.format != "csv" && cfg.format != "json")
        throw config_error("'format' must be \"csv\" or \"json\"");
    } else {
      bad_key("'run'", key);
    }
  }
}

void validate_run(const RunConfig& cfg) {
  if (cfg.k_range.first < 1 || cfg.k_range.second < cfg.k_range.first)
    throw config_error("'k_range' must satisfy 1 <= lo <= hi");
  if (cfg.k_range.second > 1'000'000)
    throw config_error("'k_range' upper bound capped at 1e6");
  if (cfg.block_size && *cfg.block_size < 1)
    throw config_error("'k' must be >= 1");
  if (cfg.estimator.n_samples < 1)
    throw config_error("'n_samples' must be >= 1");
  if (cfg.estimator.workers < 1)
    throw config_error("'workers' must be >= 1");
  for (double b : cfg.beta_axis)
    if (!(b >= 0.0 && b <= 2.0))
      throw config_error("'beta_axis' values must lie in [0, 2]");
  for (double b : cfg.dominance_beta_axis)
    if (!(b >= 0.0 && b <= 2.0))
      throw config_error("'dominance_beta_axis' values must lie in [0, 2]");
  for (double l : cfg.l_axis_km)
    if (!(l > 0.0)) throw config_error("'l_axis_km' values must be > 0");
  for (double f : cfg.f_axis_hz)
    if (!(f > 0.0)) throw config_error("'f_axis_hz' values must be > 0");
  for (const auto& s : cfg.scenarios) {
    try {
      s.apply(cfg.profile);
    } catch (const std::invalid_argument& e) {
      throw config_error("scenario '" + s.label + "': " + e.what());
    }
  }
}

// ---- metadata / json emission ------------------------------------------------

json profile_to_json(const HardwareProfile& p) {
  json j;
  j["n_clients"] = p.n_clients;
  j["multiplex"] = p.multiplex;
  j["mem_per_client"] = p.mem_per_client;
  j["bsm_budget"] = p.bsm_budget;
  j["detector_eff"] = p.detector_eff;
  j["p_bsa"] = p.p_bsa;
  j["p_swap"] = p.p_swap;
  j["attenuation"] = p.attenuation;
  j["link_length"] = p.link_length;
  j["gate_eff_mem"] = p.gate_eff_mem;
  j["gate_eff_switch"] = p.gate_eff_switch;
  j["beta"] = p.beta;
  j["light_speed"] = p.light_speed;
  j["tau_c"] = p.tau_c;
  j["tau_a"] = p.tau_a;
  j["pulse_rate"] = p.pulse_rate;
  j["coherence_time"] = p.coherence_time;
  j["q_bsm"] = p.q_bsm;
  return j;
}

json scenarios_to_json(const std::vector<ScenarioOverride>& scenarios) {
  json arr = json::array();
  for (const auto& s : scenarios) {
    json j;
    j["label"] = s.label;
    if (s.pulse_rate) j["pulse_rate"] = *s.pulse_rate;
    if (s.link_length) j["link_length"] = *s.link_length;
    if (s.n_and_b) {
      j["n_clients"] = s.n_and_b->first;
      j["bsm_budget"] = s.n_and_b->second;
    }
    arr.push_back(j);
  }
  return arr;
}

// Only fields that can change computed numbers enter the hash; workers and
// output destination cannot (the determinism contract guarantees it).
json experiment_json(const RunConfig& cfg) {
  json j;
  j["profile"] = profile_to_json(cfg.profile);
  j["k_range"] = {cfg.k_range.first, cfg.k_range.second};
  if (cfg.block_size) j["k"] = *cfg.block_size;
  j["protocol"] = protocol_name(cfg.protocol);
  j["estimator"] = estimator_kind_name(cfg.estimator.kind);
  j["n_samples"] = cfg.estimator.n_samples;
  j["seed"] = cfg.estimator.seed;
  j["objective"] = objective_name(cfg.objective);
  j["beta_axis"] = cfg.beta_axis;
  j["dominance_beta_axis"] = cfg.dominance_beta_axis;
  j["l_axis_km"] = cfg.l_axis_km;
  j["f_axis_hz"] = cfg.f_axis_hz;
  j["scenarios"] = scenarios_to_json(cfg.scenarios);
  return j;
}

json metadata_to_json(const RunConfig& cfg, const std::string& command) {
  json j;
  j["command"] = command;
  j["config_hash"] = config_hash(cfg);
  j["estimator"] = estimator_kind_name(cfg.estimator.kind);
  j["n_samples"] = cfg.estimator.n_samples;
  j["seed"] = cfg.estimator.seed;
  j["profile"] = profile_to_json(cfg.profile);
  return j;
}

json axis_to_json(const Axis& axis) {
  json j;
  j["name"] = axis.name;
  j["unit"] = axis.unit;
  j["values"] = axis.values;
  if (!axis.labels.empty()) j["labels"] = axis.labels;
  return j;
}

json sweep_to_json(const SweepResult& result, const RunConfig& cfg,
                   const std::string& command) {
  json j;
  j["axes"] = json::array();
  for (const auto& a : result.axes) j["axes"].push_back(axis_to_json(a));
  j["metric"] = result.metric;
  json values = json::array();
  for (const auto& v : result.values)
    values.push_back(v ? json(*v) : json(nullptr));
  j["values"] = values;
  json ann;
  for (const auto& [name, idx] : result.annotations) ann[name] = idx;
  j["annotations"] = ann;
  j["metadata"] = metadata_to_json(cfg, command);
  return j;
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

void write_artifact(const std::string& path, const std::string& bytes) {
  if (path.empty()) return;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output path: " + path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("failed writing output: " + path);
}

// ---- commands -----------------------------------------------------------------

struct Summary {
  std::string line;
  void add(const std::string& key, const std::string& value) {
    if (!line.empty()) line += ' ';
    line += key + '=' + value;
  }
  void add(const std::string& key, double v) { add(key, fmt10(v)); }
  void add(const std::string& key, std::int64_t v) { add(key, std::to_string(v)); }
};

RunResult finish(const RunConfig& cfg, const Summary& summary, const ResultTable& table,
                 const json& as_json) {
  RunResult r;
  r.summary = summary.line;
  if (!cfg.out_path.empty()) {
    r.artifact = cfg.format == "json" ? dump_json(as_json) : to_csv(table);
    write_artifact(cfg.out_path, r.artifact);
  }
  return r;
}

RunResult cmd_emax(const RunConfig& cfg) {
  const CapacityVector cv{cfg.profile.multiplex, cfg.profile.bsm_budget};
  const std::int64_t value = emax_closed_form(cv);
  const AllocationVector witness = greedy_max_allocation(cv);

  ResultTable table;
  table.columns = {"node_i", "node_j", "units"};
  std::string witness_str;
  json witness_json = json::array();
  for (const auto& e : witness.edges()) {
    auto& row = table.new_row();
    row[0] = std::to_string(e.i + 1);
    row[1] = std::to_string(e.j + 1);
    row[2] = std::to_string(e.units);
    if (!witness_str.empty()) witness_str += ';';
    witness_str += "(" + std::to_string(e.i + 1) + "," + std::to_string(e.j + 1) +
                   "):" + std::to_string(e.units);
    witness_json.push_back({{"i", e.i + 1}, {"j", e.j + 1}, {"units", e.units}});
  }

  Summary s;
  s.add("emax", value);
  s.add("witness", witness_str.empty() ? "none" : witness_str);

  json j;
  j["emax"] = value;
  j["witness"] = witness_json;
  j["metadata"] = metadata_to_json(cfg, "emax");
  return finish(cfg, s, table, j);
}

void metrics_row(ResultTable& table, const ArchitectureMetrics& m) {
  auto& row = table.new_row();
  std::size_t c = table.columns.size() - 5;
  row[c++] = fmt17(m.rate_total);
  row[c++] = fmt17(m.rate_normalized);
  row[c++] = fmt17(m.werner_e2e);
  row[c++] = fmt17(m.fidelity_e2e);
  row[c++] = fmt17(m.slot_duration);
}

void metrics_summary(Summary& s, const ArchitectureMetrics& m) {
  s.add("rate_total", m.rate_total);
  s.add("rate_normalized", m.rate_normalized);
  s.add("werner_e2e", m.werner_e2e);
  s.add("fidelity_e2e", m.fidelity_e2e);
  s.add("slot_duration_s", m.slot_duration);
}

json metrics_json(const ArchitectureMetrics& m) {
  json j;
  j["architecture"] = m.architecture;
  j["rate_total"] = m.rate_total;
  j["rate_normalized"] = m.rate_normalized;
  j["werner_e2e"] = m.werner_e2e;
  j["fidelity_e2e"] = m.fidelity_e2e;
  j["slot_duration_s"] = m.slot_duration;
  return j;
}

RunResult cmd_egs(const RunConfig& cfg) {
  const ArchitectureMetrics m = egs_metrics(cfg.profile);
  ResultTable table;
  table.columns = {"rate_total", "rate_normalized", "werner_e2e", "fidelity_e2e",
                   "slot_duration_s"};
  metrics_row(table, m);
  Summary s;
  metrics_summary(s, m);
  json j = metrics_json(m);
  j["metadata"] = metadata_to_json(cfg, "egs");
  return finish(cfg, s, table, j);
}

RunResult cmd_mem(const RunConfig& cfg) {
  int k = 1;
  if (cfg.protocol == MemProtocol::block) {
    if (cfg.block_size) {
      k = *cfg.block_size;
    } else {
      // no fixed K configured: use the objective-optimal block size
      k = optimize_block_size(cfg.profile, cfg.objective, cfg.k_range, cfg.estimator)
              .k_star;
    }
  }
  const ArchitectureMetrics m = mem_metrics(cfg.profile, k, cfg.protocol, cfg.estimator);

  ResultTable table;
  table.columns = {"protocol", "k", "rate_total", "rate_normalized", "werner_e2e",
                   "fidelity_e2e", "slot_duration_s"};
  metrics_row(table, m);
  auto& row = table.rows.back();
  row[0] = protocol_name(cfg.protocol);
  row[1] = std::to_string(k);

  Summary s;
  s.add("protocol", protocol_name(cfg.protocol));
  s.add("k", static_cast<std::int64_t>(k));
  metrics_summary(s, m);

  json j = metrics_json(m);
  j["protocol"] = protocol_name(cfg.protocol);
  j["k"] = k;
  j["metadata"] = metadata_to_json(cfg, "mem");
  return finish(cfg, s, table, j);
}

RunResult cmd_frontier(const RunConfig& cfg) {
  const Axis beta_axis = make_value_axis("beta", "", cfg.beta_axis);
  const FrontierResult fr = frontier_vs_beta(cfg.profile, beta_axis, cfg.k_range,
                                             cfg.estimator, cfg.objective);

  ResultTable table;
  table.columns = {"beta",         "egs_rate_normalized", "egs_fidelity",
                   "mem_k_star",   "mem_rate_normalized", "mem_fidelity"};
  double egs_fmax = 0.0, mem_fmax = 0.0;
  std::int64_t masked = 0;
  json series_egs_r = json::array(), series_egs_f = json::array();
  json series_mem_r = json::array(), series_mem_f = json::array();
  json series_k = json::array();
  for (std::size_t i = 0; i < fr.beta.size(); ++i) {
    auto& row = table.new_row();
    row[0] = fmt17(fr.beta[i]);
    row[1] = fmt17(fr.egs[i].rate_normalized);
    row[2] = fmt17(fr.egs[i].fidelity);
    egs_fmax = std::max(egs_fmax, fr.egs[i].fidelity);
    series_egs_r.push_back(fr.egs[i].rate_normalized);
    series_egs_f.push_back(fr.egs[i].fidelity);
    if (fr.mem[i]) {
      row[3] = std::to_string(*fr.mem_k_star[i]);
      row[4] = fmt17(fr.mem[i]->rate_normalized);
      row[5] = fmt17(fr.mem[i]->fidelity);
      mem_fmax = std::max(mem_fmax, fr.mem[i]->fidelity);
      series_k.push_back(*fr.mem_k_star[i]);
      series_mem_r.push_back(fr.mem[i]->rate_normalized);
      series_mem_f.push_back(fr.mem[i]->fidelity);
    } else {
      ++masked;
      series_k.push_back(nullptr);
      series_mem_r.push_back(nullptr);
      series_mem_f.push_back(nullptr);
    }
  }

  Summary s;
  s.add("points", static_cast<std::int64_t>(fr.beta.size()));
  s.add("egs_fidelity_max", egs_fmax);
  s.add("mem_fidelity_max", mem_fmax);
  s.add("masked", masked);

  json j;
  j["axes"] = json::array({axis_to_json(beta_axis)});
  j["series"] = {{"egs_rate_normalized", series_egs_r},
                 {"egs_fidelity", series_egs_f},
                 {"mem_k_star", series_k},
                 {"mem_rate_normalized", series_mem_r},
                 {"mem_fidelity", series_mem_f}};
  j["metadata"] = metadata_to_json(cfg, "frontier");
  return finish(cfg, s, table, j);
}

ResultTable sweep_table(const SweepResult& result, const std::string& col0,
                        const std::string& col1) {
  ResultTable table;
  table.columns = {col0, col1, result.metric};
  const std::size_t cols = result.axes[1].size();
  for (std::size_t cell = 0; cell < result.values.size(); ++cell) {
    auto& row = table.new_row();
    const std::size_t r = cell / cols, c = cell % cols;
    row[0] = result.axes[0].labels.empty() ? fmt17(result.axes[0].values[r])
                                           : result.axes[0].labels[r];
    row[1] = result.axes[1].labels.empty() ? fmt17(result.axes[1].values[c])
                                           : result.axes[1].labels[c];
    if (result.values[cell]) row[2] = fmt17(*result.values[cell]);
  }
  return table;
}

RunResult cmd_sweep_kl(const RunConfig& cfg) {
  const Axis k_axis = make_block_axis(cfg.k_range);
  const Axis l_axis = make_value_axis("l", "km", cfg.l_axis_km);
  const SweepResult sw = sweep_rate_K_L(cfg.profile, k_axis, l_axis, cfg.estimator);

  Summary s;
  s.add("cells", static_cast<std::int64_t>(sw.values.size()));
  // argmax K at the smallest length in the grid
  std::size_t min_l = 0;
  for (std::size_t c = 1; c < l_axis.size(); ++c)
    if (l_axis.values[c] < l_axis.values[min_l]) min_l = c;
  const int arg = sw.annotations.at("argmax_k_per_l")[min_l];
  s.add("argmax_k_at_min_l", static_cast<std::int64_t>(
                                 static_cast<int>(k_axis.values[arg])));

  return finish(cfg, s, sweep_table(sw, "k", "l_km"), sweep_to_json(sw, cfg, "sweep-kl"));
}

RunResult cmd_sweep_kf(const RunConfig& cfg) {
  const Axis k_axis = make_block_axis(cfg.k_range);
  const Axis f_axis = make_value_axis("f_pulse", "Hz", cfg.f_axis_hz);
  const SweepResult sw = sweep_fidelity_K_fpulse(cfg.profile, k_axis, f_axis);

  double lo = 1.0, hi = 0.0;
  for (const auto& v : sw.values)
    if (v) {
      lo = std::min(lo, *v);
      hi = std::max(hi, *v);
    }
  Summary s;
  s.add("cells", static_cast<std::int64_t>(sw.values.size()));
  s.add("fidelity_min", lo);
  s.add("fidelity_max", hi);
  return finish(cfg, s, sweep_table(sw, "k", "f_pulse_hz"),
                sweep_to_json(sw, cfg, "sweep-kf"));
}

RunResult cmd_dominance(const RunConfig& cfg) {
  const Axis beta_axis = make_value_axis("beta", "", cfg.dominance_beta_axis);
  const SweepResult sw = dominance_sweep(cfg.profile, beta_axis, cfg.scenarios,
                                         cfg.k_range, cfg.estimator);
  std::int64_t pos = 0, neg = 0, masked = 0;
  for (const auto& v : sw.values) {
    if (!v) ++masked;
    else if (*v > 0) ++pos;
    else ++neg;
  }
  Summary s;
  s.add("cells", static_cast<std::int64_t>(sw.values.size()));
  s.add("positive", pos);
  s.add("negative", neg);
  s.add("masked", masked);
  return finish(cfg, s, sweep_table(sw, "beta", "scenario"),
                sweep_to_json(sw, cfg, "dominance"));
}

RunResult cmd_compare(const RunConfig& cfg) {
  const HardwareProfile& p = cfg.profile;
  const ArchitectureMetrics e = egs_metrics(p);
  const auto u_egs = log_utility(e.rate_normalized, negativity_q(e.fidelity_e2e));

  std::optional<int> k_star;
  std::optional<double> u_mem;
  try {
    const BlockSizeChoice c =
        optimize_block_size(p, Objective::utility_ngt, cfg.k_range, cfg.estimator);
    k_star = c.k_star;
    u_mem = c.objective_value;
  } catch (const no_feasible_block_error&) {
  }

  std::optional<double> delta;
  if (u_egs && u_mem) delta = *u_mem - *u_egs;

  ResultTable table;
  table.columns = {"beta", "k_star", "u_ngt_mem", "u_ngt_egs", "delta_u_ngt"};
  auto& row = table.new_row();
  row[0] = fmt17(p.beta);
  if (k_star) row[1] = std::to_string(*k_star);
  if (u_mem) row[2] = fmt17(*u_mem);
  if (u_egs) row[3] = fmt17(*u_egs);
  if (delta) row[4] = fmt17(*delta);

  Summary s;
  s.add("beta", p.beta);
  s.add("k_star", k_star ? std::to_string(*k_star) : "undefined");
  s.add("u_ngt_mem", u_mem ? fmt10(*u_mem) : "undefined");
  s.add("u_ngt_egs", u_egs ? fmt10(*u_egs) : "undefined");
  s.add("delta_u_ngt", delta ? fmt10_signed(*delta) : "undefined");

  json j;
  j["beta"] = p.beta;
  j["k_star"] = k_star ? json(*k_star) : json(nullptr);
  j["u_ngt_mem"] = u_mem ? json(*u_mem) : json(nullptr);
  j["u_ngt_egs"] = u_egs ? json(*u_egs) : json(nullptr);
  j["delta_u_ngt"] = delta ? json(*delta) : json(nullptr);
  j["metadata"] = metadata_to_json(cfg, "compare");
  return finish(cfg, s, table, j);
}

}  // namespace

RunConfig default_config() {
  RunConfig cfg;
  cfg.beta_axis = make_range_axis("beta", "", 0.005, 0.15, 0.005).values;
  cfg.dominance_beta_axis = make_range_axis("beta", "", 0.01, 0.15, 0.005).values;
  cfg.l_axis_km = make_log_axis("l", "km", 0.01, 20.0, 25).values;
  cfg.f_axis_hz = make_log_axis("f_pulse", "Hz", 1.0e4, 1.0e9, 26).values;
  cfg.scenarios = {ScenarioOverride{"baseline", {}, {}, {}}};
  return cfg;
}

RunConfig parse_config(const std::string& text) {
  // an empty or whitespace-only document means "all defaults"
  std::string trimmed = text;
  trimmed.erase(0, trimmed.find_first_not_of(" \t\r\n"));
  if (trimmed.empty()) trimmed = "{}";

  json doc;
  try {
    doc = json::parse(trimmed);
  } catch (const json::parse_error& e) {
    throw config_error("syntax error at byte " + std::to_string(e.byte) + ": " +
                       e.what());
  }
  if (!doc.is_object()) throw config_error("config document must be a JSON object");

  RunConfig cfg = default_config();
  for (const auto& [key, v] : doc.items()) {
    if (key == "profile") parse_profile_section(v, cfg.profile);
    else if (key == "run") parse_run_section(v, cfg);
    else bad_key("config", key);
  }

  try {
    cfg.profile.validate();
  } catch (const std::invalid_argument& e) {
    throw config_error(std::string("profile invariant violation: ") + e.what());
  }
  validate_run(cfg);
  return cfg;
}

std::string serialize_config(const RunConfig& cfg) {
  json j;
  j["profile"] = profile_to_json(cfg.profile);
  json run;
  run["k_range"] = {cfg.k_range.first, cfg.k_range.second};
  if (cfg.block_size) run["k"] = *cfg.block_size;
  run["protocol"] = protocol_name(cfg.protocol);
  run["estimator"] = estimator_kind_name(cfg.estimator.kind);
  run["n_samples"] = cfg.estimator.n_samples;
  run["seed"] = cfg.estimator.seed;
  run["workers"] = cfg.estimator.workers;
  run["objective"] = objective_name(cfg.objective);
  run["beta_axis"] = cfg.beta_axis;
  run["dominance_beta_axis"] = cfg.dominance_beta_axis;
  run["l_axis_km"] = cfg.l_axis_km;
  run["f_axis_hz"] = cfg.f_axis_hz;
  run["scenarios"] = scenarios_to_json(cfg.scenarios);
  if (!cfg.out_path.empty()) run["out"] = cfg.out_path;
  run["format"] = cfg.format;
  j["run"] = run;
  return dump_json(j);
}

std::string config_hash(const RunConfig& cfg) {
  return fnv1a64_hex(experiment_json(cfg).dump());
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {
      "emax", "egs", "mem", "frontier", "sweep-kl", "sweep-kf", "dominance", "compare"};
  return names;
}

RunResult run_command(const std::string& command, const RunConfig& cfg) {
  cfg.profile.validate();
  if (command == "emax") return cmd_emax(cfg);
  if (command == "egs") return cmd_egs(cfg);
  if (command == "mem") return cmd_mem(cfg);
  if (command == "frontier") return cmd_frontier(cfg);
  if (command == "sweep-kl") return cmd_sweep_kl(cfg);
  if (command == "sweep-kf") return cmd_sweep_kf(cfg);
  if (command == "dominance") return cmd_dominance(cfg);
  if (command == "compare") return cmd_compare(cfg);
  throw std::invalid_argument("unknown command: " + command);
}

}  // namespace qswitch
