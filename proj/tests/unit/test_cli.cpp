#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "qswitch/cli.hpp"
#include "qswitch/egs.hpp"
#include "qswitch/errors.hpp"

using namespace qswitch;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool profiles_equal(const HardwareProfile& a, const HardwareProfile& b) {
  return a.n_clients == b.n_clients && a.multiplex == b.multiplex &&
         a.mem_per_client == b.mem_per_client && a.bsm_budget == b.bsm_budget &&
         a.detector_eff == b.detector_eff && a.p_bsa == b.p_bsa &&
         a.p_swap == b.p_swap && a.attenuation == b.attenuation &&
         a.link_length == b.link_length && a.gate_eff_mem == b.gate_eff_mem &&
         a.gate_eff_switch == b.gate_eff_switch && a.beta == b.beta &&
         a.light_speed == b.light_speed && a.tau_c == b.tau_c && a.tau_a == b.tau_a &&
         a.pulse_rate == b.pulse_rate && a.coherence_time == b.coherence_time &&
         a.q_bsm == b.q_bsm;
}

}  // namespace

TEST_CASE("the bundled baseline config equals the all-defaults config") {
  const RunConfig bundled = parse_config(read_file(QSWITCH_BASELINE_CONFIG));
  const RunConfig defaults = parse_config("");

  CHECK(profiles_equal(bundled.profile, defaults.profile));
  CHECK(bundled.k_range == defaults.k_range);
  CHECK(bundled.estimator.n_samples == defaults.estimator.n_samples);
  CHECK(bundled.estimator.seed == defaults.estimator.seed);
  CHECK(bundled.beta_axis == defaults.beta_axis);
  CHECK(bundled.dominance_beta_axis == defaults.dominance_beta_axis);
  CHECK(bundled.l_axis_km == defaults.l_axis_km);
  CHECK(bundled.f_axis_hz == defaults.f_axis_hz);
  CHECK(config_hash(bundled) == config_hash(defaults));

  // and it is the baseline scenario
  CHECK(bundled.profile.n_clients == 6);
  CHECK(bundled.profile.multiplex == std::vector<int>(6, 3));
  CHECK(bundled.profile.bsm_budget == 8);
  CHECK(bundled.profile.detector_eff == 0.9);
  CHECK(bundled.profile.p_bsa == 0.5);
  CHECK(bundled.profile.p_swap == 1.0);
  CHECK(bundled.profile.attenuation == 0.2);
  CHECK(bundled.profile.link_length == 1.0);
  CHECK(bundled.profile.gate_eff_mem == 0.85);
  CHECK(bundled.profile.beta == 0.03);
  CHECK(bundled.profile.light_speed == 2.0e8);
  CHECK(bundled.profile.tau_c == 2.0e-6);
  CHECK(bundled.profile.tau_a == 3.0e-6);
  CHECK(bundled.profile.pulse_rate == 1.0e7);
  CHECK(bundled.profile.coherence_time == 5.0e-4);
  CHECK(bundled.profile.q_bsm == 0.97);
}

TEST_CASE("config rejection") {
  SUBCASE("invariant violation names the field") {
    CHECK_THROWS_WITH_AS(parse_config(R"({"profile": {"detector_eff": 1.2}})"),
                         doctest::Contains("detector_eff"), config_error);
  }
  SUBCASE("unknown keys are rejected") {
    CHECK_THROWS_WITH_AS(parse_config(R"({"profile": {"detector_efficiency": 0.9}})"),
                         doctest::Contains("detector_efficiency"), config_error);
    CHECK_THROWS_WITH_AS(parse_config(R"({"runs": {}})"), doctest::Contains("runs"),
                         config_error);
    CHECK_THROWS_WITH_AS(parse_config(R"({"run": {"blocksize": 3}})"),
                         doctest::Contains("blocksize"), config_error);
  }
  SUBCASE("syntax errors report a position") {
    CHECK_THROWS_WITH_AS(parse_config("{\"profile\": }"), doctest::Contains("byte"),
                         config_error);
  }
  SUBCASE("type errors") {
    CHECK_THROWS_AS(parse_config(R"({"profile": {"beta": "high"}})"), config_error);
    CHECK_THROWS_AS(parse_config(R"({"run": {"k_range": [1]}})"), config_error);
    CHECK_THROWS_AS(parse_config(R"({"run": {"format": "xml"}})"), config_error);
  }
  SUBCASE("scenario override groups are exclusive") {
    CHECK_THROWS_AS(
        parse_config(R"({"run": {"scenarios": [{"pulse_rate": 1e9, "link_length": 0.1}]}})"),
        config_error);
    CHECK_THROWS_AS(parse_config(R"({"run": {"scenarios": [{"n_clients": 10}]}})"),
                    config_error);
  }
}

TEST_CASE("profile shorthand and p_swap modes") {
  const RunConfig scalar = parse_config(R"({"profile": {"n_clients": 4, "multiplex": 2}})");
  CHECK(scalar.profile.multiplex == std::vector<int>(4, 2));
  CHECK(scalar.profile.mem_per_client == std::vector<int>(4, 3));

  const RunConfig arrays = parse_config(
      R"({"profile": {"n_clients": 3, "multiplex": [1, 2, 3], "mem_per_client": [2, 2, 2]}})");
  CHECK(arrays.profile.multiplex == std::vector<int>{1, 2, 3});

  const RunConfig optical = parse_config(R"({"profile": {"p_swap": "optical"}})");
  CHECK(optical.profile.p_swap == 0.9 * 0.9 * 0.5);
}

TEST_CASE("serialize -> parse round trip is lossless") {
  RunConfig cfg = parse_config(R"({
    "profile": {"beta": 0.07, "link_length": 0.3, "pulse_rate": 2.5e6},
    "run": {"k_range": [2, 17], "k": 9, "estimator": "mc", "n_samples": 4321,
            "seed": 99, "workers": 3, "objective": "de",
            "beta_axis": [0.01, 0.02, 0.11],
            "scenarios": [{"label": "short", "link_length": 0.1}],
            "format": "json"}
  })");
  const RunConfig again = parse_config(serialize_config(cfg));
  CHECK(profiles_equal(cfg.profile, again.profile));
  CHECK(cfg.k_range == again.k_range);
  CHECK(*again.block_size == 9);
  CHECK(again.estimator.kind == Estimator::Kind::mc);
  CHECK(again.estimator.n_samples == 4321);
  CHECK(again.estimator.seed == 99);
  CHECK(again.estimator.workers == 3);
  CHECK(again.beta_axis == cfg.beta_axis);
  CHECK(again.scenarios.size() == 1);
  CHECK(again.scenarios[0].label == "short");
  CHECK(config_hash(cfg) == config_hash(again));
}

TEST_CASE("config hash tracks semantics, not formatting") {
  const RunConfig a = parse_config(R"({"profile": {"beta": 0.05, "link_length": 2.0}})");
  const RunConfig b =
      parse_config("{\n  \"profile\": {\"link_length\": 2.0,\n \"beta\": 0.05}\n}\n");
  CHECK(config_hash(a) == config_hash(b));

  // scalar shorthand and the expanded array are the same experiment
  const RunConfig c = parse_config(R"({"profile": {"multiplex": 3}})");
  const RunConfig d = parse_config(R"({"profile": {"multiplex": [3,3,3,3,3,3]}})");
  CHECK(config_hash(c) == config_hash(d));

  const RunConfig e = parse_config(R"({"profile": {"beta": 0.051, "link_length": 2.0}})");
  CHECK(config_hash(a) != config_hash(e));

  const RunConfig f = parse_config(R"({"run": {"seed": 123}})");
  CHECK(config_hash(c) != config_hash(f));

  // workers and output destination cannot change any computed number
  const RunConfig g = parse_config(R"({"run": {"workers": 8, "out": "x.csv"}})");
  CHECK(config_hash(c) == config_hash(g));
}

TEST_CASE("commands are thin adapters over the library") {
  RunConfig cfg = default_config();

  SUBCASE("egs summary carries the direct metrics") {
    const RunResult r = run_command("egs", cfg);
    const ArchitectureMetrics m = egs_metrics(cfg.profile);
    char expected[64];
    std::snprintf(expected, sizeof expected, "rate_total=%.10g", m.rate_total);
    CHECK(r.summary.find(expected) != std::string::npos);
    std::snprintf(expected, sizeof expected, "fidelity_e2e=%.10g", m.fidelity_e2e);
    CHECK(r.summary.find(expected) != std::string::npos);
  }

  SUBCASE("emax prints the closed form and a witness") {
    const RunResult r = run_command("emax", cfg);
    CHECK(r.summary.find("emax=8") != std::string::npos);
    CHECK(r.summary.find("witness=") != std::string::npos);
  }

  SUBCASE("compare prints a signed delta") {
    const RunResult r = run_command("compare", cfg);
    CHECK(r.summary.find("delta_u_ngt=+") != std::string::npos);
  }

  SUBCASE("mem honors the configured protocol and block size") {
    cfg.block_size = 30;
    const RunResult fixed = run_command("mem", cfg);
    CHECK(fixed.summary.find("k=30") != std::string::npos);
    const ArchitectureMetrics m =
        mem_metrics(cfg.profile, 30, MemProtocol::block, cfg.estimator);
    char expected[64];
    std::snprintf(expected, sizeof expected, "rate_total=%.10g", m.rate_total);
    CHECK(fixed.summary.find(expected) != std::string::npos);

    cfg.block_size.reset();
    cfg.protocol = MemProtocol::single_attempt;
    const RunResult single = run_command("mem", cfg);
    CHECK(single.summary.find("protocol=single") != std::string::npos);
    CHECK(single.summary.find("k=1") != std::string::npos);
  }

  SUBCASE("frontier artifact rows carry the direct library values") {
    cfg.beta_axis = {0.02, 0.08};
    cfg.out_path = "test_frontier_vals.csv";
    const RunResult r = run_command("frontier", cfg);
    HardwareProfile q = cfg.profile;
    q.beta = 0.08;
    const ArchitectureMetrics e = egs_metrics(q);
    char expected[64];
    std::snprintf(expected, sizeof expected, "%.17g", e.rate_normalized);
    CHECK(r.artifact.find(expected) != std::string::npos);
    std::remove("test_frontier_vals.csv");
  }

  SUBCASE("unknown command") {
    CHECK_THROWS_AS(run_command("nope", cfg), std::invalid_argument);
  }
}

TEST_CASE("config validation hardening") {
  CHECK_THROWS_WITH_AS(parse_config(R"({"run": {"seed": -4}})"),
                       doctest::Contains("seed"), config_error);
  CHECK_THROWS_WITH_AS(parse_config(R"({"run": {"k_range": [1, 2000000]}})"),
                       doctest::Contains("k_range"), config_error);
  // a broken scenario is rejected at parse time, by name
  CHECK_THROWS_WITH_AS(
      parse_config(
          R"({"run": {"scenarios": [{"label": "tiny", "n_clients": 1, "bsm_budget": 2}]}})"),
      doctest::Contains("tiny"), config_error);
}

TEST_CASE("artifact emission") {
  RunConfig cfg = default_config();
  cfg.beta_axis = {0.03};

  SUBCASE("a 1x1 sweep emits a two-line csv") {
    cfg.k_range = {30, 30};
    cfg.l_axis_km = {0.1};
    cfg.out_path = "test_kl.csv";
    const RunResult r = run_command("sweep-kl", cfg);
    int lines = 0;
    for (char ch : r.artifact) lines += ch == '\n' ? 1 : 0;
    CHECK(lines == 2);
    CHECK(r.artifact.substr(0, r.artifact.find('\n')) == "k,l_km,rate_normalized");
    std::remove("test_kl.csv");
  }

  SUBCASE("masked cells serialize as empty csv fields and json nulls") {
    // coherence time so short that the negativity utility is undefined
    cfg.profile.coherence_time = 1.0e-7;
    cfg.dominance_beta_axis = {0.03};
    cfg.out_path = "test_dom.csv";
    const RunResult csv = run_command("dominance", cfg);
    const std::string last_line =
        csv.artifact.substr(csv.artifact.find('\n') + 1);
    CHECK(last_line.rfind(",baseline,\n") != std::string::npos);
    std::remove("test_dom.csv");

    cfg.format = "json";
    cfg.out_path = "test_dom.json";
    const RunResult js = run_command("dominance", cfg);
    CHECK(js.artifact.find("null") != std::string::npos);
    std::remove("test_dom.json");
  }

  SUBCASE("repeated runs are byte-identical") {
    cfg.k_range = {1, 10};
    cfg.out_path = "test_frontier.json";
    cfg.format = "json";
    const RunResult a = run_command("frontier", cfg);
    const RunResult b = run_command("frontier", cfg);
    CHECK(a.artifact == b.artifact);
    CHECK(!a.artifact.empty());
    std::remove("test_frontier.json");
  }

  SUBCASE("unwritable path fails") {
    cfg.out_path = "/nonexistent-dir/x.csv";
    CHECK_THROWS(run_command("egs", cfg));
  }
}
