#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qswitch/cli.hpp"
#include "qswitch/errors.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Rate and fidelity models of all-photonic and memory-equipped "
      "entanglement switches"};
  app.footer(
      "Commands: emax egs mem frontier sweep-kl sweep-kf dominance compare\n"
      "All experiment parameters live in the JSON config file; an absent or\n"
      "empty config reproduces the bundled baseline scenario.");

  std::string command;
  std::string config_path;
  std::string out_path;
  std::string format;
  std::uint64_t seed = 0;
  std::int64_t samples = 0;

  app.add_option("command", command, "One of: emax egs mem frontier sweep-kl sweep-kf dominance compare")
      ->required()
      ->check(CLI::IsMember(qswitch::command_names()));
  app.add_option("config", config_path, "JSON config file (optional; defaults = baseline)");
  auto* seed_opt = app.add_option("--seed", seed, "Override the RNG seed");
  auto* samples_opt = app.add_option("--samples", samples, "Override the Monte Carlo sample count");
  app.add_option("--out", out_path, "Write the artifact to this path");
  app.add_option("--format", format, "Artifact format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  CLI11_PARSE(app, argc, argv);

  try {
    const std::string text = config_path.empty() ? std::string() : read_file(config_path);
    qswitch::RunConfig cfg = qswitch::parse_config(text);
    if (seed_opt->count() > 0) cfg.estimator.seed = seed;
    if (samples_opt->count() > 0) {
      if (samples < 1) throw qswitch::config_error("--samples must be >= 1");
      cfg.estimator.n_samples = samples;
    }
    if (!out_path.empty()) cfg.out_path = out_path;
    if (!format.empty()) cfg.format = format;

    const qswitch::RunResult result = qswitch::run_command(command, cfg);
    std::cout << result.summary << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error=\"" << e.what() << "\"\n";
    return 1;
  }
}
