// sshlab: run hybrid SSH / PT-segment experiments from config files.
//
//   sshlab <command> --config <file> [--out <dir>] [--emit csv,json,svg] [--threads N]
//   sshlab paper-figures [--out <dir>] [--threads N]
//
// Exit codes: 0 success, 1 validation error, 2 computational error.
// SSHLAB_OUTPUT_DIR overrides the config's output_dir; --out overrides both.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>

#include "sshlab/error.hpp"
#include "sshlab/experiment.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kValidation = 1;
constexpr int kComputation = 2;

struct Options {
  std::string config;
  std::string out;
  std::string emit;
  int threads = 1;
};

void print_report(const sshlab::ExperimentReport& report) {
  std::cout << sshlab::to_string(report.command);
  if (!report.name.empty()) std::cout << " [" << report.name << "]";
  std::cout << " -> " << report.output_dir.string() << '\n';
  for (const auto& f : report.files) {
    std::cout << "  " << f.path.string() << "  sha256:" << f.sha256.substr(0, 16) << "  " << f.bytes
              << " bytes\n";
  }
  std::cout << "  summary: " << report.summary.dump() << '\n';
}

std::optional<std::string> env_output_dir() {
  if (const char* env = std::getenv("SSHLAB_OUTPUT_DIR"); env != nullptr && *env != '\0') {
    return std::string(env);
  }
  return std::nullopt;
}

int run_single(sshlab::Command command, const Options& opts) {
  auto cfg = sshlab::load_config(opts.config);
  if (cfg.command != command) {
    throw sshlab::ValidationError("config file describes '" + sshlab::to_string(cfg.command) +
                                  "' but the command line asked for '" + sshlab::to_string(command) +
                                  "'");
  }
  if (auto env = env_output_dir()) cfg.output_dir = *env;
  if (!opts.out.empty()) cfg.output_dir = opts.out;
  if (!opts.emit.empty()) cfg.emit = sshlab::parse_emit_list(opts.emit);
  print_report(sshlab::run_experiment(cfg, {opts.threads}));
  return kOk;
}

int run_figures(const Options& opts) {
  std::filesystem::path root = "sshlab_figures";
  if (auto env = env_output_dir()) root = *env;
  if (!opts.out.empty()) root = opts.out;
  auto configs = sshlab::figure_suite_preset(root);
  if (!opts.emit.empty()) {
    for (auto& c : configs) c.emit = sshlab::parse_emit_list(opts.emit);
  }
  for (const auto& c : configs) c.validate();

  int status = kOk;
  for (const auto& c : configs) {
    try {
      print_report(sshlab::run_experiment(c, {opts.threads}));
    } catch (const sshlab::ComputationError& e) {
      std::cerr << "error [" << c.name << "]: " << e.what() << '\n';
      status = kComputation;
    }
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectra, quench dynamics and scattering of an SSH chain with an embedded PT segment"};
  app.require_subcommand(1);

  Options opts;
  struct Entry {
    sshlab::Command command;
    const char* help;
  };
  const Entry entries[] = {
      {sshlab::Command::spectrum, "Complex spectrum of one chain"},
      {sshlab::Command::edge_states, "Edge-state localisation, profiles and overlap with the plain chain"},
      {sshlab::Command::band_sweep, "Spectrum as a function of the intracell hopping v"},
      {sshlab::Command::quench, "Post-quench light cones and starting-edge reflection signals"},
      {sshlab::Command::scatter_sweep, "Left/right reflection of the continuum block stack vs energy"},
  };
  std::vector<std::pair<CLI::App*, sshlab::Command>> commands;
  for (const auto& e : entries) {
    auto* sub = app.add_subcommand(sshlab::to_string(e.command), e.help);
    sub->add_option("--config", opts.config, "Experiment config file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", opts.out, "Output directory (overrides config and SSHLAB_OUTPUT_DIR)");
    sub->add_option("--emit", opts.emit, "Comma-separated subset of csv,json,svg");
    sub->add_option("--threads", opts.threads, "Worker threads for sweeps")->check(CLI::PositiveNumber);
    commands.emplace_back(sub, e.command);
  }
  auto* figures = app.add_subcommand("paper-figures", "Run the full reference figure suite");
  figures->alias("figures");
  figures->add_option("--out", opts.out, "Root output directory");
  figures->add_option("--emit", opts.emit, "Comma-separated subset of csv,json,svg");
  figures->add_option("--threads", opts.threads, "Worker threads for sweeps")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kValidation;
  }

  try {
    if (figures->parsed()) return run_figures(opts);
    for (const auto& [sub, command] : commands) {
      if (sub->parsed()) return run_single(command, opts);
    }
  } catch (const sshlab::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return kValidation;
  } catch (const sshlab::ComputationError& e) {
    std::cerr << "computation error: " << e.what() << '\n';
    return kComputation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kComputation;
  }
  return kValidation;
}
