#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "sshlab/dynamics.hpp"
#include "sshlab/lattice.hpp"
#include "sshlab/scatter.hpp"

namespace sshlab {

// Experiment files are INI-style text: top-level keys, then one section per
// chain/stack/command. '#' and ';' start comment lines. Doubles are written
// in shortest round-trip form, so serialize -> parse is bit-exact.
//
//   command = quench
//   emit = csv,json,svg
//
//   [chain]
//   n_sites = 220
//   v = 0.1
//   ...
//
//   [quench]
//   v_post = 0.5
//   initial_side = both

enum class Command { spectrum, edge_states, band_sweep, quench, scatter_sweep };
std::string to_string(Command c);
Command command_from_string(const std::string& name);

enum class Emit { csv, json, svg };
std::string to_string(Emit e);
std::set<Emit> parse_emit_list(const std::string& list);

struct EdgeStateParams {
  double energy_tol = 1e-6;
  int n_edge = 10;
  bool compare_plain = true;  // also report overlap with the u = 0 chain
  bool operator==(const EdgeStateParams&) const = default;
};

struct BandSweepParams {
  std::vector<double> v_values;  // explicit grid wins over start/stop/step
  double v_start = 0.0;
  double v_stop = 0.8;
  double v_step = 0.05;
  std::vector<double> grid() const;
  bool operator==(const BandSweepParams&) const = default;
};

struct QuenchParams {
  double v_post = 0.5;
  std::string initial_side = "both";  // left, right or both
  double t_max = 0.0;                 // <= 0 picks the default window
  int n_time_steps = 601;
  double dip_fraction = 0.01;
  bool renormalize_heatmap = true;
  bool renormalize_csv = false;
  bool operator==(const QuenchParams&) const = default;
};

struct ScatterParams {
  std::vector<double> energies;  // explicit grid wins over the log grid
  double e_min = 0.02;
  double e_max = 5.0;
  int n_energies = 400;
  std::vector<double> spot_energies{50.0};
  std::vector<double> u_im_values;  // empty: just the stack's own u_im
  std::vector<double> grid() const;
  bool operator==(const ScatterParams&) const = default;
};

struct ExperimentConfig {
  Command command = Command::spectrum;
  std::string name;  // used for output subdirectories in presets
  HybridChainSpec chain;
  StackSpec stack;
  EdgeStateParams edge;
  BandSweepParams band;
  QuenchParams quench;
  ScatterParams scatter;
  std::filesystem::path output_dir = "sshlab_out";
  std::set<Emit> emit{Emit::csv, Emit::json, Emit::svg};

  void validate() const;
  bool operator==(const ExperimentConfig&) const = default;
};

/// Shortest decimal string that parses back to exactly `x`.
std::string format_double(double x);
double parse_double(std::string_view text);

HybridChainSpec parse_chain(std::string_view text);
std::string serialize_chain(const HybridChainSpec& spec);

StackSpec parse_stack(std::string_view text);
std::string serialize_stack(const StackSpec& spec);

ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);
std::string serialize_config(const ExperimentConfig& config);

/// Experiments that regenerate every reference figure; each writes into its
/// own subdirectory of `root`.
std::vector<ExperimentConfig> figure_suite_preset(const std::filesystem::path& root);

}  // namespace sshlab
