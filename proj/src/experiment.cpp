#include "sshlab/experiment.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include <unistd.h>

#include "sshlab/error.hpp"

namespace sshlab {
namespace {

namespace fs = std::filesystem;
using io::json;

class Emitter {
 public:
  Emitter(ExperimentReport& report, const std::set<Emit>& emit) : report_(report), emit_(emit) {}

  bool wants(Emit e) const { return emit_.contains(e); }

  void write(const std::string& name, const std::string& content) {
    io::write_atomic(report_.output_dir / name, content);
    report_.files.push_back({fs::path(name), io::sha256_hex(content), content.size()});
  }

  void write_if(Emit e, const std::string& name, const std::string& content) {
    if (wants(e)) write(name, content);
  }

 private:
  ExperimentReport& report_;
  const std::set<Emit>& emit_;
};

void check_writable(const fs::path& dir) {
  fs::path probe = fs::absolute(dir);
  while (!probe.empty() && !fs::exists(probe)) {
    if (probe == probe.parent_path()) break;
    probe = probe.parent_path();
  }
  if (!fs::is_directory(probe) || ::access(probe.c_str(), W_OK) != 0) {
    throw ValidationError("output directory " + dir.string() + " is not writable");
  }
}

json conjugation_summary(const Eigen::VectorXcd& e) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < e.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < e.size(); ++j) best = std::min(best, std::abs(e(j) - std::conj(e(i))));
    worst = std::max(worst, best);
  }
  return worst;
}

void run_spectrum(const ExperimentConfig& cfg, Emitter& out, json& summary) {
  const auto h = build_hamiltonian(cfg.chain);
  const auto dec = decompose(h);
  summary["n"] = dec.size();
  summary["min_abs_re"] = min_abs_real(dec.eigenvalues);
  summary["max_abs_im"] = max_abs_imag(dec.eigenvalues);
  summary["max_residual"] = dec.max_residual;
  summary["conjugation_closure_error"] = conjugation_summary(dec.eigenvalues);
  summary["pt_symmetric"] = pt_symmetry_check(h, cfg.chain);
  out.write_if(Emit::csv, "spectrum.csv", io::spectrum_csv(dec.eigenvalues));
  if (out.wants(Emit::json)) {
    json eig = json::array();
    for (Eigen::Index i = 0; i < dec.eigenvalues.size(); ++i) {
      eig.push_back({dec.eigenvalues(i).real(), dec.eigenvalues(i).imag()});
    }
    out.write("spectrum.json",
              json{{"chain", io::to_json(cfg.chain)}, {"eigenvalues", eig}, {"summary", summary}}.dump(2) +
                  "\n");
  }
  out.write_if(Emit::svg, "spectrum.svg", io::spectrum_svg(dec.eigenvalues, cfg.chain));
}

void run_edge_states(const ExperimentConfig& cfg, Emitter& out, json& summary) {
  EdgeSearchOptions opts;
  opts.energy_tol = cfg.edge.energy_tol;
  opts.n_edge = cfg.edge.n_edge;
  const auto dec = decompose(build_hamiltonian(cfg.chain));
  const auto reports = find_edge_states(dec, opts);

  summary["count"] = reports.size();
  json states = json::array();
  for (const auto& r : reports) states.push_back(io::to_json(r));
  summary["states"] = states;

  if (cfg.edge.compare_plain) {
    HybridChainSpec plain = cfg.chain;
    plain.u_re = 0.0;
    plain.u_im = 0.0;
    const auto dec_plain = decompose(build_hamiltonian(plain));
    json overlaps = json::object();
    for (EdgeSide side : {EdgeSide::left, EdgeSide::right}) {
      try {
        overlaps[to_string(side)] = edge_overlap(dec, dec_plain, side, opts);
      } catch (const ComputationError&) {
        overlaps[to_string(side)] = nullptr;
      }
    }
    summary["overlap_with_plain_chain"] = overlaps;
  }

  out.write_if(Emit::csv, "edge_states.csv", io::edge_states_csv(reports));
  if (out.wants(Emit::csv)) {
    std::map<std::string, int> seen;
    for (const auto& r : reports) {
      const std::string side = to_string(r.side);
      const int k = seen[side]++;
      out.write("edge_profile_" + side + (k ? "_" + std::to_string(k) : "") + ".csv", io::edge_profile_csv(r));
    }
  }
  if (out.wants(Emit::json)) {
    json full = json::array();
    for (const auto& r : reports) full.push_back(io::to_json(r, true));
    out.write("edge_states.json", json{{"chain", io::to_json(cfg.chain)},
                                       {"energy_tol", opts.energy_tol},
                                       {"n_edge", opts.n_edge},
                                       {"states", full},
                                       {"summary", summary}}
                                      .dump(2) +
                                      "\n");
  }
  out.write_if(Emit::svg, "edge_profiles.svg", io::edge_profiles_svg(reports, cfg.chain));
}

void run_band_sweep(const ExperimentConfig& cfg, Emitter& out, json& summary, int threads) {
  const auto table = band_sweep(cfg.chain, cfg.band.grid(), threads);
  json rows = json::array();
  for (const auto& row : table.rows) {
    rows.push_back({{"v", row.v},
                    {"min_abs_re", min_abs_real(row.eigenvalues)},
                    {"max_abs_im", max_abs_imag(row.eigenvalues)}});
  }
  summary["rows"] = rows;
  out.write_if(Emit::csv, "band_sweep.csv", io::band_sweep_csv(table));
  out.write_if(Emit::json, "band_sweep.json", io::to_json(table).dump(2) + "\n");
  out.write_if(Emit::svg, "band_sweep_re.svg", io::band_sweep_svg(table, false));
  out.write_if(Emit::svg, "band_sweep_im.svg", io::band_sweep_svg(table, true));
}

void run_quench_experiment(const ExperimentConfig& cfg, Emitter& out, json& summary) {
  std::vector<EdgeSide> sides;
  if (cfg.quench.initial_side == "both") {
    sides = {EdgeSide::left, EdgeSide::right};
  } else {
    sides = {edge_side_from_string(cfg.quench.initial_side)};
  }

  json runs = json::object();
  std::map<EdgeSide, double> peaks;
  for (EdgeSide side : sides) {
    const auto protocol =
        make_quench(cfg.chain, cfg.quench.v_post, side, cfg.quench.t_max, cfg.quench.n_time_steps);
    const auto cone = run_quench(protocol);
    const std::string tag = to_string(side);
    out.write_if(Emit::csv, "lightcone_" + tag + ".csv", io::lightcone_csv(cone, cfg.quench.renormalize_csv));
    out.write_if(Emit::svg, "lightcone_" + tag + ".svg", io::lightcone_svg(cone, cfg.quench.renormalize_heatmap));

    const int site = side == EdgeSide::left ? 1 : cone.n_sites();
    const auto sig = reflection_signal(cone, site, cfg.quench.dip_fraction);
    out.write_if(Emit::csv, "reflection_" + tag + ".csv", io::reflection_csv(sig, protocol));
    out.write_if(Emit::svg, "reflection_" + tag + ".svg", io::reflection_svg(sig, protocol));

    json run{{"protocol", io::to_json(protocol)},
             {"site", site},
             {"dip_interval", {sig.dip_interval.first, sig.dip_interval.second}},
             {"reemergence_peak", sig.reemergence_peak},
             {"max_norm", *std::max_element(cone.norm_series.begin(), cone.norm_series.end())},
             {"final_norm", cone.norm_series.back()}};
    try {
      run["front_speed"] = front_speed(cone);
    } catch (const ComputationError& e) {
      run["front_speed"] = nullptr;
      run["front_speed_error"] = e.what();
    }
    runs[tag] = run;
    peaks[side] = sig.reemergence_peak;
  }
  summary["runs"] = runs;
  if (peaks.size() == 2) {
    const double left = peaks[EdgeSide::left];
    summary["asymmetry_ratio_right_over_left"] =
        left > 0.0 ? json(peaks[EdgeSide::right] / left) : json(nullptr);
  }
  out.write_if(Emit::json, "quench_summary.json", summary.dump(2) + "\n");
}

void run_scatter(const ExperimentConfig& cfg, Emitter& out, json& summary, int threads) {
  std::vector<StackSpec> stacks;
  if (cfg.scatter.u_im_values.empty()) {
    stacks.push_back(cfg.stack);
  } else {
    for (double u : cfg.scatter.u_im_values) {
      StackSpec s = cfg.stack;
      s.u_im = u;
      stacks.push_back(s);
    }
  }
  const auto grid = cfg.scatter.grid();
  const bool many = stacks.size() > 1;
  json sweeps = json::array();
  for (const auto& spec : stacks) {
    const auto stack = spec.build();
    const auto points = reflection_sweep(stack, grid, threads);
    const std::string suffix = many ? "_uim" + format_double(spec.u_im) : "";

    double max_diff = 0.0, at = 0.0, max_flux_error = 0.0, max_pt_error = 0.0;
    json failed = json::array();
    for (const auto& p : points) {
      if (!p.result) {
        failed.push_back({{"energy", p.energy}, {"error", p.error}});
        continue;
      }
      const auto& r = *p.result;
      const double d = std::abs(r.r_left - r.r_right);
      if (d > max_diff) max_diff = d, at = p.energy;
      max_flux_error = std::max(max_flux_error, std::abs(r.r_left + r.transmission - 1.0));
      max_pt_error = std::max(max_pt_error, std::abs(std::abs(r.transmission - 1.0) - std::sqrt(r.r_left * r.r_right)));
    }
    json spots = json::array();
    for (double e : cfg.scatter.spot_energies) {
      try {
        const auto r = scattering_matrix(stack_transfer(stack, e), e);
        spots.push_back({{"energy", e}, {"r_left", r.r_left}, {"r_right", r.r_right},
                         {"abs_diff", std::abs(r.r_left - r.r_right)}, {"transmission", r.transmission}});
      } catch (const ComputationError& ex) {
        spots.push_back({{"energy", e}, {"error", ex.what()}});
      }
    }
    sweeps.push_back({{"stack", io::to_json(spec)},
                      {"max_abs_diff", max_diff},
                      {"max_abs_diff_energy", at},
                      {"max_flux_error", max_flux_error},
                      {"max_pt_relation_error", max_pt_error},
                      {"failed", failed},
                      {"spot_checks", spots}});
    out.write_if(Emit::csv, "reflection_sweep" + suffix + ".csv", io::scatter_csv(points));
    out.write_if(Emit::svg, "reflection_sweep" + suffix + ".svg", io::scatter_svg(points, spec));
  }
  summary["sweeps"] = sweeps;
  out.write_if(Emit::json, "scatter_summary.json", summary.dump(2) + "\n");
}

void write_manifest(const ExperimentConfig& cfg, const ExperimentReport& report) {
  json files = json::array();
  for (const auto& f : report.files) {
    files.push_back({{"path", f.path.generic_string()}, {"sha256", f.sha256}, {"bytes", f.bytes}});
  }
  json manifest{{"command", to_string(cfg.command)},
                {"name", cfg.name},
                {"status", report.ok ? "ok" : "failed"},
                {"config", serialize_config(cfg)},
                {"files", files},
                {"summary", report.summary}};
  if (!report.ok) manifest["error"] = report.error;
  io::write_atomic(report.output_dir / "manifest.json", manifest.dump(2) + "\n");
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& config, const RunOptions& options) {
  config.validate();
  check_writable(config.output_dir);

  ExperimentReport report;
  report.command = config.command;
  report.name = config.name;
  report.output_dir = config.output_dir;
  report.summary = json::object();
  fs::create_directories(report.output_dir);

  Emitter out(report, config.emit);
  try {
    switch (config.command) {
      case Command::spectrum: run_spectrum(config, out, report.summary); break;
      case Command::edge_states: run_edge_states(config, out, report.summary); break;
      case Command::band_sweep: run_band_sweep(config, out, report.summary, options.threads); break;
      case Command::quench: run_quench_experiment(config, out, report.summary); break;
      case Command::scatter_sweep: run_scatter(config, out, report.summary, options.threads); break;
    }
  } catch (const ComputationError& e) {
    report.ok = false;
    report.error = e.what();
    write_manifest(config, report);
    throw;
  }
  write_manifest(config, report);
  return report;
}

}  // namespace sshlab
