#include "sshlab/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "sshlab/error.hpp"

namespace sshlab {
namespace {

namespace pt = boost::property_tree;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto t = trim(item);
    if (!t.empty()) out.push_back(std::move(t));
  }
  return out;
}

int parse_int(std::string_view text) {
  const std::string t = trim(text);
  int value = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty()) {
    throw ValidationError("expected an integer, got '" + t + "'");
  }
  return value;
}

bool parse_bool(const std::string& text) {
  const std::string t = trim(text);
  if (t == "true" || t == "yes" || t == "1" || t == "on") return true;
  if (t == "false" || t == "no" || t == "0" || t == "off") return false;
  throw ValidationError("expected a boolean, got '" + t + "'");
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split_list(text)) out.push_back(parse_double(item));
  return out;
}

std::string join_doubles(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += format_double(values[i]);
  }
  return out;
}

pt::ptree read_tree(std::string_view text) {
  std::istringstream in{std::string(text)};
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
  return tree;
}

// Reads the keys of one section, rejecting any it does not recognise.
class Section {
 public:
  Section(const pt::ptree* node, std::string name) : node_(node), name_(std::move(name)) {}

  template <typename Fn>
  void get(const std::string& key, Fn&& assign) {
    seen_.push_back(key);
    if (node_ == nullptr) return;
    if (auto v = node_->get_child_optional(pt::ptree::path_type(key, '\0'))) {
      try {
        assign(v->data());
      } catch (const ValidationError& e) {
        throw ValidationError("config [" + name_ + "] " + key + ": " + e.what());
      }
    }
  }

  void reject_unknown() const {
    if (node_ == nullptr) return;
    for (const auto& [key, child] : *node_) {
      if (!child.empty()) continue;  // nested sections are handled elsewhere
      if (std::find(seen_.begin(), seen_.end(), key) == seen_.end()) {
        throw ValidationError("config [" + name_ + "]: unknown key '" + key + "'");
      }
    }
  }

 private:
  const pt::ptree* node_;
  std::string name_;
  std::vector<std::string> seen_;
};

const pt::ptree* child(const pt::ptree& tree, const std::string& name) {
  auto c = tree.get_child_optional(pt::ptree::path_type(name, '\0'));
  return c ? &*c : nullptr;
}

void read_chain(Section& s, HybridChainSpec& c) {
  s.get("n_sites", [&](const std::string& v) { c.n_sites = parse_int(v); });
  s.get("v", [&](const std::string& v) { c.v = parse_double(v); });
  s.get("w", [&](const std::string& v) { c.w = parse_double(v); });
  s.get("u_re", [&](const std::string& v) { c.u_re = parse_double(v); });
  s.get("u_im", [&](const std::string& v) { c.u_im = parse_double(v); });
  s.get("pt_first_site", [&](const std::string& v) { c.pt_first_site = parse_int(v); });
  s.get("pt_last_site", [&](const std::string& v) { c.pt_last_site = parse_int(v); });
  s.reject_unknown();
}

void read_stack(Section& s, StackSpec& st) {
  s.get("n_blocks", [&](const std::string& v) { st.n_blocks = parse_int(v); });
  s.get("l_a", [&](const std::string& v) { st.l_a = parse_double(v); });
  s.get("l_b", [&](const std::string& v) { st.l_b = parse_double(v); });
  s.get("u_re", [&](const std::string& v) { st.u_re = parse_double(v); });
  s.get("u_im", [&](const std::string& v) { st.u_im = parse_double(v); });
  s.reject_unknown();
}

void write_chain(std::ostream& os, const HybridChainSpec& c) {
  os << "[chain]\n"
     << "n_sites = " << c.n_sites << '\n'
     << "v = " << format_double(c.v) << '\n'
     << "w = " << format_double(c.w) << '\n'
     << "u_re = " << format_double(c.u_re) << '\n'
     << "u_im = " << format_double(c.u_im) << '\n'
     << "pt_first_site = " << c.pt_first_site << '\n'
     << "pt_last_site = " << c.pt_last_site << '\n';
}

void write_stack(std::ostream& os, const StackSpec& s) {
  os << "[stack]\n"
     << "n_blocks = " << s.n_blocks << '\n'
     << "l_a = " << format_double(s.l_a) << '\n'
     << "l_b = " << format_double(s.l_b) << '\n'
     << "u_re = " << format_double(s.u_re) << '\n'
     << "u_im = " << format_double(s.u_im) << '\n';
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc{}) throw ComputationError("format_double: conversion failed");
  return std::string(buf, ptr);
}

double parse_double(std::string_view text) {
  const std::string t = trim(text);
  const char* first = t.data();
  if (!t.empty() && t.front() == '+') ++first;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(first, t.data() + t.size(), value);
  if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty()) {
    throw ValidationError("expected a number, got '" + t + "'");
  }
  return value;
}

std::string to_string(Command c) {
  switch (c) {
    case Command::spectrum: return "spectrum";
    case Command::edge_states: return "edge-states";
    case Command::band_sweep: return "band-sweep";
    case Command::quench: return "quench";
    case Command::scatter_sweep: return "scatter-sweep";
  }
  return "spectrum";
}

Command command_from_string(const std::string& name) {
  for (Command c : {Command::spectrum, Command::edge_states, Command::band_sweep, Command::quench,
                    Command::scatter_sweep}) {
    if (to_string(c) == name) return c;
  }
  throw ValidationError("unknown command '" + name + "'");
}

std::string to_string(Emit e) {
  switch (e) {
    case Emit::csv: return "csv";
    case Emit::json: return "json";
    case Emit::svg: return "svg";
  }
  return "csv";
}

std::set<Emit> parse_emit_list(const std::string& list) {
  std::set<Emit> out;
  for (const auto& item : split_list(list)) {
    if (item == "csv") {
      out.insert(Emit::csv);
    } else if (item == "json") {
      out.insert(Emit::json);
    } else if (item == "svg") {
      out.insert(Emit::svg);
    } else {
      throw ValidationError("unknown emit format '" + item + "' (csv, json, svg)");
    }
  }
  if (out.empty()) throw ValidationError("emit list is empty");
  return out;
}

std::vector<double> BandSweepParams::grid() const {
  if (!v_values.empty()) return v_values;
  if (!(v_step > 0.0) || v_stop < v_start) {
    throw ValidationError("band-sweep: need v_step > 0 and v_stop >= v_start");
  }
  std::vector<double> out;
  const int count = static_cast<int>(std::floor((v_stop - v_start) / v_step + 1e-9)) + 1;
  for (int i = 0; i < count; ++i) {
    // 7 * 0.05 is 0.35000000000000003; snap so grid points print and compare cleanly.
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v_start + i * v_step,
                                   std::chars_format::general, 12);
    out.push_back(parse_double(std::string_view(buf, res.ptr - buf)));
  }
  return out;
}

std::vector<double> ScatterParams::grid() const {
  if (!energies.empty()) return energies;
  return log_grid(e_min, e_max, n_energies);
}

void ExperimentConfig::validate() const {
  switch (command) {
    case Command::spectrum:
      chain.validate();
      break;
    case Command::edge_states:
      chain.validate();
      if (!(edge.energy_tol > 0.0)) throw ValidationError("edge-states: energy_tol must be positive");
      if (edge.n_edge < 1 || 2 * edge.n_edge > chain.n_sites) {
        throw ValidationError("edge-states: n_edge must lie in [1, n_sites / 2]");
      }
      break;
    case Command::band_sweep: {
      chain.validate();
      const auto g = band.grid();
      if (g.empty()) throw ValidationError("band-sweep: v grid is empty");
      for (double v : g) {
        if (!std::isfinite(v)) throw ValidationError("band-sweep: non-finite v");
      }
      break;
    }
    case Command::quench: {
      if (quench.initial_side != "left" && quench.initial_side != "right" &&
          quench.initial_side != "both") {
        throw ValidationError("quench: initial_side must be left, right or both");
      }
      if (!(quench.dip_fraction > 0.0 && quench.dip_fraction < 1.0)) {
        throw ValidationError("quench: dip_fraction must lie in (0, 1)");
      }
      make_quench(chain, quench.v_post, EdgeSide::left, quench.t_max, quench.n_time_steps).validate();
      break;
    }
    case Command::scatter_sweep: {
      stack.validate();
      const auto g = scatter.grid();
      if (g.empty()) throw ValidationError("scatter-sweep: energy grid is empty");
      for (double e : g) {
        if (!(e > 0.0) || !std::isfinite(e)) {
          throw ValidationError("scatter-sweep: energies must be finite and positive");
        }
      }
      for (double e : scatter.spot_energies) {
        if (!(e > 0.0)) throw ValidationError("scatter-sweep: spot energies must be positive");
      }
      for (double u : scatter.u_im_values) {
        if (!(u >= 0.0)) throw ValidationError("scatter-sweep: u_im values must be >= 0");
      }
      break;
    }
  }
  if (output_dir.empty()) throw ValidationError("output_dir is empty");
  if (emit.empty()) throw ValidationError("emit list is empty");
}

HybridChainSpec parse_chain(std::string_view text) {
  const auto tree = read_tree(text);
  HybridChainSpec spec;
  // Accept both a bare key list and a [chain] section.
  const pt::ptree* node = child(tree, "chain");
  Section s(node ? node : &tree, "chain");
  read_chain(s, spec);
  spec.validate();
  return spec;
}

std::string serialize_chain(const HybridChainSpec& spec) {
  std::ostringstream os;
  write_chain(os, spec);
  return os.str();
}

StackSpec parse_stack(std::string_view text) {
  const auto tree = read_tree(text);
  StackSpec spec;
  const pt::ptree* node = child(tree, "stack");
  Section s(node ? node : &tree, "stack");
  read_stack(s, spec);
  spec.validate();
  return spec;
}

std::string serialize_stack(const StackSpec& spec) {
  std::ostringstream os;
  write_stack(os, spec);
  return os.str();
}

ExperimentConfig parse_config(std::string_view text) {
  const auto tree = read_tree(text);
  ExperimentConfig cfg;

  Section top(&tree, "top");
  bool have_command = false;
  top.get("command", [&](const std::string& v) {
    cfg.command = command_from_string(trim(v));
    have_command = true;
  });
  top.get("name", [&](const std::string& v) { cfg.name = trim(v); });
  top.get("output_dir", [&](const std::string& v) { cfg.output_dir = trim(v); });
  top.get("emit", [&](const std::string& v) { cfg.emit = parse_emit_list(v); });
  top.reject_unknown();
  if (!have_command) throw ValidationError("config: missing top-level 'command'");

  for (const auto& [key, node] : tree) {
    if (node.empty()) continue;
    static const std::set<std::string> known{"chain",       "stack",  "edge-states",
                                             "band-sweep",  "quench", "scatter-sweep"};
    if (!known.contains(key)) throw ValidationError("config: unknown section [" + key + "]");
  }

  Section chain(child(tree, "chain"), "chain");
  read_chain(chain, cfg.chain);
  Section stack(child(tree, "stack"), "stack");
  read_stack(stack, cfg.stack);

  Section edge(child(tree, "edge-states"), "edge-states");
  edge.get("energy_tol", [&](const std::string& v) { cfg.edge.energy_tol = parse_double(v); });
  edge.get("n_edge", [&](const std::string& v) { cfg.edge.n_edge = parse_int(v); });
  edge.get("compare_plain", [&](const std::string& v) { cfg.edge.compare_plain = parse_bool(v); });
  edge.reject_unknown();

  Section band(child(tree, "band-sweep"), "band-sweep");
  band.get("v_values", [&](const std::string& v) { cfg.band.v_values = parse_double_list(v); });
  band.get("v_start", [&](const std::string& v) { cfg.band.v_start = parse_double(v); });
  band.get("v_stop", [&](const std::string& v) { cfg.band.v_stop = parse_double(v); });
  band.get("v_step", [&](const std::string& v) { cfg.band.v_step = parse_double(v); });
  band.reject_unknown();

  Section q(child(tree, "quench"), "quench");
  q.get("v_post", [&](const std::string& v) { cfg.quench.v_post = parse_double(v); });
  q.get("initial_side", [&](const std::string& v) { cfg.quench.initial_side = trim(v); });
  q.get("t_max", [&](const std::string& v) { cfg.quench.t_max = parse_double(v); });
  q.get("n_time_steps", [&](const std::string& v) { cfg.quench.n_time_steps = parse_int(v); });
  q.get("dip_fraction", [&](const std::string& v) { cfg.quench.dip_fraction = parse_double(v); });
  q.get("renormalize_heatmap",
        [&](const std::string& v) { cfg.quench.renormalize_heatmap = parse_bool(v); });
  q.get("renormalize_csv", [&](const std::string& v) { cfg.quench.renormalize_csv = parse_bool(v); });
  q.reject_unknown();

  Section sc(child(tree, "scatter-sweep"), "scatter-sweep");
  sc.get("energies", [&](const std::string& v) { cfg.scatter.energies = parse_double_list(v); });
  sc.get("e_min", [&](const std::string& v) { cfg.scatter.e_min = parse_double(v); });
  sc.get("e_max", [&](const std::string& v) { cfg.scatter.e_max = parse_double(v); });
  sc.get("n_energies", [&](const std::string& v) { cfg.scatter.n_energies = parse_int(v); });
  sc.get("spot_energies",
         [&](const std::string& v) { cfg.scatter.spot_energies = parse_double_list(v); });
  sc.get("u_im_values", [&](const std::string& v) { cfg.scatter.u_im_values = parse_double_list(v); });
  sc.reject_unknown();

  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const ExperimentConfig& cfg) {
  std::ostringstream os;
  os << "command = " << to_string(cfg.command) << '\n';
  if (!cfg.name.empty()) os << "name = " << cfg.name << '\n';
  os << "output_dir = " << cfg.output_dir.string() << '\n';
  os << "emit = ";
  bool first = true;
  for (Emit e : cfg.emit) {
    os << (first ? "" : ",") << to_string(e);
    first = false;
  }
  os << "\n\n";
  write_chain(os, cfg.chain);
  os << '\n';
  write_stack(os, cfg.stack);
  os << "\n[edge-states]\n"
     << "energy_tol = " << format_double(cfg.edge.energy_tol) << '\n'
     << "n_edge = " << cfg.edge.n_edge << '\n'
     << "compare_plain = " << (cfg.edge.compare_plain ? "true" : "false") << '\n';
  os << "\n[band-sweep]\n";
  if (!cfg.band.v_values.empty()) os << "v_values = " << join_doubles(cfg.band.v_values) << '\n';
  os << "v_start = " << format_double(cfg.band.v_start) << '\n'
     << "v_stop = " << format_double(cfg.band.v_stop) << '\n'
     << "v_step = " << format_double(cfg.band.v_step) << '\n';
  os << "\n[quench]\n"
     << "v_post = " << format_double(cfg.quench.v_post) << '\n'
     << "initial_side = " << cfg.quench.initial_side << '\n'
     << "t_max = " << format_double(cfg.quench.t_max) << '\n'
     << "n_time_steps = " << cfg.quench.n_time_steps << '\n'
     << "dip_fraction = " << format_double(cfg.quench.dip_fraction) << '\n'
     << "renormalize_heatmap = " << (cfg.quench.renormalize_heatmap ? "true" : "false") << '\n'
     << "renormalize_csv = " << (cfg.quench.renormalize_csv ? "true" : "false") << '\n';
  os << "\n[scatter-sweep]\n";
  if (!cfg.scatter.energies.empty()) os << "energies = " << join_doubles(cfg.scatter.energies) << '\n';
  os << "e_min = " << format_double(cfg.scatter.e_min) << '\n'
     << "e_max = " << format_double(cfg.scatter.e_max) << '\n'
     << "n_energies = " << cfg.scatter.n_energies << '\n'
     << "spot_energies = " << join_doubles(cfg.scatter.spot_energies) << '\n';
  if (!cfg.scatter.u_im_values.empty()) {
    os << "u_im_values = " << join_doubles(cfg.scatter.u_im_values) << '\n';
  }
  return os.str();
}

std::vector<ExperimentConfig> figure_suite_preset(const std::filesystem::path& root) {
  std::vector<ExperimentConfig> out;

  ExperimentConfig edges;
  edges.command = Command::edge_states;
  edges.name = "edge_states_v0.1";
  edges.chain = reference_chain(0.1);
  edges.output_dir = root / edges.name;
  out.push_back(edges);

  // Near the transition the pair splits by ~1e-6; widen the window.
  edges.name = "edge_states_v0.35";
  edges.chain = reference_chain(0.35);
  edges.edge.energy_tol = 1e-4;
  edges.output_dir = root / edges.name;
  out.push_back(edges);

  ExperimentConfig band;
  band.command = Command::band_sweep;
  band.name = "band_sweep";
  band.chain = reference_chain(0.1);
  band.output_dir = root / band.name;
  out.push_back(band);

  ExperimentConfig quench;
  quench.command = Command::quench;
  quench.name = "quench_asymmetry";
  quench.chain = reference_chain(0.1);
  quench.quench.v_post = 0.5;
  quench.quench.initial_side = "both";
  quench.output_dir = root / quench.name;
  out.push_back(quench);

  ExperimentConfig scatter;
  scatter.command = Command::scatter_sweep;
  scatter.name = "reflection_sweep";
  scatter.scatter.u_im_values = {0.0, 0.1};
  scatter.output_dir = root / scatter.name;
  out.push_back(scatter);
  return out;
}

}  // namespace sshlab
