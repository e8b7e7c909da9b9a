#include "sshlab/io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include <unistd.h>

#include "sshlab/error.hpp"
#include "svg.hpp"

namespace sshlab::io {
namespace {

std::string comment_line(const QuenchProtocol& protocol) {
  return "# " + to_json(protocol).dump() + "\n";
}

const char* kBlue = "#1f77b4";
const char* kOrange = "#ff7f0e";

}  // namespace

json to_json(const HybridChainSpec& s) {
  return json{{"n_sites", s.n_sites},         {"v", s.v},       {"w", s.w},
              {"u_re", s.u_re},               {"u_im", s.u_im}, {"pt_first_site", s.pt_first_site},
              {"pt_last_site", s.pt_last_site}};
}

json to_json(const StackSpec& s) {
  return json{{"n_blocks", s.n_blocks}, {"l_a", s.l_a}, {"l_b", s.l_b}, {"u_re", s.u_re},
              {"u_im", s.u_im}};
}

json to_json(const QuenchProtocol& p) {
  return json{{"pre_spec", to_json(p.pre_spec)},
              {"post_spec", to_json(p.post_spec)},
              {"initial_side", to_string(p.initial_side)},
              {"t_max", p.t_max},
              {"n_time_steps", p.n_time_steps}};
}

json to_json(const EdgeStateReport& r, bool with_amplitudes) {
  json j{{"index", r.index},
         {"energy", {r.energy.real(), r.energy.imag()}},
         {"side", to_string(r.side)},
         {"edge_weight", r.edge_weight},
         {"ipr", r.ipr}};
  if (with_amplitudes) {
    json amps = json::array();
    for (Eigen::Index i = 0; i < r.amplitudes.size(); ++i) {
      amps.push_back({r.amplitudes(i).real(), r.amplitudes(i).imag()});
    }
    j["amplitudes"] = std::move(amps);
  }
  return j;
}

json to_json(const BandSweepTable& table) {
  json rows = json::array();
  for (const auto& row : table.rows) {
    json energies = json::array();
    for (Eigen::Index i = 0; i < row.eigenvalues.size(); ++i) {
      energies.push_back({row.eigenvalues(i).real(), row.eigenvalues(i).imag()});
    }
    rows.push_back({{"v", row.v},
                    {"min_abs_re", min_abs_real(row.eigenvalues)},
                    {"max_abs_im", max_abs_imag(row.eigenvalues)},
                    {"eigenvalues", std::move(energies)}});
  }
  return json{{"base", to_json(table.base)}, {"rows", std::move(rows)}};
}

json to_json(const ScatteringResult& s) {
  auto c = [](cplx z) { return json{z.real(), z.imag()}; };
  return json{{"energy", s.energy},   {"s11", c(s.s11)},         {"s12", c(s.s12)},
              {"s21", c(s.s21)},      {"s22", c(s.s22)},         {"r_left", s.r_left},
              {"r_right", s.r_right}, {"transmission", s.transmission}};
}

std::string spectrum_csv(const Eigen::VectorXcd& e) {
  std::string out = "index,re_E,im_E\n";
  for (Eigen::Index i = 0; i < e.size(); ++i) {
    out += std::to_string(i) + ',' + format_double(e(i).real()) + ',' + format_double(e(i).imag()) + '\n';
  }
  return out;
}

std::string spectrum_svg(const Eigen::VectorXcd& e, const HybridChainSpec& spec) {
  svg::Series s;
  s.colour = kBlue;
  s.markers = true;
  for (Eigen::Index i = 0; i < e.size(); ++i) {
    s.x.push_back(e(i).real());
    s.y.push_back(e(i).imag());
  }
  svg::PlotSpec p;
  p.title = "Spectrum (v=" + format_double(spec.v) + ", w=" + format_double(spec.w) + ")";
  p.x_label = "Re E";
  p.y_label = "Im E";
  p.comment = to_json(spec).dump();
  return svg::line_plot(p, {s});
}

std::string band_sweep_csv(const BandSweepTable& table) {
  std::string out = "v,re_E,im_E\n";
  for (const auto& row : table.rows) {
    const std::string v = format_double(row.v);
    for (Eigen::Index i = 0; i < row.eigenvalues.size(); ++i) {
      out += v + ',' + format_double(row.eigenvalues(i).real()) + ',' +
             format_double(row.eigenvalues(i).imag()) + '\n';
    }
  }
  return out;
}

std::string band_sweep_svg(const BandSweepTable& table, bool imaginary) {
  svg::Series s;
  s.colour = imaginary ? kOrange : kBlue;
  s.markers = true;
  for (const auto& row : table.rows) {
    for (Eigen::Index i = 0; i < row.eigenvalues.size(); ++i) {
      s.x.push_back(row.v);
      s.y.push_back(imaginary ? row.eigenvalues(i).imag() : row.eigenvalues(i).real());
    }
  }
  svg::PlotSpec p;
  p.title = std::string(imaginary ? "Im E" : "Re E") + " vs v (w=" + format_double(table.base.w) + ")";
  p.x_label = "v";
  p.y_label = imaginary ? "Im E" : "Re E";
  p.comment = to_json(table.base).dump();
  return svg::line_plot(p, {s});
}

std::string edge_states_csv(const std::vector<EdgeStateReport>& reports) {
  std::string out = "index,side,re_E,im_E,edge_weight,ipr\n";
  for (const auto& r : reports) {
    out += std::to_string(r.index) + ',' + to_string(r.side) + ',' + format_double(r.energy.real()) +
           ',' + format_double(r.energy.imag()) + ',' + format_double(r.edge_weight) + ',' +
           format_double(r.ipr) + '\n';
  }
  return out;
}

std::string edge_profile_csv(const EdgeStateReport& r) {
  std::string out = "site,re_psi,im_psi\n";
  for (Eigen::Index i = 0; i < r.amplitudes.size(); ++i) {
    out += std::to_string(i + 1) + ',' + format_double(r.amplitudes(i).real()) + ',' +
           format_double(r.amplitudes(i).imag()) + '\n';
  }
  return out;
}

std::string edge_profiles_svg(const std::vector<EdgeStateReport>& reports, const HybridChainSpec& spec) {
  std::vector<svg::Series> series;
  const char* palette[] = {kBlue, kOrange, "#2ca02c", "#d62728", "#9467bd", "#8c564b"};
  int k = 0;
  for (const auto& r : reports) {
    for (bool imag : {false, true}) {
      svg::Series s;
      s.colour = palette[k % 6];
      s.label = (imag ? "Im " : "Re ") + to_string(r.side) + " #" + std::to_string(r.index);
      for (Eigen::Index i = 0; i < r.amplitudes.size(); ++i) {
        s.x.push_back(static_cast<double>(i + 1));
        s.y.push_back(imag ? r.amplitudes(i).imag() : r.amplitudes(i).real());
      }
      series.push_back(std::move(s));
      ++k;
    }
  }
  svg::PlotSpec p;
  p.title = "Edge-state amplitudes (v=" + format_double(spec.v) + ", w=" + format_double(spec.w) + ")";
  p.x_label = "site";
  p.y_label = "amplitude";
  p.comment = to_json(spec).dump();
  return svg::line_plot(p, series);
}

std::string lightcone_csv(const LightCone& cone, bool renormalize) {
  std::string out = comment_line(cone.protocol);
  out += "t";
  for (int s = 1; s <= cone.n_sites(); ++s) out += ',' + std::to_string(s);
  out += '\n';
  for (int k = 0; k < cone.n_times(); ++k) {
    out += format_double(cone.times[k]);
    const double scale = renormalize && cone.norm_series[k] > 0.0 ? 1.0 / cone.norm_series[k] : 1.0;
    for (int s = 0; s < cone.n_sites(); ++s) out += ',' + format_double(cone.density(k, s) * scale);
    out += '\n';
  }
  return out;
}

std::string lightcone_svg(const LightCone& cone, bool renormalize) {
  const int cols = cone.n_sites();
  const int stride = std::max(1, (cone.n_times() + 299) / 300);
  std::vector<int> picked;
  for (int k = 0; k < cone.n_times(); k += stride) picked.push_back(k);
  const int rows = static_cast<int>(picked.size());

  std::vector<double> values(static_cast<std::size_t>(rows) * cols);
  for (int r = 0; r < rows; ++r) {
    const int k = picked[r];
    const double scale = renormalize && cone.norm_series[k] > 0.0 ? 1.0 / cone.norm_series[k] : 1.0;
    for (int s = 0; s < cols; ++s) values[static_cast<std::size_t>(r) * cols + s] = cone.density(k, s) * scale;
  }
  // Linear scale topped at the 99.5th percentile so the initial edge peak does
  // not wash out the front.
  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  const double top = std::max(sorted[static_cast<std::size_t>(0.995 * (sorted.size() - 1))], 1e-300);
  for (double& v : values) v = std::min(v / top, 1.0);

  svg::PlotSpec p;
  p.title = "Density after quench, " + to_string(cone.protocol.initial_side) + " edge start";
  p.x_label = "site";
  p.y_label = "time";
  p.comment = to_json(cone.protocol).dump();
  p.height = 640;
  return svg::heatmap(p, values, rows, cols, 1.0, static_cast<double>(cols), 0.0, cone.times.back());
}

std::string reflection_csv(const ReflectionSignal& sig, const QuenchProtocol& protocol) {
  std::string out = comment_line(protocol);
  out += "t,P\n";
  for (const auto& [t, p] : sig.series) out += format_double(t) + ',' + format_double(p) + '\n';
  return out;
}

std::string reflection_svg(const ReflectionSignal& sig, const QuenchProtocol& protocol) {
  svg::Series s;
  s.colour = kBlue;
  s.label = "site " + std::to_string(sig.site);
  for (const auto& [t, p] : sig.series) {
    s.x.push_back(t);
    s.y.push_back(p);
  }
  svg::PlotSpec spec;
  spec.title = "Density at the starting edge (site " + std::to_string(sig.site) + ")";
  spec.x_label = "time";
  spec.y_label = "P";
  spec.comment = to_json(protocol).dump();
  return svg::line_plot(spec, {s});
}

std::string scatter_csv(const std::vector<SweepPoint>& points) {
  std::string out = "E,r_left,r_right,transmission,abs_diff,error\n";
  for (const auto& p : points) {
    out += format_double(p.energy);
    if (p.result) {
      const auto& r = *p.result;
      out += ',' + format_double(r.r_left) + ',' + format_double(r.r_right) + ',' +
             format_double(r.transmission) + ',' + format_double(std::abs(r.r_left - r.r_right)) + ",\n";
    } else {
      std::string err = p.error;
      std::replace(err.begin(), err.end(), ',', ';');
      std::replace(err.begin(), err.end(), '\n', ' ');
      out += ",,,,," + err + '\n';
    }
  }
  return out;
}

std::string scatter_svg(const std::vector<SweepPoint>& points, const StackSpec& stack) {
  svg::Series left, right;
  left.colour = kBlue;
  left.label = "R_L";
  right.colour = kOrange;
  right.label = "R_R";
  for (const auto& p : points) {
    if (!p.result) continue;
    left.x.push_back(p.energy);
    left.y.push_back(p.result->r_left);
    right.x.push_back(p.energy);
    right.y.push_back(p.result->r_right);
  }
  svg::PlotSpec spec;
  spec.title = "Reflection, " + std::to_string(stack.n_blocks) + " blocks, u_im=" + format_double(stack.u_im);
  spec.x_label = "E";
  spec.y_label = "R";
  spec.log_x = true;
  spec.comment = to_json(stack).dump();
  return svg::line_plot(spec, {left, right});
}

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw ComputationError("sha256 digest failed");
  }
  std::string out;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof(buf), "%02x", digest[i]);
    out += buf;
  }
  return out;
}

void write_atomic(const std::filesystem::path& path, std::string_view content) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ComputationError("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw ComputationError("failed writing " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw ComputationError("cannot move " + tmp.string() + " into place: " + ec.message());
  }
}

}  // namespace sshlab::io
