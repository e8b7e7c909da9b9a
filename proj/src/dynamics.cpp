#include "sshlab/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sshlab/error.hpp"
#include "sshlab/expm.hpp"

namespace sshlab {
namespace {

constexpr cplx kI{0.0, 1.0};

void check_state(const ComplexVector& psi0, Eigen::Index n, const char* who) {
  if (psi0.size() != n) {
    throw ValidationError(std::string(who) + ": initial state dimension does not match H");
  }
  if (std::abs(psi0.norm() - 1.0) > 1e-8) {
    throw ValidationError(std::string(who) + ": initial state must have unit norm");
  }
}

double check_grid(const std::vector<double>& times, const char* who) {
  if (times.empty()) throw ValidationError(std::string(who) + ": empty time grid");
  if (times.front() != 0.0) throw ValidationError(std::string(who) + ": time grid must start at 0");
  if (times.size() == 1) return 0.0;
  const double dt = times[1] - times[0];
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw ValidationError(std::string(who) + ": time grid must be ascending");
  }
  for (std::size_t k = 1; k < times.size(); ++k) {
    const double expected = static_cast<double>(k) * dt;
    if (std::abs(times[k] - expected) > 1e-9 * std::max(1.0, std::abs(expected))) {
      throw ValidationError(std::string(who) + ": time grid must be uniform");
    }
  }
  return dt;
}

}  // namespace

std::vector<double> uniform_times(double t_max, int n_samples) {
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw ValidationError("t_max must be positive");
  if (n_samples < 2) throw ValidationError("time grid needs at least 2 samples");
  std::vector<double> times(n_samples);
  const double dt = t_max / (n_samples - 1);
  for (int k = 0; k < n_samples; ++k) times[k] = k * dt;
  return times;
}

std::vector<ComplexVector> propagate_expm(const ComplexMatrix& h, const ComplexVector& psi0,
                                          const std::vector<double>& times,
                                          PropagationInfo* info) {
  if (h.rows() != h.cols()) throw ValidationError("propagate_expm: H is not square");
  check_state(psi0, h.rows(), "propagate_expm");
  const double dt = check_grid(times, "propagate_expm");

  std::vector<ComplexVector> states;
  states.reserve(times.size());
  states.push_back(psi0);
  if (times.size() == 1) return states;

  ExpmInfo expm_info;
  const ComplexMatrix step = expm((-kI * dt) * h, &expm_info);
  if (info != nullptr) info->substeps = 1 << expm_info.squarings;
  for (std::size_t k = 1; k < times.size(); ++k) states.push_back(step * states.back());
  return states;
}

std::vector<ComplexVector> propagate_spectral(const SpectralDecomposition& dec,
                                              const ComplexVector& psi0,
                                              const std::vector<double>& times) {
  if (!dec.has_left()) {
    throw DefectiveSpectrumError(
        "propagate_spectral: decomposition has no left eigenvectors; decompose with "
        "with_left=true or use propagate_expm");
  }
  if (!dec.defective.empty()) {
    std::ostringstream os;
    os << "propagate_spectral: " << dec.defective.size()
       << " eigenpair(s) are near an exceptional point; the biorthogonal expansion is "
          "ill-conditioned there, use propagate_expm";
    throw DefectiveSpectrumError(os.str());
  }
  check_state(psi0, dec.size(), "propagate_spectral");
  check_grid(times, "propagate_spectral");

  const ComplexVector coeffs = *dec.left * psi0;
  std::vector<ComplexVector> states;
  states.reserve(times.size());
  for (double t : times) {
    const ComplexVector phases = (-kI * t * dec.eigenvalues.array()).exp().matrix();
    states.push_back(dec.right * phases.cwiseProduct(coeffs));
  }
  return states;
}

void QuenchProtocol::validate() const {
  pre_spec.validate();
  post_spec.validate();
  if (pre_spec.n_sites != post_spec.n_sites) {
    throw ValidationError("QuenchProtocol: pre and post chains differ in n_sites");
  }
  if (pre_spec.pt_first_site != post_spec.pt_first_site ||
      pre_spec.pt_last_site != post_spec.pt_last_site) {
    throw ValidationError("QuenchProtocol: pre and post chains differ in PT region bounds");
  }
  if (initial_side == EdgeSide::delocalized) {
    throw ValidationError("QuenchProtocol: initial_side must be left or right");
  }
  if (!(t_max > 0.0) || !std::isfinite(t_max)) {
    throw ValidationError("QuenchProtocol: t_max must be positive");
  }
  if (n_time_steps < 2) throw ValidationError("QuenchProtocol: n_time_steps must be >= 2");
}

double max_group_velocity(double v, double w) { return 2.0 * std::min(std::abs(v), std::abs(w)); }

QuenchProtocol make_quench(const HybridChainSpec& pre, double v_post, EdgeSide side, double t_max,
                           int n_time_steps) {
  QuenchProtocol p;
  p.pre_spec = pre;
  p.post_spec = pre;
  p.post_spec.v = v_post;
  p.initial_side = side;
  p.n_time_steps = n_time_steps;
  if (t_max > 0.0) {
    p.t_max = t_max;
  } else {
    const double speed = max_group_velocity(v_post, pre.w);
    // A frozen chain has no light cone; fall back to one time unit per site.
    p.t_max = speed > 0.0 ? 1.2 * pre.n_sites / speed : 1.2 * pre.n_sites;
  }
  return p;
}

QuenchProtocol reference_quench(EdgeSide side) {
  return make_quench(reference_chain(0.1), 0.5, side);
}

LightCone run_quench(const QuenchProtocol& protocol) {
  protocol.validate();
  const auto reports = find_edge_states(decompose(build_hamiltonian(protocol.pre_spec)));
  const EdgeStateReport* initial = nullptr;
  for (const auto& r : reports) {
    if (r.side == protocol.initial_side) {
      initial = &r;
      break;
    }
  }
  if (initial == nullptr) {
    std::ostringstream os;
    os << "run_quench: pre-quench chain (v=" << protocol.pre_spec.v << ", w=" << protocol.pre_spec.w
       << ") has no edge state on the " << to_string(protocol.initial_side) << " end";
    throw ComputationError(os.str());
  }

  LightCone cone;
  cone.protocol = protocol;
  cone.times = uniform_times(protocol.t_max, protocol.n_time_steps);
  const auto states =
      propagate_expm(build_hamiltonian(protocol.post_spec), initial->amplitudes, cone.times);

  const int n = protocol.pre_spec.n_sites;
  cone.density.resize(static_cast<Eigen::Index>(states.size()), n);
  cone.norm_series.resize(states.size());
  for (std::size_t k = 0; k < states.size(); ++k) {
    cone.density.row(static_cast<Eigen::Index>(k)) = states[k].cwiseAbs2().transpose();
    cone.norm_series[k] = cone.density.row(static_cast<Eigen::Index>(k)).sum();
  }
  return cone;
}

ReflectionSignal reflection_signal(const LightCone& cone, int site, double dip_fraction) {
  const int n = cone.n_sites();
  if (site < 1 || site > n) throw ValidationError("reflection_signal: site out of range");
  if (cone.n_times() < 2) throw ValidationError("reflection_signal: light cone has no time samples");

  ReflectionSignal sig;
  sig.site = site;
  const int nt = cone.n_times();
  sig.series.reserve(nt);
  for (int k = 0; k < nt; ++k) sig.series.emplace_back(cone.times[k], cone.density(k, site - 1));

  const double threshold = dip_fraction * sig.series.front().second;
  int best_begin = -1;
  int best_end = -1;
  for (int k = 0; k < nt;) {
    if (sig.series[k].second < threshold) {
      int j = k;
      while (j + 1 < nt && sig.series[j + 1].second < threshold) ++j;
      if (best_begin < 0 || j - k > best_end - best_begin) {
        best_begin = k;
        best_end = j;
      }
      k = j + 1;
    } else {
      ++k;
    }
  }
  if (best_begin < 0) {
    std::ostringstream os;
    os << "non-transporting protocol: density at site " << site << " never drops below "
       << dip_fraction << " of its initial value";
    throw NonTransportingError(os.str());
  }
  sig.dip_interval = {sig.series[best_begin].first, sig.series[best_end].first};
  for (int k = best_end + 1; k < nt; ++k) {
    sig.reemergence_peak = std::max(sig.reemergence_peak, sig.series[k].second);
  }
  return sig;
}

double front_speed(const LightCone& cone, double front_fraction) {
  const int n = cone.n_sites();
  const int nt = cone.n_times();
  const bool from_left = cone.protocol.initial_side != EdgeSide::right;

  // Distance of the leading edge from the origin edge, in sites.
  std::vector<double> distance(nt);
  for (int k = 0; k < nt; ++k) {
    const double total = cone.density.row(k).sum();
    double acc = 0.0;
    int front = 0;
    for (int j = 0; j < n; ++j) {
      const int idx = from_left ? n - 1 - j : j;
      acc += cone.density(k, idx);
      if (acc > front_fraction * total) {
        front = idx;
        break;
      }
    }
    distance[k] = from_left ? front : (n - 1 - front);
  }

  const double start = distance.front() + 2.0;
  const double stop = 0.9 * (n - 1);
  int begin = -1;
  int end = -1;
  for (int k = 0; k < nt; ++k) {
    if (distance[k] > stop) break;
    if (begin < 0 && distance[k] >= start) begin = k;
    if (begin >= 0) end = k;
  }
  const int count = begin < 0 ? 0 : end - begin + 1;
  if (count < 10) {
    std::ostringstream os;
    os << "front_speed: fit window has " << count << " time samples (need 10); the state does not "
       << "spread across the chain";
    throw NonTransportingError(os.str());
  }

  double st = 0, sd = 0, stt = 0, std_ = 0;
  for (int k = begin; k <= end; ++k) {
    const double t = cone.times[k];
    st += t;
    sd += distance[k];
    stt += t * t;
    std_ += t * distance[k];
  }
  const double denom = count * stt - st * st;
  return (count * std_ - st * sd) / denom;
}

}  // namespace sshlab
