#pragma once

#include <utility>
#include <vector>

#include "sshlab/lattice.hpp"
#include "sshlab/spectral.hpp"

namespace sshlab {

/// `n_samples` points evenly spaced on [0, t_max], both ends included.
std::vector<double> uniform_times(double t_max, int n_samples);

struct PropagationInfo {
  int substeps = 1;  // substeps per grid interval used by the step propagator
};

/// psi(t) = exp(-i H t) psi0 on a uniform grid starting at 0. The step
/// propagator exp(-i H dt) is built once; steps whose ||H dt|| is beyond the
/// Padé bound are split into 2^s substeps and squared back.
std::vector<ComplexVector> propagate_expm(const ComplexMatrix& h, const ComplexVector& psi0,
                                          const std::vector<double>& times,
                                          PropagationInfo* info = nullptr);

/// psi(t) = sum_f exp(-i E_f t) psi_f <L_f|psi0>, with biorthogonal left
/// vectors. Throws DefectiveSpectrumError if the decomposition has no left
/// vectors or flags any pair.
std::vector<ComplexVector> propagate_spectral(const SpectralDecomposition& dec,
                                              const ComplexVector& psi0,
                                              const std::vector<double>& times);

struct QuenchProtocol {
  HybridChainSpec pre_spec;
  HybridChainSpec post_spec;
  EdgeSide initial_side = EdgeSide::left;
  double t_max = 330.0;
  int n_time_steps = 601;  // grid samples including t = 0

  void validate() const;
  bool operator==(const QuenchProtocol&) const = default;
};

/// Largest group velocity of the bulk SSH chain in sites per unit time:
/// 2 * max_k |dE/dk| for E(k) = |v + w e^{ik}|, which is 2 * min(|v|, |w|).
double max_group_velocity(double v, double w);

/// Quench of `pre` to intracell hopping `v_post`. With t_max <= 0 the window
/// is 1.2 * n_sites / max_group_velocity, long enough for a reflection from
/// the middle of the chain to return to the starting edge.
QuenchProtocol make_quench(const HybridChainSpec& pre, double v_post, EdgeSide side,
                           double t_max = 0.0, int n_time_steps = 601);

/// Reference protocol: v 0.1 -> 0.5 at w = 0.4 on the 220-site PT chain.
QuenchProtocol reference_quench(EdgeSide side);

struct LightCone {
  std::vector<double> times;
  Eigen::MatrixXd density;  // density(t_index, site_index) = |psi_site(t)|^2, not renormalised
  std::vector<double> norm_series;
  QuenchProtocol protocol;

  int n_sites() const { return static_cast<int>(density.cols()); }
  int n_times() const { return static_cast<int>(density.rows()); }
};

LightCone run_quench(const QuenchProtocol& protocol);

struct ReflectionSignal {
  int site = 1;  // 1-based
  std::vector<std::pair<double, double>> series;  // (t, P)
  std::pair<double, double> dip_interval;
  double reemergence_peak = 0.0;
};

/// Density at the starting edge. The dip is the longest run of samples below
/// `dip_fraction * P(site, 0)`; the short oscillations right after the quench
/// are not mistaken for it. Throws NonTransportingError when no sample dips.
ReflectionSignal reflection_signal(const LightCone& cone, int site, double dip_fraction = 0.01);

/// Light-cone slope in sites per unit time. The front at time t is the site,
/// counted from the far end, where the cumulative share of density first
/// exceeds `front_fraction`; its distance from the origin is fitted linearly
/// over the window after it has moved a full cell and before it reaches 90% of
/// the chain.
double front_speed(const LightCone& cone, double front_fraction = 0.01);

}  // namespace sshlab
