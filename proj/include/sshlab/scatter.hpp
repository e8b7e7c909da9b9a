#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sshlab/lattice.hpp"

namespace sshlab {

// Continuum model of the PT segment: psi'' + (E - V(x)) psi = 0 with
// piecewise-constant complex V (units hbar^2 / 2m = 1).

struct PotentialSlab {
  cplx potential;
  double length = 1.0;
};

/// Slabs in transfer-product order: slabs[0] is the one next to the right
/// free region, the last slab touches the left free region, so along +x the
/// slabs appear back to front. AB stacks are n_blocks copies of
/// [A: u_re - i u_im over l_a, B: u_re + i u_im over l_b].
struct PotentialStack {
  std::vector<PotentialSlab> slabs;
  int n_blocks = 0;

  void validate() const;
  PotentialStack reversed() const;
};

/// Parameters of an AB block stack, as read from a config file.
struct StackSpec {
  int n_blocks = 10;
  double l_a = 6.0;
  double l_b = 10.0;
  double u_re = -0.3;
  double u_im = 0.1;

  void validate() const;
  PotentialStack build() const;
  bool operator==(const StackSpec&) const = default;
};

/// 2x2 transfer matrix [[alpha, beta], [gamma, sigma]].
using TransferMatrix = Eigen::Matrix2cd;

/// Principal-branch wavevector sqrt(E - V); Im k >= 0.
cplx wavevector(double energy, cplx potential);

/// M diag(e^{ikL}, e^{-ikL}) M^{-1} with M = [[1, 1], [k, -k]]. Maps
/// (psi, -i psi') at the slab's left face to the same pair at its right face.
TransferMatrix slab_transfer(const PotentialSlab& slab, double energy);

/// t_R^{-1} T(slabs[0]) T(slabs[1]) ... T(slabs[n-1]) t_L with
/// t_L = t_R = [[1, 1], [k0, -k0]], k0 = sqrt(E). Maps the (right-moving,
/// left-moving) plane-wave amplitudes on the left of the stack to those on the
/// right.
TransferMatrix stack_transfer(const PotentialStack& stack, double energy);

struct ScatteringResult {
  double energy = 0.0;
  cplx s11, s12, s21, s22;
  double r_left = 0.0;        // |s11|^2, incidence from the left
  double r_right = 0.0;       // |s22|^2, incidence from the right
  double transmission = 0.0;  // |s21|^2
};

/// s11 = -gamma/sigma, s12 = 1/sigma, s21 = alpha - beta gamma/sigma,
/// s22 = beta/sigma. Throws ComputationError when |sigma| < 1e-14.
ScatteringResult scattering_matrix(const TransferMatrix& t, double energy = 0.0);

/// Inverse of scattering_matrix.
TransferMatrix transfer_from_scattering(const ScatteringResult& s);

struct SweepPoint {
  double energy = 0.0;
  std::optional<ScatteringResult> result;
  std::string error;  // set when result is empty
};

/// One independent scattering problem per energy; failures are recorded per
/// point. Output order matches `energies`.
std::vector<SweepPoint> reflection_sweep(const PotentialStack& stack,
                                         const std::vector<double>& energies, int threads = 1);

/// 400 log-spaced energies on [0.02, 5].
std::vector<double> reference_energy_grid();
std::vector<double> log_grid(double lo, double hi, int count);

}  // namespace sshlab
