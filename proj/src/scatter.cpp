#include "sshlab/scatter.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sshlab/error.hpp"
#include "sshlab/parallel.hpp"

namespace sshlab {
namespace {

constexpr cplx kI{0.0, 1.0};

TransferMatrix free_basis(cplx k) {
  TransferMatrix m;
  m << 1.0, 1.0, k, -k;
  return m;
}

}  // namespace

void PotentialStack::validate() const {
  for (const auto& slab : slabs) {
    if (!(slab.length > 0.0) || !std::isfinite(slab.length)) {
      throw ValidationError("PotentialStack: slab lengths must be finite and positive");
    }
    if (!std::isfinite(slab.potential.real()) || !std::isfinite(slab.potential.imag())) {
      throw ValidationError("PotentialStack: slab potentials must be finite");
    }
  }
}

PotentialStack PotentialStack::reversed() const {
  PotentialStack out = *this;
  std::reverse(out.slabs.begin(), out.slabs.end());
  return out;
}

void StackSpec::validate() const {
  if (n_blocks < 0) throw ValidationError("stack: n_blocks must be >= 0");
  if (!(l_a > 0.0) || !(l_b > 0.0) || !std::isfinite(l_a) || !std::isfinite(l_b)) {
    throw ValidationError("stack: l_a and l_b must be finite and positive");
  }
  if (!std::isfinite(u_re) || !std::isfinite(u_im)) throw ValidationError("stack: u must be finite");
  if (u_im < 0.0) throw ValidationError("stack: u_im must be >= 0");
}

PotentialStack StackSpec::build() const {
  validate();
  PotentialStack stack;
  stack.n_blocks = n_blocks;
  stack.slabs.reserve(2 * static_cast<std::size_t>(n_blocks));
  for (int b = 0; b < n_blocks; ++b) {
    stack.slabs.push_back({cplx{u_re, -u_im}, l_a});
    stack.slabs.push_back({cplx{u_re, u_im}, l_b});
  }
  return stack;
}

cplx wavevector(double energy, cplx potential) {
  cplx k = std::sqrt(cplx{energy, 0.0} - potential);
  // std::sqrt already returns Re >= 0; flip onto Im >= 0 for the evanescent branch.
  if (k.imag() < 0.0) k = -k;
  return k;
}

TransferMatrix slab_transfer(const PotentialSlab& slab, double energy) {
  const cplx k = wavevector(energy, slab.potential);
  if (k == cplx{0.0, 0.0}) {
    std::ostringstream os;
    os << "slab_transfer: k = 0 at E = " << energy << " (band edge of a slab with V = "
       << slab.potential << ")";
    throw ComputationError(os.str());
  }
  const TransferMatrix m = free_basis(k);
  const Eigen::Vector2cd phases{std::exp(kI * k * slab.length), std::exp(-kI * k * slab.length)};
  return m * phases.asDiagonal() * m.inverse();
}

TransferMatrix stack_transfer(const PotentialStack& stack, double energy) {
  stack.validate();
  if (!(energy > 0.0)) {
    std::ostringstream os;
    os << "stack_transfer: free-region basis is singular at E = " << energy
       << " (outer waves must propagate, E > 0)";
    throw ComputationError(os.str());
  }
  const TransferMatrix outer = free_basis(std::sqrt(energy));
  TransferMatrix inner = TransferMatrix::Identity();
  for (const auto& slab : stack.slabs) inner = inner * slab_transfer(slab, energy);
  return outer.inverse() * inner * outer;
}

ScatteringResult scattering_matrix(const TransferMatrix& t, double energy) {
  const cplx alpha = t(0, 0), beta = t(0, 1), gamma = t(1, 0), sigma = t(1, 1);
  if (std::abs(sigma) < 1e-14) {
    std::ostringstream os;
    os << "scattering_matrix: sigma vanishes at E = " << energy
       << " (resonance, S-matrix is ill-conditioned)";
    throw ComputationError(os.str());
  }
  ScatteringResult s;
  s.energy = energy;
  s.s11 = -gamma / sigma;
  s.s12 = 1.0 / sigma;
  s.s21 = alpha - beta * gamma / sigma;
  s.s22 = beta / sigma;
  s.r_left = std::norm(s.s11);
  s.r_right = std::norm(s.s22);
  s.transmission = std::norm(s.s21);
  return s;
}

TransferMatrix transfer_from_scattering(const ScatteringResult& s) {
  const cplx sigma = 1.0 / s.s12;
  const cplx beta = s.s22 * sigma;
  const cplx gamma = -s.s11 * sigma;
  const cplx alpha = s.s21 + beta * gamma / sigma;
  TransferMatrix t;
  t << alpha, beta, gamma, sigma;
  return t;
}

std::vector<SweepPoint> reflection_sweep(const PotentialStack& stack,
                                         const std::vector<double>& energies, int threads) {
  stack.validate();
  std::vector<SweepPoint> points(energies.size());
  parallel_for(static_cast<int>(energies.size()), threads, [&](int i) {
    SweepPoint& p = points[i];
    p.energy = energies[i];
    try {
      if (!(p.energy > 0.0)) throw ValidationError("energy must be positive");
      p.result = scattering_matrix(stack_transfer(stack, p.energy), p.energy);
    } catch (const std::exception& e) {
      p.result.reset();
      p.error = e.what();
    }
  });
  return points;
}

std::vector<double> log_grid(double lo, double hi, int count) {
  if (!(lo > 0.0) || !(hi > lo) || count < 2) {
    throw ValidationError("log_grid: need 0 < lo < hi and count >= 2");
  }
  std::vector<double> grid(count);
  const double step = std::log(hi / lo) / (count - 1);
  for (int i = 0; i < count; ++i) grid[i] = lo * std::exp(step * i);
  grid.back() = hi;
  return grid;
}

std::vector<double> reference_energy_grid() { return log_grid(0.02, 5.0, 400); }

}  // namespace sshlab
