#pragma once

// Reference implementations used only by the tests. None of them call into
// the library's eigensolver, exponential or transfer-matrix code.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cplx = std::complex<double>;

// Characteristic polynomial det(H - z) of a tridiagonal matrix and its
// derivative, by the three-term continuant recurrence. `offprod[k]` is
// H(k, k+1) * H(k+1, k).
struct Continuant {
  std::vector<cplx> diag;
  std::vector<cplx> offprod;

  static Continuant from_matrix(const Eigen::MatrixXcd& h) {
    Continuant c;
    const auto n = h.rows();
    for (Eigen::Index k = 0; k < n; ++k) c.diag.push_back(h(k, k));
    for (Eigen::Index k = 0; k + 1 < n; ++k) c.offprod.push_back(h(k, k + 1) * h(k + 1, k));
    return c;
  }

  // Returns p(z)/p'(z), the Newton correction.
  cplx newton_ratio(cplx z) const {
    cplx p_prev = 1.0, p = diag[0] - z;
    cplx d_prev = 0.0, d = -1.0;
    for (std::size_t k = 1; k < diag.size(); ++k) {
      const cplx a = diag[k] - z;
      const cplx b = offprod[k - 1];
      const cplx p_next = a * p - b * p_prev;
      const cplx d_next = -p + a * d - b * d_prev;
      p_prev = p;
      p = p_next;
      d_prev = d;
      d = d_next;
      // keep magnitudes in range; the ratio is scale invariant
      const double s = std::max(std::abs(p), std::abs(d));
      if (s > 1e100 || (s < 1e-100 && s > 0)) {
        p /= s;
        d /= s;
        p_prev /= s;
        d_prev /= s;
      }
    }
    return p / d;
  }
};

// All roots of the characteristic polynomial by Aberth-Ehrlich iteration.
inline std::vector<cplx> aberth_eigenvalues(const Eigen::MatrixXcd& h, int max_iter = 2000) {
  const auto c = Continuant::from_matrix(h);
  const int n = static_cast<int>(h.rows());
  double radius = 0.0;  // Gershgorin
  for (int i = 0; i < n; ++i) radius = std::max(radius, h.row(i).cwiseAbs().sum());
  std::vector<cplx> z(n);
  for (int i = 0; i < n; ++i) {
    const double phi = 2.0 * std::numbers::pi * (i + 0.25) / n + 0.4;
    z[i] = std::polar(radius * 1.05, phi);
  }
  for (int it = 0; it < max_iter; ++it) {
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      const cplx w = c.newton_ratio(z[i]);
      cplx s = 0.0;
      for (int j = 0; j < n; ++j) {
        if (j != i) s += 1.0 / (z[i] - z[j]);
      }
      const cplx step = w / (1.0 - w * s);
      z[i] -= step;
      worst = std::max(worst, std::abs(step));
    }
    if (worst < 1e-15 * std::max(1.0, radius)) break;
  }
  return z;
}

// Shifted inverse iteration around a converged eigenvalue estimate.
inline Eigen::VectorXcd inverse_iteration(const Eigen::MatrixXcd& h, cplx z, int iters = 4) {
  const auto n = h.rows();
  const cplx shift = z + cplx(1e-11, 1e-11);
  Eigen::MatrixXcd a = h - shift * Eigen::MatrixXcd::Identity(n, n);
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(a);
  Eigen::VectorXcd x = Eigen::VectorXcd::Ones(n);
  for (Eigen::Index i = 0; i < n; ++i) x(i) += cplx(0.01 * i, 0.003 * i * i);
  for (int k = 0; k < iters; ++k) {
    x = lu.solve(x);
    x.normalize();
  }
  return x;
}

// Pairs each reference value with a distinct nearest candidate; returns the
// largest distance in the pairing.
inline double greedy_match_distance(std::vector<cplx> reference, std::vector<cplx> candidate) {
  double worst = 0.0;
  for (const cplx r : reference) {
    auto best = std::min_element(candidate.begin(), candidate.end(),
                                 [r](cplx a, cplx b) { return std::abs(a - r) < std::abs(b - r); });
    worst = std::max(worst, std::abs(*best - r));
    candidate.erase(best);
  }
  return worst;
}

// Truncated Taylor series with scaling and squaring, summed until the terms
// stop contributing.
inline Eigen::MatrixXcd taylor_expm(const Eigen::MatrixXcd& a) {
  const auto n = a.rows();
  const double norm = a.cwiseAbs().colwise().sum().maxCoeff();
  int s = 0;
  while (norm / std::ldexp(1.0, s) > 0.25) ++s;
  const Eigen::MatrixXcd b = a / std::ldexp(1.0, s);
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Identity(n, n);
  Eigen::MatrixXcd term = sum;
  for (int k = 1; k < 40; ++k) {
    term = term * b / static_cast<double>(k);
    sum += term;
  }
  for (int k = 0; k < s; ++k) sum = sum * sum;
  return sum;
}

// exp(a) for Hermitian a through its real eigendecomposition.
inline Eigen::MatrixXcd hermitian_expm(const Eigen::MatrixXcd& a, cplx scale) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a);
  const Eigen::VectorXcd d = (scale * es.eigenvalues().cast<cplx>()).array().exp();
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
}

// Piecewise-constant potential region traversed along +x.
struct Layer {
  cplx potential;
  double length;
};

// Fundamental matrix of y' = A y with y = (psi, -i psi') for
// psi'' = (V - E) psi, integrated with classical RK4 across the layers.
inline Eigen::Matrix2cd rk4_fundamental(const std::vector<Layer>& layers, double energy,
                                        double max_step = 2e-3) {
  Eigen::Matrix2cd y = Eigen::Matrix2cd::Identity();
  const cplx i(0.0, 1.0);
  for (const auto& layer : layers) {
    Eigen::Matrix2cd a;
    // psi' = i * phi ; phi' = -i psi'' = -i (V - E) psi
    a << 0.0, i, -i * (layer.potential - energy), 0.0;
    const int steps = std::max(1, static_cast<int>(std::ceil(layer.length / max_step)));
    const double h = layer.length / steps;
    for (int s = 0; s < steps; ++s) {
      const Eigen::Matrix2cd k1 = a * y;
      const Eigen::Matrix2cd k2 = a * (y + 0.5 * h * k1);
      const Eigen::Matrix2cd k3 = a * (y + 0.5 * h * k2);
      const Eigen::Matrix2cd k4 = a * (y + h * k3);
      y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
  }
  return y;
}

// Amplitude-space transfer matrix between free regions on both sides.
inline Eigen::Matrix2cd rk4_transfer(const std::vector<Layer>& layers, double energy,
                                     double max_step = 2e-3) {
  const cplx k0 = std::sqrt(cplx(energy, 0.0));
  Eigen::Matrix2cd t;
  t << 1.0, 1.0, k0, -k0;
  return t.inverse() * rk4_fundamental(layers, energy, max_step) * t;
}

// Rectangular well/barrier of height v0 (real) and width l:
// textbook transmission probability for E > v0 and E < v0.
inline double rectangular_transmission(double energy, double v0, double l) {
  if (energy > v0) {
    const double q = std::sqrt(energy - v0);
    const double s = std::sin(q * l);
    return 1.0 / (1.0 + v0 * v0 * s * s / (4.0 * energy * (energy - v0)));
  }
  const double kappa = std::sqrt(v0 - energy);
  const double s = std::sinh(kappa * l);
  return 1.0 / (1.0 + v0 * v0 * s * s / (4.0 * energy * (v0 - energy)));
}

}  // namespace oracle
