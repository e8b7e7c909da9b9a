#include "sshlab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "sshlab/error.hpp"
#include "sshlab/parallel.hpp"

namespace sshlab {
namespace {

void fix_phase(Eigen::Ref<ComplexVector> x) {
  Eigen::Index k = 0;
  x.cwiseAbs().maxCoeff(&k);
  const double mag = std::abs(x(k));
  if (mag > 0.0) {
    x *= std::conj(x(k)) / mag;
    x(k) = std::abs(x(k));
  }
}

double weight(const ComplexVector& x, int begin, int count) {
  return x.segment(begin, count).squaredNorm();
}

}  // namespace

SpectralDecomposition decompose(const ComplexMatrix& h, const DecomposeOptions& opts) {
  if (h.rows() != h.cols()) throw ValidationError("decompose: matrix is not square");
  if (h.rows() < 2) throw ValidationError("decompose: dimension must be at least 2");
  const int n = static_cast<int>(h.rows());

  Eigen::ComplexEigenSolver<ComplexMatrix> solver;
  solver.setMaxIterations(60 * n);
  solver.compute(h, true);
  if (solver.info() != Eigen::Success) {
    std::ostringstream os;
    os << "decompose: complex Schur iteration did not converge (dimension " << n
       << ", limit " << 60 * n << " sweeps)";
    throw ConvergenceError(os.str(), 60 * n);
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  const auto& raw_values = solver.eigenvalues();
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    const cplx ea = raw_values(a);
    const cplx eb = raw_values(b);
    if (ea.real() != eb.real()) return ea.real() < eb.real();
    return ea.imag() < eb.imag();
  });

  SpectralDecomposition dec;
  dec.eigenvalues.resize(n);
  dec.right.resize(n, n);
  for (int f = 0; f < n; ++f) {
    dec.eigenvalues(f) = raw_values(order[f]);
    ComplexVector x = solver.eigenvectors().col(order[f]);
    x.normalize();
    fix_phase(x);
    dec.right.col(f) = x;
  }

  const double h_norm = std::max(h.cwiseAbs().colwise().sum().maxCoeff(), 1e-300);
  for (int f = 0; f < n; ++f) {
    const double r = (h * dec.right.col(f) - dec.eigenvalues(f) * dec.right.col(f)).norm() / h_norm;
    dec.max_residual = std::max(dec.max_residual, r);
  }
  if (!(dec.max_residual <= opts.residual_tol)) {
    std::ostringstream os;
    os << "decompose: eigenpair residual " << dec.max_residual << " exceeds " << opts.residual_tol
       << " relative to ||H||";
    throw ConvergenceError(os.str(), 60 * n);
  }

  if (opts.with_left) {
    ComplexMatrix dual = dec.right.partialPivLu().inverse();
    for (int f = 0; f < n; ++f) {
      const double row_norm = dual.row(f).norm();
      // Unit left and unit right vectors overlap by 1 / row_norm.
      if (!std::isfinite(row_norm) || 1.0 / row_norm < opts.defect_overlap) {
        dec.defective.push_back(f);
        if (std::isfinite(row_norm) && row_norm > 0.0) dual.row(f) /= row_norm;
      }
    }
    dec.left = std::move(dual);
  }
  return dec;
}

std::string to_string(EdgeSide side) {
  switch (side) {
    case EdgeSide::left: return "left";
    case EdgeSide::right: return "right";
    case EdgeSide::delocalized: return "delocalized";
  }
  return "delocalized";
}

EdgeSide edge_side_from_string(const std::string& name) {
  if (name == "left") return EdgeSide::left;
  if (name == "right") return EdgeSide::right;
  if (name == "delocalized") return EdgeSide::delocalized;
  throw ValidationError("unknown edge side '" + name + "' (expected left or right)");
}

std::vector<EdgeStateReport> find_edge_states(const SpectralDecomposition& dec,
                                              const EdgeSearchOptions& opts) {
  const int n = dec.size();
  if (opts.n_edge < 1 || 2 * opts.n_edge > n) {
    throw ValidationError("find_edge_states: n_edge must lie in [1, n_sites / 2]");
  }
  std::vector<int> selected;
  for (int f = 0; f < n; ++f) {
    if (std::abs(dec.eigenvalues(f)) < opts.energy_tol) selected.push_back(f);
  }
  const int k = static_cast<int>(selected.size());
  if (k == 0) return {};

  ComplexMatrix vectors(n, k);
  for (int j = 0; j < k; ++j) vectors.col(j) = dec.right.col(selected[j]);

  ComplexMatrix states = vectors;
  if (k > 1) {
    // Orthonormal basis of the selected span, then diagonalise the left-half
    // projector in it: eigenvalue ~1 is a left edge state, ~0 a right one.
    Eigen::HouseholderQR<ComplexMatrix> qr(vectors);
    const ComplexMatrix basis = qr.householderQ() * ComplexMatrix::Identity(n, k);
    const ComplexMatrix left_half = basis.topRows(n / 2);
    const ComplexMatrix projected = left_half.adjoint() * left_half;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> local(projected);
    states = basis * local.eigenvectors();
  }

  std::vector<EdgeStateReport> reports;
  reports.reserve(k);
  for (int j = 0; j < k; ++j) {
    EdgeStateReport rep;
    ComplexVector x = states.col(j).normalized();
    fix_phase(x);

    // Expansion in the selected eigenvectors gives H x without the matrix.
    const ComplexVector coeffs = vectors.colPivHouseholderQr().solve(x);
    ComplexVector hx = ComplexVector::Zero(n);
    for (int i = 0; i < k; ++i) hx += coeffs(i) * dec.eigenvalues(selected[i]) * vectors.col(i);
    rep.energy = x.dot(hx);

    Eigen::Index dominant = 0;
    (vectors.adjoint() * x).cwiseAbs().maxCoeff(&dominant);
    rep.index = selected[dominant];

    const double total = x.squaredNorm();
    const double w_left = weight(x, 0, opts.n_edge) / total;
    const double w_right = weight(x, n - opts.n_edge, opts.n_edge) / total;
    rep.edge_weight = std::clamp(w_left + w_right, 0.0, 1.0);
    if (rep.edge_weight < opts.delocalized_below) {
      rep.side = EdgeSide::delocalized;
    } else {
      rep.side = w_left >= w_right ? EdgeSide::left : EdgeSide::right;
    }
    const Eigen::VectorXd p = x.cwiseAbs2();
    rep.ipr = p.cwiseAbs2().sum() / (total * total);
    rep.amplitudes = std::move(x);
    reports.push_back(std::move(rep));
  }

  std::stable_sort(reports.begin(), reports.end(), [](const auto& a, const auto& b) {
    if (a.side != b.side) return static_cast<int>(a.side) < static_cast<int>(b.side);
    return a.index < b.index;
  });
  return reports;
}

const EdgeStateReport& edge_state_on(const std::vector<EdgeStateReport>& reports, EdgeSide side) {
  for (const auto& r : reports) {
    if (r.side == side) return r;
  }
  throw ComputationError("no edge state localised on the " + to_string(side) + " end");
}

double edge_overlap(const ComplexVector& a, const ComplexVector& b) {
  if (a.size() != b.size()) throw ValidationError("edge_overlap: dimension mismatch");
  const double value = std::abs(a.normalized().dot(b.normalized()));
  return std::min(value, 1.0);
}

double edge_overlap(const SpectralDecomposition& dec_hybrid, const SpectralDecomposition& dec_plain,
                    EdgeSide side, const EdgeSearchOptions& opts) {
  if (dec_hybrid.size() != dec_plain.size()) {
    throw ValidationError("edge_overlap: chains have different dimensions");
  }
  const auto hybrid = find_edge_states(dec_hybrid, opts);
  const auto plain = find_edge_states(dec_plain, opts);
  return edge_overlap(edge_state_on(hybrid, side).amplitudes, edge_state_on(plain, side).amplitudes);
}

BandSweepTable band_sweep(const HybridChainSpec& base, const std::vector<double>& v_values,
                          int threads) {
  if (v_values.empty()) throw ValidationError("band_sweep: v grid is empty");
  for (double v : v_values) {
    if (!std::isfinite(v)) throw ValidationError("band_sweep: v grid contains a non-finite value");
  }
  base.validate();

  std::vector<double> grid = v_values;
  std::sort(grid.begin(), grid.end());

  BandSweepTable table;
  table.base = base;
  table.rows.resize(grid.size());
  parallel_for(static_cast<int>(grid.size()), threads, [&](int i) {
    HybridChainSpec spec = base;
    spec.v = grid[i];
    try {
      table.rows[i] = {grid[i], decompose(build_hamiltonian(spec)).eigenvalues};
    } catch (const ComputationError& e) {
      std::ostringstream os;
      os << "band_sweep at v=" << grid[i] << ": " << e.what();
      throw ComputationError(os.str());
    }
  });
  return table;
}

double min_abs_real(const Eigen::VectorXcd& eigenvalues) {
  return eigenvalues.real().cwiseAbs().minCoeff();
}

double max_abs_imag(const Eigen::VectorXcd& eigenvalues) {
  return eigenvalues.imag().cwiseAbs().maxCoeff();
}

}  // namespace sshlab
