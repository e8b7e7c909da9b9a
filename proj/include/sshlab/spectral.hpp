#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sshlab/lattice.hpp"

namespace sshlab {

/// Eigenpairs of a general complex matrix.
///
/// `right` holds unit-norm eigenvectors as columns, each phase-fixed so that
/// its largest-magnitude component is real and positive. When requested,
/// `left` holds the dual basis as rows: left.row(f) * right.col(g) = delta_fg
/// (plain bilinear product, no conjugation). Rows whose pair is too close to
/// an exceptional point to normalise are listed in `defective` and left
/// unit-norm instead.
struct SpectralDecomposition {
  Eigen::VectorXcd eigenvalues;
  ComplexMatrix right;
  std::optional<ComplexMatrix> left;
  std::vector<int> defective;
  double max_residual = 0.0;  // max_f ||H psi_f - E_f psi_f|| / ||H||

  int size() const { return static_cast<int>(eigenvalues.size()); }
  bool has_left() const { return left.has_value(); }
  bool is_biorthogonal() const { return left.has_value() && defective.empty(); }
};

struct DecomposeOptions {
  bool with_left = false;
  double residual_tol = 1e-9;
  // Unit-norm left/right overlap below which a pair is flagged as defective.
  double defect_overlap = 1e-10;
};

SpectralDecomposition decompose(const ComplexMatrix& h, const DecomposeOptions& opts = {});
inline SpectralDecomposition decompose(const ComplexMatrix& h, bool with_left) {
  DecomposeOptions opts;
  opts.with_left = with_left;
  return decompose(h, opts);
}

enum class EdgeSide { left, right, delocalized };
std::string to_string(EdgeSide side);
EdgeSide edge_side_from_string(const std::string& name);

struct EdgeStateReport {
  int index = -1;      // eigenpair that dominates this state
  cplx energy;         // <psi|H|psi> of the unit-norm state
  EdgeSide side = EdgeSide::delocalized;
  double edge_weight = 0.0;  // weight in the outer n_edge sites at both ends
  double ipr = 0.0;
  ComplexVector amplitudes;  // unit norm, phase-fixed
};

struct EdgeSearchOptions {
  double energy_tol = 1e-6;
  int n_edge = 10;
  double delocalized_below = 0.5;
};

/// Near-zero-energy states of `dec`, classified by the end that carries them.
///
/// Nearly degenerate edge pairs come out of the eigensolver as arbitrary
/// mixtures of the two ends. The selected subspace is therefore rotated onto
/// eigenvectors of the left-half position projector before classification,
/// which leaves already-localised states untouched (up to phase).
/// Ordering: left, then right, then delocalized; ties by index.
std::vector<EdgeStateReport> find_edge_states(const SpectralDecomposition& dec,
                                              const EdgeSearchOptions& opts = {});

/// First report on `side`, or ComputationError naming the side.
const EdgeStateReport& edge_state_on(const std::vector<EdgeStateReport>& reports, EdgeSide side);

/// |<psi_hybrid|psi_plain>| for the edge states on `side`.
double edge_overlap(const SpectralDecomposition& dec_hybrid, const SpectralDecomposition& dec_plain,
                    EdgeSide side, const EdgeSearchOptions& opts = {});
double edge_overlap(const ComplexVector& a, const ComplexVector& b);

struct BandSweepRow {
  double v;
  Eigen::VectorXcd eigenvalues;
};

struct BandSweepTable {
  HybridChainSpec base;
  std::vector<BandSweepRow> rows;  // sorted by v
};

BandSweepTable band_sweep(const HybridChainSpec& base, const std::vector<double>& v_values,
                          int threads = 1);

double min_abs_real(const Eigen::VectorXcd& eigenvalues);
double max_abs_imag(const Eigen::VectorXcd& eigenvalues);

}  // namespace sshlab
