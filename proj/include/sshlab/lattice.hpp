#pragma once

#include <complex>
#include <string>

#include <Eigen/Dense>

namespace sshlab {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Parameters of an open SSH chain with a PT-symmetric segment in the middle.
///
/// Sites are 1-based and alternate A,B,A,B,... starting with an A site.
/// Inside [pt_first_site, pt_last_site] A sites carry u_re - i*u_im and
/// B sites carry u_re + i*u_im; every other onsite energy is zero.
struct HybridChainSpec {
  int n_sites = 220;
  double v = 0.1;  // intracell hopping (A_n - B_n)
  double w = 0.4;  // intercell hopping (B_n - A_{n+1})
  double u_re = 0.0;
  double u_im = 0.0;
  int pt_first_site = 1;
  int pt_last_site = 2;

  /// Throws ValidationError naming the first broken invariant.
  void validate() const;

  int pt_cells() const { return (pt_last_site - pt_first_site + 1) / 2; }

  bool operator==(const HybridChainSpec&) const = default;
};

/// Chain used throughout the reproduction: 220 sites, w = 0.4,
/// u = -0.3 -/+ 0.1i on sites 101..120.
HybridChainSpec reference_chain(double v);

inline bool is_a_site(int site) { return site % 2 == 1; }

/// Dense tridiagonal Hamiltonian. Hopping is real and symmetric; only the
/// diagonal inside the PT segment is complex.
ComplexMatrix build_hamiltonian(const HybridChainSpec& spec);

/// True iff conjugating H and reflecting the sites about the centre of the
/// PT segment leaves the PT block unchanged (to `tol`, absolute).
bool pt_symmetry_check(const ComplexMatrix& h, const HybridChainSpec& spec,
                       double tol = 0.0);

}  // namespace sshlab
