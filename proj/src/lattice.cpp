#include "sshlab/lattice.hpp"

#include <cmath>
#include <sstream>

#include "sshlab/error.hpp"

namespace sshlab {

void HybridChainSpec::validate() const {
  auto fail = [](const std::string& msg) { throw ValidationError("HybridChainSpec: " + msg); };
  if (n_sites < 2 || n_sites % 2 != 0) {
    fail("n_sites must be a positive even number, got " + std::to_string(n_sites));
  }
  for (auto [name, value] : {std::pair{"v", v}, {"w", w}, {"u_re", u_re}, {"u_im", u_im}}) {
    if (!std::isfinite(value)) fail(std::string(name) + " must be finite");
  }
  if (u_im < 0.0) fail("u_im must be >= 0 (the sign is fixed by the sublattice)");
  if (pt_first_site < 1 || pt_first_site > pt_last_site || pt_last_site > n_sites) {
    std::ostringstream os;
    os << "PT region [" << pt_first_site << ", " << pt_last_site << "] must satisfy 1 <= first <= last <= "
       << n_sites;
    fail(os.str());
  }
  if (!is_a_site(pt_first_site) || is_a_site(pt_last_site)) {
    fail("PT region must start on an A (odd) site and end on a B (even) site");
  }
}

HybridChainSpec reference_chain(double v) {
  HybridChainSpec spec;
  spec.n_sites = 220;
  spec.v = v;
  spec.w = 0.4;
  spec.u_re = -0.3;
  spec.u_im = 0.1;
  spec.pt_first_site = 101;
  spec.pt_last_site = 120;
  return spec;
}

ComplexMatrix build_hamiltonian(const HybridChainSpec& spec) {
  spec.validate();
  const int n = spec.n_sites;
  ComplexMatrix h = ComplexMatrix::Zero(n, n);
  // 0-based index i couples to i+1 with v when i is an A site (even index).
  for (int i = 0; i + 1 < n; ++i) {
    const double t = (i % 2 == 0) ? spec.v : spec.w;
    h(i, i + 1) = t;
    h(i + 1, i) = t;
  }
  const cplx u_a{spec.u_re, -spec.u_im};
  const cplx u_b{spec.u_re, spec.u_im};
  for (int site = spec.pt_first_site; site <= spec.pt_last_site; ++site) {
    h(site - 1, site - 1) = is_a_site(site) ? u_a : u_b;
  }
  return h;
}

bool pt_symmetry_check(const ComplexMatrix& h, const HybridChainSpec& spec, double tol) {
  if (h.rows() != h.cols() || h.rows() != spec.n_sites) return false;
  const int first = spec.pt_first_site - 1;
  const int last = spec.pt_last_site - 1;
  const int mirror = first + last;
  for (int i = first; i <= last; ++i) {
    for (int j = first; j <= last; ++j) {
      if (std::abs(h(i, j) - std::conj(h(mirror - i, mirror - j))) > tol) return false;
    }
  }
  return true;
}

}  // namespace sshlab
