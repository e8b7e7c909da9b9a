#include <doctest.h>

#include "sshlab/error.hpp"
#include "sshlab/lattice.hpp"

using namespace sshlab;

TEST_CASE("reference chain diagonal carries u on A sites and its conjugate on B sites") {
  const auto h = build_hamiltonian(reference_chain(0.1));
  CHECK(h(100, 100) == cplx(-0.3, -0.1));
  CHECK(h(101, 101) == cplx(-0.3, 0.1));
  for (int site = 1; site <= 220; ++site) {
    if (site >= 101 && site <= 120) continue;
    CHECK(h(site - 1, site - 1) == cplx(0.0, 0.0));
  }
}

TEST_CASE("fully dimerized four-site chain has a single bond") {
  HybridChainSpec spec{4, 0.0, 0.7, 0.0, 0.0, 1, 2};
  const auto h = build_hamiltonian(spec);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const bool bond = (i == 1 && j == 2) || (i == 2 && j == 1);
      CHECK(h(i, j) == (bond ? cplx(0.7, 0.0) : cplx(0.0, 0.0)));
    }
  }
}

TEST_CASE("hoppings alternate v, w starting on the first bond and nothing else is off-diagonal") {
  HybridChainSpec spec{12, 0.13, 0.41, -0.2, 0.05, 5, 8};
  const auto h = build_hamiltonian(spec);
  for (int i = 0; i < 12; ++i) {
    for (int j = 0; j < 12; ++j) {
      if (std::abs(i - j) == 1) {
        const int lo = std::min(i, j);
        CHECK(h(i, j) == cplx(lo % 2 == 0 ? 0.13 : 0.41, 0.0));
      } else if (i != j) {
        CHECK(h(i, j) == cplx(0.0, 0.0));
      }
    }
  }
  // balanced gain and loss: the imaginary trace cancels
  CHECK(h.trace().imag() == doctest::Approx(0.0));
  CHECK(h.trace().real() == doctest::Approx(spec.pt_cells() * 2 * spec.u_re));
}

TEST_CASE("zero gain/loss gives an exactly Hermitian matrix") {
  for (double v : {0.0, 0.1, 0.37, 0.8}) {
    HybridChainSpec spec{40, v, 0.4, -0.3, 0.0, 19, 22};
    const auto h = build_hamiltonian(spec);
    CHECK(h == h.adjoint());
  }
}

TEST_CASE("PT check") {
  SUBCASE("reference chain is PT symmetric") {
    const auto spec = reference_chain(0.1);
    CHECK(pt_symmetry_check(build_hamiltonian(spec), spec));
  }
  SUBCASE("Hermitian limit is PT symmetric") {
    HybridChainSpec spec = reference_chain(0.25);
    spec.u_im = 0.0;
    CHECK(pt_symmetry_check(build_hamiltonian(spec), spec));
  }
  SUBCASE("same u on both sublattices breaks it") {
    const auto spec = reference_chain(0.1);
    auto h = build_hamiltonian(spec);
    for (int site = spec.pt_first_site; site <= spec.pt_last_site; ++site) {
      h(site - 1, site - 1) = cplx(spec.u_re, -spec.u_im);
    }
    CHECK_FALSE(pt_symmetry_check(h, spec));
  }
  SUBCASE("wrong dimension is rejected") {
    const auto spec = reference_chain(0.1);
    CHECK_FALSE(pt_symmetry_check(ComplexMatrix::Zero(10, 10), spec));
  }
}

TEST_CASE("invalid specs are rejected with ValidationError") {
  auto bad = [](HybridChainSpec s) { CHECK_THROWS_AS(build_hamiltonian(s), ValidationError); };
  bad({7, 0.1, 0.4, 0.0, 0.0, 1, 2});      // odd size
  bad({0, 0.1, 0.4, 0.0, 0.0, 1, 2});      // empty
  bad({20, 0.1, 0.4, 0.0, 0.0, 2, 3});     // starts on B
  bad({20, 0.1, 0.4, 0.0, 0.0, 1, 3});     // ends on A
  bad({20, 0.1, 0.4, 0.0, 0.0, 19, 22});   // past the end
  bad({20, 0.1, 0.4, 0.0, -0.1, 1, 2});    // negative gain/loss
  bad({20, std::nan(""), 0.4, 0.0, 0.0, 1, 2});
}
