#include <doctest.h>

#include <algorithm>
#include <vector>

#include "oracles.hpp"
#include "sshlab/error.hpp"
#include "sshlab/spectral.hpp"

using namespace sshlab;

namespace {

std::vector<cplx> to_vec(const Eigen::VectorXcd& v) { return {v.data(), v.data() + v.size()}; }

HybridChainSpec small_pt(double v, int n = 40, int first = 19, int last = 22) {
  return {n, v, 0.4, -0.3, 0.1, first, last};
}

}  // namespace

TEST_CASE("two-site chain") {
  ComplexMatrix h(2, 2);
  h << 0.0, 0.3, 0.3, 0.0;
  const auto dec = decompose(h);
  CHECK(dec.eigenvalues(0).real() == doctest::Approx(-0.3).epsilon(1e-14));
  CHECK(dec.eigenvalues(1).real() == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(std::abs(dec.eigenvalues(0).imag()) < 1e-15);
}

TEST_CASE("dimerized four-site chain has a doubly degenerate zero mode") {
  const auto dec = decompose(build_hamiltonian({4, 0.0, 0.7, 0.0, 0.0, 1, 2}));
  const double expected[] = {-0.7, 0.0, 0.0, 0.7};
  for (int i = 0; i < 4; ++i) CHECK(std::abs(dec.eigenvalues(i) - expected[i]) < 1e-14);
}

TEST_CASE("eigenvalues agree with the continuant/Aberth oracle up to dimension 40") {
  const HybridChainSpec specs[] = {
      small_pt(0.3), small_pt(0.5), small_pt(0.25, 40, 17, 24), {30, 0.45, 0.3, 0.1, 0.2, 11, 20},
      {24, 0.2, 0.4, 0.0, 0.0, 1, 2},
  };
  for (const auto& spec : specs) {
    CAPTURE(spec.v);
    CAPTURE(spec.n_sites);
    const auto h = build_hamiltonian(spec);
    const auto dec = decompose(h, true);
    const auto ref = oracle::aberth_eigenvalues(h);
    CHECK(oracle::greedy_match_distance(ref, to_vec(dec.eigenvalues)) < 1e-9);

    // inverse iteration vectors span the same lines as the library's
    for (int f = 0; f < dec.size(); ++f) {
      const auto x = oracle::inverse_iteration(h, dec.eigenvalues(f));
      CHECK((h * x - dec.eigenvalues(f) * x).norm() < 1e-8);
      CHECK(std::abs(x.dot(dec.right.col(f))) == doctest::Approx(1.0).epsilon(1e-7));
    }
  }
}

TEST_CASE("reference chain: two near-zero modes, small residuals, conjugation closure") {
  const auto dec = decompose(build_hamiltonian(reference_chain(0.1)));
  CHECK(dec.size() == 220);
  CHECK(dec.max_residual < 1e-9);
  int near_zero = 0;
  for (int f = 0; f < dec.size(); ++f) near_zero += std::abs(dec.eigenvalues(f)) < 1e-6;
  CHECK(near_zero == 2);
  const auto ev = to_vec(dec.eigenvalues);
  std::vector<cplx> conj(ev.size());
  std::transform(ev.begin(), ev.end(), conj.begin(), [](cplx z) { return std::conj(z); });
  CHECK(oracle::greedy_match_distance(ev, conj) < 1e-8);
}

TEST_CASE("eigenvalues sorted by real then imaginary part, vectors phase-fixed") {
  const auto dec = decompose(build_hamiltonian(small_pt(0.5)));
  for (int f = 1; f < dec.size(); ++f) {
    const cplx a = dec.eigenvalues(f - 1), b = dec.eigenvalues(f);
    CHECK((a.real() < b.real() || (a.real() == b.real() && a.imag() <= b.imag())));
  }
  for (int f = 0; f < dec.size(); ++f) {
    Eigen::Index k;
    dec.right.col(f).cwiseAbs().maxCoeff(&k);
    CHECK(dec.right(k, f).imag() == 0.0);
    CHECK(dec.right(k, f).real() > 0.0);
    CHECK(dec.right.col(f).norm() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("plain chain spectrum is chiral: E and -E both present") {
  const auto dec = decompose(build_hamiltonian({36, 0.27, 0.4, 0.0, 0.0, 1, 2}));
  const auto ev = to_vec(dec.eigenvalues);
  std::vector<cplx> neg(ev.size());
  std::transform(ev.begin(), ev.end(), neg.begin(), [](cplx z) { return -z; });
  CHECK(oracle::greedy_match_distance(ev, neg) < 1e-12);
}

TEST_CASE("left vectors are biorthonormal to right vectors away from exceptional points") {
  const auto dec = decompose(build_hamiltonian(small_pt(0.5)), true);
  REQUIRE(dec.is_biorthogonal());
  const ComplexMatrix g = *dec.left * dec.right;
  CHECK((g - ComplexMatrix::Identity(dec.size(), dec.size())).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("a Jordan block is flagged defective instead of failing") {
  ComplexMatrix h(2, 2);
  h << 0.0, 1.0, 0.0, 0.0;
  const auto dec = decompose(h, true);
  CHECK_FALSE(dec.defective.empty());
  CHECK_FALSE(dec.is_biorthogonal());
}

TEST_CASE("edge states of the reference chain") {
  const auto dec = decompose(build_hamiltonian(reference_chain(0.1)));
  const auto reports = find_edge_states(dec);
  REQUIRE(reports.size() == 2);
  CHECK(reports[0].side == EdgeSide::left);
  CHECK(reports[1].side == EdgeSide::right);
  for (const auto& r : reports) {
    CHECK(r.edge_weight > 0.99);
    CHECK(r.edge_weight <= 1.0);
  }
}

TEST_CASE("fully dimerized chain: single-site edge states") {
  const auto dec = decompose(build_hamiltonian({20, 0.0, 0.6, 0.0, 0.0, 1, 2}));
  const auto reports = find_edge_states(dec);
  REQUIRE(reports.size() == 2);
  for (const auto& r : reports) {
    CHECK(r.edge_weight == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.ipr == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(std::abs(reports[0].amplitudes(0)) == doctest::Approx(1.0));
  CHECK(std::abs(reports[1].amplitudes(19)) == doctest::Approx(1.0));
}

TEST_CASE("no zero modes past the gap closing") {
  const auto dec = decompose(build_hamiltonian(reference_chain(0.5)));
  CHECK(find_edge_states(dec).empty());
  CHECK_THROWS_AS(edge_state_on(find_edge_states(dec), EdgeSide::left), ComputationError);
}

TEST_CASE("plain SSH chain in the topological phase has exactly two edge states") {
  for (int n : {40, 60, 100}) {
    const auto reports = find_edge_states(decompose(build_hamiltonian({n, 0.15, 0.45, 0.0, 0.0, 1, 2})));
    CHECK(reports.size() == 2);
  }
}

TEST_CASE("edge overlap") {
  auto plain_of = [](HybridChainSpec s) {
    s.u_re = 0.0;
    s.u_im = 0.0;
    return s;
  };
  const auto hyb01 = decompose(build_hamiltonian(reference_chain(0.1)));
  const auto pl01 = decompose(build_hamiltonian(plain_of(reference_chain(0.1))));
  const double o01 = edge_overlap(hyb01, pl01, EdgeSide::left);
  CHECK(o01 > 0.99);
  CHECK(edge_overlap(hyb01, pl01, EdgeSide::right) > 0.99);
  CHECK(edge_overlap(hyb01, hyb01, EdgeSide::left) == doctest::Approx(1.0).epsilon(1e-12));

  const auto hyb35 = decompose(build_hamiltonian(reference_chain(0.35)));
  const auto pl35 = decompose(build_hamiltonian(plain_of(reference_chain(0.35))));
  const double o35 = edge_overlap(hyb35, pl35, EdgeSide::left, {1e-4, 10, 0.5});
  CHECK(o35 < o01);
  CHECK(o35 > 0.8);

  SUBCASE("vector overlap is symmetric and ignores global phase") {
    const auto& a = find_edge_states(hyb01)[0].amplitudes;
    const auto& b = find_edge_states(pl01)[0].amplitudes;
    CHECK(edge_overlap(a, b) == doctest::Approx(edge_overlap(b, a)).epsilon(1e-14));
    CHECK(edge_overlap(a, cplx(0.0, 1.0) * b) == doctest::Approx(edge_overlap(a, b)).epsilon(1e-14));
  }
  SUBCASE("missing side is named in the error") {
    const auto gapless = decompose(build_hamiltonian(reference_chain(0.5)));
    try {
      edge_overlap(gapless, pl01, EdgeSide::right);
      FAIL("expected an error");
    } catch (const ComputationError& e) {
      CHECK(std::string(e.what()).find("right") != std::string::npos);
    }
  }
}

TEST_CASE("band sweep rows are sorted, complete and thread-count independent") {
  const std::vector<double> vs{0.3, 0.0, 0.15};
  const HybridChainSpec base = small_pt(0.1);
  const auto one = band_sweep(base, vs, 1);
  const auto three = band_sweep(base, vs, 3);
  REQUIRE(one.rows.size() == 3);
  CHECK(one.rows[0].v == 0.0);
  CHECK(one.rows[2].v == 0.3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(one.rows[i].eigenvalues.size() == 40);
    CHECK(one.rows[i].eigenvalues == three.rows[i].eigenvalues);
  }
  CHECK_THROWS_AS(band_sweep(base, {}), ValidationError);
}

TEST_CASE("Hermitian band sweep is real") {
  HybridChainSpec base = reference_chain(0.0);
  base.u_im = 0.0;
  std::vector<double> vs;
  for (int i = 0; i <= 16; ++i) vs.push_back(0.05 * i);
  for (const auto& row : band_sweep(base, vs).rows) CHECK(max_abs_imag(row.eigenvalues) < 1e-10);
}
