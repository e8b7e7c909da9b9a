#include <doctest.h>

#include <cmath>
#include <random>

#include "sshlab/dynamics.hpp"
#include "sshlab/error.hpp"

using namespace sshlab;

namespace {

ComplexVector random_state(int n, unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> nd;
  ComplexVector v(n);
  for (int i = 0; i < n; ++i) v(i) = cplx(nd(gen), nd(gen));
  return v.normalized();
}

double max_deviation(const std::vector<ComplexVector>& a, const std::vector<ComplexVector>& b) {
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, (a[k] - b[k]).cwiseAbs().maxCoeff());
  return worst;
}

}  // namespace

TEST_CASE("uniform time grid") {
  const auto t = uniform_times(10.0, 5);
  REQUIRE(t.size() == 5);
  CHECK(t.front() == 0.0);
  CHECK(t.back() == 10.0);
  CHECK(t[1] == doctest::Approx(2.5));
  CHECK_THROWS_AS(uniform_times(10.0, 1), ValidationError);
}

TEST_CASE("Hermitian evolution conserves the norm") {
  const HybridChainSpec spec{40, 0.3, 0.4, -0.3, 0.0, 19, 22};
  const auto out = propagate_expm(build_hamiltonian(spec), random_state(40, 1u), uniform_times(200.0, 401));
  for (const auto& psi : out) CHECK(std::abs(psi.norm() - 1.0) < 1e-10);
}

TEST_CASE("single lossy site decays as exp(-2 u_im t)") {
  ComplexMatrix h = ComplexMatrix::Zero(2, 2);
  h(0, 0) = cplx(-0.3, -0.1);
  h(1, 1) = cplx(-0.3, 0.1);
  ComplexVector psi0(2);
  psi0 << 1.0, 0.0;
  const auto t = uniform_times(20.0, 41);
  const auto out = propagate_expm(h, psi0, t);
  for (std::size_t k = 0; k < t.size(); ++k) {
    CHECK(std::norm(out[k](0)) == doctest::Approx(std::exp(-0.2 * t[k])).epsilon(1e-12));
    CHECK(std::abs(out[k](1)) == 0.0);
  }
}

TEST_CASE("step splitting kicks in for coarse grids and stays accurate") {
  const HybridChainSpec spec{40, 0.5, 0.4, -0.3, 0.1, 19, 22};
  const auto h = build_hamiltonian(spec);
  const auto psi0 = random_state(40, 2u);
  PropagationInfo coarse_info;
  const auto coarse = propagate_expm(h, psi0, uniform_times(50.0, 6), &coarse_info);
  CHECK(coarse_info.substeps > 1);
  const auto fine = propagate_expm(h, psi0, uniform_times(50.0, 501));
  for (int k = 0; k < 6; ++k) CHECK((coarse[k] - fine[k * 100]).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("non-uniform grids and non-normalised states are rejected") {
  const auto h = build_hamiltonian({4, 0.1, 0.4, 0.0, 0.0, 1, 2});
  ComplexVector psi0 = ComplexVector::Zero(4);
  psi0(0) = 1.0;
  CHECK_THROWS_AS(propagate_expm(h, psi0, {0.0, 1.0, 3.0}), ValidationError);
  CHECK_THROWS_AS(propagate_expm(h, psi0, {1.0, 2.0}), ValidationError);
  CHECK_THROWS_AS(propagate_expm(h, 2.0 * psi0, {0.0, 1.0}), ValidationError);
}

TEST_CASE("spectral expansion reproduces the propagator") {
  const auto times = uniform_times(50.0, 201);
  SUBCASE("Hermitian") {
    const auto h = build_hamiltonian({40, 0.2, 0.4, -0.3, 0.0, 19, 22});
    const auto psi0 = random_state(40, 3u);
    CHECK(max_deviation(propagate_spectral(decompose(h, true), psi0, times), propagate_expm(h, psi0, times)) <
          1e-10);
  }
  SUBCASE("random non-Hermitian chains") {
    std::mt19937 gen(4u);
    std::uniform_real_distribution<double> ud(0.05, 0.8);
    for (int trial = 0; trial < 6; ++trial) {
      const int n = 20 + 8 * trial;
      const int mid = n / 2;
      const HybridChainSpec spec{n, ud(gen), 0.4, -0.3, 0.1 * ud(gen), mid - 3, mid + 2};
      const auto h = build_hamiltonian(spec);
      const auto dec = decompose(h, true);
      if (!dec.is_biorthogonal()) continue;
      const auto psi0 = random_state(n, 10u + trial);
      CAPTURE(spec.v);
      CHECK(max_deviation(propagate_spectral(dec, psi0, times), propagate_expm(h, psi0, times)) < 1e-6);
    }
  }
  SUBCASE("t = 0 returns the initial state") {
    const auto h = build_hamiltonian({40, 0.5, 0.4, -0.3, 0.1, 19, 22});
    const auto psi0 = random_state(40, 5u);
    CHECK((propagate_spectral(decompose(h, true), psi0, {0.0})[0] - psi0).cwiseAbs().maxCoeff() < 1e-10);
  }
  SUBCASE("refuses without usable left vectors") {
    const auto h = build_hamiltonian({20, 0.5, 0.4, -0.3, 0.1, 9, 12});
    CHECK_THROWS_AS(propagate_spectral(decompose(h, false), random_state(20, 6u), times), DefectiveSpectrumError);
    ComplexMatrix jordan(2, 2);
    jordan << 0.0, 1.0, 0.0, 0.0;
    ComplexVector e0(2);
    e0 << 1.0, 0.0;
    CHECK_THROWS_AS(propagate_spectral(decompose(jordan, true), e0, times), DefectiveSpectrumError);
  }
}

TEST_CASE("group velocity") {
  CHECK(max_group_velocity(0.5, 0.4) == doctest::Approx(0.8));
  CHECK(max_group_velocity(0.1, 0.4) == doctest::Approx(0.2));
  CHECK(max_group_velocity(0.5, 0.0) == 0.0);
}

TEST_CASE("plain SSH quench: mirror-image light cones and the analytic front speed") {
  const HybridChainSpec plain{80, 0.1, 0.4, 0.0, 0.0, 1, 2};
  const auto left = run_quench(make_quench(plain, 0.5, EdgeSide::left));
  const auto right = run_quench(make_quench(plain, 0.5, EdgeSide::right));
  REQUIRE(left.n_times() == right.n_times());
  CHECK((left.density - right.density.rowwise().reverse()).cwiseAbs().maxCoeff() < 1e-10);
  for (double n : left.norm_series) CHECK(std::abs(n - 1.0) < 1e-10);

  const double expected = max_group_velocity(0.5, 0.4);
  CHECK(std::abs(front_speed(left) - expected) / expected < 0.1);
  CHECK(std::abs(front_speed(right) - expected) / expected < 0.1);
}

TEST_CASE("disconnected dimers do not transport") {
  QuenchProtocol p;
  p.pre_spec = {40, 0.1, 0.4, 0.0, 0.0, 1, 2};
  p.post_spec = {40, 0.5, 0.0, 0.0, 0.0, 1, 2};
  p.initial_side = EdgeSide::left;
  p.t_max = 100.0;
  p.n_time_steps = 201;
  const auto cone = run_quench(p);
  CHECK_THROWS_AS(front_speed(cone), NonTransportingError);
}

TEST_CASE("quench protocol validation") {
  auto p = make_quench(reference_chain(0.1), 0.5, EdgeSide::left);
  CHECK(p.t_max > 0.0);
  p.post_spec.n_sites = 40;
  CHECK_THROWS_AS(p.validate(), ValidationError);
  CHECK_THROWS_AS(run_quench(make_quench(reference_chain(0.5), 0.1, EdgeSide::left)), ComputationError);
}

TEST_CASE("reflection signal on a synthetic light cone") {
  LightCone cone;
  const int nt = 11;
  cone.times = uniform_times(10.0, nt);
  cone.density = Eigen::MatrixXd::Zero(nt, 4);
  const double p[nt] = {1.0, 0.5, 0.001, 0.2, 0.0, 0.0, 0.0, 0.0, 0.05, 0.3, 0.1};
  for (int k = 0; k < nt; ++k) cone.density(k, 0) = p[k];
  cone.norm_series.assign(nt, 1.0);

  const auto sig = reflection_signal(cone, 1);
  CHECK(sig.series.size() == nt);
  CHECK(sig.dip_interval.first == 4.0);
  CHECK(sig.dip_interval.second == 7.0);
  CHECK(sig.reemergence_peak == 0.3);

  cone.density.col(1).setConstant(0.5);
  CHECK_THROWS_AS(reflection_signal(cone, 2), NonTransportingError);
  CHECK_THROWS_AS(reflection_signal(cone, 9), ValidationError);
}
