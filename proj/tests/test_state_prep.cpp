// Initial-state constructors: packet shapes, photon weights, and the dressed
// eigenstates checked against a dense matrix built independently of the
// production assembly.

#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dchain/model.hpp"
#include "dchain/observables.hpp"
#include "dchain/state_prep.hpp"
#include "oracles.hpp"

using namespace dchain;

TEST_CASE("gaussian packet amplitudes and guards", "[state_prep]") {
  GaussianSpec spec;
  spec.u = 3.5;
  spec.sigma = 1.25;
  spec.k = 0.7;
  const auto amps = gaussian_amplitudes(spec, 8);
  REQUIRE(amps.size() == 8);
  for (int p = 0; p < 8; ++p) {
    const double d = (p - spec.u) / spec.sigma;
    REQUIRE_THAT(std::abs(amps[p]),
                 Catch::Matchers::WithinRel(std::exp(-d * d), 1e-14));
    REQUIRE_THAT(std::arg(amps[p] * std::polar(1.0, -spec.k * p)),
                 Catch::Matchers::WithinAbs(0.0, 1e-14));
  }

  GaussianSpec bad = spec;
  bad.sigma = 0.0;
  REQUIRE_THROWS_AS(gaussian_amplitudes(bad, 8), std::invalid_argument);
  bad = spec;
  bad.u = 8.0;
  REQUIRE_THROWS_AS(gaussian_amplitudes(bad, 8), std::invalid_argument);
  bad = spec;
  bad.u = -0.1;
  REQUIRE_THROWS_AS(gaussian_amplitudes(bad, 8), std::invalid_argument);
  REQUIRE_THROWS_AS(gaussian_amplitudes(spec, 0), std::invalid_argument);
}

TEST_CASE("coherent amplitudes in log space", "[state_prep]") {
  // frozen high-precision reference for the peak weight of a mean-25 field
  const double w25 = poisson_amplitude(25.0, 25);
  REQUIRE_THAT(w25 * w25,
               Catch::Matchers::WithinRel(0.079522951468065442, 1e-13));
  REQUIRE(poisson_amplitude(0.0, 0) == 1.0);
  REQUIRE(poisson_amplitude(0.0, 3) == 0.0);
  REQUIRE_THROWS_AS(poisson_amplitude(-1.0, 0), std::invalid_argument);
  REQUIRE_THROWS_AS(poisson_amplitude(1.0, -1), std::invalid_argument);

  // mass beyond the truncation level, against an exact upper-tail sum
  REQUIRE_THAT(poisson_tail_mass(25.0, 60),
               Catch::Matchers::WithinAbs(8.5642283257873413e-10, 1e-12));
  REQUIRE(poisson_tail_mass(25.0, 0) > 0.99);
  REQUIRE(suggested_n_max(25.0) == 55);
  REQUIRE(suggested_n_max(0.0) == 1);
  REQUIRE(poisson_tail_mass(25.0, suggested_n_max(25.0)) < 1e-6);
}

TEST_CASE("fock product state places all weight where asked", "[state_prep]") {
  ChainConfig c;
  c.n_sites = 16;
  c.n_max = 2;
  c.t_a = 0.008;
  c.t_b = 0.0008;
  c.g = 0.0125;
  GaussianSpec pack;
  pack.u = 8.0;
  pack.sigma = 2.0;

  const StateVector s = fock_product_state(c, pack, pack, cplx(1.0, 0.0),
                                           cplx(0.0, 0.0), 1);
  REQUIRE_THAT(norm(s), Catch::Matchers::WithinRel(1.0, 1e-14));
  const auto dist = photon_distribution(c, s);
  REQUIRE(dist.size() == 3);
  REQUIRE(dist[0] == 0.0);
  REQUIRE_THAT(dist[1], Catch::Matchers::WithinRel(1.0, 1e-14));
  REQUIRE(dist[2] == 0.0);
  for (int p = 0; p < c.n_sites; ++p) REQUIRE(s.at_b(p, 1) == cplx(0.0, 0.0));

  REQUIRE_THROWS_AS(
      fock_product_state(c, pack, pack, cplx(1.0, 0.0), cplx(0.0, 0.0), 3),
      std::invalid_argument);
  REQUIRE_THROWS_AS(
      fock_product_state(c, pack, pack, cplx(0.0, 0.0), cplx(0.0, 0.0), 0),
      std::invalid_argument);
}

TEST_CASE("entangled state balances the two bands exactly", "[state_prep]") {
  ChainConfig c;
  c.n_sites = 32;
  c.n_max = 2;
  c.t_a = 0.008;
  c.t_b = 0.0008;
  c.g = 0.0125;

  const StateVector plus = entangled_fock_state(c, 0, 16.0, 3.0, +1);
  const auto w = inversion_density(c, plus);
  double total = 0.0;
  for (double v : w) total += v;
  REQUIRE(total == 0.0);  // identical magnitudes site by site, exactly

  const auto dist = photon_distribution(c, plus);
  REQUIRE_THAT(dist[0], Catch::Matchers::WithinRel(0.5, 1e-14));
  REQUIRE_THAT(dist[1], Catch::Matchers::WithinRel(0.5, 1e-14));
  REQUIRE(dist[2] == 0.0);

  const StateVector minus = entangled_fock_state(c, 0, 16.0, 3.0, -1);
  for (int p = 0; p < c.n_sites; ++p) {
    REQUIRE(minus.at_a(p, 0) == plus.at_a(p, 0));
    REQUIRE(minus.at_b(p, 1) == -plus.at_b(p, 1));
  }

  REQUIRE_THROWS_AS(entangled_fock_state(c, 2, 16.0, 3.0, +1),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(entangled_fock_state(c, 0, 16.0, 3.0, 0),
                    std::invalid_argument);
}

TEST_CASE("coherent product matches the renormalized Poisson law", "[state_prep]") {
  ChainConfig c;
  c.n_sites = 4;
  c.n_max = 12;
  c.t_a = 0.01;
  c.t_b = 0.001;
  c.g = 0.02;
  GaussianSpec pack;
  pack.u = 2.0;
  pack.sigma = 1.0;

  const double mean = 3.0;
  const StateVector s = coherent_product_state(c, pack, pack, cplx(1.0, 0.0),
                                               cplx(0.0, 0.0), mean);
  const auto dist = photon_distribution(c, s);

  double kept = 0.0;
  for (int n = 0; n <= c.n_max; ++n) kept += oracle::poisson_pmf(mean, n);
  for (int n = 0; n <= c.n_max; ++n)
    REQUIRE_THAT(dist[n], Catch::Matchers::WithinRel(
                              oracle::poisson_pmf(mean, n) / kept, 1e-12));
}

TEST_CASE("dressed eigenstates diagonalize the untilted chain", "[state_prep]") {
  ChainConfig c;
  c.n_sites = 16;
  c.n_max = 1;
  c.t_a = 0.008;
  c.t_b = 0.0008;
  c.g = 0.05;
  c.omega_b = 0.0;
  c.delta_eps = 0.0;

  const double phi = 2.0 * std::numbers::pi * 3.0 / c.n_sites;
  const Eigen::MatrixXcd h = oracle::dense_hamiltonian(c, c.g);
  const DressedBand band = dressed_band(std::real(c.t_a), std::real(c.t_b),
                                        c.g, 0, phi);

  for (int branch : {1, 2}) {
    const StateVector s = dressed_eigenstate(c, 0, branch, phi);
    REQUIRE_THAT(norm(s), Catch::Matchers::WithinRel(1.0, 1e-14));
    const Eigen::VectorXcd x = oracle::flatten(c, s);
    const double nu = (branch == 1) ? band.nu1 : band.nu2;
    REQUIRE((h * x - nu * x).norm() < 1e-12);
  }

  // the Gaussian window keeps normalization but is no longer an eigenstate
  GaussianSpec window;
  window.u = 8.0;
  window.sigma = 2.5;
  const StateVector win = dressed_eigenstate(c, 0, 1, phi, window);
  REQUIRE_THAT(norm(win), Catch::Matchers::WithinRel(1.0, 1e-14));

  REQUIRE_THROWS_AS(dressed_eigenstate(c, 1, 1, phi), std::invalid_argument);
  REQUIRE_THROWS_AS(dressed_eigenstate(c, 0, 3, phi), std::invalid_argument);
  ChainConfig cc = c;
  cc.t_a = cplx(0.008, 0.002);
  REQUIRE_THROWS_AS(dressed_eigenstate(cc, 0, 1, phi), std::invalid_argument);
}
