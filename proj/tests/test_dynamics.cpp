// The propagator against independent references: a dense matrix exponential,
// a plane-wave (DFT) solution of the decoupled chain, and its own convergence
// order. The dense matrix is transcribed term by term from the equations of
// motion in oracles.hpp, not taken from the production assembly.

#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "dchain/dynamics.hpp"
#include "dchain/model.hpp"
#include "dchain/pulse.hpp"
#include "dchain/state_prep.hpp"
#include "oracles.hpp"

using namespace dchain;

namespace {

// A dense, fully populated state with distinct entries in every slot.
StateVector seeded_state(const ChainConfig& c) {
  StateVector s(c);
  for (int n = 0; n <= c.n_max; ++n)
    for (int p = 0; p < c.n_sites; ++p) {
      s.at_a(p, n) = cplx(0.3 + 0.1 * p - 0.05 * n, 0.2 - 0.07 * p + 0.03 * n);
      s.at_b(p, n) = cplx(-0.25 + 0.06 * p + 0.04 * n, 0.15 + 0.02 * p - 0.06 * n);
    }
  normalize(s);
  return s;
}

double state_distance(const ChainConfig& c, const StateVector& s,
                      const Eigen::VectorXcd& ref) {
  return (oracle::flatten(c, s) - ref).norm();
}

}  // namespace

TEST_CASE("sector assembly matches the equations of motion", "[dynamics]") {
  for (int n_sites : {2, 3, 4, 5}) {
    ChainConfig c;
    c.n_sites = n_sites;
    c.n_max = 2;
    c.t_a = cplx(0.3, 0.1);
    c.t_b = cplx(0.2, -0.05);
    c.g = 0.4;
    c.omega_b = 0.15;
    c.delta_eps = 0.2;

    const Eigen::MatrixXcd dense = oracle::dense_hamiltonian(c, c.g);
    for (const SectorInfo& sec : sectors(c)) {
      const SectorHamiltonian h = assemble_sector(c, sec, c.g);
      REQUIRE(h.dim == sec.dim);
      std::vector<cplx> unit(static_cast<size_t>(sec.dim));
      std::vector<cplx> got(static_cast<size_t>(sec.dim));
      std::vector<cplx> want(static_cast<size_t>(sec.dim));
      for (int k = 0; k < sec.dim; ++k) {
        std::fill(unit.begin(), unit.end(), cplx(0.0, 0.0));
        unit[k] = cplx(1.0, 0.0);
        h.apply(unit.data(), got.data());

        StateVector basis(c);
        scatter_sector(c, basis, sec, unit.data());
        const Eigen::VectorXcd y = dense * oracle::flatten(c, basis);
        const StateVector ysv = oracle::unflatten(c, y);
        gather_sector(c, ysv, sec, want.data());

        for (int i = 0; i < sec.dim; ++i)
          REQUIRE_THAT(std::abs(got[i] - want[i]),
                       Catch::Matchers::WithinAbs(0.0, 1e-14));
      }
    }
  }
}

TEST_CASE("single steps refuse oversized time steps", "[dynamics]") {
  ChainConfig c;
  c.n_sites = 4;
  c.n_max = 1;
  c.t_a = 0.3;
  c.t_b = 0.2;
  c.g = 0.4;
  StateVector s = seeded_state(c);

  const double limit = 0.1 / e_max(c, c.g);
  REQUIRE_THROWS_AS(cn_step(c, s, 2.0 * limit, c.g), std::invalid_argument);
  REQUIRE_THROWS_AS(cn_step(c, s, -0.1, c.g), std::invalid_argument);
  REQUIRE_NOTHROW(cn_step(c, s, 0.9 * limit, c.g));

  REQUIRE_THAT(default_dt(c, c.g) * e_max(c, c.g),
               Catch::Matchers::WithinRel(0.05, 1e-14));
  ChainConfig idle = c;
  idle.t_a = idle.t_b = 0.0;
  idle.g = 0.0;
  REQUIRE_THROWS_AS(default_dt(idle, 0.0), std::invalid_argument);
}

TEST_CASE("the propagator is second order against a matrix exponential", "[dynamics]") {
  ChainConfig c;
  c.n_sites = 4;
  c.n_max = 2;
  c.t_a = cplx(0.3, 0.1);
  c.t_b = cplx(0.2, -0.05);
  c.g = 0.4;
  c.omega_b = 0.15;
  c.delta_eps = 0.2;

  const double t_end = 5.0;
  const Eigen::MatrixXcd h = oracle::dense_hamiltonian(c, c.g);
  const StateVector s0 = seeded_state(c);
  const Eigen::VectorXcd exact = oracle::propagate(h, oracle::flatten(c, s0), t_end);

  auto run = [&](double dt) {
    StateVector s = s0;
    const long long n = std::llround(t_end / dt);
    for (long long k = 0; k < n; ++k) cn_step(c, s, dt, c.g);
    return state_distance(c, s, exact);
  };

  const double err_coarse = run(0.05);
  const double err_fine = run(0.025);
  REQUIRE(err_coarse > 1e-8);  // errors are resolvable, not roundoff noise
  const double ratio = err_coarse / err_fine;
  REQUIRE(ratio > 3.4);
  REQUIRE(ratio < 4.6);

  // and at a small step the trajectory is quantitatively correct
  REQUIRE(run(0.005) < 5e-5);
}

TEST_CASE("norm is conserved to roundoff over many steps", "[dynamics]") {
  ChainConfig c;
  c.n_sites = 6;
  c.n_max = 2;
  c.t_a = cplx(0.25, 0.05);
  c.t_b = 0.15;
  c.g = 0.3;
  c.omega_b = 0.1;
  c.delta_eps = 0.1;

  StateVector s = seeded_state(c);
  const double dt = 0.8 * default_dt(c, c.g);
  for (int k = 0; k < 500; ++k) {
    const double r = cn_step(c, s, dt, c.g);
    REQUIRE(r <= 1e-10);
  }
  REQUIRE(std::abs(norm(s) - 1.0) < 1e-13);
}

TEST_CASE("photon sectors never mix", "[dynamics]") {
  ChainConfig c;
  c.n_sites = 5;
  c.n_max = 3;
  c.t_a = 0.3;
  c.t_b = 0.2;
  c.g = 0.5;
  c.omega_b = 0.2;

  GaussianSpec pack;
  pack.u = 2.0;
  pack.sigma = 1.0;
  StateVector s = fock_product_state(c, pack, pack, cplx(1.0, 0.0),
                                     cplx(0.0, 0.0), 1);
  // occupied: pair sector n = 1 only (levels a:1 and b:2)
  const double dt = default_dt(c, c.g);
  for (int k = 0; k < 200; ++k) cn_step(c, s, dt, c.g);

  for (int p = 0; p < c.n_sites; ++p) {
    REQUIRE(s.at_a(p, 0) == cplx(0.0, 0.0));
    REQUIRE(s.at_a(p, 2) == cplx(0.0, 0.0));
    REQUIRE(s.at_a(p, 3) == cplx(0.0, 0.0));
    REQUIRE(s.at_b(p, 0) == cplx(0.0, 0.0));
    REQUIRE(s.at_b(p, 1) == cplx(0.0, 0.0));
    REQUIRE(s.at_b(p, 3) == cplx(0.0, 0.0));
  }
  const auto norms = sector_norms(c, s);
  REQUIRE_THAT(norms[2], Catch::Matchers::WithinAbs(1.0, 1e-12));
}

TEST_CASE("a decoupled band follows the plane-wave solution", "[dynamics]") {
  ChainConfig c;
  c.n_sites = 32;
  c.n_max = 1;
  c.t_a = cplx(0.3, 0.1);
  c.t_b = cplx(0.2, -0.05);
  c.g = 0.0;
  c.omega_b = 0.0;
  c.delta_eps = 0.2;

  GaussianSpec pack;
  pack.u = 16.0;
  pack.sigma = 3.0;
  pack.k = 0.9;
  const StateVector s0 = fock_product_state(c, pack, pack, cplx(1.0, 0.0),
                                            cplx(0.0, 0.0), 0);

  const double t_end = 2.0;
  const double dt = 1e-4;
  StateVector s = s0;
  for (long long k = 0; k < std::llround(t_end / dt); ++k) cn_step(c, s, dt, c.g);

  // exact evolution of the upper band: diagonal in the plane-wave basis with
  // dispersion delta_eps + 2 Re(t_a e^{i theta_k})
  const int nn = c.n_sites;
  std::vector<cplx> mode(nn, cplx(0.0, 0.0));
  for (int k = 0; k < nn; ++k)
    for (int p = 0; p < nn; ++p)
      mode[k] += s0.at_a(p, 0) *
                 std::polar(1.0, -2.0 * std::numbers::pi * k * p / nn);
  double err = 0.0;
  for (int p = 0; p < nn; ++p) {
    cplx amp(0.0, 0.0);
    for (int k = 0; k < nn; ++k) {
      const double theta = 2.0 * std::numbers::pi * k / nn;
      const double eps_k =
          c.delta_eps + 2.0 * std::real(c.t_a * std::polar(1.0, theta));
      amp += mode[k] * std::polar(1.0 / nn, -eps_k * t_end) *
             std::polar(1.0, 2.0 * std::numbers::pi * k * p / nn);
    }
    err = std::max(err, std::abs(s.at_a(p, 0) - amp));
    REQUIRE(std::abs(s.at_b(p, 1)) == 0.0);
  }
  REQUIRE(err < 1e-8);
}

TEST_CASE("a constant envelope reproduces the plain run bit for bit", "[dynamics]") {
  ChainConfig c;
  c.n_sites = 8;
  c.n_max = 2;
  c.t_a = 0.3;
  c.t_b = 0.2;
  c.g = 0.35;
  c.omega_b = 0.1;

  EvolutionPlan bare;
  bare.dt = default_dt(c, c.g);
  bare.t_end = 3.0;

  EvolutionPlan wrapped = bare;
  Envelope env;
  env.shape = Envelope::Shape::constant;
  env.peak = c.g;
  wrapped.coupling = env;

  StateVector s1 = seeded_state(c);
  StateVector s2 = s1;
  const TrajectorySummary sum1 = evolve(c, s1, bare);
  const TrajectorySummary sum2 = evolve(c, s2, wrapped);
  REQUIRE(sum1.n_steps == sum2.n_steps);
  for (size_t i = 0; i < s1.a.size(); ++i) {
    REQUIRE(s1.a[i] == s2.a[i]);
    REQUIRE(s1.b[i] == s2.b[i]);
  }
}

TEST_CASE("time-dependent coupling keeps second order via midpoint sampling", "[dynamics]") {
  ChainConfig c;
  c.n_sites = 3;
  c.n_max = 1;
  c.t_a = cplx(0.2, 0.05);
  c.t_b = 0.1;
  c.g = 0.0;  // the envelope overrides the static coupling
  c.omega_b = 0.3;
  c.delta_eps = 0.2;

  Envelope env;
  env.shape = Envelope::Shape::raised_cosine;
  env.peak = 0.5;
  env.start = 0.5;
  env.duration = 3.0;

  const double t_end = 4.0;
  const StateVector s0 = seeded_state(c);

  // reference: compose midpoint-sampled exact exponentials at a far finer step
  const double dt_ref = t_end / 16384.0;
  Eigen::VectorXcd ref = oracle::flatten(c, s0);
  for (int k = 0; k < 16384; ++k) {
    const double g_mid = coupling_at(env, (k + 0.5) * dt_ref);
    ref = oracle::propagate(oracle::dense_hamiltonian(c, g_mid), ref, dt_ref);
  }

  auto run = [&](double dt) {
    ChainConfig cc = c;
    StateVector s = s0;
    EvolutionPlan plan;
    plan.dt = dt;
    plan.t_end = t_end;
    plan.coupling = env;
    evolve(cc, s, plan);
    return state_distance(c, s, ref);
  };

  const double err_coarse = run(0.08);
  const double err_fine = run(0.04);
  REQUIRE(err_coarse > 1e-9);
  const double ratio = err_coarse / err_fine;
  REQUIRE(ratio > 3.3);
  REQUIRE(ratio < 4.7);
}

TEST_CASE("the trajectory driver samples first, strided, and final frames", "[dynamics]") {
  ChainConfig c;
  c.n_sites = 4;
  c.n_max = 1;
  c.t_a = 0.3;
  c.t_b = 0.2;
  c.g = 0.25;

  StateVector s = seeded_state(c);
  EvolutionPlan plan;
  plan.dt = 0.1;
  plan.t_end = 1.0;
  plan.sample_stride = 3;

  std::vector<double> times;
  const TrajectorySummary sum =
      evolve(c, s, plan, [&](const ObservableFrame& f, const StateVector&) {
        times.push_back(f.time);
      });

  REQUIRE(sum.n_steps == 10);
  REQUIRE(sum.t_final == s.time);
  REQUIRE(static_cast<long long>(times.size()) == sum.n_samples);
  REQUIRE(times.size() == 5);  // steps 0, 3, 6, 9, 10
  REQUIRE(times.front() == 0.0);
  REQUIRE_THAT(times[1], Catch::Matchers::WithinRel(0.3, 1e-12));
  REQUIRE_THAT(times.back(), Catch::Matchers::WithinRel(1.0, 1e-12));
  REQUIRE(sum.max_norm_drift < 1e-13);
  REQUIRE(sum.max_residual <= 1e-10);

  EvolutionPlan bad = plan;
  bad.t_end = -1.0;
  StateVector s2 = seeded_state(c);
  REQUIRE_THROWS_AS(evolve(c, s2, bad), std::invalid_argument);
  bad = plan;
  bad.sample_stride = 0;
  REQUIRE_THROWS_AS(evolve(c, s2, bad), std::invalid_argument);
}
