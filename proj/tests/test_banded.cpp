// The banded + wrap-corner solver against a dense reference factorization.

#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>
#include <random>

#include "dchain/banded.hpp"

using namespace dchain;

namespace {

// Fill a diagonally dominant random band, mirroring it into a dense copy.
void random_band(std::mt19937_64& rng, int n, int kb, BandedLU& lu,
                 Eigen::MatrixXcd& dense) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  lu.init(n, kb);
  dense = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int d = -kb; d <= kb; ++d) {
      const int j = i + d;
      if (j < 0 || j >= n) continue;
      cplx v(u(rng), u(rng));
      if (d == 0) v += cplx(8.0, 0.0);  // keep the unpivoted LU happy
      lu.at(i, d) = v;
      dense(i, j) = v;
    }
}

Eigen::VectorXcd random_rhs(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::VectorXcd b(n);
  for (int i = 0; i < n; ++i) b(i) = cplx(u(rng), u(rng));
  return b;
}

double relative_residual(const Eigen::MatrixXcd& a, const Eigen::VectorXcd& x,
                         const Eigen::VectorXcd& b) {
  return (a * x - b).norm() / b.norm();
}

}  // namespace

TEST_CASE("banded LU solves a random dominant band", "[banded]") {
  std::mt19937_64 rng(20240811u);
  for (int n : {5, 12, 33}) {
    BandedLU lu;
    Eigen::MatrixXcd dense;
    random_band(rng, n, 2, lu, dense);
    lu.factorize();

    const Eigen::VectorXcd b = random_rhs(rng, n);
    Eigen::VectorXcd x = b;
    lu.solve(x.data());
    REQUIRE(relative_residual(dense, x, b) < 1e-12);
  }
}

TEST_CASE("wrap corners reproduce the dense cyclic solve", "[banded]") {
  std::mt19937_64 rng(77001u);
  const int n = 16;
  const int kb = 2;
  std::uniform_real_distribution<double> u(-1.0, 1.0);

  for (int n_rings : {0, 1, 2}) {
    BandedLU base;
    Eigen::MatrixXcd dense;
    random_band(rng, n, kb, base, dense);

    std::vector<RingEntry> rings;
    for (int k = 0; k < n_rings; ++k) {
      RingEntry r;
      r.i = k;
      r.j = n - 2 + k;  // distance n-2 > kb: a genuine far pair
      r.a_ij = cplx(u(rng), u(rng));
      r.a_ji = cplx(u(rng), u(rng));
      dense(r.i, r.j) = r.a_ij;
      dense(r.j, r.i) = r.a_ji;
      rings.push_back(r);
    }

    CyclicBandedLU cyc;
    cyc.build(std::move(base), rings);

    const Eigen::VectorXcd b = random_rhs(rng, n);
    Eigen::VectorXcd x = b;
    cyc.solve(x.data());
    REQUIRE(relative_residual(dense, x, b) < 1e-12);
  }
}

TEST_CASE("the Cayley-shaped system is solved to roundoff", "[banded]") {
  // I + i tau H with Hermitian banded H and conjugate wrap corners -- the
  // exact shape handed over by the propagator.
  std::mt19937_64 rng(5150u);
  const int n = 20;
  const int kb = 2;
  const double tau = 0.05;
  std::uniform_real_distribution<double> u(-1.0, 1.0);

  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    h(i, i) = u(rng);
    for (int d = 1; d <= kb; ++d) {
      if (i + d >= n) continue;
      const cplx v(u(rng), u(rng));
      h(i, i + d) = v;
      h(i + d, i) = std::conj(v);
    }
  }
  const cplx wrap(u(rng), u(rng));
  const Eigen::MatrixXcd dense =
      Eigen::MatrixXcd::Identity(n, n) + cplx(0.0, tau) * h +
      [&] {
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
        m(0, n - 1) = cplx(0.0, tau) * wrap;
        m(n - 1, 0) = cplx(0.0, tau) * std::conj(wrap);
        return m;
      }();

  BandedLU base;
  base.init(n, kb);
  for (int i = 0; i < n; ++i)
    for (int d = -kb; d <= kb; ++d) {
      const int j = i + d;
      if (j < 0 || j >= n) continue;
      base.at(i, d) = (d == 0 ? cplx(1.0, 0.0) : cplx(0.0, 0.0)) +
                      cplx(0.0, tau) * h(i, j);
    }
  RingEntry ring;
  ring.i = 0;
  ring.j = n - 1;
  ring.a_ij = cplx(0.0, tau) * wrap;
  ring.a_ji = cplx(0.0, tau) * std::conj(wrap);

  CyclicBandedLU cyc;
  cyc.build(std::move(base), {ring});

  const Eigen::VectorXcd b = random_rhs(rng, n);
  Eigen::VectorXcd x = b;
  cyc.solve(x.data());
  REQUIRE(relative_residual(dense, x, b) < 1e-13);
}

TEST_CASE("a vanishing pivot is reported, not divided by", "[banded]") {
  BandedLU lu;
  lu.init(4, 1);
  // row 2 becomes exactly dependent on row 1 -> zero pivot mid-elimination
  lu.at(0, 0) = 2.0;
  lu.at(1, -1) = 1.0;
  lu.at(1, 0) = 1.0;
  lu.at(1, 1) = 3.0;
  lu.at(2, -1) = 1.0;
  lu.at(2, 0) = 3.0;
  lu.at(3, 0) = 1.0;
  REQUIRE_THROWS_AS(lu.factorize(), numeric_error);
}
