#pragma once
// Direct solver for complex banded systems with a few far off-band entries
// (periodic wrap-around corners). The band is factored by unpivoted LU --
// every matrix we feed it is of the form I + (i dt/2) H with a step guard
// keeping the off-diagonal part small, so the diagonal dominates and pivoting
// is unnecessary. Corners are folded in as rank-1 updates via the
// Sherman-Morrison-Woodbury identity: each ring costs one extra banded solve
// at factorization time and a short linear combination per solve afterwards.

#include <cmath>
#include <complex>
#include <vector>

#include "dchain/model.hpp"

namespace dchain {

// ---- plain banded LU ----

// Diagonal-major storage: ab[(d + kb) * n + i] = A[i][i + d], |d| <= kb.
// Entries outside the matrix are kept at zero and never touched.
struct BandedLU {
  int n = 0;
  int kb = 0;
  std::vector<cplx> ab;

  void init(int n_, int kb_) {
    n = n_;
    kb = kb_;
    ab.assign(static_cast<size_t>(2 * kb + 1) * n, cplx(0.0, 0.0));
  }

  cplx& at(int i, int d) { return ab[static_cast<size_t>(d + kb) * n + i]; }
  cplx at(int i, int d) const { return ab[static_cast<size_t>(d + kb) * n + i]; }

  // In-place LU, multipliers stored in the sub-diagonals.
  void factorize() {
    for (int k = 0; k < n; ++k) {
      const cplx piv = at(k, 0);
      if (std::abs(piv) < 1e-12)
        throw numeric_error("banded LU: vanishing pivot (system not diagonally dominant)");
      const int last = std::min(k + kb, n - 1);
      for (int i = k + 1; i <= last; ++i) {
        const cplx m = at(i, k - i) / piv;
        at(i, k - i) = m;
        for (int j = k + 1; j <= last; ++j) at(i, j - i) -= m * at(k, j - k);
      }
    }
  }

  // Solves A x = b in place (factorize() must have run).
  void solve(cplx* x) const {
    for (int k = 0; k < n; ++k) {
      const int last = std::min(k + kb, n - 1);
      for (int i = k + 1; i <= last; ++i) x[i] -= at(i, k - i) * x[k];
    }
    for (int k = n - 1; k >= 0; --k) {
      const int last = std::min(k + kb, n - 1);
      cplx acc = x[k];
      for (int j = k + 1; j <= last; ++j) acc -= at(k, j - k) * x[j];
      x[k] = acc / at(k, 0);
    }
  }
};

// ---- banded + wrap corners ----

// One periodic ring contributes the far pair A[i][j] = a_ij, A[j][i] = a_ji
// with j - i > kb. It is absorbed as A = A' + u w^T with
//   u = g e_i + a_ji e_j,   w = e_i + (a_ij / g) e_j,   g = -A[i][i],
// which zeroes both far entries and perturbs only the two diagonals of A'
// (A'[i][i] doubles, so dominance improves rather than degrades).
struct RingEntry {
  int i = 0;
  int j = 0;
  cplx a_ij;
  cplx a_ji;
};

struct CyclicBandedLU {
  BandedLU lu;
  int rank = 0;
  std::vector<int> wi, wj;   // sparse structure of each w_k
  std::vector<cplx> wc;      // coefficient of e_{wj} in w_k
  std::vector<cplx> z;       // z[k*n + i] = (A'^{-1} u_k)_i
  std::vector<cplx> cap;     // capacitance I + W^T Z, rank x rank row-major

  // Takes ownership of the assembled band (far entries NOT stored in it).
  void build(BandedLU&& base, const std::vector<RingEntry>& rings) {
    if (rings.size() > 2)
      throw std::invalid_argument("CyclicBandedLU: at most two wrap rings supported");
    lu = std::move(base);
    rank = static_cast<int>(rings.size());
    wi.resize(rank);
    wj.resize(rank);
    wc.resize(rank);
    z.assign(static_cast<size_t>(rank) * lu.n, cplx(0.0, 0.0));
    cap.assign(static_cast<size_t>(rank) * rank, cplx(0.0, 0.0));

    std::vector<cplx> gam(rank);
    for (int k = 0; k < rank; ++k) {
      const RingEntry& r = rings[k];
      gam[k] = -lu.at(r.i, 0);
      wi[k] = r.i;
      wj[k] = r.j;
      wc[k] = r.a_ij / gam[k];
      lu.at(r.i, 0) -= gam[k];
      lu.at(r.j, 0) -= r.a_ij * r.a_ji / gam[k];
    }
    lu.factorize();
    for (int k = 0; k < rank; ++k) {
      cplx* zk = z.data() + static_cast<size_t>(k) * lu.n;
      zk[wi[k]] = gam[k];
      zk[wj[k]] = rings[k].a_ji;
      lu.solve(zk);
    }
    for (int k = 0; k < rank; ++k)
      for (int l = 0; l < rank; ++l) {
        const cplx* zl = z.data() + static_cast<size_t>(l) * lu.n;
        cap[static_cast<size_t>(k) * rank + l] =
            (k == l ? 1.0 : 0.0) + zl[wi[k]] + wc[k] * zl[wj[k]];
      }
  }

  void solve(cplx* x) const {
    lu.solve(x);
    if (rank == 0) return;
    cplx t0, t1;
    if (rank == 1) {
      t0 = (x[wi[0]] + wc[0] * x[wj[0]]) / cap[0];
      t1 = cplx(0.0, 0.0);
    } else {
      const cplx s0 = x[wi[0]] + wc[0] * x[wj[0]];
      const cplx s1 = x[wi[1]] + wc[1] * x[wj[1]];
      const cplx det = cap[0] * cap[3] - cap[1] * cap[2];
      if (std::abs(det) < 1e-12)
        throw numeric_error("banded LU: singular wrap capacitance");
      t0 = (s0 * cap[3] - cap[1] * s1) / det;
      t1 = (cap[0] * s1 - s0 * cap[2]) / det;
    }
    const cplx* z0 = z.data();
    const cplx* z1 = z.data() + (rank > 1 ? lu.n : 0);
    for (int i = 0; i < lu.n; ++i) {
      x[i] -= t0 * z0[i];
      if (rank > 1) x[i] -= t1 * z1[i];
    }
  }
};

}  // namespace dchain
