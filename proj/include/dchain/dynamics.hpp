#pragma once
// Time evolution. The equations of motion split into closed sectors (see
// model.hpp); each sector Hamiltonian, written on the interleaved slice
// [a(0,n), b(0,n+1), a(1,n), b(1,n+1), ...], is Hermitian and banded with
// half-bandwidth 2 plus two wrap-around corners from the periodic ring.
// A step applies the Cayley form of Crank-Nicolson,
//   (1 + i dt/2 H) psi(t+dt) = (1 - i dt/2 H) psi(t),
// which is unconditionally stable and exactly norm-preserving for Hermitian
// H, so the time step is chosen for accuracy alone (dt * E_max <= 0.1).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dchain/banded.hpp"
#include "dchain/model.hpp"
#include "dchain/observables.hpp"
#include "dchain/pulse.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dchain {

// ---- sector Hamiltonian ----

// Far (wrap) entry H[i][j] = v with j - i > 2; H[j][i] = conj(v) implied.
struct CornerEntry {
  int i = 0;
  int j = 0;
  cplx v;
};

// Hermitian banded matrix: diag is real, up1[i] = H[i][i+1], up2[i] = H[i][i+2],
// lower triangle implied by symmetry. Wrap entries whose distance fits inside
// the band (small rings) are folded into up1/up2 at assembly time.
struct SectorHamiltonian {
  int dim = 0;
  std::vector<double> diag;
  std::vector<cplx> up1, up2;
  std::vector<CornerEntry> corners;

  void apply(const cplx* x, cplx* y) const {
    for (int i = 0; i < dim; ++i) {
      cplx acc = diag[i] * x[i];
      if (i + 1 < dim) acc += up1[i] * x[i + 1];
      if (i >= 1) acc += std::conj(up1[i - 1]) * x[i - 1];
      if (i + 2 < dim) acc += up2[i] * x[i + 2];
      if (i >= 2) acc += std::conj(up2[i - 2]) * x[i - 2];
      y[i] = acc;
    }
    for (const CornerEntry& e : corners) {
      y[e.i] += e.v * x[e.j];
      y[e.j] += std::conj(e.v) * x[e.i];
    }
  }
};

namespace detail {

inline void add_wrap(SectorHamiltonian& h, int i, int j, cplx v) {
  const int d = j - i;
  if (d == 1)
    h.up1[i] += v;
  else if (d == 2)
    h.up2[i] += v;
  else
    h.corners.push_back({i, j, v});
}

}  // namespace detail

// Builds the Hamiltonian of one sector with instantaneous coupling g_now.
// Full sectors couple a(.,n) to b(.,n+1) with strength g_now*sqrt(n+1); the
// orphan (b, 0 photons) and top (a, n_max photons) blocks are bare rings.
inline SectorHamiltonian assemble_sector(const ChainConfig& c, const SectorInfo& sec,
                                         double g_now) {
  SectorHamiltonian h;
  h.dim = sec.dim;
  h.diag.assign(static_cast<size_t>(h.dim), 0.0);
  h.up1.assign(static_cast<size_t>(h.dim), cplx(0.0, 0.0));
  h.up2.assign(static_cast<size_t>(h.dim), cplx(0.0, 0.0));
  const int N = c.n_sites;
  if (sec.has_a && sec.has_b) {
    const double g_eff = g_now * std::sqrt(sec.n + 1.0);
    for (int p = 0; p < N; ++p) {
      h.diag[2 * p] = c.delta_eps - c.omega_b * p;
      h.diag[2 * p + 1] = -c.delta_eps - c.omega_b * p;
      h.up1[2 * p] = -g_eff;
      if (p + 1 < N) {
        h.up2[2 * p] = c.t_a;
        h.up2[2 * p + 1] = c.t_b;
      }
    }
    detail::add_wrap(h, 0, 2 * (N - 1), std::conj(c.t_a));
    detail::add_wrap(h, 1, 2 * N - 1, std::conj(c.t_b));
  } else {
    const cplx t = sec.has_a ? c.t_a : c.t_b;
    const double e0 = sec.has_a ? c.delta_eps : -c.delta_eps;
    for (int p = 0; p < N; ++p) {
      h.diag[p] = e0 - c.omega_b * p;
      if (p + 1 < N) h.up1[p] = t;
    }
    detail::add_wrap(h, 0, N - 1, std::conj(t));
  }
  return h;
}

// ---- Cayley factorization ----

// Factored A = 1 + i (dt/2) H, reusable across steps while H is unchanged.
struct CayleyFactor {
  double tau = 0.0;  // dt / 2
  CyclicBandedLU lu;

  void build(const SectorHamiltonian& h, double dt) {
    tau = 0.5 * dt;
    const cplx itau(0.0, tau);
    BandedLU band;
    band.init(h.dim, 2);
    for (int i = 0; i < h.dim; ++i) {
      band.at(i, 0) = 1.0 + itau * h.diag[i];
      if (i + 1 < h.dim) {
        band.at(i, 1) = itau * h.up1[i];
        band.at(i + 1, -1) = itau * std::conj(h.up1[i]);
      }
      if (i + 2 < h.dim) {
        band.at(i, 2) = itau * h.up2[i];
        band.at(i + 2, -2) = itau * std::conj(h.up2[i]);
      }
    }
    std::vector<RingEntry> rings;
    rings.reserve(h.corners.size());
    for (const CornerEntry& e : h.corners)
      rings.push_back({e.i, e.j, itau * e.v, itau * std::conj(e.v)});
    lu.build(std::move(band), rings);
  }
};

namespace detail {

// One Crank-Nicolson step on a sector slice. Returns the relative residual
// ||A x' - rhs|| / ||rhs|| when check is set, -1 otherwise.
inline double step_slice(const SectorHamiltonian& h, const CayleyFactor& f, cplx* x,
                         cplx* work, cplx* rhs, bool check) {
  const int m = h.dim;
  const cplx itau(0.0, f.tau);
  h.apply(x, work);
  for (int i = 0; i < m; ++i) rhs[i] = x[i] - itau * work[i];
  std::copy(rhs, rhs + m, x);
  f.lu.solve(x);
  if (!check) return -1.0;
  h.apply(x, work);
  double rr = 0.0, bb = 0.0;
  for (int i = 0; i < m; ++i) {
    const cplx r = x[i] + itau * work[i] - rhs[i];
    rr += std::norm(r);
    bb += std::norm(rhs[i]);
  }
  return bb > 0.0 ? std::sqrt(rr / bb) : 0.0;
}

}  // namespace detail

// ---- step-size policy ----

// Crude spectral scale of the full problem at peak coupling: diagonal spread,
// tunneling bandwidth, and the strongest photon-ladder matrix element.
inline double e_max(const ChainConfig& c, double g_peak) {
  const double diag = std::abs(c.delta_eps) + c.omega_b * c.n_sites;
  const double tun = 2.0 * (std::abs(c.t_a) + std::abs(c.t_b));
  const double coup = g_peak * std::sqrt(static_cast<double>(c.n_max));
  return std::max({diag, tun, coup});
}

inline double default_dt(const ChainConfig& c, double g_peak) {
  const double e = e_max(c, g_peak);
  if (!(e > 0.0))
    throw std::invalid_argument("default_dt: Hamiltonian scale is zero; set dt explicitly");
  return 0.05 / e;
}

// ---- single-step entry point ----

// Advances one step with coupling value g_now (pass the midpoint value when
// the coupling varies in time). Builds and discards factorizations, so prefer
// evolve() for long runs; results for constant coupling are identical.
inline double cn_step(const ChainConfig& c, StateVector& s, double dt, double g_now) {
  validate(c);
  if (s.n_sites != c.n_sites || s.n_max != c.n_max)
    throw std::invalid_argument("cn_step: state does not match configuration");
  if (!(dt > 0.0)) throw std::invalid_argument("cn_step: dt must be positive");
  if (dt * e_max(c, g_now) > 0.1 * (1.0 + 1e-12))
    throw std::invalid_argument("cn_step: dt * E_max exceeds 0.1; reduce the time step");
  double max_resid = 0.0;
  std::vector<cplx> slice, work, rhs;
  for (const SectorInfo& sec : sectors(c)) {
    slice.assign(static_cast<size_t>(sec.dim), cplx(0.0, 0.0));
    work.resize(slice.size());
    rhs.resize(slice.size());
    gather_sector(c, s, sec, slice.data());
    double nn = 0.0;
    for (const cplx& v : slice) nn += std::norm(v);
    if (nn == 0.0) continue;  // stays exactly zero under linear dynamics
    const SectorHamiltonian h = assemble_sector(c, sec, g_now);
    CayleyFactor f;
    f.build(h, dt);
    const double r = detail::step_slice(h, f, slice.data(), work.data(), rhs.data(), true);
    max_resid = std::max(max_resid, r);
    scatter_sector(c, s, sec, slice.data());
  }
  if (max_resid > 1e-10)
    throw numeric_error("cn_step: solver residual " + std::to_string(max_resid) +
                        " exceeds 1e-10");
  s.time += dt;
  return max_resid;
}

// ---- trajectory driver ----

struct EvolutionPlan {
  double dt = 0.0;       // 0 -> default_dt at the peak coupling
  double t_end = 0.0;    // required; integrates round(t_end/dt) steps
  long long sample_stride = 1;
  std::optional<Envelope> coupling;  // default: constant at ChainConfig::g
  bool check_every_step = false;     // residual check per step, not per sample
  int threads = 1;
};

struct TrajectorySummary {
  long long n_steps = 0;
  long long n_samples = 0;
  double dt = 0.0;
  double t_final = 0.0;
  double wall_seconds = 0.0;
  double max_norm_drift = 0.0;
  double max_residual = 0.0;
  double max_boundary_mass = 0.0;
};

using Observer = std::function<void(const ObservableFrame&, const StateVector&)>;

namespace detail {

// Per-sector working set. Factorizations are cached on the coupling value, so
// constant-coupling runs factor once and pulsed runs refactor only the full
// sectors (bare rings never depend on g).
struct SectorUnit {
  SectorInfo info;
  SectorHamiltonian h;
  CayleyFactor factor;
  std::vector<cplx> slice, work, rhs;
  double g_built = -1.0;  // couplings are >= 0, so -1 forces the first build
  bool skip = false;
  double max_residual = 0.0;

  void ensure(const ChainConfig& c, double g_now, double dt) {
    const double key = (info.has_a && info.has_b) ? g_now : 0.0;
    if (key == g_built) return;
    h = assemble_sector(c, info, key);
    factor.build(h, dt);
    g_built = key;
  }
};

}  // namespace detail

// Integrates the state to plan.t_end, invoking the observer on the initial
// state, every sample_stride-th step, and the final step. The observer sees a
// fully scattered StateVector plus its derived frame. Throws numeric_error if
// the solver residual exceeds 1e-10 or amplitudes stop being finite.
inline TrajectorySummary evolve(const ChainConfig& c, StateVector& s, const EvolutionPlan& plan,
                                const Observer& observer = {}) {
  validate(c);
  if (s.n_sites != c.n_sites || s.n_max != c.n_max)
    throw std::invalid_argument("evolve: state does not match configuration");
  if (!(plan.t_end > 0.0)) throw std::invalid_argument("evolve: t_end must be positive");
  if (plan.sample_stride < 1)
    throw std::invalid_argument("evolve: sample_stride must be at least 1");

  Envelope env;
  if (plan.coupling) {
    env = *plan.coupling;
    if (const auto errs = check(env); !errs.empty())
      throw std::invalid_argument("evolve: bad coupling envelope: " + errs.front());
  } else {
    env.shape = Envelope::Shape::constant;
    env.peak = c.g;
  }

  const double g_peak = peak_coupling(env);
  const double dt = plan.dt > 0.0 ? plan.dt : default_dt(c, g_peak);
  if (dt * e_max(c, g_peak) > 0.1 * (1.0 + 1e-12))
    throw std::invalid_argument("evolve: dt * E_max exceeds 0.1; reduce the time step");
  const long long n_steps = std::llround(plan.t_end / dt);
  if (n_steps < 1) throw std::invalid_argument("evolve: t_end is shorter than one step");

  std::vector<detail::SectorUnit> units;
  for (const SectorInfo& sec : sectors(c)) {
    detail::SectorUnit u;
    u.info = sec;
    u.slice.assign(static_cast<size_t>(sec.dim), cplx(0.0, 0.0));
    u.work.resize(u.slice.size());
    u.rhs.resize(u.slice.size());
    gather_sector(c, s, sec, u.slice.data());
    double nn = 0.0;
    for (const cplx& v : u.slice) nn += std::norm(v);
    u.skip = (nn == 0.0);
    units.push_back(std::move(u));
  }
  const int n_units = static_cast<int>(units.size());
  const double norm0 = norm(s);
  if (!(norm0 > 0.0)) throw std::invalid_argument("evolve: initial state has zero norm");

  TrajectorySummary sum;
  sum.n_steps = n_steps;
  sum.dt = dt;
  const auto t_start = std::chrono::steady_clock::now();

  const auto sample = [&](long long k) {
    for (auto& u : units)
      if (!u.skip) scatter_sector(c, s, u.info, u.slice.data());
    s.time = k * dt;
    const ObservableFrame frame = build_frame(c, s);
    if (!std::isfinite(frame.norm_value))
      throw numeric_error("evolve: non-finite amplitudes at t = " + std::to_string(s.time));
    sum.max_norm_drift = std::max(sum.max_norm_drift, std::abs(frame.norm_value - norm0));
    // Seam mass only means something when the ring is wider than the margin
    // band on both sides; tiny rings are all seam.
    if (c.n_sites > 10)
      sum.max_boundary_mass = std::max(sum.max_boundary_mass, boundary_mass(c, s));
    ++sum.n_samples;
    if (observer) observer(frame, s);
  };

  sample(0);
  long long k = 0;
  while (k < n_steps) {
    const long long chunk = std::min(plan.sample_stride, n_steps - k);
    for (long long step = 0; step < chunk; ++step) {
      const double g_now = coupling_at(env, (k + step + 0.5) * dt);
      const bool check_now = plan.check_every_step || step == chunk - 1;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(std::max(plan.threads, 1))
#endif
      for (int iu = 0; iu < n_units; ++iu) {
        detail::SectorUnit& u = units[iu];
        if (u.skip) continue;
        u.ensure(c, g_now, dt);
        const double r =
            detail::step_slice(u.h, u.factor, u.slice.data(), u.work.data(), u.rhs.data(),
                               check_now);
        u.max_residual = std::max(u.max_residual, r);
      }
    }
    for (const auto& u : units) sum.max_residual = std::max(sum.max_residual, u.max_residual);
    if (sum.max_residual > 1e-10)
      throw numeric_error("evolve: solver residual " + std::to_string(sum.max_residual) +
                          " exceeds 1e-10");
    k += chunk;
    sample(k);
  }

  sum.t_final = n_steps * dt;
  sum.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return sum;
}

}  // namespace dchain
