#pragma once
// Basis bookkeeping for a two-band chain of artificial atoms dressed by a
// single quantized field mode. State amplitudes are a_{p,n} (upper band,
// n photons) and b_{p,n} (lower band, n photons) on n_sites sites with
// periodic (Born-von Karman) wrap. The rotating-wave coupling only connects
// a_{.,n} <-> b_{.,n+1}, so the dynamics splits into closed blocks
// ("sectors"); see sectors() below.

#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace dchain {

using cplx = std::complex<double>;

// Raised when the numerics themselves break down (singular solve, non-finite
// amplitudes, residual blow-up), as opposed to bad input parameters.
struct numeric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Band { excited, ground };  // excited = a (wide band), ground = b

// ---- static parameters ----

struct ChainConfig {
  int n_sites = 2;        // N, periodic ring
  int n_max = 1;          // highest retained photon number (>= 1)
  cplx t_a{0.0, 0.0};     // upper-band tunneling energy, units hbar*omega0
  cplx t_b{0.0, 0.0};     // lower-band tunneling energy
  double g = 0.0;         // atom-field coupling (CW value or pulse peak)
  double omega_b = 0.0;   // Bloch frequency e*E_dc*a/hbar, units omega0
  double delta_eps = 0.0; // detuning split: +delta_eps on a, -delta_eps on b

  int levels() const { return n_max + 1; }           // photon labels 0..n_max
  int dim() const { return 2 * n_sites * levels(); } // total amplitude count
};

// Returns every violated invariant (empty means valid). Kept as a list so
// callers can report all problems at once rather than the first.
inline std::vector<std::string> check(const ChainConfig& c) {
  std::vector<std::string> bad;
  if (c.n_sites < 2) bad.push_back("chain.n_sites must be >= 2");
  if (c.n_max < 1) bad.push_back("chain.n_max must be >= 1");
  if (!std::isfinite(c.t_a.real()) || !std::isfinite(c.t_a.imag()))
    bad.push_back("chain.t_a must be finite");
  if (!std::isfinite(c.t_b.real()) || !std::isfinite(c.t_b.imag()))
    bad.push_back("chain.t_b must be finite");
  if (!std::isfinite(c.g) || c.g < 0.0)
    bad.push_back("chain.g must be finite and >= 0");
  if (!std::isfinite(c.omega_b) || c.omega_b < 0.0)
    bad.push_back("chain.omega_b must be finite and >= 0");
  if (!std::isfinite(c.delta_eps))
    bad.push_back("chain.delta_eps must be finite");
  return bad;
}

inline void validate(const ChainConfig& c) {
  auto bad = check(c);
  if (bad.empty()) return;
  std::ostringstream os;
  os << "invalid chain config:";
  for (const auto& m : bad) os << "\n  - " << m;
  throw std::invalid_argument(os.str());
}

// ---- flat index ----

// Documented bijection of (band, site, photon level) onto [0, 2N(n_max+1)):
// photon-level blocks, a/b interleaved within a block. The first element is
// (excited, p=0, n=0) and the last is (ground, p=N-1, n=n_max).
inline int flat_index(const ChainConfig& c, Band band, int p, int n) {
  if (p < 0 || p >= c.n_sites) throw std::invalid_argument("flat_index: site out of range");
  if (n < 0 || n > c.n_max) throw std::invalid_argument("flat_index: photon level out of range");
  return 2 * (n * c.n_sites + p) + (band == Band::ground ? 1 : 0);
}

// ---- state ----

struct StateVector {
  int n_sites = 0;
  int n_max = 0;
  double time = 0.0;
  std::vector<cplx> a;  // level-major: a[n*n_sites + p]
  std::vector<cplx> b;

  StateVector() = default;
  explicit StateVector(const ChainConfig& c)
      : n_sites(c.n_sites), n_max(c.n_max),
        a(static_cast<size_t>(c.n_sites) * c.levels(), cplx{0.0, 0.0}),
        b(static_cast<size_t>(c.n_sites) * c.levels(), cplx{0.0, 0.0}) {}

  cplx& at_a(int p, int n) { return a[static_cast<size_t>(n) * n_sites + p]; }
  cplx& at_b(int p, int n) { return b[static_cast<size_t>(n) * n_sites + p]; }
  const cplx& at_a(int p, int n) const { return a[static_cast<size_t>(n) * n_sites + p]; }
  const cplx& at_b(int p, int n) const { return b[static_cast<size_t>(n) * n_sites + p]; }

  cplx& at(Band band, int p, int n) { return band == Band::excited ? at_a(p, n) : at_b(p, n); }
  const cplx& at(Band band, int p, int n) const {
    return band == Band::excited ? at_a(p, n) : at_b(p, n);
  }

  int levels() const { return n_max + 1; }
  int dim() const { return 2 * n_sites * levels(); }
};

inline double norm_squared(const StateVector& s) {
  double acc = 0.0;
  for (const auto& z : s.a) acc += std::norm(z);
  for (const auto& z : s.b) acc += std::norm(z);
  return acc;
}

inline double norm(const StateVector& s) { return std::sqrt(norm_squared(s)); }

// Scales the state to unit norm; a numerically empty state cannot be
// normalized and is treated as a preparation error.
inline void normalize(StateVector& s) {
  const double nrm = norm(s);
  if (nrm < 1e-12) throw std::invalid_argument("normalize: state norm below 1e-12");
  const double inv = 1.0 / nrm;
  for (auto& z : s.a) z *= inv;
  for (auto& z : s.b) z *= inv;
}

// ---- sectors ----

// One closed dynamical block. Label n in [-1, n_max]:
//   n = -1         : b(.,0) alone (nothing below the vacuum to couple to), dim N
//   0 <= n < n_max : coupled pair {a(.,n), b(.,n+1)}, dim 2N
//   n = n_max      : a(.,n_max) alone (partner truncated away), dim N
struct SectorInfo {
  int n = 0;
  bool has_a = false;
  bool has_b = false;
  int dim = 0;
};

inline SectorInfo sector_info(const ChainConfig& c, int n) {
  if (n < -1 || n > c.n_max) throw std::invalid_argument("sector_info: label out of range");
  SectorInfo s;
  s.n = n;
  s.has_a = (n >= 0);
  s.has_b = (n < c.n_max);  // partner level n+1 must exist
  s.dim = (s.has_a && s.has_b) ? 2 * c.n_sites : c.n_sites;
  return s;
}

// All blocks in storage order: the orphan lower-band block first, then n = 0..n_max.
inline std::vector<SectorInfo> sectors(const ChainConfig& c) {
  std::vector<SectorInfo> out;
  out.reserve(static_cast<size_t>(c.n_max) + 2);
  for (int n = -1; n <= c.n_max; ++n) out.push_back(sector_info(c, n));
  return out;
}

// Probability mass per sector, in sectors() order (orphan first). Sums to
// norm_squared(state) exactly, and each entry is a conserved quantity of the
// evolution because the Hamiltonian is block diagonal over sectors.
inline std::vector<double> sector_norms(const ChainConfig& c, const StateVector& s) {
  std::vector<double> out(static_cast<size_t>(c.n_max) + 2, 0.0);
  const int N = c.n_sites;
  for (int p = 0; p < N; ++p) out[0] += std::norm(s.at_b(p, 0));  // orphan
  for (int n = 0; n <= c.n_max; ++n) {
    double acc = 0.0;
    for (int p = 0; p < N; ++p) {
      acc += std::norm(s.at_a(p, n));
      if (n + 1 <= c.n_max) acc += std::norm(s.at_b(p, n + 1));
    }
    out[static_cast<size_t>(n) + 1] = acc;
  }
  return out;
}

// Interleaved slice of one sector: [a(0,n), b(0,n+1), a(1,n), b(1,n+1), ...]
// for pair blocks, or the bare band row for half blocks. The integrator works
// on these contiguous workspaces so the sector matrix stays banded.
inline void gather_sector(const ChainConfig& c, const StateVector& s, const SectorInfo& sec,
                          cplx* slice) {
  const int N = c.n_sites;
  if (sec.has_a && sec.has_b) {
    for (int p = 0; p < N; ++p) {
      slice[2 * p] = s.at_a(p, sec.n);
      slice[2 * p + 1] = s.at_b(p, sec.n + 1);
    }
  } else if (sec.has_a) {
    for (int p = 0; p < N; ++p) slice[p] = s.at_a(p, sec.n);
  } else {
    for (int p = 0; p < N; ++p) slice[p] = s.at_b(p, 0);
  }
}

inline void scatter_sector(const ChainConfig& c, StateVector& s, const SectorInfo& sec,
                           const cplx* slice) {
  const int N = c.n_sites;
  if (sec.has_a && sec.has_b) {
    for (int p = 0; p < N; ++p) {
      s.at_a(p, sec.n) = slice[2 * p];
      s.at_b(p, sec.n + 1) = slice[2 * p + 1];
    }
  } else if (sec.has_a) {
    for (int p = 0; p < N; ++p) s.at_a(p, sec.n) = slice[p];
  } else {
    for (int p = 0; p < N; ++p) s.at_b(p, 0) = slice[p];
  }
}

}  // namespace dchain
