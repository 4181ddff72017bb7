#pragma once
// Initial-state constructors: Gaussian wavepackets on the ring combined with
// vacuum / Fock / coherent photon preparations, band-entangled Fock states,
// and dressed-branch eigenstates. Every constructor renormalizes to unit norm
// after Fock-space truncation.

#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>

#include "dchain/analytic.hpp"
#include "dchain/model.hpp"

namespace dchain {

// ---- site packets ----

struct GaussianSpec {
  double u = 0.0;      // center site (may be fractional)
  double sigma = 1.0;  // amplitude width: exp(-(p-u)^2 / sigma^2), no factor 2
  double k = 0.0;      // momentum phase exp(i k p)
};

// Unnormalized packet amplitudes over sites 0..n_sites-1.
inline std::vector<cplx> gaussian_amplitudes(const GaussianSpec& spec, int n_sites) {
  if (n_sites < 1) throw std::invalid_argument("gaussian_amplitudes: need n_sites >= 1");
  if (!(spec.sigma > 0.0)) throw std::invalid_argument("gaussian_amplitudes: sigma must be > 0");
  if (spec.u < 0.0 || spec.u >= n_sites)
    throw std::invalid_argument("gaussian_amplitudes: center u must lie in [0, n_sites)");
  if (!std::isfinite(spec.k)) throw std::invalid_argument("gaussian_amplitudes: k must be finite");
  std::vector<cplx> out(static_cast<size_t>(n_sites));
  for (int p = 0; p < n_sites; ++p) {
    const double d = (p - spec.u) / spec.sigma;
    out[p] = std::polar(std::exp(-d * d), spec.k * p);
  }
  return out;
}

// ---- photon weights ----

struct PhotonPrep {
  enum class Kind { vacuum, fock, coherent };
  Kind kind = Kind::vacuum;
  int n = 0;          // fock level
  double mean = 0.0;  // coherent mean photon number
};

// Coherent-state Fock amplitude <n>^{n/2} e^{-<n>/2} / sqrt(n!), evaluated in
// log space so large n and large means stay finite.
inline double poisson_amplitude(double mean, int n) {
  if (mean < 0.0) throw std::invalid_argument("poisson_amplitude: mean must be >= 0");
  if (n < 0) throw std::invalid_argument("poisson_amplitude: n must be >= 0");
  if (mean == 0.0) return n == 0 ? 1.0 : 0.0;
  return std::exp(0.5 * (n * std::log(mean) - mean - std::lgamma(n + 1.0)));
}

// Probability mass beyond the truncation level; the harness warns above 1e-6.
inline double poisson_tail_mass(double mean, int n_max) {
  if (mean < 0.0) throw std::invalid_argument("poisson_tail_mass: mean must be >= 0");
  if (n_max < 0) throw std::invalid_argument("poisson_tail_mass: n_max must be >= 0");
  double kept = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    const double amp = poisson_amplitude(mean, n);
    kept += amp * amp;
  }
  return std::max(0.0, 1.0 - kept);
}

// Default truncation: mean + 6 sqrt(mean), at least 1.
inline int suggested_n_max(double mean) {
  const int n = static_cast<int>(std::ceil(mean + 6.0 * std::sqrt(std::max(mean, 0.0))));
  return std::max(1, n);
}

// ---- product states ----

namespace detail {
inline void require_some_weight(cplx w_a, cplx w_b) {
  if (std::abs(w_a) == 0.0 && std::abs(w_b) == 0.0)
    throw std::invalid_argument("initial state: band weights a0 and b0 are both zero");
}
}  // namespace detail

// |psi> = (a0 |packet_a> x |a-band> + b0 |packet_b> x |b-band>) x |n>.
inline StateVector fock_product_state(const ChainConfig& c, const GaussianSpec& pack_a,
                                      const GaussianSpec& pack_b, cplx w_a, cplx w_b, int n) {
  validate(c);
  detail::require_some_weight(w_a, w_b);
  if (n < 0 || n > c.n_max)
    throw std::invalid_argument("fock_product_state: photon level outside [0, n_max]");
  StateVector s(c);
  const auto ga = gaussian_amplitudes(pack_a, c.n_sites);
  const auto gb = gaussian_amplitudes(pack_b, c.n_sites);
  for (int p = 0; p < c.n_sites; ++p) {
    s.at_a(p, n) = w_a * ga[p];
    s.at_b(p, n) = w_b * gb[p];
  }
  normalize(s);
  return s;
}

inline StateVector vacuum_product_state(const ChainConfig& c, const GaussianSpec& pack_a,
                                        const GaussianSpec& pack_b, cplx w_a, cplx w_b) {
  return fock_product_state(c, pack_a, pack_b, w_a, w_b, 0);
}

// Product with a coherent field: every photon level carries the same packet,
// weighted by the (real, zero-phase) coherent amplitudes.
inline StateVector coherent_product_state(const ChainConfig& c, const GaussianSpec& pack_a,
                                          const GaussianSpec& pack_b, cplx w_a, cplx w_b,
                                          double mean_photons) {
  validate(c);
  detail::require_some_weight(w_a, w_b);
  if (mean_photons < 0.0)
    throw std::invalid_argument("coherent_product_state: mean_photons must be >= 0");
  StateVector s(c);
  const auto ga = gaussian_amplitudes(pack_a, c.n_sites);
  const auto gb = gaussian_amplitudes(pack_b, c.n_sites);
  for (int n = 0; n <= c.n_max; ++n) {
    const double w = poisson_amplitude(mean_photons, n);
    if (w == 0.0) continue;
    for (int p = 0; p < c.n_sites; ++p) {
      s.at_a(p, n) = w_a * w * ga[p];
      s.at_b(p, n) = w_b * w * gb[p];
    }
  }
  normalize(s);
  return s;
}

// ---- entangled band-photon state ----

// (|a_{p,n}> +- |b_{p,n+1}>) / sqrt(2) under a shared packet: total inversion
// is exactly zero, photon weights are 1/2 on levels n and n+1.
inline StateVector entangled_fock_state(const ChainConfig& c, int n, double u, double sigma,
                                        int phase_sign) {
  validate(c);
  if (n < 0 || n + 1 > c.n_max)
    throw std::invalid_argument("entangled_fock_state: need 0 <= n and n+1 <= n_max");
  if (phase_sign != 1 && phase_sign != -1)
    throw std::invalid_argument("entangled_fock_state: phase_sign must be +1 or -1");
  StateVector s(c);
  const auto g = gaussian_amplitudes({u, sigma, 0.0}, c.n_sites);
  for (int p = 0; p < c.n_sites; ++p) {
    s.at_a(p, n) = g[p];
    s.at_b(p, n + 1) = static_cast<double>(phase_sign) * g[p];
  }
  normalize(s);
  return s;
}

// ---- dressed eigenstates ----

// Branch eigenstate of the sector Hamiltonian at quasimomentum phase phi:
// per-site amplitudes e^{i p phi} times (1, -Delta_n) for branch 1 or
// (Delta_n, 1) for branch 2 over (a_{p,n}, b_{p,n+1}). An optional Gaussian
// window turns the plane wave into a wavepacket for adiabatic-tracking runs.
// The closed form is stated for real tunneling energies only.
inline StateVector dressed_eigenstate(const ChainConfig& c, int n, int branch, double phi,
                                      const std::optional<GaussianSpec>& window = std::nullopt) {
  validate(c);
  if (c.t_a.imag() != 0.0 || c.t_b.imag() != 0.0)
    throw std::invalid_argument("dressed_eigenstate: closed form requires real t_a, t_b");
  if (n < 0 || n + 1 > c.n_max)
    throw std::invalid_argument("dressed_eigenstate: need 0 <= n and n+1 <= n_max");
  if (branch != 1 && branch != 2)
    throw std::invalid_argument("dressed_eigenstate: branch must be 1 or 2");
  const DressedBand band = dressed_band(c.t_a.real(), c.t_b.real(), c.g, n, phi);
  const double va = (branch == 1) ? 1.0 : band.delta;
  const double vb = (branch == 1) ? -band.delta : 1.0;
  StateVector s(c);
  std::vector<cplx> env(static_cast<size_t>(c.n_sites), cplx{1.0, 0.0});
  if (window) env = gaussian_amplitudes(*window, c.n_sites);
  for (int p = 0; p < c.n_sites; ++p) {
    const cplx amp = env[p] * std::polar(1.0, phi * p);
    s.at_a(p, n) = va * amp;
    s.at_b(p, n + 1) = vb * amp;
  }
  normalize(s);
  return s;
}

}  // namespace dchain
