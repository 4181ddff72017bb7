#pragma once
// Electronic and photonic observables on a StateVector. All quantities are
// diagonal in the sector decomposition, so none of them depend on relative
// phases between sectors.

#include <cmath>
#include <vector>

#include "dchain/model.hpp"

namespace dchain {

// ---- site-resolved quantities ----

// Inversion density W(p) = sum_n (|a_{p,n}|^2 - |b_{p,n}|^2).
inline std::vector<double> inversion_density(const ChainConfig& c, const StateVector& s) {
  std::vector<double> w(static_cast<size_t>(c.n_sites), 0.0);
  for (int n = 0; n <= c.n_max; ++n)
    for (int p = 0; p < c.n_sites; ++p)
      w[p] += std::norm(s.at_a(p, n)) - std::norm(s.at_b(p, n));
  return w;
}

// Tunneling current density (e = hbar = 1, carries the t_a scale):
//   J(p) = Im[ t_a sum_n (a_{p-1,n} - a_{p+1,n}) conj(a_{p,n})
//            + t_b sum_n (b_{p-1,n} - b_{p+1,n}) conj(b_{p,n}) ],
// periodic in p. A plane wave e^{i p phi}/sqrt(N) gives -2 t_a sin(phi)/N per
// site, i.e. density times group velocity, as it should.
inline std::vector<double> tunneling_current_density(const ChainConfig& c,
                                                     const StateVector& s) {
  const int N = c.n_sites;
  std::vector<double> j(static_cast<size_t>(N), 0.0);
  for (int n = 0; n <= c.n_max; ++n) {
    for (int p = 0; p < N; ++p) {
      const int pm = (p + N - 1) % N, pp = (p + 1) % N;
      const cplx ja = (s.at_a(pm, n) - s.at_a(pp, n)) * std::conj(s.at_a(p, n));
      const cplx jb = (s.at_b(pm, n) - s.at_b(pp, n)) * std::conj(s.at_b(p, n));
      j[p] += std::imag(c.t_a * ja) + std::imag(c.t_b * jb);
    }
  }
  return j;
}

// Site mass rho(p) = sum_n (|a_{p,n}|^2 + |b_{p,n}|^2).
inline std::vector<double> site_density(const ChainConfig& c, const StateVector& s) {
  std::vector<double> rho(static_cast<size_t>(c.n_sites), 0.0);
  for (int n = 0; n <= c.n_max; ++n)
    for (int p = 0; p < c.n_sites; ++p)
      rho[p] += std::norm(s.at_a(p, n)) + std::norm(s.at_b(p, n));
  return rho;
}

// First moment of the site mass. Meaningful while the packet stays away from
// the periodic wrap seam; the evolver tracks seam mass so runs can be flagged.
inline double packet_center(const ChainConfig& c, const StateVector& s) {
  const auto rho = site_density(c, s);
  double acc = 0.0;
  for (int p = 0; p < c.n_sites; ++p) acc += p * rho[p];
  return acc;
}

// Probability mass within `margin` sites of the wrap seam (p < margin or
// p >= N - margin).
inline double boundary_mass(const ChainConfig& c, const StateVector& s, int margin = 5) {
  const auto rho = site_density(c, s);
  double acc = 0.0;
  for (int p = 0; p < c.n_sites; ++p)
    if (p < margin || p >= c.n_sites - margin) acc += rho[p];
  return acc;
}

// ---- photon statistics ----

// ptilde(n) = sum_p (|a_{p,n}|^2 + |b_{p,n}|^2), n = 0..n_max.
inline std::vector<double> photon_distribution(const ChainConfig& c, const StateVector& s) {
  std::vector<double> pt(static_cast<size_t>(c.n_max) + 1, 0.0);
  for (int n = 0; n <= c.n_max; ++n) {
    double acc = 0.0;
    for (int p = 0; p < c.n_sites; ++p)
      acc += std::norm(s.at_a(p, n)) + std::norm(s.at_b(p, n));
    pt[n] = acc;
  }
  return pt;
}

inline double photon_mean(const std::vector<double>& dist) {
  double acc = 0.0;
  for (size_t n = 0; n < dist.size(); ++n) acc += n * dist[n];
  return acc;
}

// Two-pass variance to avoid the mean^2 cancellation at large <n>.
inline double photon_variance(const std::vector<double>& dist) {
  const double mean = photon_mean(dist);
  double total = 0.0, acc = 0.0;
  for (size_t n = 0; n < dist.size(); ++n) {
    total += dist[n];
    const double d = n - mean;
    acc += d * d * dist[n];
  }
  (void)total;
  return acc;
}

// Entropy -sum p ln p with 0 ln 0 == 0, in nats.
inline double photon_entropy(const std::vector<double>& dist) {
  double acc = 0.0;
  for (double p : dist)
    if (p > 0.0) acc -= p * std::log(p);
  return acc;
}

// ---- sampled frame ----

struct ObservableFrame {
  double time = 0.0;
  double time_bloch = 0.0;  // time * omega_b / 2pi (zero when omega_b == 0)
  std::vector<double> inversion;
  std::vector<double> current;
  std::vector<double> photon_dist;
  double inversion_total = 0.0;
  double mean_n = 0.0;
  double var_n = 0.0;
  double entropy = 0.0;
  double center = 0.0;
  double norm_value = 0.0;
};

inline ObservableFrame build_frame(const ChainConfig& c, const StateVector& s) {
  ObservableFrame f;
  f.time = s.time;
  f.time_bloch = c.omega_b > 0.0 ? s.time * c.omega_b / (2.0 * M_PI) : 0.0;
  f.inversion = inversion_density(c, s);
  f.current = tunneling_current_density(c, s);
  f.photon_dist = photon_distribution(c, s);
  for (double w : f.inversion) f.inversion_total += w;
  f.mean_n = photon_mean(f.photon_dist);
  f.var_n = photon_variance(f.photon_dist);
  f.entropy = photon_entropy(f.photon_dist);
  f.center = packet_center(c, s);
  f.norm_value = norm(s);
  return f;
}

}  // namespace dchain
