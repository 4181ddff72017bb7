#pragma once
// Closed-form dressed-band solution for the dc-driven chain at fixed
// quasimomentum phase phi = h*a. Used to seed eigenstate initial conditions
// and to cross-validate the integrator in the adiabatic regime.
//
// Conventions (units hbar = omega0 = 1, real tunneling energies):
//   nu_{1,2}(phi) = (t_a + t_b) cos phi +- sqrt((t_a - t_b)^2 cos^2 phi + g_n^2)
//   Delta_n(phi)  = g_n / ((t_a - t_b) cos phi + sqrt((t_a - t_b)^2 cos^2 phi + g_n^2))
// with g_n = g*sqrt(n+1). Branch 1 has per-site amplitudes (1, -Delta_n) over
// (a_{p,n}, b_{p,n+1}); branch 2 has (Delta_n, 1). Both are exact eigenvectors
// of the sector Hamiltonian (nu*I - H) psi = 0.

#include <cmath>
#include <functional>
#include <stdexcept>

namespace dchain {

// ---- Bloch phase ----

// Quasimomentum phase swept by the dc field: phi(t) = phi0 - omega_b * t.
inline double bloch_phase(double phi0, double omega_b, double t) {
  return phi0 - omega_b * t;
}

// ---- dressed band ----

struct DressedBand {
  double nu1 = 0.0;        // upper-branch eigenfrequency
  double nu2 = 0.0;        // lower-branch eigenfrequency
  double delta = 0.0;      // band-mixing parameter Delta_n(phi)
  bool degenerate = false; // g_n == 0: coupling off, branches are bare bands
};

inline DressedBand dressed_band(double t_a, double t_b, double g, int n, double phi) {
  if (n < 0) throw std::invalid_argument("dressed_band: photon level must be >= 0");
  if (g < 0.0) throw std::invalid_argument("dressed_band: coupling must be >= 0");
  const double gn = g * std::sqrt(static_cast<double>(n) + 1.0);
  const double d = (t_a - t_b) * std::cos(phi);
  const double root = std::sqrt(d * d + gn * gn);
  DressedBand out;
  out.nu1 = (t_a + t_b) * std::cos(phi) + root;
  out.nu2 = (t_a + t_b) * std::cos(phi) - root;
  if (gn == 0.0) {
    // Degenerate limit: Delta -> 0 by convention (branch 1 = pure upper band).
    out.delta = 0.0;
    out.degenerate = true;
  } else {
    // gn/(d + root) and (root - d)/gn are the same root of the mixing
    // quadratic; pick the branch whose denominator never cancels.
    out.delta = d >= 0.0 ? gn / (d + root) : (root - d) / gn;
  }
  return out;
}

// Mixing parameter along the field-driven sweep, Delta_n(phi(t)).
inline double delta_of_time(double t_a, double t_b, double g, int n, double phi0,
                            double omega_b, double t) {
  // cos(omega_b*t - phi0) == cos(bloch_phase(phi0, omega_b, t)).
  return dressed_band(t_a, t_b, g, n, omega_b * t - phi0).delta;
}

// ---- photon statistics of a dressed branch ----

// A branch at photon label n populates exactly two Fock levels, n and n+1.
struct PhotonStats {
  double p_n = 0.0;     // weight on level n
  double p_n1 = 0.0;    // weight on level n+1
  double mean = 0.0;    // <n>
  double variance = 0.0;
  double entropy = 0.0; // -(p_n ln p_n + p_n1 ln p_n1), reported non-negative
};

inline PhotonStats analytic_photon_stats(int n, double delta, int branch) {
  if (n < 0) throw std::invalid_argument("analytic_photon_stats: photon level must be >= 0");
  if (branch != 1 && branch != 2)
    throw std::invalid_argument("analytic_photon_stats: branch must be 1 or 2");
  const double d2 = delta * delta;
  const double w = 1.0 / (1.0 + d2);  // weight on the unit component
  PhotonStats out;
  if (branch == 1) {  // (1, -Delta): unit component sits on level n
    out.p_n = w;
    out.p_n1 = d2 * w;
  } else {            // (Delta, 1): unit component sits on level n+1
    out.p_n = d2 * w;
    out.p_n1 = w;
  }
  out.mean = n * out.p_n + (n + 1) * out.p_n1;
  out.variance = out.p_n * out.p_n1;  // two-point distribution one level apart
  auto plogp = [](double p) { return p > 0.0 ? p * std::log(p) : 0.0; };
  out.entropy = -(plogp(out.p_n) + plogp(out.p_n1));
  return out;
}

// ---- adiabatic phase accumulation ----

// Final quasimomentum phase under a slowly ramped dc field:
// Phi = phi0 - integral_{t0}^{t1} omega_b(tau) dtau, by the trapezoidal rule
// (a plain time integral with no oscillatory structure).
inline double adiabatic_final_phase(double phi0, const std::function<double(double)>& omega_b,
                                    double t0, double t1, int n_steps = 200000) {
  if (!(t1 >= t0)) throw std::invalid_argument("adiabatic_final_phase: need t1 >= t0");
  if (n_steps < 1) throw std::invalid_argument("adiabatic_final_phase: need n_steps >= 1");
  if (t1 == t0) return phi0;
  const double h = (t1 - t0) / n_steps;
  double acc = 0.5 * (omega_b(t0) + omega_b(t1));
  for (int k = 1; k < n_steps; ++k) acc += omega_b(t0 + k * h);
  return phi0 - acc * h;
}

// ---- quasiclassical packet center ----

// Single-band wavepacket drift under the dc field (group velocity of the
// +2 t cos(phi) dispersion integrated along the Bloch sweep):
//   dx(t) = (2 t_alpha / omega_b) * (cos(omega_b t - phi0) - cos phi0).
// The omega_b -> 0 limit reduces smoothly to free drift.
inline double quasiclassical_center(double t_alpha, double omega_b, double phi0, double u0,
                                    double t) {
  const double x = omega_b * t;
  if (std::abs(x) < 1e-6) {
    // Second-order Taylor expansion, exact in the omega_b -> 0 limit.
    return u0 + 2.0 * t_alpha * t * (std::sin(phi0) - 0.5 * x * std::cos(phi0));
  }
  return u0 + (2.0 * t_alpha / omega_b) * (std::cos(x - phi0) - std::cos(phi0));
}

}  // namespace dchain
