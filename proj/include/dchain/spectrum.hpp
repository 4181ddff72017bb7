#pragma once
// One-sided amplitude spectrum of a uniformly sampled scalar series.
// The series has its mean removed and a Hann window applied before a direct
// DFT (series in this project are a few thousand samples, so O(M^2) is
// cheaper than carrying an FFT dependency). Amplitudes are normalized so a
// unit cosine at a bin center reports amplitude 1.

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace dchain {

struct Spectrum {
  std::vector<double> omega;      // angular frequency of each bin
  std::vector<double> amplitude;  // windowed one-sided amplitude
  double domega = 0.0;            // bin spacing 2 pi / (M dt)
  double dt = 0.0;                // sample spacing of the input
};

inline Spectrum amplitude_spectrum(const std::vector<double>& t, const std::vector<double>& x) {
  const size_t m = t.size();
  if (x.size() != m) throw std::invalid_argument("amplitude_spectrum: length mismatch");
  if (m < 64)
    throw std::invalid_argument("amplitude_spectrum: need at least 64 samples, got " +
                                std::to_string(m));
  const double dt = t[1] - t[0];
  if (!(dt > 0.0)) throw std::invalid_argument("amplitude_spectrum: non-increasing time axis");
  for (size_t i = 1; i < m; ++i)
    if (std::abs(t[i] - t[i - 1] - dt) > 1e-6 * dt)
      throw std::invalid_argument("amplitude_spectrum: time axis is not uniformly sampled");

  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(m);

  std::vector<double> y(m), w(m);
  double wsum = 0.0;
  for (size_t i = 0; i < m; ++i) {
    w[i] = 0.5 * (1.0 - std::cos(2.0 * M_PI * static_cast<double>(i) /
                                 static_cast<double>(m - 1)));
    y[i] = (x[i] - mean) * w[i];
    wsum += w[i];
  }

  Spectrum s;
  s.dt = dt;
  s.domega = 2.0 * M_PI / (static_cast<double>(m) * dt);
  const size_t half = m / 2;
  s.omega.resize(half + 1);
  s.amplitude.resize(half + 1);
  for (size_t k = 0; k <= half; ++k) {
    std::complex<double> acc(0.0, 0.0);
    const double phase = -2.0 * M_PI * static_cast<double>(k) / static_cast<double>(m);
    for (size_t i = 0; i < m; ++i)
      acc += y[i] * std::polar(1.0, phase * static_cast<double>(i));
    s.omega[k] = static_cast<double>(k) * s.domega;
    s.amplitude[k] = 2.0 * std::abs(acc) / wsum;
  }
  return s;
}

// ---- peak extraction ----

struct SpectralPeak {
  int bin = 0;
  double omega = 0.0;          // bin frequency
  double omega_refined = 0.0;  // parabolic interpolation across the peak
  double amplitude = 0.0;
};

// Local maxima exceeding threshold_ratio times the median bin amplitude
// (the DC bin is excluded), strongest first.
inline std::vector<SpectralPeak> find_peaks(const Spectrum& s, double threshold_ratio = 10.0) {
  const size_t nb = s.amplitude.size();
  if (nb < 4) return {};
  std::vector<double> sorted(s.amplitude.begin() + 1, s.amplitude.end());
  std::sort(sorted.begin(), sorted.end());
  const double median = sorted[sorted.size() / 2];
  const double floor_level = threshold_ratio * median;

  std::vector<SpectralPeak> peaks;
  for (size_t k = 1; k + 1 < nb; ++k) {
    const double a = s.amplitude[k];
    if (a <= floor_level) continue;
    if (!(a > s.amplitude[k - 1] && a >= s.amplitude[k + 1])) continue;
    SpectralPeak p;
    p.bin = static_cast<int>(k);
    p.omega = s.omega[k];
    p.amplitude = a;
    const double denom = s.amplitude[k - 1] - 2.0 * a + s.amplitude[k + 1];
    const double shift =
        denom != 0.0 ? 0.5 * (s.amplitude[k - 1] - s.amplitude[k + 1]) / denom : 0.0;
    p.omega_refined = (static_cast<double>(k) + std::clamp(shift, -0.5, 0.5)) * s.domega;
    peaks.push_back(p);
  }
  std::sort(peaks.begin(), peaks.end(),
            [](const SpectralPeak& a, const SpectralPeak& b) {
              return a.amplitude > b.amplitude;
            });
  return peaks;
}

}  // namespace dchain
