#pragma once
// Coupling schedules g(t) for the integrator: CW (constant), Gaussian, and
// raised-cosine envelopes, plus pulse-area quadrature. Envelopes modulate the
// slowly varying coupling amplitude; the carrier is already rotated away, so
// widths must stay long against the carrier period (the harness validates).

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace dchain {

struct Envelope {
  enum class Shape { constant, gaussian, raised_cosine };
  Shape shape = Shape::constant;
  double peak = 0.0;      // coupling maximum (the CW value for constant)
  double center = 0.0;    // gaussian: peak position
  double width = 1.0;     // gaussian: exp(-(t-center)^2 / width^2)
  double start = 0.0;     // raised cosine: support is [start, start+duration]
  double duration = 1.0;  // raised cosine: peak * sin^2(pi (t-start)/duration)
};

inline std::vector<std::string> check(const Envelope& e) {
  std::vector<std::string> bad;
  if (!std::isfinite(e.peak) || e.peak < 0.0)
    bad.push_back("envelope.peak must be finite and >= 0");
  if (e.shape == Envelope::Shape::gaussian && !(e.width > 0.0))
    bad.push_back("envelope.width must be > 0");
  if (e.shape == Envelope::Shape::raised_cosine && !(e.duration > 0.0))
    bad.push_back("envelope.duration must be > 0");
  return bad;
}

inline double coupling_at(const Envelope& e, double t) {
  switch (e.shape) {
    case Envelope::Shape::constant:
      return e.peak;
    case Envelope::Shape::gaussian: {
      const double d = (t - e.center) / e.width;
      return e.peak * std::exp(-d * d);
    }
    case Envelope::Shape::raised_cosine: {
      if (t <= e.start || t >= e.start + e.duration) return 0.0;
      const double s = std::sin(M_PI * (t - e.start) / e.duration);
      return e.peak * s * s;
    }
  }
  return 0.0;
}

inline double peak_coupling(const Envelope& e) { return e.peak; }

namespace detail {

// Adaptive Simpson on one smooth panel.
template <typename F>
double simpson_panel(const F& f, double a, double fa, double b, double fb, double m, double fm,
                     double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_panel(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         simpson_panel(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

template <typename F>
double adaptive_simpson(const F& f, double a, double b, double tol) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fb = f(b), fm = f(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_panel(f, a, fa, b, fb, m, fm, whole, tol, 48);
}

}  // namespace detail

// Integral of g(t) over [t0, t1] by adaptive quadrature (relative error well
// below 1e-8). The domain is split at envelope knots first so narrow pulses
// inside a wide window cannot be missed by the initial coarse panels.
inline double pulse_area(const Envelope& e, double t0, double t1) {
  if (!(t1 >= t0)) throw std::invalid_argument("pulse_area: need t1 >= t0");
  {
    auto bad = check(e);
    if (!bad.empty()) throw std::invalid_argument("pulse_area: " + bad.front());
  }
  if (e.peak == 0.0 || t0 == t1) return 0.0;

  std::vector<double> knots{t0, t1};
  double support = t1 - t0;  // effective width carrying the integral's scale
  if (e.shape == Envelope::Shape::gaussian) {
    for (double s : {-8.0, -4.0, -2.0, -1.0, 0.0, 1.0, 2.0, 4.0, 8.0}) {
      const double k = e.center + s * e.width;
      if (k > t0 && k < t1) knots.push_back(k);
    }
    support = std::min(support, 2.0 * e.width);
  } else if (e.shape == Envelope::Shape::raised_cosine) {
    // Clip to the compact support; outside it the integrand is exactly zero.
    const double lo = std::max(t0, e.start), hi = std::min(t1, e.start + e.duration);
    if (lo >= hi) return 0.0;
    knots = {lo, hi, 0.5 * (lo + hi)};
    support = 0.5 * (hi - lo);
  }
  std::sort(knots.begin(), knots.end());

  // Absolute tolerance tied to the integral's own scale, not the window size.
  const double tol = 1e-10 * e.peak * std::max(support, 1e-30);
  auto f = [&e](double t) { return coupling_at(e, t); };
  double acc = 0.0;
  for (size_t i = 0; i + 1 < knots.size(); ++i)
    acc += detail::adaptive_simpson(f, knots[i], knots[i + 1], tol);
  return acc;
}

}  // namespace dchain
