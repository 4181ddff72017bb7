// Coupling envelopes: shapes, exact support edges, and pulse areas against
// closed-form integrals.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dchain/pulse.hpp"

using namespace dchain;

TEST_CASE("envelope shapes evaluate as documented", "[pulse]") {
  Envelope cw;
  cw.shape = Envelope::Shape::constant;
  cw.peak = 0.35;
  REQUIRE(coupling_at(cw, -1e9) == 0.35);
  REQUIRE(coupling_at(cw, 1e9) == 0.35);
  REQUIRE(peak_coupling(cw) == 0.35);

  Envelope gauss;
  gauss.shape = Envelope::Shape::gaussian;
  gauss.peak = 0.2;
  gauss.center = 5.0;
  gauss.width = 2.0;
  REQUIRE(coupling_at(gauss, 5.0) == 0.2);
  REQUIRE_THAT(coupling_at(gauss, 7.0),
               Catch::Matchers::WithinRel(0.2 * std::exp(-1.0), 1e-14));
  REQUIRE_THAT(coupling_at(gauss, 1.0),
               Catch::Matchers::WithinRel(0.2 * std::exp(-4.0), 1e-14));

  Envelope rc;
  rc.shape = Envelope::Shape::raised_cosine;
  rc.peak = 0.5;
  rc.start = 10.0;
  rc.duration = 8.0;
  REQUIRE_THAT(coupling_at(rc, 14.0), Catch::Matchers::WithinRel(0.5, 1e-14));
  REQUIRE_THAT(coupling_at(rc, 12.0), Catch::Matchers::WithinRel(0.25, 1e-13));
}

TEST_CASE("the raised cosine vanishes exactly at and beyond its edges", "[pulse]") {
  Envelope rc;
  rc.shape = Envelope::Shape::raised_cosine;
  rc.peak = 0.7;
  rc.start = 2.0;
  rc.duration = 3.0;
  REQUIRE(coupling_at(rc, 2.0) == 0.0);
  REQUIRE(coupling_at(rc, 5.0) == 0.0);
  REQUIRE(coupling_at(rc, 1.9) == 0.0);
  REQUIRE(coupling_at(rc, 5.1) == 0.0);
  REQUIRE(coupling_at(rc, -100.0) == 0.0);
  REQUIRE(coupling_at(rc, 3.5) == 0.7);
}

TEST_CASE("envelope validation catches bad parameters", "[pulse]") {
  Envelope e;
  e.shape = Envelope::Shape::gaussian;
  e.peak = -0.1;
  e.width = 0.0;
  REQUIRE(check(e).size() == 2);

  e.peak = 0.1;
  e.width = 1.0;
  REQUIRE(check(e).empty());

  Envelope rc;
  rc.shape = Envelope::Shape::raised_cosine;
  rc.peak = 0.1;
  rc.duration = 0.0;
  REQUIRE(check(rc).size() == 1);
  REQUIRE_THROWS_AS(pulse_area(rc, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("pulse areas match closed-form integrals", "[pulse]") {
  // raised cosine over its full support: peak * duration / 2
  Envelope rc;
  rc.shape = Envelope::Shape::raised_cosine;
  rc.peak = 0.019611613513818404;
  rc.start = 282.7433388230814;
  rc.duration = 94.24777960769379;
  REQUIRE_THAT(pulse_area(rc, 0.0, 1005.3096491487338),
               Catch::Matchers::WithinRel(0.5 * rc.peak * rc.duration, 1e-9));

  // partial raised cosine: integral of sin^2 has an elementary antiderivative
  const double a = rc.start + 0.2 * rc.duration;
  const double b = rc.start + 0.7 * rc.duration;
  auto sin2_integral = [&](double t) {
    const double u = (t - rc.start) / rc.duration;
    return rc.peak * rc.duration *
           (0.5 * u - std::sin(2.0 * std::numbers::pi * u) /
                          (4.0 * std::numbers::pi));
  };
  REQUIRE_THAT(pulse_area(rc, a, b),
               Catch::Matchers::WithinRel(sin2_integral(b) - sin2_integral(a),
                                          1e-9));

  // gaussian over (effectively) the whole line: peak * width * sqrt(pi)
  Envelope gauss;
  gauss.shape = Envelope::Shape::gaussian;
  gauss.peak = 0.4;
  gauss.center = 500.0;
  gauss.width = 3.0;
  REQUIRE_THAT(pulse_area(gauss, 0.0, 1000.0),
               Catch::Matchers::WithinRel(
                   gauss.peak * gauss.width * std::sqrt(std::numbers::pi),
                   1e-9));

  // partial gaussian via the error function
  const double lo = 498.0, hi = 505.0;
  const double erf_ref =
      gauss.peak * gauss.width * std::sqrt(std::numbers::pi) / 2.0 *
      (std::erf((hi - gauss.center) / gauss.width) -
       std::erf((lo - gauss.center) / gauss.width));
  REQUIRE_THAT(pulse_area(gauss, lo, hi),
               Catch::Matchers::WithinRel(erf_ref, 1e-9));

  // a narrow pulse buried in a wide window is not missed
  Envelope spike;
  spike.shape = Envelope::Shape::gaussian;
  spike.peak = 1.0;
  spike.center = 123456.0;
  spike.width = 0.5;
  REQUIRE_THAT(pulse_area(spike, 0.0, 1.0e6),
               Catch::Matchers::WithinRel(0.5 * std::sqrt(std::numbers::pi),
                                          1e-8));

  // zero window and disjoint support
  REQUIRE(pulse_area(rc, 50.0, 50.0) == 0.0);
  REQUIRE(pulse_area(rc, 0.0, 100.0) == 0.0);
  REQUIRE_THROWS_AS(pulse_area(rc, 1.0, 0.0), std::invalid_argument);
}
