#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "annealm/special.hpp"

using namespace annealm;

namespace {

// bisection oracle for w * exp(w) = x, independent of the Halley route
double w0_bisect(double x) {
  double lo = -1.0, hi = 710.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid * std::exp(mid) < x)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("lambert w0 anchor values") {
  CHECK(lambert_w0(0.0) == 0.0);
  CHECK(lambert_w0(std::numbers::e) == doctest::Approx(1.0).epsilon(1e-14));
  // omega constant, cross-checked against the bisection oracle
  CHECK(lambert_w0(1.0) == doctest::Approx(0.5671432904097838).epsilon(1e-12));
  CHECK(lambert_w0(1.0) == doctest::Approx(w0_bisect(1.0)).epsilon(1e-12));
  CHECK(lambert_w0(-1.0 / std::numbers::e) ==
        doctest::Approx(-1.0).epsilon(1e-6));
}

TEST_CASE("lambert w0 satisfies its defining identity") {
  for (double x : {-0.36, -0.3, -0.1, 1e-9, 0.25, 1.0, 2.0, 6.9022, 100.0,
                   1e6, 1e12}) {
    const double w = lambert_w0(x);
    CHECK(w * std::exp(w) == doctest::Approx(x).epsilon(1e-12));
  }
}

TEST_CASE("lambert w0 from log handles overflowing arguments") {
  // log-domain evaluation agrees with the direct one where both work
  for (double lx : {-5.0, 0.0, 10.0, 35.0, 100.0, 700.0}) {
    const double w = lambert_w0_from_log(lx);
    CHECK(w + std::log(w) == doctest::Approx(lx).epsilon(1e-12));
  }
  // far beyond exp overflow
  const double w = lambert_w0_from_log(3.125e8);
  CHECK(w + std::log(w) == doctest::Approx(3.125e8).epsilon(1e-12));
}

TEST_CASE("lambert w0 domain error") {
  CHECK_THROWS_AS(lambert_w0(-0.5), std::domain_error);
  CHECK_THROWS_AS(lambert_w0(std::nan("")), std::domain_error);
}

TEST_CASE("normal density and distribution") {
  CHECK(norm_pdf(0.0) == doctest::Approx(0.3989422804014327).epsilon(1e-15));
  CHECK(norm_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(norm_cdf(1.96) == doctest::Approx(0.9750021048517796).epsilon(1e-12));
  CHECK(norm_cdf(-1.96) + norm_cdf(1.96) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("logistic is stable at extreme arguments") {
  CHECK(logistic(0.0) == 0.5);
  CHECK(logistic(800.0) == 1.0);
  CHECK(logistic(-800.0) == 0.0);
  CHECK(logistic(3.0) + logistic(-3.0) == doctest::Approx(1.0).epsilon(1e-15));
}
