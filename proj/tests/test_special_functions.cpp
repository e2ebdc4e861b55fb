#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "l1ldp/rng.hpp"
#include "l1ldp/special_functions.hpp"
#include "reference_values.hpp"

namespace {

// Log-spaced grid in [lo, hi].
std::vector<double> log_grid(double lo, double hi, int points) {
    std::vector<double> grid;
    grid.reserve(points);
    const double step = (std::log(hi) - std::log(lo)) / (points - 1);
    for (int i = 0; i < points; ++i) {
        grid.push_back(std::exp(std::log(lo) + i * step));
    }
    return grid;
}

}  // namespace

TEST_CASE("erf matches high-precision references") {
    CHECK(l1ldp::erf(0.1) == doctest::Approx(refvals::erf_0_1).epsilon(1e-14));
    CHECK(l1ldp::erf(0.5) == doctest::Approx(refvals::erf_0_5).epsilon(1e-14));
    CHECK(l1ldp::erf(1.0) == doctest::Approx(refvals::erf_1).epsilon(1e-14));
    CHECK(l1ldp::erf(2.0) == doctest::Approx(refvals::erf_2).epsilon(1e-14));
    CHECK(l1ldp::erf(3.0) == doctest::Approx(refvals::erf_3).epsilon(1e-14));
    CHECK(l1ldp::erf(5.0) == doctest::Approx(refvals::erf_5).epsilon(1e-14));
    CHECK(l1ldp::erf(-1.0) == doctest::Approx(-refvals::erf_1).epsilon(1e-14));
    CHECK(l1ldp::erf(0.0) == 0.0);
}

TEST_CASE("erfc matches references including deep tails") {
    CHECK(l1ldp::erfc(0.5) == doctest::Approx(refvals::erfc_0_5).epsilon(1e-14));
    CHECK(l1ldp::erfc(1.0) == doctest::Approx(refvals::erfc_1).epsilon(1e-14));
    CHECK(l1ldp::erfc(2.0) == doctest::Approx(refvals::erfc_2).epsilon(1e-13));
    CHECK(l1ldp::erfc(4.0) == doctest::Approx(refvals::erfc_4).epsilon(1e-13));
    CHECK(l1ldp::erfc(6.0) == doctest::Approx(refvals::erfc_6).epsilon(1e-13));
    CHECK(l1ldp::erfc(8.0) == doctest::Approx(refvals::erfc_8).epsilon(1e-13));
    CHECK(l1ldp::erfc(10.0) == doctest::Approx(refvals::erfc_10).epsilon(1e-13));
}

TEST_CASE("erfinv matches references") {
    CHECK(l1ldp::erfinv(0.5) == doctest::Approx(refvals::erfinv_0_5).epsilon(1e-13));
    CHECK(l1ldp::erfinv(0.9) == doctest::Approx(refvals::erfinv_0_9).epsilon(1e-13));
    CHECK(l1ldp::erfinv(0.99) ==
          doctest::Approx(refvals::erfinv_0_99).epsilon(1e-13));
    CHECK(l1ldp::erfinv(0.1) == doctest::Approx(refvals::erfinv_0_1).epsilon(1e-13));
    CHECK(l1ldp::erfinv(1e-8) ==
          doctest::Approx(refvals::erfinv_1e8).epsilon(1e-13));
    CHECK(l1ldp::erfinv(0.999999) ==
          doctest::Approx(refvals::erfinv_0_999999).epsilon(1e-13));
    CHECK(l1ldp::erfinv(-0.73) ==
          doctest::Approx(refvals::erfinv_m0_73).epsilon(1e-13));
    CHECK(l1ldp::erfinv(0.0) == 0.0);
}

TEST_CASE("gaussian upper tail Q") {
    CHECK(l1ldp::gaussian_q(1.6448536269514722) ==
          doctest::Approx(refvals::q_of_1_6448536269514722).epsilon(1e-13));
    CHECK(l1ldp::gaussian_q(10.0) == doctest::Approx(refvals::q_of_10).epsilon(1e-13));
    CHECK(l1ldp::gaussian_q(0.0) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("round trips erf <-> erfinv stay below 1e-12") {
    // p-side round trip: erf(erfinv(p)) = p on a log-spaced grid of p.  This
    // direction is well conditioned for every p because erf contracts the
    // inverse's sensitivity back out.
    for (double p : log_grid(1e-12, 0.999999, 80)) {
        const double x = l1ldp::erfinv(p);
        CHECK(std::abs(l1ldp::erf(x) - p) <= 1e-12 * std::max(1.0, std::abs(p)));
        const double xm = l1ldp::erfinv(-p);
        CHECK(std::abs(l1ldp::erf(xm) + p) <= 1e-12);
    }
    // 1e4 random p in (-0.999, 0.999).
    const l1ldp::CounterRng rng(20260816);
    for (std::uint64_t i = 0; i < 10000; ++i) {
        const double p = (2.0 * rng.uniform(i) - 1.0) * 0.999;
        CHECK(std::abs(l1ldp::erf(l1ldp::erfinv(p)) - p) < 1e-12);
    }
    // x-side round trip.  Beyond x ~ 2.5 the inverse amplifies the rounding
    // of p = erf(x) by exp(x^2), so 1e-12 is only attainable below that.
    for (double x : log_grid(1e-6, 2.5, 60)) {
        const double p = l1ldp::erf(x);
        CHECK(std::abs(l1ldp::erfinv(p) - x) <= 1e-12 * std::max(1.0, x));
    }
}

TEST_CASE("gaussian Q tail sandwich holds strictly") {
    // x/(1+x^2) phi(x) < Q(x) < phi(x)/x with phi the standard normal density.
    for (double x : log_grid(1e-2, 8.0, 60)) {
        const double phi = std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
        const double q = l1ldp::gaussian_q(x);
        CHECK(q > x / (1.0 + x * x) * phi);
        CHECK(q < phi / x);
    }
}

TEST_CASE("erfc sandwich holds on a log-spaced grid") {
    // 2/sqrt(pi) e^{-y^2}/(y + sqrt(y^2+2)) < erfc(y)
    //   <= 2/sqrt(pi) e^{-y^2}/(y + sqrt(y^2+4/pi)).
    for (double y : log_grid(1e-2, 10.0, 60)) {
        const double common = 2.0 / std::sqrt(M_PI) * std::exp(-y * y);
        const double lower = common / (y + std::sqrt(y * y + 2.0));
        const double upper = common / (y + std::sqrt(y * y + 4.0 / M_PI));
        const double e = l1ldp::erfc(y);
        CHECK(e > lower);
        CHECK(e <= upper);
    }
}

TEST_CASE("domain errors on invalid inputs") {
    CHECK_THROWS_AS((void)l1ldp::erfinv(1.0), std::domain_error);
    CHECK_THROWS_AS((void)l1ldp::erfinv(-1.0), std::domain_error);
    CHECK_THROWS_AS((void)l1ldp::erfinv(1.5), std::domain_error);
    CHECK_THROWS_AS((void)l1ldp::erfinv(std::nan("")), std::domain_error);
    CHECK_THROWS_AS((void)l1ldp::erf(std::nan("")), std::domain_error);
    CHECK_THROWS_AS((void)l1ldp::erfc(std::nan("")), std::domain_error);
    CHECK_THROWS_AS((void)l1ldp::gaussian_q(std::nan("")), std::domain_error);
}

TEST_CASE("default accuracy targets") {
    const l1ldp::Accuracy acc;
    CHECK(acc.abs_tol == 1e-13);
    CHECK(acc.rel_tol == 1e-12);
}
