#include <doctest.h>

#include <cmath>

#include "gsynth/det_math.hpp"
#include "gsynth/rng.hpp"

using namespace gsynth;

TEST_CASE("det::log matches libm over (0, 1] and beyond") {
    CHECK(det::log(1.0) == 0.0);
    RngStream rng = RngStream::derive(101, 0);
    for (int i = 0; i < 200000; ++i) {
        const double u = rng.next_unit_open();
        const double got = det::log(u);
        const double want = std::log(u);
        CHECK(std::fabs(got - want) <= 4e-16 * std::fabs(want) + 1e-300);
    }
    for (double x : {1e-300, 1e-12, 0.5, 2.0, 10.0, 1e12, 1e300}) {
        const double got = det::log(x);
        const double want = std::log(x);
        CHECK(got == doctest::Approx(want).epsilon(1e-15));
    }
    CHECK_THROWS(det::log(0.0));
    CHECK_THROWS(det::log(-1.0));
}

TEST_CASE("det::exp matches libm") {
    CHECK(det::exp(0.0) == 1.0);
    RngStream rng = RngStream::derive(102, 0);
    for (int i = 0; i < 200000; ++i) {
        const double x = (rng.next_unit() - 0.5) * 40.0;
        const double got = det::exp(x);
        const double want = std::exp(x);
        CHECK(std::fabs(got - want) <= 4e-16 * want);
    }
    for (double x : {-700.0, -100.0, -4.5, 1.0, 100.0, 700.0}) {
        CHECK(det::exp(x) == doctest::Approx(std::exp(x)).epsilon(1e-14));
    }
}

TEST_CASE("det::sincos_2pi hits exact lattice points") {
    double c, s;
    det::sincos_2pi(0.0, c, s);
    CHECK(c == 1.0);
    CHECK(s == 0.0);
    det::sincos_2pi(0.25, c, s);
    CHECK(std::fabs(c) == 0.0);  // cos(pi/2) reduces to an exact zero
    CHECK(s == 1.0);
    det::sincos_2pi(0.5, c, s);
    CHECK(c == -1.0);
    CHECK(std::fabs(s) == 0.0);
    det::sincos_2pi(0.75, c, s);
    CHECK(std::fabs(c) == 0.0);
    CHECK(s == -1.0);
    det::sincos_2pi(0.125, c, s);
    CHECK(c == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
    CHECK(s == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
}

TEST_CASE("det::sincos_2pi matches long-double libm everywhere") {
    RngStream rng = RngStream::derive(103, 0);
    for (int i = 0; i < 200000; ++i) {
        const double u = rng.next_unit();
        double c, s;
        det::sincos_2pi(u, c, s);
        const long double angle = 2.0L * 3.141592653589793238462643383279502884L *
                                  static_cast<long double>(u);
        CHECK(std::fabs(c - static_cast<double>(cosl(angle))) < 1e-13);
        CHECK(std::fabs(s - static_cast<double>(sinl(angle))) < 1e-13);
        CHECK(c * c + s * s == doctest::Approx(1.0).epsilon(1e-15));
    }
    double c, s;
    CHECK_THROWS(det::sincos_2pi(1.0, c, s));
    CHECK_THROWS(det::sincos_2pi(-0.1, c, s));
}
