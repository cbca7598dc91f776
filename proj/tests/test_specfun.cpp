#include <doctest.h>

#include <cmath>
#include <limits>

#include "geoscatter/errors.hpp"
#include "geoscatter/quad.hpp"
#include "geoscatter/specfun.hpp"

using namespace geoscatter;
using specfun::ModifiedKind;

namespace {

// sum_k (-1)^k (x^2/4)^k / (k!)^2
double series_j0(double x)
{
    double term = 1.0;
    double sum = 1.0;
    double const q = 0.25 * x * x;
    for (int k = 1; k < 20; ++k) {
        term *= -q / (double(k) * k);
        sum += term;
    }
    return sum;
}

// Y0 = (2/pi)[(ln(x/2) + gamma) J0 + sum_k (-1)^(k+1) H_k (x^2/4)^k / (k!)^2]
double series_y0(double x)
{
    double term = 1.0;
    double harmonic = 0.0;
    double sum = 0.0;
    double const q = 0.25 * x * x;
    for (int k = 1; k < 20; ++k) {
        term *= -q / (double(k) * k);
        harmonic += 1.0 / k;
        sum -= harmonic * term;
    }
    return (2.0 / kPi) * ((std::log(0.5 * x) + kEulerGamma) * series_j0(x) + sum);
}

std::vector<double> log_grid(double lo, double hi, int n)
{
    std::vector<double> out;
    for (int i = 0; i < n; ++i)
        out.push_back(lo * std::pow(hi / lo, double(i) / (n - 1)));
    return out;
}

}  // namespace

TEST_CASE("bessel_j at the origin")
{
    CHECK(specfun::bessel_j(0, 0.0) == 1.0);
    CHECK(specfun::bessel_j(1, 0.0) == 0.0);
}

TEST_CASE("J0(1) and Y0(1) against power series")
{
    double const j0 = series_j0(1.0);
    double const y0 = series_y0(1.0);
    CHECK(j0 == doctest::Approx(0.765197686557967).epsilon(1e-14));
    CHECK(y0 == doctest::Approx(0.088256964215677).epsilon(1e-13));
    CHECK(std::abs(specfun::bessel_j(0, 1.0) - j0) <= 1e-12 * j0);
    CHECK(std::abs(specfun::bessel_y(0, 1.0) - y0) <= 1e-12 * y0);

    for (double x : {0.1, 0.5, 2.0, 3.0}) {
        CHECK(std::abs(specfun::bessel_j(0, x) - series_j0(x)) <= 1e-12 * std::abs(series_j0(x)));
        CHECK(std::abs(specfun::bessel_y(0, x) - series_y0(x)) <= 1e-12 * std::abs(series_y0(x)));
    }
}

TEST_CASE("hankel1 is the bit-identical composition")
{
    Complex const h = specfun::hankel1(0, 1.0);
    CHECK(h.real() == doctest::Approx(0.765197686557967).epsilon(1e-12));
    CHECK(h.imag() == doctest::Approx(0.088256964215677).epsilon(1e-12));
    for (double x : log_grid(1e-3, 1e3, 25)) {
        for (int n : {0, 1}) {
            Complex const hn = specfun::hankel1(n, x);
            CHECK(hn.real() == specfun::bessel_j(n, x));
            CHECK(hn.imag() == specfun::bessel_y(n, x));
        }
    }
}

TEST_CASE("hankel1 asymptotics")
{
    CHECK(std::abs(specfun::hankel1(0, 100.0)) == doctest::Approx(std::sqrt(2.0 / (kPi * 100.0))).epsilon(0.01));
    double const x = 1e-6;
    Complex const leading = -kI * 2.0 / (kPi * x);
    CHECK(std::abs(specfun::hankel1(1, x) / leading - 1.0) < 1e-4);
}

TEST_CASE("Wronskians on a log grid")
{
    for (double x : log_grid(1e-3, 1e3, 61)) {
        double const w = specfun::bessel_j(0, x) * specfun::bessel_y(1, x)
                         - specfun::bessel_j(1, x) * specfun::bessel_y(0, x);
        CHECK(std::abs(w / (-2.0 / (kPi * x)) - 1.0) < 1e-10);
    }
    double const x = 2.5;
    double const w = specfun::bessel_j(0, x) * specfun::bessel_y(1, x) - specfun::bessel_j(1, x) * specfun::bessel_y(0, x);
    CHECK(std::abs(w + 2.0 / (kPi * x)) < 1e-12);

    for (double x : log_grid(1e-3, 6.5e2, 61)) {
        double const w = specfun::mod_bessel(ModifiedKind::I, 0, x) * specfun::mod_bessel(ModifiedKind::K, 1, x)
                         + specfun::mod_bessel(ModifiedKind::I, 1, x) * specfun::mod_bessel(ModifiedKind::K, 0, x);
        CHECK(std::abs(w * x - 1.0) < 1e-10);
    }
}

TEST_CASE("J0' = -J1 by central differences")
{
    double const h = 1e-5;
    for (double x = 0.1; x <= 50.0; x += 0.37) {
        double const d = (specfun::bessel_j(0, x + h) - specfun::bessel_j(0, x - h)) / (2.0 * h);
        double const j1 = specfun::bessel_j(1, x);
        if (std::abs(j1) > 1e-3)
            CHECK(std::abs(d / -j1 - 1.0) < 1e-6);
        else
            CHECK(std::abs(d + j1) < 1e-9);
    }
}

TEST_CASE("modified Bessel values")
{
    CHECK(specfun::mod_bessel(ModifiedKind::I, 0, 1e-12) == doctest::Approx(1.0).epsilon(1e-15));

    // K0(1) = int_0^inf exp(-cosh t) dt
    quad::QuadratureSpec spec;
    spec.rel_tol = 1e-14;
    spec.abs_tol = 1e-16;
    double const k0 = quad::integrate_interval([](double t) { return Complex(std::exp(-std::cosh(t))); }, 0.0,
                                               8.0, spec)
                          .value.real();
    CHECK(k0 == doctest::Approx(0.421024438240708).epsilon(1e-13));
    CHECK(std::abs(specfun::mod_bessel(ModifiedKind::K, 0, 1.0) - k0) <= 1e-10 * k0);
}

TEST_CASE("specfun domain errors")
{
    CHECK_THROWS_AS(specfun::bessel_j(0, -1.0), DomainError);
    CHECK_THROWS_AS(specfun::bessel_j(2, 1.0), DomainError);
    CHECK_THROWS_AS(specfun::bessel_j(0, std::numeric_limits<double>::infinity()), DomainError);
    CHECK_THROWS_AS(specfun::bessel_y(0, 0.0), DomainError);
    CHECK_THROWS_AS(specfun::hankel1(1, 0.0), DomainError);
    CHECK_THROWS_AS(specfun::mod_bessel(ModifiedKind::K, 0, 0.0), DomainError);
    CHECK_THROWS_AS(specfun::mod_bessel(ModifiedKind::I, 0, 701.0), OverflowError);
    CHECK_NOTHROW(specfun::mod_bessel(ModifiedKind::I, 1, 700.0));
}
