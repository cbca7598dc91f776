#include <doctest.h>

#include <cmath>
#include <random>

#include "geoscatter/errors.hpp"
#include "geoscatter/surface.hpp"

using namespace geoscatter;

namespace {

RadialProfile bump(double eta, double sigma = 1.0) { return gaussian_profile(GaussianBumpParams::from_eta(eta, sigma)); }

}  // namespace

TEST_CASE("flat profile")
{
    auto const flat = RadialProfile::flat();
    for (double r : {0.0, 0.3, 2.0}) {
        CHECK(slope_function(flat, r).g == 0.0);
        auto const c = curvatures(flat, r);
        CHECK(c.gaussian == 0.0);
        CHECK(c.mean == 0.0);
        CHECK(curvature_potential(flat, r, 0.5, -0.5) == 0.0);
    }
    CHECK(flat.is_flat());
    CHECK(flat.check_admissible().empty());
}

TEST_CASE("slope function of the Gaussian bump")
{
    double const sigma = 1.7;
    auto const p = gaussian_profile({sigma * std::sqrt(0.1), sigma});
    double const expected = -std::sqrt(0.1) * std::exp(-0.5) / std::sqrt(1.0 + 0.1 * std::exp(-1.0));
    CHECK(expected == doctest::Approx(-0.18836828761213373).epsilon(1e-14));
    CHECK(slope_function(p, sigma).g == doctest::Approx(expected).epsilon(1e-14));

    // fdot from a finite difference of f
    double const h = 1e-6;
    double const fd = (p.height(sigma + h) - p.height(sigma - h)) / (2 * h);
    CHECK(fd / std::sqrt(1 + fd * fd) == doctest::Approx(expected).epsilon(1e-8));

    double const r = 15.0 * sigma;
    CHECK(std::abs(slope_function(p, r).g) * std::pow(r, 0.25) < 1e-40);
}

TEST_CASE("analytic Gdot against finite differences")
{
    auto const p = bump(0.4, 1.3);
    for (double r = 0.013; r <= 13.0; r *= 1.3) {
        double const h = 1e-5 * 1.3;
        double const fd = (slope_function(p, r + h).g - slope_function(p, r - h).g) / (2 * h);
        double const gdot = slope_function(p, r).gdot;
        if (std::abs(gdot) > 1e-8)
            CHECK(std::abs(fd / gdot - 1.0) <= 1e-6);
        else
            CHECK(std::abs(fd - gdot) <= 1e-12);
    }
}

TEST_CASE("curvature identities")
{
    auto const p = bump(0.3, 0.8);
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(1e-3, 4.0);
    for (int i = 0; i < 50; ++i) {
        double const r = u(rng);
        auto const [g, gdot] = slope_function(p, r);
        auto const [k, m] = curvatures(p, r);
        double const lhs = g * g + r * r * gdot * gdot;
        CHECK(lhs == doctest::Approx(2 * r * r * (2 * m * m - k)).epsilon(1e-12));
        if (m * m >= k) {
            double const plus = r * (m + std::sqrt(m * m - k));
            double const minus = r * (m - std::sqrt(m * m - k));
            CHECK(std::min(std::abs(g - plus), std::abs(g - minus)) <= 1e-12 * std::max(1.0, std::abs(g)));
        }
    }
    auto const c0 = curvatures(p, 0.0);
    CHECK(std::isfinite(c0.gaussian));
    CHECK(std::isfinite(c0.mean));
    auto const near = curvatures(p, 1e-6);
    CHECK(c0.gaussian == doctest::Approx(near.gaussian).epsilon(1e-9));
    CHECK(c0.mean == doctest::Approx(near.mean).epsilon(1e-9));
}

TEST_CASE("curvature potential")
{
    auto const p = bump(0.1);
    CHECK(curvature_potential(p, 0.7, 0.0, 0.0) == 0.0);

    // 4C = eta e^{-u} [-4 lambda1 (u - 1) + lambda2 (u - 2)^2] / sigma^2 at first order, u = r^2/sigma^2
    double const eta = 1e-6;
    double const l1 = 0.5;
    double const l2 = -0.5;
    for (double sigma : {1.0, 2.5}) {
        auto const small = bump(eta, sigma);
        for (double r : {0.0, 0.3, 1.0, 1.9, 3.3}) {
            double const u = r * r / (sigma * sigma);
            double const coeff = std::exp(-u) * (-4 * l1 * (u - 1) + l2 * (u - 2) * (u - 2)) / (sigma * sigma);
            double const numeric = 4.0 * (curvature_potential(small, r, l1, l2) - 0.0) / eta;
            CHECK(numeric == doctest::Approx(coeff).epsilon(1e-4));
        }
    }
}

TEST_CASE("integrand factors of the Gaussian profile vanish at 10 sigma")
{
    auto const p = bump(0.1, 0.5);
    double const r = 10 * 0.5;
    auto const [g, gdot] = slope_function(p, r);
    auto const [k, m] = curvatures(p, r);
    CHECK(g * g < 1e-30);
    CHECK(gdot * gdot < 1e-30);
    CHECK(std::abs(k) < 1e-30);
    CHECK(m * m < 1e-30);
    CHECK(std::abs(g) < 1e-20);
}

TEST_CASE("admissibility checks")
{
    CHECK(bump(0.1).check_admissible().empty());

    auto const tilted = RadialProfile([](double r) { return r; }, [](double) { return 1.0; },
                                      [](double) { return 0.0; }, 1.0, "cone");
    CHECK_THROWS_AS(tilted.check_admissible(), InvalidConfigurationError);

    // slope decaying like r^-8 passes at 20 sigma but fails the r^{1/4} bound at 15 sigma
    auto const slow = RadialProfile([](double) { return 0.0; },
                                    [](double r) { return r / std::pow(1.0 + r * r, 4.5) * 1e2; },
                                    [](double) { return 0.0; }, 0.5, "slow");
    CHECK_THROWS_AS(slow.check_admissible(), InvalidConfigurationError);
    auto const slower = RadialProfile([](double) { return 0.0; },
                                      [](double r) { return r * std::exp(-r) * 1e-4; },
                                      [](double) { return 0.0; }, 1.0, "slower");
    CHECK(slower.check_admissible().size() == 1);
}

TEST_CASE("Gaussian parameters")
{
    auto const b = GaussianBumpParams::from_eta(0.1, 2.0);
    CHECK(b.eta() == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(b.dimensionless_k(1.5) == doctest::Approx(3.0));
    CHECK_THROWS_AS(gaussian_profile({0.1, 0.0}), InvalidConfigurationError);
    CHECK_THROWS_AS(GaussianBumpParams::from_eta(-1.0, 1.0), InvalidConfigurationError);
    CHECK_THROWS_AS(slope_function(bump(0.1), -1.0), DomainError);
}

TEST_CASE("multi-bump separation warnings")
{
    MultiBumpSurface s;
    s.add_gaussian(GaussianBumpParams::from_eta(0.1, 1.0), {-3, 0});
    s.add_gaussian(GaussianBumpParams::from_eta(0.1, 1.0), {3, 0});
    CHECK(s.separation_warnings().empty());
    s.add_gaussian(GaussianBumpParams::from_eta(0.1, 1.0), {0, 3});
    CHECK(s.separation_warnings().size() == 2);
    auto const flat = s.flattened();
    CHECK(flat.bumps.size() == 3);
    CHECK(flat.bumps[2].profile.is_flat());
    CHECK(flat.bumps[2].center == Vec2(0, 3));
}
