#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "geoscatter/types.hpp"

namespace geoscatter {

/*!
 * Height profile z = f(r) of a cylindrically symmetric surface.
 *
 * The first and second derivatives are supplied analytically. Admissible
 * profiles satisfy fdot(0) = 0, fdot -> 0 at infinity, and have finite
 * limits of fdot(r)/r and fddot(r) at the origin; see check_admissible().
 */
class RadialProfile {
  public:
    using Fn = std::function<double(double)>;

    RadialProfile(Fn f, Fn fdot, Fn fddot, double sigma_scale, std::string name = "custom");

    static RadialProfile flat(double sigma_scale = 1.0);

    double height(double r) const { return f_(r); }
    double slope(double r) const { return fdot_(r); }
    double second_derivative(double r) const { return fddot_(r); }
    double sigma_scale() const noexcept { return sigma_scale_; }
    std::string const& name() const noexcept { return name_; }
    bool is_flat() const noexcept { return flat_; }

    /*!
     * Numerical admissibility checks. Throws InvalidConfigurationError when
     * |fdot| exceeds 1e-10 at r = 0 or r = 20 sigma. Returns warnings when
     * |G(r)| r^{1/4} fails to be small at r = 15 sigma.
     */
    std::vector<std::string> check_admissible() const;

  private:
    Fn f_;
    Fn fdot_;
    Fn fddot_;
    double sigma_scale_;
    std::string name_;
    bool flat_ = false;
};

// z = delta exp(-r^2 / (2 sigma^2))
struct GaussianBumpParams {
    double delta = 0;
    double sigma = 1;

    static GaussianBumpParams from_eta(double eta, double sigma);

    double eta() const { return delta * delta / (sigma * sigma); }
    // Dimensionless wavenumber k sigma.
    double dimensionless_k(double k) const { return k * sigma; }

    void validate() const;
};

RadialProfile gaussian_profile(GaussianBumpParams const& params);

// G = fdot / sqrt(1 + fdot^2) together with its r-derivative.
struct SlopeValue {
    double g;
    double gdot;
};

SlopeValue slope_function(RadialProfile const& profile, double r);

struct Curvatures {
    double gaussian;  // K
    double mean;      // M
};

// K = G Gdot / r, M = (G/r + Gdot)/2; analytic limits at r = 0.
Curvatures curvatures(RadialProfile const& profile, double r);

// C = lambda1 K + lambda2 M^2
double curvature_potential(RadialProfile const& profile, double r, double lambda1, double lambda2);

/*!
 * One bump of a multi-bump surface. Gaussian parameters are kept when the
 * profile came from them so scenarios can be written back out.
 */
struct SurfaceBump {
    RadialProfile profile;
    Vec2 center = Vec2::Zero();
    std::optional<GaussianBumpParams> gaussian;
};

/*!
 * Superposition of well-separated bumps. Never evaluated as one profile:
 * each bump contributes independently to the geometric amplitude.
 */
struct MultiBumpSurface {
    std::vector<SurfaceBump> bumps;

    bool empty() const noexcept { return bumps.empty(); }
    void add_gaussian(GaussianBumpParams const& params, Vec2 const& center);

    // Pairs closer than 3 (sigma_m + sigma_m') produce a warning each.
    std::vector<std::string> separation_warnings() const;

    // Same centers, every profile replaced by the flat one.
    MultiBumpSurface flattened() const;
};

}  // namespace geoscatter
