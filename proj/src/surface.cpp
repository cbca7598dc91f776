#include "geoscatter/surface.hpp"

#include <cmath>
#include <sstream>

#include "geoscatter/errors.hpp"

namespace geoscatter {

RadialProfile::RadialProfile(Fn f, Fn fdot, Fn fddot, double sigma_scale, std::string name)
    : f_(std::move(f)),
      fdot_(std::move(fdot)),
      fddot_(std::move(fddot)),
      sigma_scale_(sigma_scale),
      name_(std::move(name))
{
    if (!f_ || !fdot_ || !fddot_)
        throw InvalidConfigurationError("RadialProfile: f, fdot and fddot are all required");
    if (!(sigma_scale_ > 0) || !std::isfinite(sigma_scale_))
        throw InvalidConfigurationError("RadialProfile: sigma_scale must be finite and > 0");
}

RadialProfile RadialProfile::flat(double sigma_scale)
{
    auto zero = [](double) { return 0.0; };
    RadialProfile p(zero, zero, zero, sigma_scale, "flat");
    p.flat_ = true;
    return p;
}

std::vector<std::string> RadialProfile::check_admissible() const
{
    constexpr double tol = 1e-10;
    double const s = sigma_scale_;
    if (std::abs(fdot_(0.0)) > tol)
        throw InvalidConfigurationError("RadialProfile '" + name_ + "': fdot(0) must vanish");
    if (std::abs(fdot_(20.0 * s)) > tol)
        throw InvalidConfigurationError("RadialProfile '" + name_
                                        + "': surface is not asymptotically flat (fdot(20 sigma) != 0)");

    std::vector<std::string> warnings;
    double const r = 15.0 * s;
    double const g = slope_function(*this, r).g;
    if (std::abs(g) * std::pow(r, 0.25) > tol) {
        std::ostringstream msg;
        msg << "profile '" << name_ << "': |G(r)| r^(1/4) = " << std::abs(g) * std::pow(r, 0.25)
            << " at r = 15 sigma; slope decay may be too slow for the boundary term to vanish";
        warnings.push_back(msg.str());
    }
    return warnings;
}

GaussianBumpParams GaussianBumpParams::from_eta(double eta, double sigma)
{
    if (!(eta >= 0))
        throw InvalidConfigurationError("GaussianBumpParams: eta must be >= 0");
    return {sigma * std::sqrt(eta), sigma};
}

void GaussianBumpParams::validate() const
{
    if (!(sigma > 0) || !std::isfinite(sigma))
        throw InvalidConfigurationError("GaussianBumpParams: sigma must be finite and > 0");
    if (!std::isfinite(delta))
        throw InvalidConfigurationError("GaussianBumpParams: delta must be finite");
}

RadialProfile gaussian_profile(GaussianBumpParams const& params)
{
    params.validate();
    double const delta = params.delta;
    double const s2 = params.sigma * params.sigma;
    auto f = [=](double r) { return delta * std::exp(-0.5 * r * r / s2); };
    auto fdot = [=](double r) { return -(delta * r / s2) * std::exp(-0.5 * r * r / s2); };
    auto fddot = [=](double r) { return (delta / s2) * (r * r / s2 - 1.0) * std::exp(-0.5 * r * r / s2); };
    std::ostringstream name;
    name << "gaussian(delta=" << delta << ", sigma=" << params.sigma << ")";
    return {f, fdot, fddot, params.sigma, name.str()};
}

SlopeValue slope_function(RadialProfile const& profile, double r)
{
    if (!(r >= 0))
        throw DomainError("slope_function: r must be >= 0");
    double const fd = profile.slope(r);
    double const fdd = profile.second_derivative(r);
    double const w = 1.0 + fd * fd;
    return {fd / std::sqrt(w), fdd / (w * std::sqrt(w))};
}

Curvatures curvatures(RadialProfile const& profile, double r)
{
    if (!(r >= 0))
        throw DomainError("curvatures: r must be >= 0");
    auto const [g, gdot] = slope_function(profile, r);
    if (r == 0.0) {
        // G ~ Gdot(0) r near the apex.
        return {gdot * gdot, gdot};
    }
    double const g_over_r = g / r;
    return {g_over_r * gdot, 0.5 * (g_over_r + gdot)};
}

double curvature_potential(RadialProfile const& profile, double r, double lambda1, double lambda2)
{
    auto const [k, m] = curvatures(profile, r);
    return lambda1 * k + lambda2 * m * m;
}

void MultiBumpSurface::add_gaussian(GaussianBumpParams const& params, Vec2 const& center)
{
    bumps.push_back({gaussian_profile(params), center, params});
}

std::vector<std::string> MultiBumpSurface::separation_warnings() const
{
    std::vector<std::string> warnings;
    for (std::size_t m = 0; m < bumps.size(); ++m) {
        for (std::size_t n = m + 1; n < bumps.size(); ++n) {
            double const d = (bumps[m].center - bumps[n].center).norm();
            double const need = 3.0 * (bumps[m].profile.sigma_scale() + bumps[n].profile.sigma_scale());
            if (d < need) {
                std::ostringstream msg;
                msg << "bumps " << m << " and " << n << " are " << d << " apart (< " << need
                    << "); superposition of independent bump amplitudes may be inaccurate";
                warnings.push_back(msg.str());
            }
        }
    }
    return warnings;
}

MultiBumpSurface MultiBumpSurface::flattened() const
{
    MultiBumpSurface out;
    for (auto const& b : bumps)
        out.bumps.push_back({RadialProfile::flat(b.profile.sigma_scale()), b.center, std::nullopt});
    return out;
}

}  // namespace geoscatter
