#include "geoscatter/planar_oracle.hpp"

#include <cmath>

#include "geoscatter/specfun.hpp"

namespace geoscatter::planar {
namespace {

// Coefficients of L at radius r.
struct Operator {
    double g2;    // G^2
    double mg2;   // 2 M G
    double c2;    // 2 C
};

Operator coefficients(RadialProfile const& profile, double r, double lambda1, double lambda2)
{
    double const g = slope_function(profile, r).g;
    double const m = curvatures(profile, r).mean;
    return {g * g, 2.0 * m * g, 2.0 * curvature_potential(profile, r, lambda1, lambda2)};
}

// L exp(i q.x) at (x, y)
Complex apply_plane_wave(Operator const& op, Vec2 const& q, double x, double y)
{
    double const r = std::hypot(x, y);
    double const qr = (q.x() * x + q.y() * y) / r;  // radial component of q
    Complex const wave = std::polar(1.0, q.x() * x + q.y() * y);
    return (-op.g2 * qr * qr + kI * op.mg2 * qr + op.c2) * wave;
}

// L H0(k r); H0' = -k H1, H0'' = -k^2 H0 + k H1 / r
Complex apply_hankel(Operator const& op, double k, double r)
{
    Complex const h0 = specfun::hankel1(0, k * r);
    Complex const h1 = specfun::hankel1(1, k * r);
    return op.g2 * (-k * k * h0 + k * h1 / r) - op.mg2 * k * h1 + op.c2 * h0;
}

double disc_radius(RadialProfile const& profile, quad::QuadratureSpec const& spec)
{
    return spec.truncation_radius * profile.sigma_scale();
}

}  // namespace

Complex J(RadialProfile const& profile, Vec2 const& p, Vec2 const& q, double lambda1, double lambda2,
          quad::QuadratureSpec const& spec)
{
    if (profile.is_flat())
        return {};
    auto integrand = [&](double x, double y) {
        double const r = std::hypot(x, y);
        Operator const op = coefficients(profile, r, lambda1, lambda2);
        return std::polar(1.0, -(p.x() * x + p.y() * y)) * apply_plane_wave(op, q, x, y);
    };
    return quad::integrate_plane(integrand, disc_radius(profile, spec), spec);
}

Complex I0(RadialProfile const& profile, Kinematics const& kin, double lambda1, double lambda2,
           quad::QuadratureSpec const& spec)
{
    return J(profile, kin.outgoing(), kin.incident(), lambda1, lambda2, spec);
}

Complex I11(RadialProfile const& profile, Kinematics const& kin, double lambda1, double lambda2,
            quad::QuadratureSpec const& spec)
{
    if (profile.is_flat())
        return {};
    double const k = kin.k;
    Vec2 const kin_vec = kin.incident();
    Vec2 const kout = kin.outgoing();
    auto integrand = [&](double x, double y) {
        double const r = std::hypot(x, y);
        Operator const op = coefficients(profile, r, lambda1, lambda2);
        Complex const h0 = specfun::hankel1(0, k * r);
        return h0 * apply_plane_wave(op, kin_vec, x, y)
               + std::polar(1.0, -(kout.x() * x + kout.y() * y)) * apply_hankel(op, k, r);
    };
    return quad::integrate_plane(integrand, disc_radius(profile, spec), spec);
}

Complex I1111(RadialProfile const& profile, double k, double lambda1, double lambda2,
              quad::QuadratureSpec const& spec)
{
    if (profile.is_flat())
        return {};
    auto integrand = [&](double x, double y) {
        double const r = std::hypot(x, y);
        Operator const op = coefficients(profile, r, lambda1, lambda2);
        return specfun::hankel1(0, k * r) * apply_hankel(op, k, r);
    };
    return quad::integrate_plane(integrand, disc_radius(profile, spec), spec);
}

}  // namespace geoscatter::planar
