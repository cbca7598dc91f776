#pragma once

#include <functional>

#include "geoscatter/types.hpp"

namespace geoscatter::quad {

/*!
 * Tolerances and truncation for the semi-infinite radial integrals.
 *
 * The truncation radius is expressed in units of the caller's length scale
 * (the profile width sigma for production integrals). Every production
 * integrand carries a Gaussian factor exp(-r^2/sigma^2), so 10 sigma leaves a
 * tail below 1e-43.
 */
struct QuadratureSpec {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    double truncation_radius = 10.0;
    int max_subdivisions = 4000;

    // Throws InvalidConfigurationError when a field is out of range.
    void validate() const;
};

using RealFunction = std::function<double(double)>;
using ComplexFunction = std::function<Complex(double)>;
using PlaneFunction = std::function<Complex(double x, double y)>;

struct Estimate {
    Complex value;
    double error = 0;
    int subdivisions = 0;
};

/*!
 * Adaptive 21-point Gauss-Kronrod integration over the closed interval
 * [a, b]. Endpoints are never sampled, so integrable endpoint singularities
 * (r ln^2 r) are allowed. Converges when the summed error estimate drops
 * below max(abs_tol, rel_tol |result|); otherwise throws ConvergenceError.
 */
Estimate integrate_interval(ComplexFunction const& f, double a, double b,
                            QuadratureSpec const& spec);

//! Integral of f over (0, inf), truncated at spec.truncation_radius * length_scale.
Complex integrate_radial(ComplexFunction const& f, QuadratureSpec const& spec,
                         double length_scale = 1.0);

double integrate_radial_real(RealFunction const& f, QuadratureSpec const& spec,
                             double length_scale = 1.0);

/*!
 * Integral of f(x, y) over the disc of radius bounding_radius, evaluated as
 * nested adaptive quadrature in polar coordinates. The origin is never
 * sampled.
 */
Complex integrate_plane(PlaneFunction const& f, double bounding_radius,
                        QuadratureSpec const& spec);

}  // namespace geoscatter::quad
