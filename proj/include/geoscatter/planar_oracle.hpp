#pragma once

#include "geoscatter/plane_defects.hpp"
#include "geoscatter/quad.hpp"
#include "geoscatter/surface.hpp"
#include "geoscatter/types.hpp"

namespace geoscatter::planar {

/*!
 * Brute-force reference values: the surface operator
 * L = G^2 d_r^2 + 2 M G d_r + 2 C is applied pointwise to plane waves and
 * to H0(k r), and the products are integrated over the disc of radius
 * spec.truncation_radius * sigma with nested polar quadrature. Nothing here
 * uses the radial reductions, so the results serve as an independent check
 * of them. Expect these to be orders of magnitude slower.
 */

// int d^2x exp(-i p.x) L exp(i q.x)
Complex J(RadialProfile const& profile, Vec2 const& p, Vec2 const& q, double lambda1, double lambda2,
          quad::QuadratureSpec const& spec);

// J(k', k)
Complex I0(RadialProfile const& profile, Kinematics const& kin, double lambda1, double lambda2,
           quad::QuadratureSpec const& spec);

// int d^2x [H0(k r) L exp(i k.x) + exp(-i k'.x) L H0(k r)]
Complex I11(RadialProfile const& profile, Kinematics const& kin, double lambda1, double lambda2,
            quad::QuadratureSpec const& spec);

// int d^2x H0(k r) L H0(k r)
Complex I1111(RadialProfile const& profile, double k, double lambda1, double lambda2,
              quad::QuadratureSpec const& spec);

}  // namespace geoscatter::planar
