#pragma once

#include "geoscatter/types.hpp"

namespace geoscatter::specfun {

/*!
 * Cylinder functions of orders 0 and 1 for real, non-negative arguments.
 *
 * Accuracy: relative 1e-12 for J and Y with x <= 1e4 (absolute 1e-13 near
 * zeros), relative 1e-10 for I and K. All functions are pure and reentrant.
 * Invalid orders or arguments raise DomainError; I beyond x = 700 raises
 * OverflowError.
 */
double bessel_j(int order, double x);
double bessel_y(int order, double x);

// J_order(x) + i Y_order(x); components are bit-identical to bessel_j/bessel_y.
Complex hankel1(int order, double x);

enum class ModifiedKind { I, K };

double mod_bessel(ModifiedKind kind, int order, double x);

// Largest argument accepted by mod_bessel(ModifiedKind::I, ...).
inline constexpr double kModifiedIMaxArgument = 700.0;

}  // namespace geoscatter::specfun
