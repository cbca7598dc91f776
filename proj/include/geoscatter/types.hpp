#pragma once

#include <complex>
#include <numbers>

#include <Eigen/Core>

namespace geoscatter {

// Natural units throughout: hbar = m = 1.
using Complex = std::complex<double>;
using Vec2 = Eigen::Vector2d;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kEulerGamma = 0.5772156649015329;
inline constexpr Complex kI{0.0, 1.0};

}  // namespace geoscatter
