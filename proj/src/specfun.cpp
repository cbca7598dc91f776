#include "geoscatter/specfun.hpp"

#include <cmath>
#include <string>

#include <boost/math/special_functions/bessel.hpp>

#include "geoscatter/errors.hpp"

namespace geoscatter::specfun {
namespace {

void check_order(int order, char const* fn)
{
    if (order != 0 && order != 1)
        throw DomainError(std::string(fn) + ": only orders 0 and 1 are supported, got "
                          + std::to_string(order));
}

void check_positive(double x, char const* fn)
{
    if (!std::isfinite(x) || x <= 0.0)
        throw DomainError(std::string(fn) + ": argument must be finite and > 0, got "
                          + std::to_string(x));
}

}  // namespace

double bessel_j(int order, double x)
{
    check_order(order, "bessel_j");
    if (!std::isfinite(x) || x < 0.0)
        throw DomainError("bessel_j: argument must be finite and >= 0, got " + std::to_string(x));
    if (x == 0.0)
        return order == 0 ? 1.0 : 0.0;
    return boost::math::cyl_bessel_j(order, x);
}

double bessel_y(int order, double x)
{
    check_order(order, "bessel_y");
    check_positive(x, "bessel_y");
    return boost::math::cyl_neumann(order, x);
}

Complex hankel1(int order, double x)
{
    check_order(order, "hankel1");
    check_positive(x, "hankel1");
    return {bessel_j(order, x), bessel_y(order, x)};
}

double mod_bessel(ModifiedKind kind, int order, double x)
{
    check_order(order, "mod_bessel");
    check_positive(x, "mod_bessel");
    if (kind == ModifiedKind::I) {
        if (x > kModifiedIMaxArgument)
            throw OverflowError("mod_bessel: I_n(x) overflow guard exceeded at x = "
                                + std::to_string(x));
        return boost::math::cyl_bessel_i(order, x);
    }
    return boost::math::cyl_bessel_k(order, x);
}

}  // namespace geoscatter::specfun
