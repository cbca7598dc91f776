#include "geoscatter/quad.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <sstream>
#include <vector>

#include "geoscatter/errors.hpp"

namespace geoscatter::quad {
namespace {

// Kronrod 21-point abscissae on [-1, 1] (non-negative half); odd indices are
// the embedded 10-point Gauss nodes.
constexpr std::array<double, 11> kKronrodNodes = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000,
};

constexpr std::array<double, 11> kKronrodWeights = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208067578300, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
};

constexpr std::array<double, 5> kGaussWeights = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
};

constexpr int kInitialPieces = 8;

struct Panel {
    double a;
    double b;
    Complex value;
    double error;

    bool operator<(Panel const& other) const { return error < other.error; }
};

Panel gauss_kronrod(ComplexFunction const& f, double a, double b)
{
    double const center = 0.5 * (a + b);
    double const half = 0.5 * (b - a);

    Complex const fc = f(center);
    Complex kronrod = fc * kKronrodWeights[10];
    Complex gauss{0.0, 0.0};
    for (int j = 0; j < 10; ++j) {
        double const dx = half * kKronrodNodes[j];
        Complex const sum = f(center - dx) + f(center + dx);
        kronrod += kKronrodWeights[j] * sum;
        if (j % 2 == 1)
            gauss += kGaussWeights[j / 2] * sum;
    }
    kronrod *= half;
    gauss *= half;
    return {a, b, kronrod, std::abs(kronrod - gauss)};
}

double tolerance(QuadratureSpec const& spec, Complex total)
{
    return std::max(spec.abs_tol, spec.rel_tol * std::abs(total));
}

}  // namespace

void QuadratureSpec::validate() const
{
    std::vector<std::string> problems;
    if (!(rel_tol > 0))
        problems.push_back("rel_tol must be > 0");
    if (!(abs_tol > 0))
        problems.push_back("abs_tol must be > 0");
    if (!(truncation_radius > 0))
        problems.push_back("truncation_radius must be > 0");
    if (max_subdivisions < 1)
        problems.push_back("max_subdivisions must be >= 1");
    if (!problems.empty()) {
        std::string msg = "invalid QuadratureSpec:";
        for (auto const& p : problems)
            msg += " " + p + ";";
        throw InvalidConfigurationError(msg);
    }
}

Estimate integrate_interval(ComplexFunction const& f, double a, double b,
                            QuadratureSpec const& spec)
{
    if (!(b > a))
        throw DomainError("integrate_interval: require b > a");

    std::priority_queue<Panel> panels;
    Complex total{0.0, 0.0};
    double total_error = 0;

    double const width = (b - a) / kInitialPieces;
    for (int i = 0; i < kInitialPieces; ++i) {
        double const lo = a + i * width;
        double const hi = (i + 1 == kInitialPieces) ? b : lo + width;
        Panel p = gauss_kronrod(f, lo, hi);
        total += p.value;
        total_error += p.error;
        panels.push(p);
    }

    // Panels too narrow to bisect further stay in the totals but leave the queue.
    double const min_width = 1e-13 * std::max({std::abs(a), std::abs(b), 1.0});
    int subdivisions = 0;
    while (total_error > tolerance(spec, total) && !panels.empty()) {
        if (subdivisions >= spec.max_subdivisions) {
            std::ostringstream msg;
            msg << "adaptive quadrature on [" << a << ", " << b << "] did not converge after "
                << subdivisions << " subdivisions (estimate " << total << ", error bound "
                << total_error << ")";
            throw ConvergenceError(msg.str(), total, total_error);
        }
        Panel worst = panels.top();
        panels.pop();
        if (worst.b - worst.a < min_width)
            continue;

        double const mid = 0.5 * (worst.a + worst.b);
        Panel left = gauss_kronrod(f, worst.a, mid);
        Panel right = gauss_kronrod(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        panels.push(left);
        panels.push(right);
        ++subdivisions;
    }

    if (total_error > tolerance(spec, total)) {
        // Resummation guards against drift in the running error sum.
        double resummed = 0;
        for (auto copy = panels; !copy.empty(); copy.pop())
            resummed += copy.top().error;
        if (resummed > tolerance(spec, total) || panels.empty()) {
            std::ostringstream msg;
            msg << "adaptive quadrature on [" << a << ", " << b
                << "] hit the round-off floor (estimate " << total << ", error bound "
                << total_error << ")";
            throw ConvergenceError(msg.str(), total, total_error);
        }
        total_error = resummed;
    }
    if (!std::isfinite(total.real()) || !std::isfinite(total.imag()))
        throw ConvergenceError("adaptive quadrature produced a non-finite value", total,
                               total_error);
    return {total, total_error, subdivisions};
}

Complex integrate_radial(ComplexFunction const& f, QuadratureSpec const& spec,
                         double length_scale)
{
    spec.validate();
    if (!(length_scale > 0))
        throw DomainError("integrate_radial: length_scale must be > 0");
    return integrate_interval(f, 0.0, spec.truncation_radius * length_scale, spec).value;
}

double integrate_radial_real(RealFunction const& f, QuadratureSpec const& spec,
                             double length_scale)
{
    auto wrapped = [&f](double r) { return Complex{f(r), 0.0}; };
    return integrate_radial(wrapped, spec, length_scale).real();
}

Complex integrate_plane(PlaneFunction const& f, double bounding_radius,
                        QuadratureSpec const& spec)
{
    spec.validate();
    if (!(bounding_radius > 0))
        throw DomainError("integrate_plane: bounding_radius must be > 0");

    // The angular integral is weighted by r and then integrated over the disc,
    // so the inner absolute tolerance is scaled by the disc area.
    QuadratureSpec inner = spec;
    inner.rel_tol = 1e-2 * spec.rel_tol;
    inner.abs_tol = spec.abs_tol / (bounding_radius * bounding_radius);

    auto ring = [&](double r) {
        auto on_circle = [&](double phi) { return f(r * std::cos(phi), r * std::sin(phi)); };
        return r * integrate_interval(on_circle, 0.0, 2.0 * kPi, inner).value;
    };
    return integrate_interval(ring, 0.0, bounding_radius, spec).value;
}

}  // namespace geoscatter::quad
