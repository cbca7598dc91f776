#include "geoscatter/plane_defects.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include <Eigen/LU>

#include "geoscatter/errors.hpp"
#include "geoscatter/specfun.hpp"

namespace geoscatter {
namespace {

constexpr double kMaxConditionNumber = 1e14;

bool finite(Complex z)
{
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

Complex expi(double phase)
{
    return {std::cos(phase), std::sin(phase)};
}

Eigen::PartialPivLU<Eigen::MatrixXcd> factorize(InteractionMatrix const& a)
{
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a.entries);
    double const rcond = lu.rcond();
    if (!(rcond * kMaxConditionNumber > 1.0)) {
        std::ostringstream msg;
        msg << "interaction matrix is singular to working precision at k = " << a.k
            << " (reciprocal condition estimate " << rcond << "); resonance or bound state";
        throw ResonanceError(msg.str());
    }
    return lu;
}

Eigen::VectorXcd solve(InteractionMatrix const& a, Eigen::VectorXcd const& rhs)
{
    if (a.entries.rows() == 1) {
        if (std::abs(a.entries(0, 0)) * kMaxConditionNumber < 1.0)
            throw ResonanceError("interaction matrix is singular (A_11 = 0)");
        return rhs / a.entries(0, 0);
    }
    return factorize(a).solve(rhs);
}

Eigen::VectorXcd incident_phases(DefectConfiguration const& cfg, Vec2 const& kvec)
{
    Eigen::VectorXcd v(cfg.size());
    for (std::size_t j = 0; j < cfg.size(); ++j)
        v(j) = expi(cfg.position(j).dot(kvec));
    return v;
}

}  // namespace

DefectConfiguration::DefectConfiguration(std::vector<Vec2> positions, std::vector<Complex> couplings)
    : positions_(std::move(positions)), couplings_(std::move(couplings))
{
    if (positions_.empty())
        throw InvalidConfigurationError("DefectConfiguration: at least one defect is required");
    if (positions_.size() != couplings_.size())
        throw InvalidConfigurationError("DefectConfiguration: positions and couplings differ in length");
    for (std::size_t j = 0; j < positions_.size(); ++j) {
        if (!positions_[j].allFinite())
            throw InvalidConfigurationError("DefectConfiguration: non-finite position");
        if (!finite(couplings_[j]) || couplings_[j] == Complex{0.0, 0.0})
            throw InvalidConfigurationError("DefectConfiguration: couplings must be finite and nonzero");
        for (std::size_t i = 0; i < j; ++i) {
            if ((positions_[i] - positions_[j]).norm() == 0.0) {
                std::ostringstream msg;
                msg << "DefectConfiguration: defects " << i << " and " << j << " coincide";
                throw InvalidConfigurationError(msg.str());
            }
        }
    }
}

DefectConfiguration DefectConfiguration::translated(Vec2 const& shift) const
{
    std::vector<Vec2> moved = positions_;
    for (auto& p : moved)
        p += shift;
    return {std::move(moved), couplings_};
}

Kinematics::Kinematics(double k_, double theta0_, double theta_)
    : k(k_), theta0(theta0_), theta(theta_)
{
    if (!std::isfinite(k) || !(k > 0))
        throw DomainError("Kinematics: wavenumber must be finite and > 0");
    if (!std::isfinite(theta0) || !std::isfinite(theta))
        throw DomainError("Kinematics: angles must be finite");
}

Vec2 Kinematics::incident() const
{
    return {k * std::cos(theta0), k * std::sin(theta0)};
}

Vec2 Kinematics::outgoing() const
{
    return {k * std::cos(theta), k * std::sin(theta)};
}

double Kinematics::half_angle_sine() const
{
    return std::sin(0.5 * scattering_angle());
}

Complex amplitude_prefactor(double k)
{
    // sqrt(i / (2 pi k)) with the principal branch sqrt(i) = exp(i pi / 4)
    return -0.5 * std::sqrt(1.0 / (2.0 * kPi * k)) * expi(0.25 * kPi);
}

Complex renormalize_coupling(Complex bare_xi, double rho, double k)
{
    if (bare_xi == Complex{0.0, 0.0} || !finite(bare_xi))
        throw DomainError("renormalize_coupling: bare coupling must be finite and nonzero");
    if (!(rho > 0) || !(k > 0))
        throw DomainError("renormalize_coupling: rho and k must be > 0");
    Complex const denom = 1.0 / bare_xi - (std::log(0.5 * k * rho) + kEulerGamma) / kPi;
    if (std::abs(denom) < 1e-14)
        throw SingularRenormalizationError(
            "renormalize_coupling: 1/xi - (ln(k rho/2) + gamma)/pi vanishes");
    return 1.0 / denom;
}

InteractionMatrix build_interaction_matrix(DefectConfiguration const& cfg, double k)
{
    if (!(k > 0))
        throw DomainError("build_interaction_matrix: k must be > 0");
    auto const n = static_cast<Eigen::Index>(cfg.size());
    InteractionMatrix a{Eigen::MatrixXcd(n, n), k};
    for (Eigen::Index i = 0; i < n; ++i) {
        a.entries(i, i) = 0.25 * (2.0 / cfg.coupling(i) + kI);
        for (Eigen::Index j = 0; j < i; ++j) {
            double const d = (cfg.position(i) - cfg.position(j)).norm();
            if (d == 0.0)
                throw InvalidConfigurationError("build_interaction_matrix: coincident defects");
            Complex const off = 0.25 * kI * specfun::hankel1(0, k * d);
            a.entries(i, j) = off;
            a.entries(j, i) = off;
        }
    }
    return a;
}

Eigen::MatrixXcd interaction_inverse(InteractionMatrix const& a)
{
    auto const n = a.entries.rows();
    if (n == 1)
        return solve(a, Eigen::VectorXcd::Ones(1));
    return factorize(a).solve(Eigen::MatrixXcd::Identity(n, n));
}

std::vector<Complex> solve_defect_coefficients(InteractionMatrix const& a,
                                               DefectConfiguration const& cfg, Vec2 const& kvec)
{
    if (static_cast<std::size_t>(a.entries.rows()) != cfg.size())
        throw InvalidConfigurationError("solve_defect_coefficients: matrix/configuration size mismatch");
    Eigen::VectorXcd const rhs = incident_phases(cfg, kvec) / (2.0 * kPi);
    Eigen::VectorXcd const x = solve(a, rhs);
    return {x.data(), x.data() + x.size()};
}

Complex amplitude_flat(DefectConfiguration const& cfg, Kinematics const& kin)
{
    auto const a = build_interaction_matrix(cfg, kin.k);
    auto const x = solve_defect_coefficients(a, cfg, kin.incident());
    Vec2 const kout = kin.outgoing();
    // f0 = -(1/2) sqrt(2 pi i / k) sum_j X_j exp(-i a_j . k')
    Complex sum{0.0, 0.0};
    for (std::size_t j = 0; j < cfg.size(); ++j)
        sum += x[j] * expi(-cfg.position(j).dot(kout));
    return 2.0 * kPi * amplitude_prefactor(kin.k) * sum;
}

Complex amplitude_single_closed(DefectConfiguration const& cfg, Kinematics const& kin)
{
    if (cfg.size() != 1)
        throw InvalidConfigurationError("amplitude_single_closed: requires exactly one defect");
    Complex const g = cfg.coupling(0);
    Vec2 const dk = kin.incident() - kin.outgoing();
    Complex const sqrt_term = std::sqrt(2.0 / (kPi * kin.k)) * expi(0.25 * kPi);
    return -sqrt_term * g * expi(cfg.position(0).dot(dk)) / (2.0 + kI * g);
}

Complex amplitude_double_closed(DefectConfiguration const& cfg, Kinematics const& kin,
                                bool transfer_matrix_convention)
{
    if (cfg.size() != 2)
        throw InvalidConfigurationError("amplitude_double_closed: requires exactly two defects");
    Complex const g1 = cfg.coupling(0);
    Complex const g2 = cfg.coupling(1);
    Vec2 const& a1 = cfg.position(0);
    Vec2 const& a2 = cfg.position(1);
    double const kd = kin.k * (a2 - a1).norm();
    Complex const h = transfer_matrix_convention ? Complex{specfun::bessel_j(0, kd), 0.0}
                                                 : specfun::hankel1(0, kd);

    Complex const d = (h * h - 1.0) * g1 * g2 + 2.0 * kI * (g1 + g2) + 4.0;
    double const scale = std::abs(g1 * g2) + std::abs(g1 + g2) + 4.0;
    if (std::abs(d) < 1e-14 * scale)
        throw ResonanceError("amplitude_double_closed: denominator D vanishes");

    Vec2 const kin_vec = kin.incident();
    Vec2 const kout = kin.outgoing();
    auto phase = [&](Vec2 const& ai, Vec2 const& aj) { return expi(aj.dot(kin_vec) - ai.dot(kout)); };

    Complex const braces = g1 * (2.0 + kI * g2) * phase(a1, a1) + g2 * (2.0 + kI * g1) * phase(a2, a2)
                           - kI * g1 * g2 * h * (phase(a1, a2) + phase(a2, a1));
    Complex const sqrt_term = std::sqrt(2.0 / (kPi * kin.k)) * expi(0.25 * kPi);
    return -sqrt_term * braces / d;
}

Complex wavefunction_psi0(DefectConfiguration const& cfg, Vec2 const& kvec, Vec2 const& x)
{
    double const k = kvec.norm();
    for (std::size_t j = 0; j < cfg.size(); ++j) {
        if ((x - cfg.position(j)).norm() == 0.0)
            throw DomainError("wavefunction_psi0: cannot evaluate at a defect site");
    }
    auto const a = build_interaction_matrix(cfg, k);
    // A is symmetric, so sum_i exp(i k.a_i) Ainv_ij = (Ainv v)_j.
    Eigen::VectorXcd const v = incident_phases(cfg, kvec);
    Eigen::VectorXcd const c = solve(a, v);
    Complex scattered{0.0, 0.0};
    for (std::size_t j = 0; j < cfg.size(); ++j)
        scattered += c(static_cast<Eigen::Index>(j))
                     * specfun::hankel1(0, k * (x - cfg.position(j)).norm());
    return (expi(kvec.dot(x)) - 0.25 * kI * scattered) / (2.0 * kPi);
}

}  // namespace geoscatter
