#include "geoscatter/geom_amp.hpp"

#include <cmath>
#include <sstream>

#include "geoscatter/errors.hpp"
#include "geoscatter/specfun.hpp"

namespace geoscatter {
namespace {

Complex expi(double phase)
{
    return {std::cos(phase), std::sin(phase)};
}

// J1(x)/x, smooth through x = 0.
double bessel_j1_over_x(double x)
{
    if (x < 1e-4) {
        double const x2 = x * x;
        return 0.5 - x2 / 16.0 + x2 * x2 / 384.0;
    }
    return specfun::bessel_j(1, x) / x;
}

void check_lambdas(double lambda1, double lambda2)
{
    if (!std::isfinite(lambda1) || !std::isfinite(lambda2))
        throw InvalidConfigurationError("curvature couplings lambda1, lambda2 must be finite");
}

// sqrt(2 / (pi i k |a|)) exp(i k |a|): far-field weight of H0(k |x - a|).
Complex far_field_weight(double k, double distance)
{
    return std::sqrt(2.0 / (kPi * k * distance)) * expi(k * distance - 0.25 * kPi);
}

}  // namespace

//---------------------------------------------------------------------------//
// GeometricIntegrals
//---------------------------------------------------------------------------//

GeometricIntegrals::GeometricIntegrals(RadialProfile profile, double lambda1, double lambda2,
                                       quad::QuadratureSpec spec)
    : profile_(std::move(profile)), lambda1_(lambda1), lambda2_(lambda2), spec_(spec)
{
    check_lambdas(lambda1_, lambda2_);
    spec_.validate();
}

GIntegrals GeometricIntegrals::g(double kappa) const
{
    if (!(kappa >= 0) || !std::isfinite(kappa))
        throw DomainError("g integrals: kappa must be finite and >= 0");
    {
        std::lock_guard lock(mutex_);
        if (auto it = g_cache_.find(kappa); it != g_cache_.end())
            return it->second;
    }
    GIntegrals const value = compute_g(kappa);
    std::lock_guard lock(mutex_);
    g_cache_.emplace(kappa, value);
    return value;
}

ForwardGIntegrals GeometricIntegrals::forward(double kappa) const
{
    if (!(kappa >= 0) || !std::isfinite(kappa))
        throw DomainError("g integrals: kappa must be finite and >= 0");
    {
        std::lock_guard lock(mutex_);
        if (auto it = forward_cache_.find(kappa); it != forward_cache_.end())
            return it->second;
    }
    ForwardGIntegrals const value = compute_forward(kappa);
    std::lock_guard lock(mutex_);
    forward_cache_.emplace(kappa, value);
    return value;
}

CentralIntegrals GeometricIntegrals::central(double k) const
{
    if (!(k > 0) || !std::isfinite(k))
        throw DomainError("central integrals: k must be finite and > 0");
    {
        std::lock_guard lock(mutex_);
        if (auto it = central_cache_.find(k); it != central_cache_.end())
            return it->second;
    }
    CentralIntegrals const value = compute_central(k);
    std::lock_guard lock(mutex_);
    central_cache_.emplace(k, value);
    return value;
}

GIntegrals GeometricIntegrals::compute_g(double kappa) const
{
    if (profile_.is_flat())
        return {};
    double const sigma = profile_.sigma_scale();
    auto const& p = profile_;

    auto g2_integrand = [&](double r) {
        auto const [g, gdot] = slope_function(p, r);
        return (g * (g / r) + r * gdot * gdot) * specfun::bessel_j(0, kappa * r);
    };
    double const g2 = quad::integrate_radial_real(g2_integrand, spec_, sigma);
    if (kappa == 0.0)
        return {0.0, g2, 0.0};

    auto g1_integrand = [&](double r) {
        double const g = slope_function(p, r).g;
        return g * g * specfun::bessel_j(1, kappa * r);
    };
    auto g3_integrand = [&](double r) {
        double const g = slope_function(p, r).g;
        return r * g * g * specfun::bessel_j(0, kappa * r);
    };
    double const g1 = kappa * quad::integrate_radial_real(g1_integrand, spec_, sigma);
    double const g3 = kappa * kappa * quad::integrate_radial_real(g3_integrand, spec_, sigma);
    return {g1, g2, g3};
}

ForwardGIntegrals GeometricIntegrals::compute_forward(double kappa) const
{
    if (profile_.is_flat())
        return {};
    double const sigma = profile_.sigma_scale();
    auto const& p = profile_;

    auto t1_integrand = [&](double r) {
        double const g = slope_function(p, r).g;
        return r * g * g * bessel_j1_over_x(kappa * r);
    };
    auto t3_integrand = [&](double r) {
        double const g = slope_function(p, r).g;
        return r * g * g * specfun::bessel_j(0, kappa * r);
    };
    ForwardGIntegrals out;
    out.g1_over_kappa2 = quad::integrate_radial_real(t1_integrand, spec_, sigma);
    out.g3_over_kappa2 = quad::integrate_radial_real(t3_integrand, spec_, sigma);
    out.g2 = g(kappa).g2;
    return out;
}

CentralIntegrals GeometricIntegrals::compute_central(double k) const
{
    if (profile_.is_flat())
        return {};
    double const sigma = profile_.sigma_scale();
    double const k2 = k * k;
    auto const& p = profile_;
    double const l1 = lambda1_;
    double const l2 = lambda2_;

    auto i11_integrand = [&](double r) {
        double const g = slope_function(p, r).g;
        double const c = curvature_potential(p, r, l1, l2);
        double const kr = k * r;
        double const j0 = specfun::bessel_j(0, kr);
        double const j1 = specfun::bessel_j(1, kr);
        Complex const h0 = specfun::hankel1(0, kr);
        Complex const h1 = specfun::hankel1(1, kr);
        return r * ((4.0 * c - k2 * g * g) * j0 * h0 - k2 * g * g * j1 * h1);
    };
    auto i1111_integrand = [&](double r) {
        double const g = slope_function(p, r).g;
        double const c = curvature_potential(p, r, l1, l2);
        double const kr = k * r;
        Complex const h0 = specfun::hankel1(0, kr);
        Complex const h1 = specfun::hankel1(1, kr);
        return r * ((4.0 * c - k2 * g * g) * h0 * h0 - k2 * g * g * h1 * h1);
    };
    return {2.0 * kPi * quad::integrate_radial(i11_integrand, spec_, sigma),
            kPi * quad::integrate_radial(i1111_integrand, spec_, sigma)};
}

Complex GeometricIntegrals::i0(Kinematics const& kin) const
{
    double const s = std::abs(kin.half_angle_sine());
    double const k = kin.k;
    double const kappa = 2.0 * k * s;
    double const a = 2.0 * lambda1_ + lambda2_;
    if (s >= kForwardSineThreshold) {
        auto const gi = g(kappa);
        return kPi * ((a - 0.5 / (s * s)) * gi.g1 + lambda2_ * gi.g2);
    }
    // g1/(2 s^2) = 2 k^2 (g1/kappa^2): the forward pole cancels exactly.
    auto const fw = forward(kappa);
    return kPi * (a * kappa * kappa * fw.g1_over_kappa2 - 2.0 * k * k * fw.g1_over_kappa2
                  + lambda2_ * fw.g2);
}

Complex GeometricIntegrals::j(Vec2 const& p, Vec2 const& q) const
{
    double const qn = q.norm();
    double const pn = p.norm();
    if (!(qn > 0) || !(pn > 0))
        throw DomainError("J(p, q): |p| and |q| must be positive");
    Vec2 const transfer = q - p;
    double const kappa = transfer.norm();
    double const a = 2.0 * lambda1_ + lambda2_;

    double const switch_kappa = 2.0 * kForwardSineThreshold * std::max(pn, qn);
    if (kappa >= switch_kappa) {
        double const c = q.dot(transfer) / (qn * kappa);
        double const x = qn * c / kappa;
        auto const gi = g(kappa);
        double const coeff1 = a + 2.0 * qn * qn * (2.0 * c * c - 1.0) / (kappa * kappa) - 2.0 * x;
        return kPi * (coeff1 * gi.g1 + lambda2_ * gi.g2 + x * (1.0 - 2.0 * x) * gi.g3);
    }
    // Same combination with kappa^2 factored out of g1 and g3. At kappa = 0
    // the direction of q - p is undefined but every c-dependent term vanishes.
    double const c = kappa > 0 ? q.dot(transfer) / (qn * kappa) : 0.0;
    auto const fw = forward(kappa);
    double const t1 = fw.g1_over_kappa2;
    double const t3 = fw.g3_over_kappa2;
    double const q2 = qn * qn;
    return kPi
           * (a * kappa * kappa * t1 + 2.0 * q2 * (2.0 * c * c - 1.0) * t1 - 2.0 * qn * c * kappa * t1
              + lambda2_ * fw.g2 + qn * c * kappa * t3 - 2.0 * q2 * c * c * t3);
}

//---------------------------------------------------------------------------//
// Free-function entry points
//---------------------------------------------------------------------------//

GIntegrals g_integrals(RadialProfile const& profile, double kappa, quad::QuadratureSpec const& spec)
{
    return GeometricIntegrals(profile, 0.0, 0.0, spec).g(kappa);
}

Complex I0(RadialProfile const& profile, Kinematics const& kin, double lambda1, double lambda2,
           quad::QuadratureSpec const& spec)
{
    return GeometricIntegrals(profile, lambda1, lambda2, spec).i0(kin);
}

Complex J(RadialProfile const& profile, Vec2 const& p, Vec2 const& q, double lambda1, double lambda2,
          quad::QuadratureSpec const& spec)
{
    return GeometricIntegrals(profile, lambda1, lambda2, spec).j(p, q);
}

CentralIntegrals I_central(RadialProfile const& profile, double k, double lambda1, double lambda2,
                           quad::QuadratureSpec const& spec)
{
    return GeometricIntegrals(profile, lambda1, lambda2, spec).central(k);
}

Complex FarIntegrals::ijij(std::size_t i, std::size_t j, std::size_t ip, std::size_t jp) const
{
    std::size_t const n = size();
    return iijij.at(((i * n + j) * n + ip) * n + jp);
}

namespace {

// Per-defect pieces shared by I_ij and I_iji'j'.
struct DefectKernels {
    std::vector<bool> central;
    std::vector<Complex> weight;  // far-field weight; unused for the central defect
    std::vector<Complex> w1;      // int H0(k|x - a_j|) L exp(i k.x), sans exp(-i k'.a_i)
    std::vector<Complex> w2;      // int exp(-i k'.x) L H0(k|x - a_j|), sans exp(i k.a_i)
    CentralIntegrals central_values;

    // int H0(k|x - a_j|) L H0(k|x - a_j'|)
    Complex pair(GeometricIntegrals const& ints, DefectConfiguration const& cfg, double k,
                 std::size_t j, std::size_t jp) const
    {
        Complex const half_i11 = 0.5 * central_values.i11;
        if (central[j] && central[jp])
            return central_values.i1111;
        if (central[j])
            return weight[jp] * half_i11;
        if (central[jp])
            return weight[j] * half_i11;
        Vec2 const kj = k * cfg.position(j).normalized();
        Vec2 const kjp = k * cfg.position(jp).normalized();
        return weight[j] * weight[jp] * ints.j(kj, -kjp);
    }
};

DefectKernels defect_kernels(GeometricIntegrals const& ints, DefectConfiguration const& cfg,
                             Kinematics const& kin, AssemblyOptions const& options,
                             std::vector<std::string>& warnings, bool allow_central)
{
    double const sigma = ints.profile().sigma_scale();
    double const k = kin.k;
    Vec2 const kin_vec = kin.incident();
    Vec2 const kout = kin.outgoing();

    std::size_t const n = cfg.size();
    DefectKernels out;
    out.central.assign(n, false);
    out.weight.assign(n, Complex{});
    out.w1.assign(n, Complex{});
    out.w2.assign(n, Complex{});

    bool any_central = false;
    for (std::size_t j = 0; j < n; ++j) {
        double const dist = cfg.position(j).norm();
        if (dist <= options.central_tolerance * sigma) {
            if (!allow_central)
                throw InvalidConfigurationError("far-field integrals require every defect to be distant");
            out.central[j] = true;
            any_central = true;
            continue;
        }
        if (dist < options.distant_min_separation * sigma) {
            std::ostringstream msg;
            msg << "defect " << j << " lies " << dist / sigma
                << " sigma from the bump center; far-field approximation assumes >= "
                << options.distant_min_separation << " sigma";
            warnings.push_back(msg.str());
        }
        out.weight[j] = far_field_weight(k, dist);
        Vec2 const kj = k * cfg.position(j) / dist;
        out.w1[j] = out.weight[j] * ints.j(kj, kin_vec);
        out.w2[j] = out.weight[j] * ints.j(kout, -kj);
    }
    if (any_central) {
        out.central_values = ints.central(k);
        for (std::size_t j = 0; j < n; ++j) {
            if (out.central[j]) {
                out.w1[j] = 0.5 * out.central_values.i11;
                out.w2[j] = 0.5 * out.central_values.i11;
            }
        }
    }
    return out;
}

GeometricAmplitude assemble_one(GeometricIntegrals const& ints, std::optional<DefectConfiguration> const& defects,
                                Kinematics const& kin, AssemblyOptions const& options)
{
    GeometricAmplitude out;
    Complex const pref = amplitude_prefactor(kin.k);
    Complex const i0 = ints.i0(kin);
    out.i0_term = pref * i0;
    if (!defects) {
        out.f1 = out.i0_term;
        return out;
    }

    DefectConfiguration const& cfg = *defects;
    Eigen::MatrixXcd const ainv = interaction_inverse(build_interaction_matrix(cfg, kin.k));
    DefectKernels const kern = defect_kernels(ints, cfg, kin, options, out.warnings, true);

    std::size_t const n = cfg.size();
    Vec2 const kin_vec = kin.incident();
    Vec2 const kout = kin.outgoing();
    std::vector<Complex> out_phase(n), in_phase(n);
    for (std::size_t i = 0; i < n; ++i) {
        out_phase[i] = expi(-kout.dot(cfg.position(i)));
        in_phase[i] = expi(kin_vec.dot(cfg.position(i)));
    }

    // sum_ij Ainv_ij I_ij with I_ij = e^{-i k'.a_i} w1_j + e^{i k.a_i} w2_j
    Complex cross{0.0, 0.0};
    // u_j = sum_i Ainv_ij e^{-i k'.a_i}, v_j = sum_i Ainv_ij e^{i k.a_i}
    std::vector<Complex> u(n), v(n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            auto const aij = ainv(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            u[j] += aij * out_phase[i];
            v[j] += aij * in_phase[i];
        }
        cross += u[j] * kern.w1[j] + v[j] * kern.w2[j];
    }

    // sum Ainv_ij Ainv_i'j' e^{i(k.a_i' - k'.a_i)} Q_jj' factorizes into u Q v.
    Complex square{0.0, 0.0};
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t jp = 0; jp < n; ++jp)
            square += u[j] * kern.pair(ints, cfg, kin.k, j, jp) * v[jp];

    out.defect_cross_terms = pref * (-0.25 * kI) * cross;
    out.defect_square_terms = pref * (-1.0 / 16.0) * square;
    out.f1 = out.i0_term + out.defect_cross_terms + out.defect_square_terms;
    return out;
}

}  // namespace

FarIntegrals I_far(RadialProfile const& profile, DefectConfiguration const& cfg, Kinematics const& kin,
                   double lambda1, double lambda2, quad::QuadratureSpec const& spec)
{
    GeometricIntegrals const ints(profile, lambda1, lambda2, spec);
    FarIntegrals out;
    DefectKernels const kern = defect_kernels(ints, cfg, kin, AssemblyOptions{}, out.warnings, false);

    std::size_t const n = cfg.size();
    auto const ni = static_cast<Eigen::Index>(n);
    Vec2 const kin_vec = kin.incident();
    Vec2 const kout = kin.outgoing();

    out.iij.resize(ni, ni);
    for (std::size_t i = 0; i < n; ++i) {
        Complex const eo = expi(-kout.dot(cfg.position(i)));
        Complex const ei = expi(kin_vec.dot(cfg.position(i)));
        for (std::size_t j = 0; j < n; ++j)
            out.iij(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = eo * kern.w1[j] + ei * kern.w2[j];
    }

    std::vector<Complex> q(n * n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t jp = 0; jp < n; ++jp)
            q[j * n + jp] = kern.pair(ints, cfg, kin.k, j, jp);

    out.iijij.resize(n * n * n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t ip = 0; ip < n; ++ip)
                for (std::size_t jp = 0; jp < n; ++jp)
                    out.iijij[((i * n + j) * n + ip) * n + jp]
                        = expi(kin_vec.dot(cfg.position(ip)) - kout.dot(cfg.position(i))) * q[j * n + jp];
    return out;
}

//---------------------------------------------------------------------------//
// Assembly
//---------------------------------------------------------------------------//

GeometricAmplitude f1_assemble(GeometricIntegrals const& integrals,
                               std::optional<DefectConfiguration> const& defects, Kinematics const& kin,
                               AssemblyOptions const& options)
{
    if (!defects || options.cross_terms == CrossTermMode::Full)
        return assemble_one(integrals, defects, kin, options);

    double const tol = options.central_tolerance * integrals.profile().sigma_scale();
    std::vector<Vec2> central_pos, distant_pos;
    std::vector<Complex> central_g, distant_g;
    for (std::size_t j = 0; j < defects->size(); ++j) {
        bool const is_central = defects->position(j).norm() <= tol;
        (is_central ? central_pos : distant_pos).push_back(defects->position(j));
        (is_central ? central_g : distant_g).push_back(defects->coupling(j));
    }
    if (central_pos.empty() || distant_pos.empty())
        return assemble_one(integrals, defects, kin, options);

    auto const c = assemble_one(integrals, DefectConfiguration(central_pos, central_g), kin, options);
    auto const d = assemble_one(integrals, DefectConfiguration(distant_pos, distant_g), kin, options);
    GeometricAmplitude out;
    out.f1 = c.f1 + d.f1;
    out.i0_term = c.i0_term + d.i0_term;
    out.defect_cross_terms = c.defect_cross_terms + d.defect_cross_terms;
    out.defect_square_terms = c.defect_square_terms + d.defect_square_terms;
    out.warnings = d.warnings;
    return out;
}

GeometricAmplitude f1_assemble(BumpScenario const& scenario, Kinematics const& kin)
{
    GeometricIntegrals const ints(scenario.profile, scenario.lambda1, scenario.lambda2, scenario.quad);
    return f1_assemble(ints, scenario.defects, kin, scenario.options);
}

AmplitudeEvaluator::AmplitudeEvaluator(ScatteringSetup setup) : setup_(std::move(setup))
{
    check_lambdas(setup_.lambda1, setup_.lambda2);
    setup_.quad.validate();
    for (auto const& bump : setup_.surface.bumps)
        bumps_.push_back(std::make_unique<GeometricIntegrals>(bump.profile, setup_.lambda1, setup_.lambda2,
                                                              setup_.quad));
}

Complex AmplitudeEvaluator::f1_multibump(Kinematics const& kin, std::vector<std::string>* warnings) const
{
    Vec2 const dk = kin.incident() - kin.outgoing();
    Complex total{0.0, 0.0};
    for (std::size_t m = 0; m < bumps_.size(); ++m) {
        Vec2 const& center = setup_.surface.bumps[m].center;
        std::optional<DefectConfiguration> local;
        if (setup_.defects)
            local = setup_.defects->translated(-center);
        auto const part = f1_assemble(*bumps_[m], local, kin, setup_.options);
        total += expi(dk.dot(center)) * part.f1;
        if (warnings)
            warnings->insert(warnings->end(), part.warnings.begin(), part.warnings.end());
    }
    return total;
}

AmplitudeResult AmplitudeEvaluator::operator()(Kinematics const& kin) const
{
    AmplitudeResult out;
    if (setup_.defects) {
        auto const& cfg = *setup_.defects;
        out.f0 = (cfg.size() == 2 && setup_.options.transfer_matrix_convention)
                     ? amplitude_double_closed(cfg, kin, true)
                     : amplitude_flat(cfg, kin);
    }
    out.f1 = f1_multibump(kin, &out.warnings);
    out.f = out.f0 + out.f1;
    out.dcs = std::norm(out.f);
    out.dcs_minus_dcs0 = out.dcs - std::norm(out.f0);
    return out;
}

Complex f1_multibump(ScatteringSetup const& setup, Kinematics const& kin)
{
    return AmplitudeEvaluator(setup).f1_multibump(kin);
}

AmplitudeResult total_amplitude(ScatteringSetup const& setup, Kinematics const& kin)
{
    return AmplitudeEvaluator(setup)(kin);
}

//---------------------------------------------------------------------------//
// O(eta) closed forms for the Gaussian bump
//---------------------------------------------------------------------------//

namespace gaussian_order_eta {

Complex I0(GaussianBumpParams const& bump, Kinematics const& kin, double lambda1, double lambda2)
{
    double const eta = bump.eta();
    double const kk = bump.dimensionless_k(kin.k);
    double const s = kin.half_angle_sine();
    double const s2 = s * s;
    double const k2 = kk * kk;
    return kPi * eta * std::exp(-s2 * k2) / 2.0
           * ((4.0 * lambda1 * s2 - 1.0) * k2 + lambda2 * (s2 * s2 * k2 * k2 + 2.0));
}

Complex J(GaussianBumpParams const& bump, Vec2 const& p, Vec2 const& q, double lambda1, double lambda2)
{
    double const eta = bump.eta();
    double const sigma = bump.sigma;
    Vec2 const transfer = q - p;
    double const kappa = transfer.norm();
    double const qn = q.norm();
    double const ks = kappa * sigma;
    double const qs = qn * sigma;
    double const c_kappa = q.dot(transfer) / qn;  // kappa cos(theta_q)
    double const inner = sigma * sigma * c_kappa * (2.0 * c_kappa - kappa * kappa / qn);
    return kPi * eta * std::exp(-ks * ks / 4.0) / 32.0
           * (4.0 * qs * qs * (inner - 4.0) + 16.0 * lambda1 * ks * ks + lambda2 * (ks * ks * ks * ks + 32.0));
}

Complex I11(GaussianBumpParams const& bump, double k, double lambda1, double lambda2)
{
    using specfun::ModifiedKind;
    double const eta = bump.eta();
    double const kk = bump.dimensionless_k(k);
    double const k2 = kk * kk;
    double const x = 0.5 * k2;
    double const i0 = specfun::mod_bessel(ModifiedKind::I, 0, x);
    double const i1 = specfun::mod_bessel(ModifiedKind::I, 1, x);
    double const k0 = specfun::mod_bessel(ModifiedKind::K, 0, x);
    double const k1 = specfun::mod_bessel(ModifiedKind::K, 1, x);
    Complex const first = (2.0 * (2.0 * lambda1 - 1.0) * k2 + lambda2 * (k2 * k2 + 4.0))
                          * Complex{i0, -k0 / kPi};
    Complex const second = k2 * (4.0 * lambda1 + lambda2 * (k2 + 1.0)) * Complex{i1, k1 / kPi};
    return kPi * eta * std::exp(-x) / 2.0 * (first - second);
}

}  // namespace gaussian_order_eta

}  // namespace geoscatter
