#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "geoscatter/plane_defects.hpp"
#include "geoscatter/quad.hpp"
#include "geoscatter/surface.hpp"
#include "geoscatter/types.hpp"

namespace geoscatter {

// Below this |sin(Theta/2)| the forward-limit branch of I0 and J is used.
inline constexpr double kForwardSineThreshold = 1e-3;

struct GIntegrals {
    double g1 = 0;  // kappa int G^2 J1(kappa r) dr
    double g2 = 0;  // int r^-1 [G^2 + r^2 Gdot^2] J0(kappa r) dr
    double g3 = 0;  // kappa^2 int r G^2 J0(kappa r) dr
};

/*!
 * Forms of g1 and g3 with the kappa^2 factored out:
 * g1/kappa^2 = int r G^2 [J1(kappa r)/(kappa r)] dr and
 * g3/kappa^2 = int r G^2 J0(kappa r) dr.
 * Both are finite at kappa = 0, where they reduce to m/2 and m with m the
 * first moment int r G^2 dr.
 */
struct ForwardGIntegrals {
    double g1_over_kappa2 = 0;
    double g2 = 0;
    double g3_over_kappa2 = 0;
};

struct CentralIntegrals {
    Complex i11;
    Complex i1111;
};

enum class Provenance { Quadrature, ClosedFormOrderEta };

/*!
 * Radial integrals of one cylindrically symmetric bump at fixed lambda1,
 * lambda2. Results are memoized per kappa (g integrals) and per k (central
 * integrals) and may be shared between threads.
 */
class GeometricIntegrals {
  public:
    GeometricIntegrals(RadialProfile profile, double lambda1, double lambda2,
                       quad::QuadratureSpec spec = {});

    GIntegrals g(double kappa) const;
    ForwardGIntegrals forward(double kappa) const;
    CentralIntegrals central(double k) const;

    Complex i0(Kinematics const& kin) const;
    Complex j(Vec2 const& p, Vec2 const& q) const;

    RadialProfile const& profile() const noexcept { return profile_; }
    double lambda1() const noexcept { return lambda1_; }
    double lambda2() const noexcept { return lambda2_; }
    quad::QuadratureSpec const& spec() const noexcept { return spec_; }
    Provenance provenance() const noexcept { return Provenance::Quadrature; }

  private:
    GIntegrals compute_g(double kappa) const;
    ForwardGIntegrals compute_forward(double kappa) const;
    CentralIntegrals compute_central(double k) const;

    RadialProfile profile_;
    double lambda1_;
    double lambda2_;
    quad::QuadratureSpec spec_;

    mutable std::mutex mutex_;
    mutable std::map<double, GIntegrals> g_cache_;
    mutable std::map<double, ForwardGIntegrals> forward_cache_;
    mutable std::map<double, CentralIntegrals> central_cache_;
};

GIntegrals g_integrals(RadialProfile const& profile, double kappa, quad::QuadratureSpec const& spec);

// I0 = J(k', k); geometric scattering without defects.
Complex I0(RadialProfile const& profile, Kinematics const& kin, double lambda1, double lambda2,
           quad::QuadratureSpec const& spec);

/*!
 * J(p, q) = int d^2x exp(-i p.x) L exp(i q.x). The angle theta_q is measured
 * from the direction of q - p; at kappa = |q - p| -> 0 the finite forward
 * limit is returned.
 */
Complex J(RadialProfile const& profile, Vec2 const& p, Vec2 const& q, double lambda1, double lambda2,
          quad::QuadratureSpec const& spec);

// Integrals for a single defect at the bump center.
CentralIntegrals I_central(RadialProfile const& profile, double k, double lambda1, double lambda2,
                           quad::QuadratureSpec const& spec);

/*!
 * Far-field I_ij and I_iji'j' for defects well outside the curved region
 * (|a_j| >= 3 sigma; closer defects add a warning).
 */
struct FarIntegrals {
    Eigen::MatrixXcd iij;
    std::vector<Complex> iijij;  // row-major over (i, j, i', j')
    std::vector<std::string> warnings;

    std::size_t size() const { return static_cast<std::size_t>(iij.rows()); }
    Complex ijij(std::size_t i, std::size_t j, std::size_t ip, std::size_t jp) const;
};

FarIntegrals I_far(RadialProfile const& profile, DefectConfiguration const& cfg, Kinematics const& kin,
                   double lambda1, double lambda2, quad::QuadratureSpec const& spec);

// How a central defect and distant defects on the same bump are combined.
enum class CrossTermMode {
    Full,      // one interaction matrix for all defects, cross weights retained
    Separate,  // f1 = f1(central alone) + f1(distant alone)
};

struct AssemblyOptions {
    CrossTermMode cross_terms = CrossTermMode::Full;
    bool transfer_matrix_convention = false;  // flat amplitude only, N = 2
    double central_tolerance = 1e-9;          // in units of sigma
    double distant_min_separation = 3.0;      // in units of sigma
};

/*!
 * Geometric contribution zeta f1 (stored as one quantity) with its split
 * into the I0 term, the A^-1-weighted I_ij term and the quadratic I_iji'j'
 * term.
 */
struct GeometricAmplitude {
    Complex f1;
    Complex i0_term;
    Complex defect_cross_terms;
    Complex defect_square_terms;
    std::vector<std::string> warnings;
};

struct BumpScenario {
    RadialProfile profile;
    std::optional<DefectConfiguration> defects;  // bump-centered coordinates
    double lambda1 = 0.5;
    double lambda2 = -0.5;
    quad::QuadratureSpec quad;
    AssemblyOptions options;
};

GeometricAmplitude f1_assemble(BumpScenario const& scenario, Kinematics const& kin);

GeometricAmplitude f1_assemble(GeometricIntegrals const& integrals,
                               std::optional<DefectConfiguration> const& defects, Kinematics const& kin,
                               AssemblyOptions const& options = {});

struct ScatteringSetup {
    MultiBumpSurface surface;
    std::optional<DefectConfiguration> defects;  // global coordinates
    double lambda1 = 0.5;
    double lambda2 = -0.5;
    quad::QuadratureSpec quad;
    AssemblyOptions options;
};

struct AmplitudeResult {
    Complex f;
    Complex f0;
    Complex f1;
    double dcs = 0;
    double dcs_minus_dcs0 = 0;
    std::vector<std::string> warnings;
};

/*!
 * Evaluates amplitudes for one setup at many kinematic points, sharing the
 * memoized bump integrals. Safe to call concurrently.
 */
class AmplitudeEvaluator {
  public:
    explicit AmplitudeEvaluator(ScatteringSetup setup);

    // sum_m exp(i (k - k').c_m) zeta f1_m with defects in bump-centered coordinates
    Complex f1_multibump(Kinematics const& kin, std::vector<std::string>* warnings = nullptr) const;
    AmplitudeResult operator()(Kinematics const& kin) const;

    ScatteringSetup const& setup() const noexcept { return setup_; }

  private:
    ScatteringSetup setup_;
    std::vector<std::unique_ptr<GeometricIntegrals>> bumps_;
};

Complex f1_multibump(ScatteringSetup const& setup, Kinematics const& kin);

AmplitudeResult total_amplitude(ScatteringSetup const& setup, Kinematics const& kin);

/*!
 * First-order-in-eta closed forms for a Gaussian bump, used as reference
 * values for the quadrature path.
 */
namespace gaussian_order_eta {

Complex I0(GaussianBumpParams const& bump, Kinematics const& kin, double lambda1, double lambda2);
Complex J(GaussianBumpParams const& bump, Vec2 const& p, Vec2 const& q, double lambda1, double lambda2);
Complex I11(GaussianBumpParams const& bump, double k, double lambda1, double lambda2);

}  // namespace gaussian_order_eta

}  // namespace geoscatter
