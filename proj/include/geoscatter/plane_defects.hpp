#pragma once

#include <vector>

#include <Eigen/Core>

#include "geoscatter/types.hpp"

namespace geoscatter {

/*!
 * Positions and renormalized couplings of N point defects in the plane.
 *
 * Couplings are the dimensionless g = m xi / hbar^2 (xi already
 * renormalized). Positions must be pairwise distinct; couplings nonzero.
 */
class DefectConfiguration {
  public:
    DefectConfiguration(std::vector<Vec2> positions, std::vector<Complex> couplings);

    std::size_t size() const noexcept { return positions_.size(); }
    std::vector<Vec2> const& positions() const noexcept { return positions_; }
    std::vector<Complex> const& couplings() const noexcept { return couplings_; }
    Vec2 const& position(std::size_t j) const { return positions_.at(j); }
    Complex coupling(std::size_t j) const { return couplings_.at(j); }

    DefectConfiguration translated(Vec2 const& shift) const;

  private:
    std::vector<Vec2> positions_;
    std::vector<Complex> couplings_;
};

/*!
 * Incident direction theta0 and outgoing direction theta at wavenumber k.
 */
struct Kinematics {
    double k = 1.0;
    double theta0 = 0.0;
    double theta = 0.0;

    Kinematics() = default;
    Kinematics(double k_, double theta0_, double theta_);

    Vec2 incident() const;  // k
    Vec2 outgoing() const;  // k'
    double scattering_angle() const { return theta - theta0; }
    // sin(Theta / 2); |k' - k| = 2 k |s|.
    double half_angle_sine() const;
};

struct InteractionMatrix {
    Eigen::MatrixXcd entries;
    double k = 0;
};

// xi~ = 1 / (1/xi - (ln(k rho / 2) + gamma) / pi).
Complex renormalize_coupling(Complex bare_xi, double rho, double k);

// A_jj = (2/g_j + i)/4, A_ij = (i/4) H0(k |a_i - a_j|).
InteractionMatrix build_interaction_matrix(DefectConfiguration const& cfg, double k);

/*!
 * Dense inverse of A, obtained from an LU solve against the identity.
 * Throws ResonanceError when the condition number exceeds 1e14.
 */
Eigen::MatrixXcd interaction_inverse(InteractionMatrix const& a);

// X_i = (1/2pi) sum_j Ainv_ij exp(i a_j . kvec)
std::vector<Complex> solve_defect_coefficients(InteractionMatrix const& a,
                                               DefectConfiguration const& cfg, Vec2 const& kvec);

// Flat-plane amplitude f0(k', k) from the general N-defect solve.
Complex amplitude_flat(DefectConfiguration const& cfg, Kinematics const& kin);

// Closed form for one defect; requires cfg.size() == 1.
Complex amplitude_single_closed(DefectConfiguration const& cfg, Kinematics const& kin);

/*!
 * Closed form for two defects. With transfer_matrix_convention the
 * inter-defect H0(k d) is replaced by its real part J0(k d), which is the
 * result of the transfer-matrix treatment. Throws ResonanceError when the
 * denominator vanishes.
 */
Complex amplitude_double_closed(DefectConfiguration const& cfg, Kinematics const& kin,
                                bool transfer_matrix_convention = false);

// Zeroth-order wavefunction psi0(x) for incident wavevector kvec; x must not be a defect site.
Complex wavefunction_psi0(DefectConfiguration const& cfg, Vec2 const& kvec, Vec2 const& x);

// -(1/2) sqrt(i / (2 pi k)), with sqrt(i) = exp(i pi / 4).
Complex amplitude_prefactor(double k);

}  // namespace geoscatter
