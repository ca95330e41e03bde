#pragma once

#include <span>

namespace cdw::model {

// Dimensionless model constants. Single-chain fields (D, omega_p_sq, mu_E)
// drive the washboard potential; D1, E1, E2, delta_prime are the
// multi-chain / two-chain Hamiltonian constants.
struct PhysicalParams {
    double D = 1.0;             // inertial coefficient
    double omega_p_sq = 1.0;    // pinning frequency squared
    double mu_E = 0.012;        // electrostatic coefficient
    double theta = 0.0;         // driving phase
    double D1 = 174.091;        // two-chain inertial coefficient
    double E1 = 1e-5;           // pinning energy
    double E2 = 1e-6;           // charging energy
    double delta_prime = 0.005; // inter-chain coupling
    double hbar = 1.0;

    // When set, validate() additionally enforces 0.01 < mu_E/(D*omega_p_sq) <= 0.015.
    bool experimental_regime = false;

    void validate() const;
};

struct FieldDriveParams {
    double e_star = 2.0;
    double E_applied = 0.0;
    double E_threshold = 1.0;
    double c_v = 1.0;
    double a_D = 0.0;           // drive frequency, Theta(t) = theta0 + a_D * t
    double G_p = 1.0;
    double delta_s = 1.0;

    void validate() const;
};

// 1/2 mu_E (phi - theta)^2 + 1/2 D omega_p^2 (1 - cos phi)
[[nodiscard]] double washboard_potential(double phi, const PhysicalParams& p);

// Open-chain sum of E1 (1 - cos phi_n) + E2 (phi_n - theta)^2 plus
// delta' (1 - cos(phi_n - phi_{n-1})) over consecutive pairs.
[[nodiscard]] double multichain_potential(std::span<const double> phis, const PhysicalParams& p);

// Two-chain specialization of multichain_potential, no allocation.
[[nodiscard]] double two_chain_potential(double phi1, double phi2, const PhysicalParams& p);

// Harmonic reduction of the coupling: E1 sum (1 - cos phi) + delta'/2 sum (dphi)^2.
// The E2 term is not part of this form.
[[nodiscard]] double quadratic_coupling_approx(std::span<const double> phis, const PhysicalParams& p);

[[nodiscard]] double extended_potential(double phi, double phi0, double C1, double C2);

// Theta = 2 pi E / E*
[[nodiscard]] double driving_theta(double E, double e_star_field);

// E_T = E*/2, the field at which Theta reaches pi.
[[nodiscard]] double threshold_field(double e_star_field);

}  // namespace cdw::model
