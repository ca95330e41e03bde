#include "cdw/model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "cdw/errors.hpp"

namespace cdw::model {

namespace {

bool finite_all(std::span<const double> xs) {
    for (double x : xs)
        if (!std::isfinite(x)) return false;
    return true;
}

}  // namespace

void PhysicalParams::validate() const {
    const double fields[] = {D, omega_p_sq, mu_E, theta, D1, E1, E2, delta_prime, hbar};
    require(finite_all(fields), "PhysicalParams: non-finite field");
    require(D > 0.0, "PhysicalParams: D must be > 0");
    require(D1 > 0.0, "PhysicalParams: D1 must be > 0");
    require(hbar > 0.0, "PhysicalParams: hbar must be > 0");
    require(omega_p_sq >= 0.0 && mu_E >= 0.0, "PhysicalParams: omega_p_sq and mu_E must be >= 0");
    require(E1 >= 0.0 && E2 >= 0.0 && delta_prime >= 0.0,
            "PhysicalParams: E1, E2, delta_prime must be >= 0");
    if (experimental_regime) {
        const double ratio = mu_E / (D * omega_p_sq);
        require(ratio > 0.01 && ratio <= 0.015,
                "PhysicalParams: mu_E/(D*omega_p_sq) = " + std::to_string(ratio) +
                    " outside the experimental regime (0.01, 0.015]");
    }
}

void FieldDriveParams::validate() const {
    const double fields[] = {e_star, E_applied, E_threshold, c_v, a_D, G_p, delta_s};
    require(finite_all(fields), "FieldDriveParams: non-finite field");
    require(E_threshold > 0.0, "FieldDriveParams: E_threshold must be > 0");
    require(E_applied >= 0.0, "FieldDriveParams: E_applied must be >= 0");
    require(c_v > 0.0, "FieldDriveParams: c_v must be > 0");
    require(G_p > 0.0 && delta_s > 0.0, "FieldDriveParams: G_p and delta_s must be > 0");
}

double washboard_potential(double phi, const PhysicalParams& p) {
    require(std::isfinite(phi), "washboard_potential: non-finite phi");
    const double shift = phi - p.theta;
    return 0.5 * p.mu_E * shift * shift + 0.5 * p.D * p.omega_p_sq * (1.0 - std::cos(phi));
}

double multichain_potential(std::span<const double> phis, const PhysicalParams& p) {
    require(phis.size() >= 2, "multichain_potential: need at least 2 chains");
    require(finite_all(phis), "multichain_potential: non-finite phase");
    double e = 0.0;
    for (std::size_t n = 0; n < phis.size(); ++n) {
        const double shift = phis[n] - p.theta;
        e += p.E1 * (1.0 - std::cos(phis[n])) + p.E2 * shift * shift;
        if (n > 0) e += p.delta_prime * (1.0 - std::cos(phis[n] - phis[n - 1]));
    }
    return e;
}

double two_chain_potential(double phi1, double phi2, const PhysicalParams& p) {
    const double s1 = phi1 - p.theta;
    const double s2 = phi2 - p.theta;
    return p.E1 * (2.0 - std::cos(phi1) - std::cos(phi2)) + p.E2 * (s1 * s1 + s2 * s2) +
           p.delta_prime * (1.0 - std::cos(phi2 - phi1));
}

double quadratic_coupling_approx(std::span<const double> phis, const PhysicalParams& p) {
    require(phis.size() >= 2, "quadratic_coupling_approx: need at least 2 chains");
    require(finite_all(phis), "quadratic_coupling_approx: non-finite phase");
    double pinning = 0.0;
    double coupling = 0.0;
    for (std::size_t n = 0; n < phis.size(); ++n) {
        pinning += 1.0 - std::cos(phis[n]);
        if (n > 0) {
            const double d = phis[n] - phis[n - 1];
            coupling += d * d;
        }
    }
    return p.E1 * pinning + 0.5 * p.delta_prime * coupling;
}

double extended_potential(double phi, double phi0, double C1, double C2) {
    require(std::isfinite(phi) && std::isfinite(phi0) && std::isfinite(C1) && std::isfinite(C2),
            "extended_potential: non-finite input");
    const double d = phi - phi0;
    const double sq = phi * phi - phi0 * phi0;
    return C1 * d * d - 4.0 * C2 * phi * phi0 * d * d + C2 * sq * sq;
}

double driving_theta(double E, double e_star_field) {
    require(e_star_field > 0.0, "driving_theta: E* must be > 0");
    return 2.0 * std::numbers::pi * (E / e_star_field);
}

double threshold_field(double e_star_field) {
    require(e_star_field > 0.0, "threshold_field: E* must be > 0");
    return 0.5 * e_star_field;
}

}  // namespace cdw::model
