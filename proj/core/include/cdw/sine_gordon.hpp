#pragma once

#include <cstddef>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

namespace cdw::sg {

// Discrete pendulum chain: phi_i'' = w0^2 (phi_{i+1} - 2 phi_i + phi_{i-1}) - w1^2 sin phi_i.
// The two end sites are clamped (their velocity and acceleration stay zero).
struct ChainState {
    std::vector<double> phi;
    std::vector<double> phi_dot;
    double omega0_sq = 1.0;
    double omega1_sq = 1.0;
    double t = 0.0;

    [[nodiscard]] std::size_t size() const noexcept { return phi.size(); }
    void validate() const;
};

struct KinkSpec {
    double beta = 0.0;  // |beta| < 1
    int sign = +1;      // +1 kink, -1 antikink

    void validate() const;
};

// 4 arctan(exp(sign (z + beta tau) / sqrt(1 - beta^2))), in (0, 2 pi).
[[nodiscard]] double kink_phase(double z, double tau, const KinkSpec& k);

// d/dtau of kink_phase.
[[nodiscard]] double kink_phase_rate(double z, double tau, const KinkSpec& k);

// (z, tau) = (omega1 x / v, omega1 t)
[[nodiscard]] std::pair<double, double> nondimensionalize(double x, double t, double v, double omega1);
[[nodiscard]] std::pair<double, double> dimensionalize(double z, double tau, double v, double omega1);

// Residual of phi_tautau - phi_zz + sin phi on the interior points of the
// middle level, second-order central differences in both directions.
[[nodiscard]] std::vector<double> sine_gordon_residual(std::span<const double> level_prev,
                                                       std::span<const double> level_mid,
                                                       std::span<const double> level_next, double dz,
                                                       double dtau);

[[nodiscard]] std::vector<double> chain_acceleration(const ChainState& s);

// Kinetic plus potential energy of the chain:
//   sum 1/2 phi_dot^2 + 1/2 w0^2 sum (phi_{i+1} - phi_i)^2 + w1^2 sum (1 - cos phi_i)
[[nodiscard]] double chain_energy(const ChainState& s);

// Classical RK4 on (phi, phi_dot). Returns the initial state followed by
// one snapshot every `stride` steps (and the final state if it does not
// fall on the stride). OverflowError on a non-finite state.
[[nodiscard]] std::vector<ChainState> integrate_chain_rk4(const ChainState& s, double dt, std::size_t steps,
                                                          std::size_t stride = 1);

// Lattice kink: site i sits at x_i = (i - centre) * d, v = sqrt(omega0_sq) * d,
// velocities from the analytic time derivative at t = 0.
struct LatticeKink {
    std::size_t sites = 2000;
    double spacing = 1.0;       // d
    double omega0_sq = 625.0;
    double omega1_sq = 1.0;
    double centre = -1.0;       // site index of the phi = pi crossing; < 0 means the middle
    KinkSpec kink;

    [[nodiscard]] double v() const;
    [[nodiscard]] ChainState initial_state() const;
};

// Interpolated position (in site units times dx_lattice) of the unique
// interior phi = pi crossing. DiagnosticError when there is none or several.
[[nodiscard]] double kink_position(const ChainState& s, double dx_lattice);

// Least-squares slope of kink position against time.
[[nodiscard]] double kink_velocity_estimate(std::span<const ChainState> snapshots, double dx_lattice,
                                            double dt_snapshot);

// pi (tanh b(x - x_a) + tanh b(x_b - x))
[[nodiscard]] double thin_wall_profile(double x, double b, double x_a, double x_b);

// Long format: `t,site,phi,phi_dot`.
void write_snapshots_csv(std::ostream& out, std::span<const ChainState> snapshots);

}  // namespace cdw::sg
