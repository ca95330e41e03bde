#include "cdw/sine_gordon.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "cdw/curve_table.hpp"
#include "cdw/errors.hpp"

namespace cdw::sg {

namespace {

constexpr double kPi = std::numbers::pi;

void accelerations(std::span<const double> phi, double w0sq, double w1sq, std::span<double> out) {
    const std::size_t m = phi.size();
    out[0] = 0.0;
    out[m - 1] = 0.0;
    for (std::size_t i = 1; i + 1 < m; ++i)
        out[i] = w0sq * (phi[i + 1] - 2.0 * phi[i] + phi[i - 1]) - w1sq * std::sin(phi[i]);
}

}  // namespace

void ChainState::validate() const {
    require(phi.size() >= 3, "ChainState: need at least 3 sites");
    require(phi.size() == phi_dot.size(), "ChainState: phi and phi_dot lengths differ");
    require(omega0_sq >= 0.0 && omega1_sq >= 0.0, "ChainState: frequencies must be >= 0");
    for (std::size_t i = 0; i < phi.size(); ++i)
        require(std::isfinite(phi[i]) && std::isfinite(phi_dot[i]), "ChainState: non-finite state");
}

void KinkSpec::validate() const {
    require(std::abs(beta) < 1.0, "KinkSpec: |beta| must be < 1");
    require(sign == 1 || sign == -1, "KinkSpec: sign must be +1 or -1");
}

double kink_phase(double z, double tau, const KinkSpec& k) {
    k.validate();
    const double s = k.sign * (z + k.beta * tau) / std::sqrt(1.0 - k.beta * k.beta);
    return 4.0 * std::atan(std::exp(s));
}

double kink_phase_rate(double z, double tau, const KinkSpec& k) {
    k.validate();
    const double gamma = std::sqrt(1.0 - k.beta * k.beta);
    const double s = k.sign * (z + k.beta * tau) / gamma;
    // d/ds 4 atan(e^s) = 2 sech s
    return 2.0 / std::cosh(s) * k.sign * k.beta / gamma;
}

std::pair<double, double> nondimensionalize(double x, double t, double v, double omega1) {
    require(v > 0.0 && omega1 > 0.0, "nondimensionalize: scales must be > 0");
    return {omega1 * x / v, omega1 * t};
}

std::pair<double, double> dimensionalize(double z, double tau, double v, double omega1) {
    require(v > 0.0 && omega1 > 0.0, "dimensionalize: scales must be > 0");
    return {z * v / omega1, tau / omega1};
}

std::vector<double> sine_gordon_residual(std::span<const double> level_prev, std::span<const double> level_mid,
                                         std::span<const double> level_next, double dz, double dtau) {
    const std::size_t m = level_mid.size();
    require(m >= 3, "sine_gordon_residual: need at least 3 spatial points");
    require(level_prev.size() == m && level_next.size() == m, "sine_gordon_residual: level sizes differ");
    require(dz > 0.0 && dtau > 0.0, "sine_gordon_residual: spacings must be > 0");
    std::vector<double> r(m - 2);
    const double iz2 = 1.0 / (dz * dz);
    const double it2 = 1.0 / (dtau * dtau);
    for (std::size_t i = 1; i + 1 < m; ++i) {
        const double phi_tt = (level_next[i] - 2.0 * level_mid[i] + level_prev[i]) * it2;
        const double phi_zz = (level_mid[i + 1] - 2.0 * level_mid[i] + level_mid[i - 1]) * iz2;
        r[i - 1] = phi_tt - phi_zz + std::sin(level_mid[i]);
    }
    return r;
}

std::vector<double> chain_acceleration(const ChainState& s) {
    s.validate();
    std::vector<double> a(s.size());
    accelerations(s.phi, s.omega0_sq, s.omega1_sq, a);
    return a;
}

double chain_energy(const ChainState& s) {
    double kinetic = 0.0;
    double pinning = 0.0;
    double elastic = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        kinetic += 0.5 * s.phi_dot[i] * s.phi_dot[i];
        pinning += 1.0 - std::cos(s.phi[i]);
        if (i > 0) {
            const double d = s.phi[i] - s.phi[i - 1];
            elastic += d * d;
        }
    }
    return kinetic + 0.5 * s.omega0_sq * elastic + s.omega1_sq * pinning;
}

std::vector<ChainState> integrate_chain_rk4(const ChainState& s0, double dt, std::size_t steps,
                                            std::size_t stride) {
    s0.validate();
    require(dt > 0.0, "integrate_chain_rk4: dt must be > 0");
    require(steps >= 1, "integrate_chain_rk4: steps must be >= 1");
    require(stride >= 1, "integrate_chain_rk4: stride must be >= 1");

    const std::size_t m = s0.size();
    const double w0 = s0.omega0_sq;
    const double w1 = s0.omega1_sq;
    ChainState s = s0;
    s.phi_dot.front() = 0.0;
    s.phi_dot.back() = 0.0;

    std::vector<double> k1p(m), k1v(m), k2p(m), k2v(m), k3p(m), k3v(m), k4p(m), k4v(m), tmp(m);
    std::vector<ChainState> out;
    out.reserve(steps / stride + 2);
    out.push_back(s);

    for (std::size_t n = 1; n <= steps; ++n) {
        k1p = s.phi_dot;
        accelerations(s.phi, w0, w1, k1v);

        for (std::size_t i = 0; i < m; ++i) {
            tmp[i] = s.phi[i] + 0.5 * dt * k1p[i];
            k2p[i] = s.phi_dot[i] + 0.5 * dt * k1v[i];
        }
        accelerations(tmp, w0, w1, k2v);

        for (std::size_t i = 0; i < m; ++i) {
            tmp[i] = s.phi[i] + 0.5 * dt * k2p[i];
            k3p[i] = s.phi_dot[i] + 0.5 * dt * k2v[i];
        }
        accelerations(tmp, w0, w1, k3v);

        for (std::size_t i = 0; i < m; ++i) {
            tmp[i] = s.phi[i] + dt * k3p[i];
            k4p[i] = s.phi_dot[i] + dt * k3v[i];
        }
        accelerations(tmp, w0, w1, k4v);

        bool finite = true;
        for (std::size_t i = 0; i < m; ++i) {
            s.phi[i] += dt / 6.0 * (k1p[i] + 2.0 * k2p[i] + 2.0 * k3p[i] + k4p[i]);
            s.phi_dot[i] += dt / 6.0 * (k1v[i] + 2.0 * k2v[i] + 2.0 * k3v[i] + k4v[i]);
            finite = finite && std::isfinite(s.phi[i]) && std::isfinite(s.phi_dot[i]);
        }
        if (!finite) throw OverflowError(n, "integrate_chain_rk4: non-finite state");
        s.t = s0.t + static_cast<double>(n) * dt;
        if (n % stride == 0 || n == steps) out.push_back(s);
    }
    return out;
}

double LatticeKink::v() const { return std::sqrt(omega0_sq) * spacing; }

ChainState LatticeKink::initial_state() const {
    kink.validate();
    require(sites >= 3, "LatticeKink: need at least 3 sites");
    require(spacing > 0.0 && omega0_sq > 0.0 && omega1_sq > 0.0, "LatticeKink: scales must be > 0");
    const double omega1 = std::sqrt(omega1_sq);
    const double c = centre < 0.0 ? 0.5 * static_cast<double>(sites - 1) : centre;
    ChainState s;
    s.omega0_sq = omega0_sq;
    s.omega1_sq = omega1_sq;
    s.phi.resize(sites);
    s.phi_dot.resize(sites);
    for (std::size_t i = 0; i < sites; ++i) {
        const double x = (static_cast<double>(i) - c) * spacing;
        const auto [z, tau] = nondimensionalize(x, 0.0, v(), omega1);
        s.phi[i] = kink_phase(z, tau, kink);
        s.phi_dot[i] = omega1 * kink_phase_rate(z, tau, kink);
    }
    // clamp the ends to the asymptotic vacua
    s.phi.front() = kink.sign > 0 ? 0.0 : 2.0 * kPi;
    s.phi.back() = kink.sign > 0 ? 2.0 * kPi : 0.0;
    s.phi_dot.front() = 0.0;
    s.phi_dot.back() = 0.0;
    return s;
}

double kink_position(const ChainState& s, double dx_lattice) {
    int crossings = 0;
    double where = 0.0;
    for (std::size_t i = 1; i + 2 < s.size(); ++i) {
        const double a = s.phi[i] - kPi;
        const double b = s.phi[i + 1] - kPi;
        if (a == 0.0) {
            ++crossings;
            where = static_cast<double>(i);
        } else if ((a < 0.0) != (b < 0.0) && b != 0.0) {
            ++crossings;
            where = static_cast<double>(i) + a / (a - b);
        }
    }
    if (crossings != 1)
        throw DiagnosticError("kink_position: expected one phi = pi crossing, found " + std::to_string(crossings));
    return where * dx_lattice;
}

double kink_velocity_estimate(std::span<const ChainState> snapshots, double dx_lattice, double dt_snapshot) {
    if (snapshots.size() < 2) throw DiagnosticError("kink_velocity_estimate: need at least 2 snapshots");
    require(dt_snapshot > 0.0, "kink_velocity_estimate: dt_snapshot must be > 0");
    const double n = static_cast<double>(snapshots.size());
    double st = 0.0, sx = 0.0, stt = 0.0, stx = 0.0;
    for (std::size_t k = 0; k < snapshots.size(); ++k) {
        const double t = static_cast<double>(k) * dt_snapshot;
        const double x = kink_position(snapshots[k], dx_lattice);
        st += t;
        sx += x;
        stt += t * t;
        stx += t * x;
    }
    return (n * stx - st * sx) / (n * stt - st * st);
}

double thin_wall_profile(double x, double b, double x_a, double x_b) {
    require(x_a < x_b, "thin_wall_profile: need x_a < x_b");
    require(b > 0.0, "thin_wall_profile: b must be > 0");
    return kPi * (std::tanh(b * (x - x_a)) + std::tanh(b * (x_b - x)));
}

void write_snapshots_csv(std::ostream& out, std::span<const ChainState> snapshots) {
    out << "t,site,phi,phi_dot\n";
    for (const ChainState& s : snapshots)
        for (std::size_t i = 0; i < s.size(); ++i)
            out << format_number(s.t) << ',' << i << ',' << format_number(s.phi[i]) << ','
                << format_number(s.phi_dot[i]) << '\n';
}

}  // namespace cdw::sg
