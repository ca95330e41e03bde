#include "cdw/tunneling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "cdw/errors.hpp"
#include "cdw/quadrature.hpp"
#include "cdw/sine_gordon.hpp"
#include "cdw/special.hpp"

namespace cdw::tunneling {

namespace {

constexpr double kPi = std::numbers::pi;

// Breakpoints on [lo, hi] graded geometrically towards each wall centre, so
// panels next to a wall are ~1/(2b) wide and no panel exceeds L/4.
std::vector<double> graded_breakpoints(const PairGeometry& g, double lo, double hi) {
    std::vector<double> bp{lo, hi};
    const double coarse = g.L / 4.0;
    for (double w : {g.x_a, g.x_b}) {
        bp.push_back(w);
        for (double h = 0.5 / g.b; h < coarse; h *= 2.0) {
            bp.push_back(w - h);
            bp.push_back(w + h);
        }
    }
    const auto n_coarse = static_cast<std::size_t>(std::ceil((hi - lo) / coarse));
    for (std::size_t i = 1; i < n_coarse; ++i) bp.push_back(lo + (hi - lo) * static_cast<double>(i) / n_coarse);
    std::sort(bp.begin(), bp.end());
    std::vector<double> out;
    for (double x : bp) {
        if (x < lo || x > hi) continue;
        if (!out.empty() && x - out.back() < 1e-3 / g.b) continue;
        out.push_back(x);
    }
    if (out.back() != hi) out.back() = hi;
    return out;
}

bool is_node(double k, double L) { return std::abs(std::sin(0.5 * k * L)) < 1e-9; }

}  // namespace

PairGeometry PairGeometry::centred(double L, double b, double n1) {
    PairGeometry g;
    g.L = L;
    g.b = b;
    g.x_a = -0.5 * L;
    g.x_b = 0.5 * L;
    g.n1 = n1;
    return g;
}

void PairGeometry::validate() const {
    require(L > 0.0 && b > 0.0, "PairGeometry: L and b must be > 0");
    require(n1 > 0.0 && n1 < 1.0, "PairGeometry: n1 must lie in (0, 1)");
    require(std::abs((x_b - x_a) - L) <= 1e-12 * std::max(1.0, L), "PairGeometry: x_b - x_a must equal L");
}

void CurrentParams::validate() const {
    require(E_T > 0.0 && c_v > 0.0 && C_tilde > 0.0 && G_p > 0.0, "CurrentParams: all constants must be > 0");
}

double gaussian_norm_constant(double a_exp, double upper) {
    require(a_exp > 0.0 && upper > 0.0, "gaussian_norm_constant: inputs must be > 0");
    const double integral = 0.5 * std::sqrt(kPi / (2.0 * a_exp)) * special::erf(upper * std::sqrt(2.0 * a_exp));
    return 1.0 / std::sqrt(integral);
}

double norm_upper_limit(double L) {
    require(L > 0.0, "norm_upper_limit: L must be > 0");
    return std::sqrt(L * L / (2.0 * kPi));
}

double soliton_fourier(double k, double L) {
    require(L > 0.0, "soliton_fourier: L must be > 0");
    const double amp = std::sqrt(2.0 / kPi);
    if (std::abs(k) < 1e-12 * (2.0 * kPi / L)) return amp * 0.5 * L;
    return amp * std::sin(0.5 * k * L) / k;
}

std::vector<double> mode_wavenumbers(std::size_t n_modes, double box) {
    require(box > 0.0, "mode_wavenumbers: box must be > 0");
    std::vector<double> k(n_modes);
    for (std::size_t n = 0; n < n_modes; ++n) k[n] = 2.0 * kPi * static_cast<double>(n + 1) / box;
    return k;
}

std::vector<FourierMode> thin_wall_fourier_modes(const PairGeometry& g, std::size_t n_modes, double box) {
    g.validate();
    require(g.b * g.L >= 100.0, "thin_wall_fourier_check: need b L >= 100 (sharp-wall regime)");
    require(box >= 10.0 * g.L, "thin_wall_fourier_check: need box >= 10 L");
    require(n_modes >= 1, "thin_wall_fourier_check: n_modes must be >= 1");

    const double centre = 0.5 * (g.x_a + g.x_b);
    const quadrature::Rule1D rule =
        quadrature::composite_gauss_legendre(graded_breakpoints(g, centre - 0.5 * box, centre + 0.5 * box), 20);
    std::vector<double> profile(rule.size());
    for (std::size_t i = 0; i < rule.size(); ++i)
        profile[i] = sg::thin_wall_profile(rule.nodes[i], g.b, g.x_a, g.x_b) / (2.0 * kPi);

    std::vector<FourierMode> modes;
    for (std::size_t n = 1; modes.size() < n_modes; ++n) {
        const double k = 2.0 * kPi * static_cast<double>(n) / box;
        if (is_node(k, g.L)) continue;
        double s = 0.0;
        for (std::size_t i = 0; i < rule.size(); ++i)
            s += rule.weights[i] * profile[i] * std::cos(k * (rule.nodes[i] - centre));
        const double numeric = s / std::sqrt(2.0 * kPi);
        const double analytic = soliton_fourier(k, g.L);
        modes.push_back({k, numeric, analytic, std::abs(numeric - analytic) / std::abs(analytic)});
    }
    return modes;
}

double thin_wall_fourier_check(const PairGeometry& g, std::size_t n_modes, double box) {
    double worst = 0.0;
    for (const FourierMode& m : thin_wall_fourier_modes(g, n_modes, box)) worst = std::max(worst, m.rel_dev);
    return worst;
}

double momentum_exponent(std::span<const double> phi_k, double L, double n1, Side which) {
    require(!phi_k.empty(), "momentum_exponent: empty amplitude sequence");
    require(L > 0.0, "momentum_exponent: L must be > 0");
    if (which == Side::Final) require(n1 > 0.0 && n1 < 1.0, "momentum_exponent: n1 must lie in (0, 1)");
    double sum = 0.0;
    for (double a : phi_k) sum += a * a;
    const double scale = (2.0 * kPi / L) * (2.0 * kPi / L);
    return which == Side::Initial ? scale * sum : scale * (1.0 - n1 * n1) * sum;
}

namespace {

// log[cosh(sqrt(2E/s) - sqrt(s/E)) exp(-s/E)], with log cosh x = x + log1p(exp(-2x)) - log 2
double log_cosh_envelope(double E, double s) {
    const double x = std::abs(std::sqrt(2.0 * E / s) - std::sqrt(s / E));
    return x + std::log1p(std::exp(-2.0 * x)) - std::numbers::ln2 - s / E;
}

}  // namespace

double current_beckwith(double E, const CurrentParams& cp) {
    cp.validate();
    require(E > 0.0, "current_beckwith: E must be > 0");
    const double scale = cp.E_T * cp.c_v;
    const double up = std::sqrt(2.0 * E / scale);
    const double down = std::sqrt(scale / E);
    if (cp.cosh_form == CoshForm::DifferenceOfCosh)
        return cp.C_tilde * (std::cosh(up) - std::cosh(down)) * std::exp(-scale / E);
    return cp.C_tilde * std::exp(log_cosh_envelope(E, cp.E_T * cp.c_v));
}

double log_current_beckwith(double E, const CurrentParams& cp) {
    cp.validate();
    require(E > 0.0, "log_current_beckwith: E must be > 0");
    require(cp.cosh_form == CoshForm::CoshOfDifference, "log_current_beckwith: needs the cosh-of-difference form");
    return std::log(cp.C_tilde) + log_cosh_envelope(E, cp.E_T * cp.c_v);
}

double current_zener(double E, const CurrentParams& cp) {
    cp.validate();
    require(E >= 0.0, "current_zener: E must be >= 0");
    if (cp.gate_zener) return E > cp.E_T ? cp.G_p * (E - cp.E_T) * std::exp(-cp.E_T / E) : 0.0;
    if (E == 0.0) return 0.0;  // limit of (E - E_T) exp(-E_T/E) as E -> 0+
    return cp.G_p * (E - cp.E_T) * std::exp(-cp.E_T / E);
}

double pair_separation(double E, double delta_s, double e_star) {
    require(E > 0.0 && delta_s > 0.0 && e_star > 0.0, "pair_separation: inputs must be > 0");
    return 2.0 * delta_s / (e_star * E);
}

double separation_ratio(double E, const CurrentParams& cp) {
    require(E > 0.0, "separation_ratio: E must be > 0");
    return cp.c_v * cp.E_T / E;
}

double harmonic_reference(double E, double omega, double m_charge_ratio) {
    require(omega > 0.0, "harmonic_reference: omega must be > 0");
    return E * m_charge_ratio / (omega * omega);
}

double gap_alpha(double L) {
    require(L > 0.0, "gap_alpha: L must be > 0");
    return 1.0 / L;
}

CurveTable iv_curve(std::span<const double> E_grid, const CurrentParams& cp) {
    cp.validate();
    for (std::size_t i = 1; i < E_grid.size(); ++i)
        require(E_grid[i] > E_grid[i - 1], "iv_curve: E grid must be strictly increasing");

    CurveTable table({"E", "I_beckwith", "I_zener_gated", "I_zener_ungated"});
    CurrentParams gated = cp;
    gated.gate_zener = true;
    CurrentParams ungated = cp;
    ungated.gate_zener = false;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    auto guarded = [&](auto&& fn) {
        try {
            return fn();
        } catch (const DomainError&) {
            return nan;
        }
    };
    for (double E : E_grid) {
        table.add_row({E, guarded([&] { return current_beckwith(E, cp); }),
                       guarded([&] { return current_zener(E, gated); }),
                       guarded([&] { return current_zener(E, ungated); })});
    }
    return table;
}

}  // namespace cdw::tunneling
