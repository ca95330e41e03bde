#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cdw/curve_table.hpp"

namespace cdw::tunneling {

// Soliton-antisoliton pair with walls at x_a and x_b = x_a + L.
struct PairGeometry {
    double L = 1.0;
    double b = 1e4;
    double x_a = -0.5;
    double x_b = 0.5;
    double n1 = 0.99;

    // Centered pair of separation L and steepness b.
    [[nodiscard]] static PairGeometry centred(double L, double b, double n1 = 0.99);
    void validate() const;
};

// How the Beckwith current combines its two square roots.
enum class CoshForm {
    CoshOfDifference,   // cosh(sqrt(2E/(E_T c_v)) - sqrt(E_T c_v/E))
    DifferenceOfCosh,   // cosh(sqrt(2E/(E_T c_v))) - cosh(sqrt(E_T c_v/E)), comparison only
};

struct CurrentParams {
    double E_T = 1.0;
    double c_v = 1.0;
    double C_tilde = 1.0;
    double G_p = 1.0;
    bool gate_zener = true;
    CoshForm cosh_form = CoshForm::CoshOfDifference;

    void validate() const;
};

enum class Side { Initial, Final };

// 1 / sqrt( 1/2 sqrt(pi/(2a)) erf(upper sqrt(2a)) ), i.e. the constant C with
// C^2 int_0^upper exp(-2 a phi^2) dphi = 1.
[[nodiscard]] double gaussian_norm_constant(double a_exp, double upper);

// Upper integration limit sqrt(L^2 / (2 pi)) used for the pair of separation L.
[[nodiscard]] double norm_upper_limit(double L);

// sqrt(2/pi) sin(k L/2) / k, with the k -> 0 limit sqrt(2/pi) L/2.
[[nodiscard]] double soliton_fourier(double k, double L);

// Max relative deviation between the numerical Fourier transform of the
// (2 pi normalized, centered) thin-wall profile and soliton_fourier over the
// first n_modes wavenumbers k_j = 2 pi j / box with nonzero amplitude.
// Requires b L >= 100 and box >= 10 L.
[[nodiscard]] double thin_wall_fourier_check(const PairGeometry& g, std::size_t n_modes, double box);

struct FourierMode {
    double k;
    double numeric;
    double analytic;
    double rel_dev;
};

// Per-mode detail behind thin_wall_fourier_check.
[[nodiscard]] std::vector<FourierMode> thin_wall_fourier_modes(const PairGeometry& g, std::size_t n_modes,
                                                               double box);

// Discrete wavenumbers k_n = 2 pi n / box, n = 1..n_modes.
[[nodiscard]] std::vector<double> mode_wavenumbers(std::size_t n_modes, double box);

// (2 pi/L)^2 sum |phi_k|^2, times (1 - n1^2) for the final state.
[[nodiscard]] double momentum_exponent(std::span<const double> phi_k, double L, double n1, Side which);

[[nodiscard]] double current_beckwith(double E, const CurrentParams& cp);

// log of current_beckwith for the cosh-of-difference form; finite where the
// current itself underflows. DomainError for the difference-of-cosh form.
[[nodiscard]] double log_current_beckwith(double E, const CurrentParams& cp);

// G_p (E - E_T) exp(-E_T/E); zero below E_T when gated.
[[nodiscard]] double current_zener(double E, const CurrentParams& cp);

// L = 2 delta_s / (e* E)
[[nodiscard]] double pair_separation(double E, double delta_s, double e_star);

// L / xbar = c_v E_T / E
[[nodiscard]] double separation_ratio(double E, const CurrentParams& cp);

// xbar = E (charge/mass) / omega^2
[[nodiscard]] double harmonic_reference(double E, double omega, double m_charge_ratio);

// alpha ~ 1/L
[[nodiscard]] double gap_alpha(double L);

// Columns E, I_beckwith, I_zener_gated, I_zener_ungated. Points that fail
// are kept with NaN (written as empty fields).
[[nodiscard]] CurveTable iv_curve(std::span<const double> E_grid, const CurrentParams& cp);

}  // namespace cdw::tunneling
