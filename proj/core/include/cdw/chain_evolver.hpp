#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <ostream>
#include <vector>

#include "cdw/model.hpp"

namespace cdw::evolver {

using Complex = std::complex<double>;

// Complex amplitude sampled on the uniform phase grid x_j = x0 + j*dx.
struct ComplexField {
    std::vector<Complex> values;
    double dx = 1.0;
    double x0 = 0.0;

    [[nodiscard]] std::size_t size() const noexcept { return values.size(); }
    [[nodiscard]] double x(std::size_t j) const noexcept { return x0 + static_cast<double>(j) * dx; }

    // Throws DomainError unless N >= 3, dx > 0 and every amplitude is finite.
    void validate() const;
};

enum class SchemeKind {
    CrankNicolsonAsPrinted,
    DufortFrankelAsPrinted,
    CrankNicolsonStandard,
    DufortFrankelStandard,
};

enum class Boundary { Dirichlet, Periodic };

struct StepOptions {
    Boundary boundary = Boundary::Dirichlet;
    // Fixed-point sweeps used to resolve the level n+1 terms of the
    // as-printed Crank-Nicolson update. Each sweep starts from the latest
    // iterate; the first iterate is the current level.
    int sweeps = 1;
};

// Time series recorded by evolve(): entry 0 is the initial state.
struct Trajectory {
    std::vector<double> times;
    std::vector<double> mean_phase;
    std::vector<double> norm;
    bool truncated = false;
    std::optional<std::size_t> overflow_step;

    [[nodiscard]] std::size_t size() const noexcept { return times.size(); }
};

[[nodiscard]] const char* to_string(SchemeKind kind) noexcept;
[[nodiscard]] SchemeKind scheme_from_string(const std::string& name);
[[nodiscard]] bool is_three_level(SchemeKind kind) noexcept;

// Normalized Gaussian packet exp(-alpha0 (x - xc)^2) on n points spanning [x_min, x_max].
[[nodiscard]] ComplexField gaussian_packet(std::size_t n, double x_min, double x_max,
                                           double alpha0 = 1.0, double xc = 0.0);

// sum_j |psi_j|^2 dx
[[nodiscard]] double norm(const ComplexField& f);

// sum_j x_j |psi_j|^2 / sum_j |psi_j|^2; DomainError on zero norm.
[[nodiscard]] double mean_phase(const ComplexField& f);

// V_j = washboard_potential(x_j, p) on the grid of f.
[[nodiscard]] std::vector<double> grid_potential(const ComplexField& f, const model::PhysicalParams& p);

// Three-level update in the literal printed form:
//   new = prev + i dt ( (hbar/D) [c(j+1) - c(j-1) - 2c(j) + n(j+1) + n(j-1) - 2n(j)] / dx^2
//                       - (2 V_j / hbar) c(j) )
// with the n(.) terms taken from the previous fixed-point iterate.
[[nodiscard]] ComplexField step_crank_nicolson_printed(const ComplexField& prev, const ComplexField& curr,
                                                       const model::PhysicalParams& p, double dt,
                                                       const StepOptions& opts = {},
                                                       std::size_t step_index = 0);

// Three-level update in the literal printed form, R = -i dt hbar / (2 D dx^2):
//   new = 2R/(1+2R) (c(j-1) - c(j+1)) + (1-2R)/(1+2R) prev(j) - i dt (V_j/hbar) c(j)
[[nodiscard]] ComplexField step_dufort_frankel_printed(const ComplexField& prev, const ComplexField& curr,
                                                       const model::PhysicalParams& p, double dt,
                                                       const StepOptions& opts = {},
                                                       std::size_t step_index = 0);

// Textbook schemes for i hbar psi_t = -(hbar^2/D) psi_xx + V psi.
// CrankNicolsonStandard ignores `prev` (two-level, unitary Cayley form);
// DufortFrankelStandard uses the neighbour sum with prev-level centre terms.
[[nodiscard]] ComplexField step_standard(SchemeKind kind, const ComplexField& prev, const ComplexField& curr,
                                         const model::PhysicalParams& p, double dt,
                                         const StepOptions& opts = {}, std::size_t step_index = 0);

// Dispatches on kind to one of the three steppers above.
[[nodiscard]] ComplexField step(SchemeKind kind, const ComplexField& prev, const ComplexField& curr,
                                const model::PhysicalParams& p, double dt, const StepOptions& opts = {},
                                std::size_t step_index = 0);

// Runs `steps` updates with theta(t) = p.theta + a_D t re-evaluated every
// step. Three-level schemes are bootstrapped with one CrankNicolsonStandard
// step. Stops early (truncated = true) when a step overflows.
[[nodiscard]] Trajectory evolve(SchemeKind kind, const ComplexField& init, const model::PhysicalParams& p,
                                const model::FieldDriveParams& drive, double dt, std::size_t steps,
                                const StepOptions& opts = {});

// First index whose norm exceeds factor * norm[0].
[[nodiscard]] std::optional<std::size_t> detect_blowup(const Trajectory& t, double factor);

// Looks at the last `window` samples: true iff mean_phase has >= 2 local
// extrema there and never reaches |2 pi|.
[[nodiscard]] bool detect_resonance(const Trajectory& t, std::size_t window);

// Header `t,mean_phase,norm`, one row per recorded step.
void write_trajectory_csv(std::ostream& out, const Trajectory& t);

}  // namespace cdw::evolver
