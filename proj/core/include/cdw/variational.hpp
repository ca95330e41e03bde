#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include "cdw/errors.hpp"
#include "cdw/model.hpp"
#include "cdw/quadrature.hpp"

namespace cdw::variational {

inline constexpr int kCombHalfWidth = 2;                 // m = -2..2
inline constexpr std::size_t kCombSize = 2 * kCombHalfWidth + 1;

// Two-chain Gaussian comb: chain 1 amplitude sum_m b_m exp(-alpha (phi - 2 pi m)^2),
// chain 2 the same with c_m. Index 0 holds m = -2.
struct AnsatzCoeffs {
    std::array<double, kCombSize> b{0.0, 0.0, 1.0, 0.0, 0.0};
    std::array<double, kCombSize> c{0.0, 0.0, 1.0, 0.0, 0.0};
    double alpha = 1.0;

    // Rescales b and c to unit Euclidean norm; DomainError if either is zero.
    void normalize();
    // Unit norms within 1e-12 and alpha > 0.
    void validate() const;

    [[nodiscard]] static AnsatzCoeffs single_well(int m, double alpha);
    [[nodiscard]] static AnsatzCoeffs uniform(double alpha);
};

// Composite Gauss-Legendre on the box [-eta pi, eta pi]^2.
struct QuadratureSpec {
    double eta = 20.0;
    int panels = 80;
    int order = 16;

    void validate() const;
    [[nodiscard]] quadrature::Rule1D axis_rule() const;
};

class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& detail, AnsatzCoeffs best, double best_energy)
        : Error("convergence", detail), best_(best), best_energy_(best_energy) {}

    [[nodiscard]] const AnsatzCoeffs& best() const noexcept { return best_; }
    [[nodiscard]] double best_energy() const noexcept { return best_energy_; }

private:
    AnsatzCoeffs best_;
    double best_energy_;
};

// Unnormalized product amplitude psi_1(phi1) psi_2(phi2).
[[nodiscard]] double ansatz_value(double phi1, double phi2, const AnsatzCoeffs& a);

// One chain's comb sum_m w_m exp(-alpha (phi - 2 pi m)^2) and its second derivative.
[[nodiscard]] double comb_value(double phi, std::span<const double, kCombSize> w, double alpha);
[[nodiscard]] double comb_second_derivative(double phi, std::span<const double, kCombSize> w, double alpha);

// Tensor-product quadrature over the eta box, specialized to the product
// ansatz. Every integrand used here is a sum of products f(phi1) g(phi2)
// (cos(phi2 - phi1) = cos cos + sin sin), so each 2-D tensor sum is
// evaluated as a product of 1-D sums over the same nodes.
class TwoChainIntegrator {
public:
    explicit TwoChainIntegrator(const QuadratureSpec& q);

    [[nodiscard]] const QuadratureSpec& spec() const noexcept { return spec_; }
    [[nodiscard]] const quadrature::Rule1D& axis() const noexcept { return axis_; }

    [[nodiscard]] double norm_squared(const AnsatzCoeffs& a) const;
    [[nodiscard]] double energy(const AnsatzCoeffs& a, const model::PhysicalParams& p, double theta) const;
    [[nodiscard]] double phase(const AnsatzCoeffs& a) const;

private:
    struct ChainMoments {
        double norm = 0.0;    // int psi^2
        double kinetic = 0.0; // int psi (-psi'')
        double one = 0.0;     // int psi^2 (1 - cos phi)
        double x = 0.0;       // int psi^2 phi
        double x2 = 0.0;      // int psi^2 phi^2
        double cos = 0.0;     // int psi^2 cos phi
        double sin = 0.0;     // int psi^2 sin phi
    };

    [[nodiscard]] ChainMoments moments(std::span<const double, kCombSize> w, double alpha, bool derivative) const;

    QuadratureSpec spec_;
    quadrature::Rule1D axis_;
    std::vector<double> cos_;
    std::vector<double> sin_;
};

// int int |Psi|^2 over the box. QuadratureError if not positive.
[[nodiscard]] double norm_squared(const AnsatzCoeffs& a, const QuadratureSpec& q);

// <Psi|H|Psi>/<Psi|Psi> for the two-chain Hamiltonian
//   sum_n [ -(hbar^2/2 D1) d^2/dphi_n^2 + E1 (1 - cos phi_n) + E2 (phi_n - theta)^2 ]
//   + delta' (1 - cos(phi_2 - phi_1)).
[[nodiscard]] double energy_expectation(const AnsatzCoeffs& a, const model::PhysicalParams& p, double theta,
                                        const QuadratureSpec& q);

// <1/2 (phi1 + phi2)>, normalized by <Psi|Psi>.
[[nodiscard]] double phase_expectation(const AnsatzCoeffs& a, const QuadratureSpec& q);

struct MinimizerOptions {
    std::size_t max_evals = 40000;   // per Nelder-Mead run
    double f_tol = 1e-15;
    double x_tol = 1e-9;
    double initial_step = 0.1;
    int max_restarts = 6;            // re-launch the simplex from the best point
    double restart_gain = 1e-14;     // stop restarting when a run improves by less
};

struct Minimum {
    AnsatzCoeffs coeffs;
    double energy = 0.0;
    bool converged = false;
    std::size_t evals = 0;
};

// Nelder-Mead over (b, c, log alpha) with b and c renormalized after every
// trial point. Throws ConvergenceError (carrying the best point) when the
// evaluation cap is exhausted before the tolerances are met.
[[nodiscard]] Minimum minimize_energy(const model::PhysicalParams& p, double theta, const TwoChainIntegrator& q,
                                      const AnsatzCoeffs& init, const MinimizerOptions& opts = {});
[[nodiscard]] Minimum minimize_energy(const model::PhysicalParams& p, double theta, const QuadratureSpec& q,
                                      const AnsatzCoeffs& init, const MinimizerOptions& opts = {});

struct SweepRow {
    double theta = 0.0;
    double E_min = 0.0;
    double mean_Phi = 0.0;
    bool converged = false;
    AnsatzCoeffs coeffs;
};

struct SweepResult {
    std::vector<SweepRow> rows;

    [[nodiscard]] std::vector<double> thetas() const;
    [[nodiscard]] std::vector<double> energies() const;
    [[nodiscard]] std::vector<double> phases() const;
};

struct SweepOptions {
    MinimizerOptions minimizer;
    // Starting width for the fixed seeds.
    double seed_alpha = 0.3;
    // Independent points (no warm start), evaluated concurrently.
    bool cold_start = false;
    unsigned threads = 0;            // 0: hardware concurrency
    // Extra randomized seeds per point, drawn from `seed`.
    int random_restarts = 0;
    std::uint64_t seed = 0;
};

// For each theta: minimize from the deterministic seeds (the previous
// point's minimum when warm-starting, all weight on m = 0, uniform weights,
// all weight on the well nearest theta, plus optional random seeds) and keep
// the lowest. Convergence failures are recorded in-row.
[[nodiscard]] SweepResult sweep_theta(const model::PhysicalParams& p, std::span<const double> theta_grid,
                                      const QuadratureSpec& q, const SweepOptions& opts = {});

// Drive-time mapping t = theta / a_D.
[[nodiscard]] std::vector<double> sweep_times(const SweepResult& r, double a_D);

// Strict interior local minima after collapsing runs of equal values.
[[nodiscard]] std::size_t count_local_minima(std::span<const double> values);

// Indices i where |values[i+1] - values[i]| lies within [lo, hi].
[[nodiscard]] std::vector<std::size_t> find_jumps(std::span<const double> values, double lo, double hi);

// theta,E_min,mean_Phi,converged,b_-2..b_2,c_-2..c_2,alpha
void write_sweep_csv(std::ostream& out, const SweepResult& r);

}  // namespace cdw::variational
