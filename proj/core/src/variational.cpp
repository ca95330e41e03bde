#include "cdw/variational.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <random>
#include <string>
#include <thread>

#include "cdw/curve_table.hpp"
#include "cdw/simplex.hpp"

namespace cdw::variational {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double centre(std::size_t idx) { return kTwoPi * (static_cast<double>(idx) - kCombHalfWidth); }

double unit_norm(std::span<double, kCombSize> w) {
    double s = 0.0;
    for (double v : w) s += v * v;
    return std::sqrt(s);
}

std::vector<double> pack(const AnsatzCoeffs& a) {
    std::vector<double> x(2 * kCombSize + 1);
    std::copy(a.b.begin(), a.b.end(), x.begin());
    std::copy(a.c.begin(), a.c.end(), x.begin() + kCombSize);
    x.back() = std::log(a.alpha);
    return x;
}

AnsatzCoeffs unpack(const std::vector<double>& x) {
    AnsatzCoeffs a;
    std::copy(x.begin(), x.begin() + kCombSize, a.b.begin());
    std::copy(x.begin() + kCombSize, x.begin() + 2 * kCombSize, a.c.begin());
    a.alpha = std::exp(x.back());
    return a;
}

// Renormalize each comb block; a collapsed block restarts at m = 0.
void project(std::vector<double>& x) {
    for (std::size_t block = 0; block < 2; ++block) {
        std::span<double, kCombSize> w(x.data() + block * kCombSize, kCombSize);
        const double n = unit_norm(w);
        if (!(n > 1e-300) || !std::isfinite(n)) {
            std::fill(w.begin(), w.end(), 0.0);
            w[kCombHalfWidth] = 1.0;
        } else {
            for (double& v : w) v /= n;
        }
    }
    x.back() = std::clamp(x.back(), -20.0, 20.0);
}

int nearest_well(double theta) {
    const int m = static_cast<int>(std::lround(theta / kTwoPi));
    return std::clamp(m, -kCombHalfWidth, kCombHalfWidth);
}

}  // namespace

void AnsatzCoeffs::normalize() {
    const double nb = unit_norm(b);
    const double nc = unit_norm(c);
    require(nb > 0.0 && nc > 0.0, "AnsatzCoeffs: zero coefficient vector");
    for (double& v : b) v /= nb;
    for (double& v : c) v /= nc;
}

void AnsatzCoeffs::validate() const {
    auto b_copy = b;
    auto c_copy = c;
    require(std::abs(unit_norm(b_copy) - 1.0) <= 1e-12, "AnsatzCoeffs: sum b_m^2 != 1");
    require(std::abs(unit_norm(c_copy) - 1.0) <= 1e-12, "AnsatzCoeffs: sum c_m^2 != 1");
    require(alpha > 0.0 && std::isfinite(alpha), "AnsatzCoeffs: alpha must be > 0");
}

AnsatzCoeffs AnsatzCoeffs::single_well(int m, double alpha) {
    require(std::abs(m) <= kCombHalfWidth, "AnsatzCoeffs::single_well: m out of range");
    AnsatzCoeffs a;
    a.b.fill(0.0);
    a.c.fill(0.0);
    a.b[m + kCombHalfWidth] = 1.0;
    a.c[m + kCombHalfWidth] = 1.0;
    a.alpha = alpha;
    return a;
}

AnsatzCoeffs AnsatzCoeffs::uniform(double alpha) {
    AnsatzCoeffs a;
    const double v = 1.0 / std::sqrt(static_cast<double>(kCombSize));
    a.b.fill(v);
    a.c.fill(v);
    a.alpha = alpha;
    return a;
}

void QuadratureSpec::validate() const {
    require(eta > 0.0, "QuadratureSpec: eta must be > 0");
    require(panels >= 1, "QuadratureSpec: panels must be >= 1");
    require(order >= 2, "QuadratureSpec: order must be >= 2");
}

quadrature::Rule1D QuadratureSpec::axis_rule() const {
    validate();
    const double half = eta * std::numbers::pi;
    return quadrature::composite_gauss_legendre(-half, half, panels, order);
}

double comb_value(double phi, std::span<const double, kCombSize> w, double alpha) {
    double s = 0.0;
    for (std::size_t k = 0; k < kCombSize; ++k) {
        const double u = phi - centre(k);
        s += w[k] * std::exp(-alpha * u * u);
    }
    return s;
}

double comb_second_derivative(double phi, std::span<const double, kCombSize> w, double alpha) {
    double s = 0.0;
    for (std::size_t k = 0; k < kCombSize; ++k) {
        const double u = phi - centre(k);
        s += w[k] * (4.0 * alpha * alpha * u * u - 2.0 * alpha) * std::exp(-alpha * u * u);
    }
    return s;
}

double ansatz_value(double phi1, double phi2, const AnsatzCoeffs& a) {
    return comb_value(phi1, a.b, a.alpha) * comb_value(phi2, a.c, a.alpha);
}

TwoChainIntegrator::TwoChainIntegrator(const QuadratureSpec& q) : spec_(q), axis_(q.axis_rule()) {
    cos_.resize(axis_.size());
    sin_.resize(axis_.size());
    for (std::size_t i = 0; i < axis_.size(); ++i) {
        cos_[i] = std::cos(axis_.nodes[i]);
        sin_[i] = std::sin(axis_.nodes[i]);
    }
}

TwoChainIntegrator::ChainMoments TwoChainIntegrator::moments(std::span<const double, kCombSize> w, double alpha,
                                                             bool derivative) const {
    ChainMoments m;
    const double cutoff = 745.0 / alpha;  // exp(-alpha u^2) underflows beyond
    for (std::size_t i = 0; i < axis_.size(); ++i) {
        const double x = axis_.nodes[i];
        double psi = 0.0;
        double d2 = 0.0;
        for (std::size_t k = 0; k < kCombSize; ++k) {
            const double u = x - centre(k);
            const double u2 = u * u;
            if (u2 > cutoff || w[k] == 0.0) continue;
            const double g = w[k] * std::exp(-alpha * u2);
            psi += g;
            if (derivative) d2 += (4.0 * alpha * alpha * u2 - 2.0 * alpha) * g;
        }
        if (psi == 0.0) continue;
        const double wt = axis_.weights[i];
        const double dens = wt * psi * psi;
        m.norm += dens;
        m.kinetic -= wt * psi * d2;
        m.one += dens * (1.0 - cos_[i]);
        m.x += dens * x;
        m.x2 += dens * x * x;
        m.cos += dens * cos_[i];
        m.sin += dens * sin_[i];
    }
    return m;
}

double TwoChainIntegrator::norm_squared(const AnsatzCoeffs& a) const {
    const ChainMoments m1 = moments(a.b, a.alpha, false);
    const ChainMoments m2 = moments(a.c, a.alpha, false);
    const double n = m1.norm * m2.norm;
    if (!(n > 0.0) || !std::isfinite(n)) throw QuadratureError("norm_squared: non-positive norm");
    return n;
}

double TwoChainIntegrator::energy(const AnsatzCoeffs& a, const model::PhysicalParams& p, double theta) const {
    const ChainMoments m1 = moments(a.b, a.alpha, true);
    const ChainMoments m2 = moments(a.c, a.alpha, true);
    if (!(m1.norm > 0.0) || !(m2.norm > 0.0)) throw QuadratureError("energy_expectation: non-positive norm");

    // per-chain expectation values, normalized
    auto single = [&](const ChainMoments& m) {
        const double kinetic = p.hbar * p.hbar / (2.0 * p.D1) * m.kinetic;
        const double shift2 = m.x2 - 2.0 * theta * m.x + theta * theta * m.norm;
        return (kinetic + p.E1 * m.one + p.E2 * shift2) / m.norm;
    };
    const double coupling =
        p.delta_prime * (1.0 - (m1.cos * m2.cos + m1.sin * m2.sin) / (m1.norm * m2.norm));
    return single(m1) + single(m2) + coupling;
}

double TwoChainIntegrator::phase(const AnsatzCoeffs& a) const {
    const ChainMoments m1 = moments(a.b, a.alpha, false);
    const ChainMoments m2 = moments(a.c, a.alpha, false);
    if (!(m1.norm > 0.0) || !(m2.norm > 0.0)) throw QuadratureError("phase_expectation: non-positive norm");
    return 0.5 * (m1.x / m1.norm + m2.x / m2.norm);
}

double norm_squared(const AnsatzCoeffs& a, const QuadratureSpec& q) {
    return TwoChainIntegrator(q).norm_squared(a);
}

double energy_expectation(const AnsatzCoeffs& a, const model::PhysicalParams& p, double theta,
                          const QuadratureSpec& q) {
    return TwoChainIntegrator(q).energy(a, p, theta);
}

double phase_expectation(const AnsatzCoeffs& a, const QuadratureSpec& q) {
    return TwoChainIntegrator(q).phase(a);
}

Minimum minimize_energy(const model::PhysicalParams& p, double theta, const TwoChainIntegrator& q,
                        const AnsatzCoeffs& init, const MinimizerOptions& opts) {
    p.validate();
    AnsatzCoeffs start = init;
    start.normalize();
    start.validate();

    const optim::Objective objective = [&](const std::vector<double>& x) {
        return q.energy(unpack(x), p, theta);
    };
    optim::SimplexOptions so;
    so.max_evals = opts.max_evals;
    so.f_tol = opts.f_tol;
    so.x_tol = opts.x_tol;
    so.initial_step = opts.initial_step;

    std::vector<double> x = pack(start);
    project(x);
    double best = objective(x);
    const double initial_energy = best;
    std::size_t evals = 1;
    bool converged = false;
    double step = opts.initial_step;

    for (int run = 0; run <= opts.max_restarts; ++run) {
        so.initial_step = step;
        const optim::SimplexResult r = optim::nelder_mead(objective, x, so, project);
        evals += r.evals;
        const double gain = best - r.f;
        if (r.f <= best) {
            x = r.x;
            best = r.f;
        }
        converged = r.converged;
        if (r.converged && gain <= opts.restart_gain) break;
        step = std::max(0.01 * opts.initial_step, 0.5 * step);
    }

    Minimum out{unpack(x), best, converged, evals};
    out.coeffs.normalize();
    if (!(out.energy <= initial_energy + 1e-12)) {
        out.coeffs = start;
        out.energy = initial_energy;
    }
    if (!converged)
        throw ConvergenceError("minimize_energy: evaluation cap reached at theta = " + std::to_string(theta),
                               out.coeffs, out.energy);
    return out;
}

Minimum minimize_energy(const model::PhysicalParams& p, double theta, const QuadratureSpec& q,
                        const AnsatzCoeffs& init, const MinimizerOptions& opts) {
    return minimize_energy(p, theta, TwoChainIntegrator(q), init, opts);
}

namespace {

struct PointOutcome {
    Minimum best;
    bool any_converged = false;
};

PointOutcome minimize_from_seeds(const model::PhysicalParams& p, double theta, const TwoChainIntegrator& q,
                                 const std::vector<AnsatzCoeffs>& seeds, const MinimizerOptions& opts) {
    PointOutcome out;
    bool have = false;
    for (const AnsatzCoeffs& s : seeds) {
        Minimum m;
        try {
            m = minimize_energy(p, theta, q, s, opts);
        } catch (const ConvergenceError& e) {
            m = Minimum{e.best(), e.best_energy(), false, 0};
        }
        if (!have || m.energy < out.best.energy) {
            out.best = m;
            have = true;
        }
        out.any_converged = out.any_converged || m.converged;
    }
    return out;
}

std::vector<AnsatzCoeffs> fixed_seeds(double theta, double alpha) {
    std::vector<AnsatzCoeffs> seeds{AnsatzCoeffs::single_well(0, alpha), AnsatzCoeffs::uniform(alpha)};
    const int m = nearest_well(theta);
    if (m != 0) seeds.push_back(AnsatzCoeffs::single_well(m, alpha));
    return seeds;
}

void add_random_seeds(std::vector<AnsatzCoeffs>& seeds, int count, std::mt19937_64& rng, double alpha) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> log_width(-1.0, 1.0);
    for (int i = 0; i < count; ++i) {
        AnsatzCoeffs a;
        for (double& v : a.b) v = normal(rng);
        for (double& v : a.c) v = normal(rng);
        a.alpha = alpha * std::exp(log_width(rng));
        a.normalize();
        seeds.push_back(a);
    }
}

SweepRow make_row(double theta, const PointOutcome& o, const TwoChainIntegrator& q) {
    SweepRow row;
    row.theta = theta;
    row.E_min = o.best.energy;
    row.coeffs = o.best.coeffs;
    row.converged = o.best.converged;
    row.mean_Phi = q.phase(o.best.coeffs);
    return row;
}

}  // namespace

SweepResult sweep_theta(const model::PhysicalParams& p, std::span<const double> theta_grid, const QuadratureSpec& q,
                        const SweepOptions& opts) {
    p.validate();
    for (std::size_t i = 1; i < theta_grid.size(); ++i)
        require(theta_grid[i] > theta_grid[i - 1], "sweep_theta: theta grid must be strictly increasing");
    require(opts.seed_alpha > 0.0, "sweep_theta: seed_alpha must be > 0");

    const TwoChainIntegrator integ(q);
    std::mt19937_64 rng(opts.seed);

    // Random seeds are drawn up front so cold and warm runs see the same ones.
    std::vector<std::vector<AnsatzCoeffs>> seeds(theta_grid.size());
    for (std::size_t i = 0; i < theta_grid.size(); ++i) {
        seeds[i] = fixed_seeds(theta_grid[i], opts.seed_alpha);
        add_random_seeds(seeds[i], opts.random_restarts, rng, opts.seed_alpha);
    }

    SweepResult result;
    result.rows.resize(theta_grid.size());

    if (opts.cold_start) {
        unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
        std::size_t next = 0;
        while (next < theta_grid.size()) {
            std::vector<std::future<SweepRow>> batch;
            for (unsigned t = 0; t < threads && next < theta_grid.size(); ++t, ++next) {
                const std::size_t i = next;
                batch.push_back(std::async(std::launch::async, [&, i] {
                    return make_row(theta_grid[i],
                                    minimize_from_seeds(p, theta_grid[i], integ, seeds[i], opts.minimizer), integ);
                }));
            }
            const std::size_t first = next - batch.size();
            for (std::size_t k = 0; k < batch.size(); ++k) result.rows[first + k] = batch[k].get();
        }
        return result;
    }

    for (std::size_t i = 0; i < theta_grid.size(); ++i) {
        std::vector<AnsatzCoeffs> s = seeds[i];
        if (i > 0) s.insert(s.begin(), result.rows[i - 1].coeffs);
        result.rows[i] = make_row(theta_grid[i], minimize_from_seeds(p, theta_grid[i], integ, s, opts.minimizer), integ);
    }
    return result;
}

std::vector<double> SweepResult::thetas() const {
    std::vector<double> v;
    for (const auto& r : rows) v.push_back(r.theta);
    return v;
}

std::vector<double> SweepResult::energies() const {
    std::vector<double> v;
    for (const auto& r : rows) v.push_back(r.E_min);
    return v;
}

std::vector<double> SweepResult::phases() const {
    std::vector<double> v;
    for (const auto& r : rows) v.push_back(r.mean_Phi);
    return v;
}

std::vector<double> sweep_times(const SweepResult& r, double a_D) {
    require(a_D != 0.0, "sweep_times: a_D must be nonzero");
    std::vector<double> t;
    for (const auto& row : r.rows) t.push_back(row.theta / a_D);
    return t;
}

std::size_t count_local_minima(std::span<const double> values) {
    require(values.size() >= 3, "count_local_minima: need at least 3 values");
    std::vector<double> v;
    for (double x : values)
        if (v.empty() || x != v.back()) v.push_back(x);
    std::size_t count = 0;
    for (std::size_t i = 1; i + 1 < v.size(); ++i)
        if (v[i] < v[i - 1] && v[i] < v[i + 1]) ++count;
    return count;
}

std::vector<std::size_t> find_jumps(std::span<const double> values, double lo, double hi) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i + 1 < values.size(); ++i) {
        const double d = std::abs(values[i + 1] - values[i]);
        if (d >= lo && d <= hi) idx.push_back(i);
    }
    return idx;
}

void write_sweep_csv(std::ostream& out, const SweepResult& r) {
    out << "theta,E_min,mean_Phi,converged,b_-2,b_-1,b_0,b_1,b_2,c_-2,c_-1,c_0,c_1,c_2,alpha\n";
    for (const SweepRow& row : r.rows) {
        out << format_number(row.theta) << ',' << format_number(row.E_min) << ',' << format_number(row.mean_Phi)
            << ',' << (row.converged ? 1 : 0);
        for (double v : row.coeffs.b) out << ',' << format_number(v);
        for (double v : row.coeffs.c) out << ',' << format_number(v);
        out << ',' << format_number(row.coeffs.alpha) << '\n';
    }
}

}  // namespace cdw::variational
