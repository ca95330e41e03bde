#include "cdw/chain_evolver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "cdw/curve_table.hpp"
#include "cdw/errors.hpp"

namespace cdw::evolver {

namespace {

constexpr Complex kI{0.0, 1.0};

void check_pair(const ComplexField& prev, const ComplexField& curr) {
    curr.validate();
    require(prev.size() == curr.size() && prev.dx == curr.dx && prev.x0 == curr.x0,
            "stepper: prev and curr grids differ");
}

struct Neighbours {
    std::size_t left;
    std::size_t right;
};

// Range of updated indices and their neighbours for the given boundary rule.
class Stencil {
public:
    Stencil(std::size_t n, Boundary b) : n_(n), periodic_(b == Boundary::Periodic) {}

    [[nodiscard]] std::size_t first() const noexcept { return periodic_ ? 0 : 1; }
    [[nodiscard]] std::size_t last() const noexcept { return periodic_ ? n_ : n_ - 1; }
    [[nodiscard]] Neighbours at(std::size_t j) const noexcept {
        return {j == 0 ? n_ - 1 : j - 1, j + 1 == n_ ? 0 : j + 1};
    }

private:
    std::size_t n_;
    bool periodic_;
};

void check_finite(const ComplexField& f, std::size_t step_index, const char* who) {
    for (const Complex& v : f.values)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw OverflowError(step_index, std::string(who) + ": non-finite amplitude");
}

// Thomas algorithm: sub[j] x[j-1] + diag[j] x[j] + sup[j] x[j+1] = rhs[j].
std::vector<Complex> solve_tridiagonal(std::vector<Complex> sub, std::vector<Complex> diag,
                                       std::vector<Complex> sup, std::vector<Complex> rhs) {
    const std::size_t n = diag.size();
    for (std::size_t j = 1; j < n; ++j) {
        const Complex m = sub[j] / diag[j - 1];
        diag[j] -= m * sup[j - 1];
        rhs[j] -= m * rhs[j - 1];
    }
    std::vector<Complex> x(n);
    x[n - 1] = rhs[n - 1] / diag[n - 1];
    for (std::size_t j = n - 1; j-- > 0;) x[j] = (rhs[j] - sup[j] * x[j + 1]) / diag[j];
    return x;
}

// Cyclic tridiagonal system with corner entries sub[0] (row 0, col n-1) and
// sup[n-1] (row n-1, col 0), solved by Sherman-Morrison.
std::vector<Complex> solve_cyclic(const std::vector<Complex>& sub, const std::vector<Complex>& diag,
                                  const std::vector<Complex>& sup, const std::vector<Complex>& rhs) {
    const std::size_t n = diag.size();
    const Complex alpha = sup[n - 1];
    const Complex beta = sub[0];
    const Complex gamma = -diag[0];
    std::vector<Complex> d = diag;
    d[0] -= gamma;
    d[n - 1] -= alpha * beta / gamma;
    std::vector<Complex> a = sub, c = sup;
    a[0] = 0.0;
    c[n - 1] = 0.0;
    const std::vector<Complex> x = solve_tridiagonal(a, d, c, rhs);
    std::vector<Complex> u(n, 0.0);
    u[0] = gamma;
    u[n - 1] = alpha;
    const std::vector<Complex> z = solve_tridiagonal(a, d, c, u);
    const Complex factor = (x[0] + beta * x[n - 1] / gamma) / (1.0 + z[0] + beta * z[n - 1] / gamma);
    std::vector<Complex> out(n);
    for (std::size_t j = 0; j < n; ++j) out[j] = x[j] - factor * z[j];
    return out;
}

ComplexField crank_nicolson_standard(const ComplexField& curr, const model::PhysicalParams& p, double dt,
                                     const StepOptions& opts) {
    const std::size_t n = curr.size();
    const std::vector<double> V = grid_potential(curr, p);
    const double a = p.hbar * p.hbar / (p.D * curr.dx * curr.dx);
    const Complex ib = kI * (dt / (2.0 * p.hbar));
    const auto& c = curr.values;

    ComplexField out = curr;
    if (opts.boundary == Boundary::Periodic) {
        std::vector<Complex> sub(n), diag(n), sup(n), rhs(n);
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t l = j == 0 ? n - 1 : j - 1;
            const std::size_t r = j + 1 == n ? 0 : j + 1;
            sub[j] = -ib * a;
            sup[j] = -ib * a;
            diag[j] = 1.0 + ib * (2.0 * a + V[j]);
            rhs[j] = (1.0 - ib * (2.0 * a + V[j])) * c[j] + ib * a * (c[l] + c[r]);
        }
        out.values = solve_cyclic(sub, diag, sup, rhs);
        return out;
    }

    const std::size_t m = n - 2;
    std::vector<Complex> sub(m), diag(m), sup(m), rhs(m);
    for (std::size_t k = 0; k < m; ++k) {
        const std::size_t j = k + 1;
        sub[k] = -ib * a;
        sup[k] = -ib * a;
        diag[k] = 1.0 + ib * (2.0 * a + V[j]);
        rhs[k] = (1.0 - ib * (2.0 * a + V[j])) * c[j] + ib * a * (c[j - 1] + c[j + 1]);
    }
    // frozen end values enter the first and last interior rows
    rhs[0] += ib * a * c[0];
    rhs[m - 1] += ib * a * c[n - 1];
    const std::vector<Complex> interior = solve_tridiagonal(sub, diag, sup, rhs);
    std::copy(interior.begin(), interior.end(), out.values.begin() + 1);
    return out;
}

ComplexField dufort_frankel_standard(const ComplexField& prev, const ComplexField& curr,
                                     const model::PhysicalParams& p, double dt, const StepOptions& opts) {
    const std::vector<double> V = grid_potential(curr, p);
    const Complex r = kI * (p.hbar * dt / (p.D * curr.dx * curr.dx));
    const Complex denom = 1.0 + 2.0 * r;
    const Stencil st(curr.size(), opts.boundary);
    const auto& c = curr.values;
    ComplexField out = curr;
    for (std::size_t j = st.first(); j < st.last(); ++j) {
        const auto [l, rt] = st.at(j);
        out.values[j] = (2.0 * r * (c[l] + c[rt]) + (1.0 - 2.0 * r) * prev.values[j] -
                         2.0 * kI * dt * (V[j] / p.hbar) * c[j]) /
                        denom;
    }
    return out;
}

}  // namespace

void ComplexField::validate() const {
    require(values.size() >= 3, "ComplexField: need at least 3 grid points");
    require(dx > 0.0 && std::isfinite(dx), "ComplexField: dx must be finite and > 0");
    require(std::isfinite(x0), "ComplexField: non-finite x0");
    for (const Complex& v : values)
        require(std::isfinite(v.real()) && std::isfinite(v.imag()), "ComplexField: non-finite amplitude");
}

const char* to_string(SchemeKind kind) noexcept {
    switch (kind) {
        case SchemeKind::CrankNicolsonAsPrinted: return "crank-nicolson-printed";
        case SchemeKind::DufortFrankelAsPrinted: return "dufort-frankel-printed";
        case SchemeKind::CrankNicolsonStandard: return "crank-nicolson";
        case SchemeKind::DufortFrankelStandard: return "dufort-frankel";
    }
    return "unknown";
}

SchemeKind scheme_from_string(const std::string& name) {
    for (SchemeKind k : {SchemeKind::CrankNicolsonAsPrinted, SchemeKind::DufortFrankelAsPrinted,
                         SchemeKind::CrankNicolsonStandard, SchemeKind::DufortFrankelStandard})
        if (name == to_string(k)) return k;
    throw DomainError("unknown scheme '" + name + "'");
}

bool is_three_level(SchemeKind kind) noexcept { return kind != SchemeKind::CrankNicolsonStandard; }

ComplexField gaussian_packet(std::size_t n, double x_min, double x_max, double alpha0, double xc) {
    require(n >= 3, "gaussian_packet: need at least 3 points");
    require(x_max > x_min, "gaussian_packet: empty interval");
    require(alpha0 > 0.0, "gaussian_packet: alpha0 must be > 0");
    ComplexField f;
    f.dx = (x_max - x_min) / static_cast<double>(n - 1);
    f.x0 = x_min;
    f.values.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double u = f.x(j) - xc;
        f.values[j] = std::exp(-alpha0 * u * u);
    }
    const double s = 1.0 / std::sqrt(norm(f));
    for (Complex& v : f.values) v *= s;
    return f;
}

double norm(const ComplexField& f) {
    double s = 0.0;
    for (const Complex& v : f.values) s += std::norm(v);
    return s * f.dx;
}

double mean_phase(const ComplexField& f) {
    double w = 0.0;
    double wx = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) {
        const double d = std::norm(f.values[j]);
        w += d;
        wx += f.x(j) * d;
    }
    require(w > 0.0, "mean_phase: zero norm");
    return wx / w;
}

std::vector<double> grid_potential(const ComplexField& f, const model::PhysicalParams& p) {
    std::vector<double> V(f.size());
    for (std::size_t j = 0; j < f.size(); ++j) V[j] = model::washboard_potential(f.x(j), p);
    return V;
}

ComplexField step_crank_nicolson_printed(const ComplexField& prev, const ComplexField& curr,
                                         const model::PhysicalParams& p, double dt, const StepOptions& opts,
                                         std::size_t step_index) {
    check_pair(prev, curr);
    require(opts.sweeps >= 1, "step_crank_nicolson_printed: sweeps must be >= 1");
    const std::vector<double> V = grid_potential(curr, p);
    const double coef = p.hbar / (p.D * curr.dx * curr.dx);
    const Stencil st(curr.size(), opts.boundary);
    const auto& c = curr.values;

    ComplexField iterate = curr;
    ComplexField out = curr;
    for (int sweep = 0; sweep < opts.sweeps; ++sweep) {
        const auto& nx = iterate.values;
        for (std::size_t j = st.first(); j < st.last(); ++j) {
            const auto [l, r] = st.at(j);
            const Complex lap = c[r] - c[l] - 2.0 * c[j] + nx[r] + nx[l] - 2.0 * nx[j];
            out.values[j] = prev.values[j] + kI * dt * (coef * lap - (2.0 * V[j] / p.hbar) * c[j]);
        }
        iterate.values = out.values;
    }
    check_finite(out, step_index, "step_crank_nicolson_printed");
    return out;
}

ComplexField step_dufort_frankel_printed(const ComplexField& prev, const ComplexField& curr,
                                         const model::PhysicalParams& p, double dt, const StepOptions& opts,
                                         std::size_t step_index) {
    check_pair(prev, curr);
    const std::vector<double> V = grid_potential(curr, p);
    const Complex R = -kI * (dt * p.hbar / (2.0 * p.D * curr.dx * curr.dx));
    const Complex a = 2.0 * R / (1.0 + 2.0 * R);
    const Complex b = (1.0 - 2.0 * R) / (1.0 + 2.0 * R);
    const Stencil st(curr.size(), opts.boundary);
    const auto& c = curr.values;
    ComplexField out = curr;
    for (std::size_t j = st.first(); j < st.last(); ++j) {
        const auto [l, r] = st.at(j);
        out.values[j] = a * (c[l] - c[r]) + b * prev.values[j] - kI * dt * (V[j] / p.hbar) * c[j];
    }
    check_finite(out, step_index, "step_dufort_frankel_printed");
    return out;
}

ComplexField step_standard(SchemeKind kind, const ComplexField& prev, const ComplexField& curr,
                           const model::PhysicalParams& p, double dt, const StepOptions& opts,
                           std::size_t step_index) {
    check_pair(prev, curr);
    ComplexField out;
    switch (kind) {
        case SchemeKind::CrankNicolsonStandard: out = crank_nicolson_standard(curr, p, dt, opts); break;
        case SchemeKind::DufortFrankelStandard: out = dufort_frankel_standard(prev, curr, p, dt, opts); break;
        default: throw DomainError("step_standard: scheme is not a standard variant");
    }
    check_finite(out, step_index, "step_standard");
    return out;
}

ComplexField step(SchemeKind kind, const ComplexField& prev, const ComplexField& curr,
                  const model::PhysicalParams& p, double dt, const StepOptions& opts, std::size_t step_index) {
    switch (kind) {
        case SchemeKind::CrankNicolsonAsPrinted:
            return step_crank_nicolson_printed(prev, curr, p, dt, opts, step_index);
        case SchemeKind::DufortFrankelAsPrinted:
            return step_dufort_frankel_printed(prev, curr, p, dt, opts, step_index);
        default: return step_standard(kind, prev, curr, p, dt, opts, step_index);
    }
}

Trajectory evolve(SchemeKind kind, const ComplexField& init, const model::PhysicalParams& p,
                  const model::FieldDriveParams& drive, double dt, std::size_t steps, const StepOptions& opts) {
    init.validate();
    p.validate();
    require(steps >= 1, "evolve: steps must be >= 1");
    require(dt > 0.0 && std::isfinite(dt), "evolve: dt must be finite and > 0");

    Trajectory traj;
    traj.times.reserve(steps + 1);
    traj.mean_phase.reserve(steps + 1);
    traj.norm.reserve(steps + 1);
    auto record = [&](double t, const ComplexField& f) {
        const double nm = norm(f);
        traj.times.push_back(t);
        traj.norm.push_back(nm);
        traj.mean_phase.push_back(nm > 0.0 && std::isfinite(nm) ? mean_phase(f) : 0.0);
    };

    model::PhysicalParams pt = p;
    const double theta0 = p.theta;
    ComplexField prev = init;
    ComplexField curr = init;
    record(0.0, curr);

    for (std::size_t n = 0; n < steps; ++n) {
        const double t = static_cast<double>(n) * dt;
        pt.theta = theta0 + drive.a_D * t;
        try {
            ComplexField next = (n == 0 && is_three_level(kind))
                                    ? step_standard(SchemeKind::CrankNicolsonStandard, prev, curr, pt, dt, opts, n + 1)
                                    : step(kind, prev, curr, pt, dt, opts, n + 1);
            prev = std::move(curr);
            curr = std::move(next);
        } catch (const OverflowError& e) {
            traj.truncated = true;
            traj.overflow_step = e.step();
            break;
        }
        record(static_cast<double>(n + 1) * dt, curr);
        if (!std::isfinite(traj.norm.back())) {
            traj.times.pop_back();
            traj.mean_phase.pop_back();
            traj.norm.pop_back();
            traj.truncated = true;
            traj.overflow_step = n + 1;
            break;
        }
    }
    return traj;
}

std::optional<std::size_t> detect_blowup(const Trajectory& t, double factor) {
    require(factor > 1.0, "detect_blowup: factor must be > 1");
    if (t.norm.empty()) return std::nullopt;
    const double limit = factor * t.norm.front();
    for (std::size_t i = 0; i < t.norm.size(); ++i)
        if (!(t.norm[i] <= limit)) return i;
    return std::nullopt;
}

bool detect_resonance(const Trajectory& t, std::size_t window) {
    require(window >= 4, "detect_resonance: window must be >= 4");
    require(t.size() >= window, "detect_resonance: trajectory shorter than window");
    const std::size_t start = t.size() - window;
    const auto& m = t.mean_phase;
    const double two_pi = 2.0 * std::numbers::pi;
    for (std::size_t i = start; i < t.size(); ++i)
        if (!(std::abs(m[i]) < two_pi)) return false;

    int extrema = 0;
    for (std::size_t i = start + 1; i + 1 < t.size(); ++i) {
        const double dl = m[i] - m[i - 1];
        const double dr = m[i + 1] - m[i];
        if ((dl > 0.0 && dr < 0.0) || (dl < 0.0 && dr > 0.0)) ++extrema;
    }
    return extrema >= 2;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& t) {
    out << "t,mean_phase,norm\n";
    for (std::size_t i = 0; i < t.size(); ++i)
        out << format_number(t.times[i]) << ',' << format_number(t.mean_phase[i]) << ','
            << format_number(t.norm[i]) << '\n';
}

}  // namespace cdw::evolver
