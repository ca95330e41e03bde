#include "cdw/lab.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "cdw/chain_evolver.hpp"
#include "cdw/curve_table.hpp"
#include "cdw/errors.hpp"
#include "cdw/sine_gordon.hpp"
#include "cdw/tunneling.hpp"
#include "cdw/variational.hpp"

namespace cdw::lab {

namespace {

// A run that produced a usable artifact but still has to report failure.
struct Deferred {
    std::string code;
    std::string detail;
};

std::optional<Deferred> run_single_chain(const RunConfig& cfg, std::ostream& out) {
    const auto& e = cfg.evolver;
    const auto init = evolver::gaussian_packet(e.points, e.x_min, e.x_max, e.alpha0, e.x_c);
    evolver::StepOptions opts;
    opts.boundary = e.boundary;
    opts.sweeps = e.sweeps;
    const auto traj = evolver::evolve(e.scheme, init, cfg.physics, cfg.drive, e.dt, e.steps, opts);
    evolver::write_trajectory_csv(out, traj);
    if (traj.truncated)
        return Deferred{"overflow", "non-finite amplitude at step " + std::to_string(traj.overflow_step.value_or(0)) +
                                        "; trajectory truncated"};
    return std::nullopt;
}

std::optional<Deferred> run_pendulum_kink(const RunConfig& cfg, std::ostream& out) {
    const auto& k = cfg.kink;
    const auto snaps = sg::integrate_chain_rk4(k.lattice.initial_state(), k.dt, k.steps, k.stride);
    sg::write_snapshots_csv(out, snaps);
    return std::nullopt;
}

std::optional<Deferred> run_sweep(const RunConfig& cfg, std::ostream& out) {
    auto opts = cfg.sweep.options;
    opts.seed = cfg.seed;
    const auto grid = cfg.sweep.grid();
    const auto result = variational::sweep_theta(cfg.physics, grid, cfg.sweep.quadrature, opts);
    variational::write_sweep_csv(out, result);
    std::size_t failed = 0;
    for (const auto& row : result.rows) failed += row.converged ? 0 : 1;
    if (failed > 0)
        return Deferred{"convergence", std::to_string(failed) + " of " + std::to_string(result.rows.size()) +
                                           " sweep points did not converge"};
    return std::nullopt;
}

std::optional<Deferred> run_iv(const RunConfig& cfg, std::ostream& out) {
    const auto grid = cfg.iv.grid();
    tunneling::iv_curve(grid, cfg.iv.current).write_csv(out);
    return std::nullopt;
}

std::optional<Deferred> run_fourier(const RunConfig& cfg, std::ostream& out) {
    const auto& f = cfg.fourier;
    const auto g = tunneling::PairGeometry::centred(f.L, f.bL / f.L);
    const auto modes = tunneling::thin_wall_fourier_modes(g, f.n_modes, f.box_factor * f.L);
    CurveTable t({"k", "numeric", "analytic", "rel_dev"});
    for (const auto& m : modes) t.add_row({m.k, m.numeric, m.analytic, m.rel_dev});
    t.write_csv(out);
    return std::nullopt;
}

std::optional<Deferred> dispatch(const RunConfig& cfg, std::ostream& out) {
    switch (cfg.experiment) {
        case Experiment::SingleChain: return run_single_chain(cfg, out);
        case Experiment::PendulumKink: return run_pendulum_kink(cfg, out);
        case Experiment::VariationalSweep: return run_sweep(cfg, out);
        case Experiment::IvCurve: return run_iv(cfg, out);
        case Experiment::FourierCheck: return run_fourier(cfg, out);
    }
    throw DomainError("unhandled experiment");
}

std::string one_line(std::string s) {
    for (char& ch : s)
        if (ch == '\n' || ch == '\r') ch = ' ';
    return s;
}

}  // namespace

void write_atomic(const std::filesystem::path& path, const std::function<void(std::ostream&)>& body) {
    namespace fs = std::filesystem;
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw Error("io", "cannot open '" + tmp.string() + "' for writing");
        body(f);
        f.flush();
        if (!f) {
            f.close();
            std::error_code ec;
            fs::remove(tmp, ec);
            throw Error("io", "write to '" + tmp.string() + "' failed");
        }
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        std::error_code ignored;
        fs::remove(tmp, ignored);
        throw Error("io", "cannot rename onto '" + path.string() + "': " + ec.message());
    }
}

void run_to_stream(const RunConfig& cfg, std::ostream& out) {
    validate(cfg);
    if (auto d = dispatch(cfg, out)) throw Error(d->code, d->detail);
}

int run(const RunConfig& cfg, std::ostream& diag) {
    try {
        validate(cfg);
        // Render first so a failing experiment never touches the output path.
        std::ostringstream buf;
        const auto deferred = dispatch(cfg, buf);
        const std::string text = buf.str();
        write_atomic(cfg.output_path, [&](std::ostream& o) { o << text; });
        if (deferred) {
            diag << "error: " << deferred->code << ": " << one_line(deferred->detail) << '\n';
            return 1;
        }
        return 0;
    } catch (const ConfigError& e) {
        diag << "error: " << e.code() << ": " << one_line(e.what()) << '\n';
        return 2;
    } catch (const Error& e) {
        diag << "error: " << e.code() << ": " << one_line(e.what()) << '\n';
        return 1;
    } catch (const std::exception& e) {
        diag << "error: internal: " << one_line(e.what()) << '\n';
        return 1;
    }
}

}  // namespace cdw::lab
