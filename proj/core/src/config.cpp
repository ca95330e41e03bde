#include "cdw/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>

#include "cdw/errors.hpp"

namespace cdw::lab {

namespace {

using Setter = std::function<void(RunConfig&, const std::string&, std::size_t)>;

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

double parse_real(const std::string& raw, std::size_t line, const std::string& key) {
    std::string s = raw;
    double scale = 1.0;
    if (s.size() >= 2 && s.compare(s.size() - 2, 2, "pi") == 0) {
        scale = std::numbers::pi;
        s.resize(s.size() - 2);
        if (!s.empty() && s.back() == '*') s.pop_back();
        if (s.empty() || s == "+") s = "1";
        if (s == "-") s = "-1";
    }
    double v = 0.0;
    const char* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc{} || ptr != end || !std::isfinite(v))
        throw ConfigError(line, "malformed number '" + raw + "' for key '" + key + "'");
    return v * scale;
}

std::uint64_t parse_count(const std::string& s, std::size_t line, const std::string& key) {
    std::uint64_t v = 0;
    const char* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc{} || ptr != end)
        throw ConfigError(line, "malformed integer '" + s + "' for key '" + key + "'");
    return v;
}

bool parse_bool(const std::string& s, std::size_t line, const std::string& key) {
    if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
    if (s == "false" || s == "0" || s == "no" || s == "off") return false;
    throw ConfigError(line, "malformed boolean '" + s + "' for key '" + key + "'");
}

// Helpers binding a key to a member reached through an accessor lambda.
template <class Get>
Setter real_at(Get get, std::string key) {
    return [get, key](RunConfig& c, const std::string& v, std::size_t line) { get(c) = parse_real(v, line, key); };
}

template <class Get>
Setter count_at(Get get, std::string key) {
    return [get, key](RunConfig& c, const std::string& v, std::size_t line) {
        get(c) = static_cast<std::remove_reference_t<decltype(get(c))>>(parse_count(v, line, key));
    };
}

template <class Get>
Setter bool_at(Get get, std::string key) {
    return [get, key](RunConfig& c, const std::string& v, std::size_t line) { get(c) = parse_bool(v, line, key); };
}

Experiment parse_experiment(const std::string& s, std::size_t line) {
    for (Experiment e : {Experiment::SingleChain, Experiment::PendulumKink, Experiment::VariationalSweep,
                         Experiment::IvCurve, Experiment::FourierCheck})
        if (s == to_string(e)) return e;
    throw ConfigError(line, "unknown experiment '" + s + "'");
}

const std::vector<std::pair<std::string, Setter>>& registry() {
    static const std::vector<std::pair<std::string, Setter>> keys = [] {
        std::vector<std::pair<std::string, Setter>> k;
        auto add = [&](std::string name, auto make) { k.emplace_back(name, make(name)); };
#define CDW_REAL(name, member) add(name, [](std::string n) { return real_at([](RunConfig& c) -> double& { return c.member; }, n); })
#define CDW_COUNT(name, member) add(name, [](std::string n) { return count_at([](RunConfig& c) -> auto& { return c.member; }, n); })
#define CDW_BOOL(name, member) add(name, [](std::string n) { return bool_at([](RunConfig& c) -> bool& { return c.member; }, n); })

        k.emplace_back("experiment", [](RunConfig& c, const std::string& v, std::size_t line) {
            c.experiment = parse_experiment(v, line);
        });
        k.emplace_back("output", [](RunConfig& c, const std::string& v, std::size_t line) {
            if (v.empty()) throw ConfigError(line, "empty output path");
            c.output_path = v;
        });
        CDW_COUNT("seed", seed);

        CDW_REAL("model.D", physics.D);
        CDW_REAL("model.omega_p_sq", physics.omega_p_sq);
        CDW_REAL("model.mu_E", physics.mu_E);
        CDW_REAL("model.theta", physics.theta);
        CDW_REAL("model.D1", physics.D1);
        CDW_REAL("model.E1", physics.E1);
        CDW_REAL("model.E2", physics.E2);
        CDW_REAL("model.delta_prime", physics.delta_prime);
        CDW_REAL("model.hbar", physics.hbar);
        CDW_BOOL("model.experimental_regime", physics.experimental_regime);

        CDW_REAL("drive.e_star", drive.e_star);
        CDW_REAL("drive.E_applied", drive.E_applied);
        CDW_REAL("drive.E_threshold", drive.E_threshold);
        CDW_REAL("drive.c_v", drive.c_v);
        CDW_REAL("drive.a_D", drive.a_D);
        CDW_REAL("drive.G_p", drive.G_p);
        CDW_REAL("drive.delta_s", drive.delta_s);

        k.emplace_back("evolver.scheme", [](RunConfig& c, const std::string& v, std::size_t line) {
            try {
                c.evolver.scheme = evolver::scheme_from_string(v);
            } catch (const DomainError&) {
                throw ConfigError(line, "unknown scheme '" + v + "'");
            }
        });
        k.emplace_back("evolver.boundary", [](RunConfig& c, const std::string& v, std::size_t line) {
            if (v == "dirichlet")
                c.evolver.boundary = evolver::Boundary::Dirichlet;
            else if (v == "periodic")
                c.evolver.boundary = evolver::Boundary::Periodic;
            else
                throw ConfigError(line, "unknown boundary '" + v + "'");
        });
        CDW_COUNT("evolver.sweeps", evolver.sweeps);
        CDW_COUNT("evolver.points", evolver.points);
        CDW_REAL("evolver.x_min", evolver.x_min);
        CDW_REAL("evolver.x_max", evolver.x_max);
        CDW_REAL("evolver.alpha0", evolver.alpha0);
        CDW_REAL("evolver.x_c", evolver.x_c);
        CDW_REAL("evolver.dt", evolver.dt);
        CDW_COUNT("evolver.steps", evolver.steps);

        CDW_COUNT("kink.sites", kink.lattice.sites);
        CDW_REAL("kink.spacing", kink.lattice.spacing);
        CDW_REAL("kink.omega0_sq", kink.lattice.omega0_sq);
        CDW_REAL("kink.omega1_sq", kink.lattice.omega1_sq);
        CDW_REAL("kink.beta", kink.lattice.kink.beta);
        k.emplace_back("kink.sign", [](RunConfig& c, const std::string& v, std::size_t line) {
            if (v == "+1" || v == "1")
                c.kink.lattice.kink.sign = 1;
            else if (v == "-1")
                c.kink.lattice.kink.sign = -1;
            else
                throw ConfigError(line, "kink.sign must be +1 or -1");
        });
        CDW_REAL("kink.dt", kink.dt);
        CDW_COUNT("kink.steps", kink.steps);
        CDW_COUNT("kink.stride", kink.stride);

        CDW_REAL("variational.eta", sweep.quadrature.eta);
        CDW_COUNT("variational.panels", sweep.quadrature.panels);
        CDW_COUNT("variational.order", sweep.quadrature.order);
        CDW_REAL("variational.theta_min", sweep.theta_min);
        CDW_REAL("variational.theta_max", sweep.theta_max);
        CDW_COUNT("variational.points", sweep.points);
        CDW_REAL("variational.seed_alpha", sweep.options.seed_alpha);
        CDW_BOOL("variational.cold_start", sweep.options.cold_start);
        CDW_COUNT("variational.threads", sweep.options.threads);
        CDW_COUNT("variational.random_restarts", sweep.options.random_restarts);
        CDW_COUNT("variational.max_evals", sweep.options.minimizer.max_evals);
        CDW_REAL("variational.f_tol", sweep.options.minimizer.f_tol);
        CDW_REAL("variational.x_tol", sweep.options.minimizer.x_tol);
        CDW_COUNT("variational.max_restarts", sweep.options.minimizer.max_restarts);

        CDW_REAL("current.E_T", iv.current.E_T);
        CDW_REAL("current.c_v", iv.current.c_v);
        CDW_REAL("current.C_tilde", iv.current.C_tilde);
        CDW_REAL("current.G_p", iv.current.G_p);
        CDW_BOOL("current.gate_zener", iv.current.gate_zener);
        k.emplace_back("current.cosh_form", [](RunConfig& c, const std::string& v, std::size_t line) {
            if (v == "difference")
                c.iv.current.cosh_form = tunneling::CoshForm::CoshOfDifference;
            else if (v == "split")
                c.iv.current.cosh_form = tunneling::CoshForm::DifferenceOfCosh;
            else
                throw ConfigError(line, "current.cosh_form must be 'difference' or 'split'");
        });
        CDW_REAL("current.E_min", iv.E_min);
        CDW_REAL("current.E_max", iv.E_max);
        CDW_COUNT("current.points", iv.points);

        CDW_REAL("fourier.L", fourier.L);
        CDW_REAL("fourier.bL", fourier.bL);
        CDW_COUNT("fourier.n_modes", fourier.n_modes);
        CDW_REAL("fourier.box_factor", fourier.box_factor);
#undef CDW_REAL
#undef CDW_COUNT
#undef CDW_BOOL
        return k;
    }();
    return keys;
}

void assign(RunConfig& cfg, const std::string& key, const std::string& value, std::size_t line) {
    const auto& reg = registry();
    const auto it = std::find_if(reg.begin(), reg.end(), [&](const auto& e) { return e.first == key; });
    if (it == reg.end()) throw ConfigError(line, "unknown key '" + key + "'");
    if (value.empty()) throw ConfigError(line, "missing value for key '" + key + "'");
    it->second(cfg, value, line);
}

std::pair<std::string, std::string> split_assignment(std::string_view text, std::size_t line) {
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) throw ConfigError(line, "expected 'key = value', got '" + trim(text) + "'");
    std::string key = trim(text.substr(0, eq));
    if (key.empty()) throw ConfigError(line, "missing key before '='");
    return {key, trim(text.substr(eq + 1))};
}

}  // namespace

const char* to_string(Experiment e) noexcept {
    switch (e) {
        case Experiment::SingleChain: return "single-chain";
        case Experiment::PendulumKink: return "pendulum-kink";
        case Experiment::VariationalSweep: return "variational-sweep";
        case Experiment::IvCurve: return "iv-curve";
        case Experiment::FourierCheck: return "fourier-check";
    }
    return "unknown";
}

std::vector<double> SweepSettings::grid() const {
    require(points >= 1, "variational.points must be >= 1");
    if (points == 1) return {theta_min};
    require(theta_max > theta_min, "variational.theta_max must exceed theta_min");
    std::vector<double> g(points);
    const double n = static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i)
        g[i] = theta_min + (theta_max - theta_min) * (static_cast<double>(i) / n);
    return g;
}

std::vector<double> IvSettings::grid() const {
    require(points >= 1, "current.points must be >= 1");
    require(E_min > 0.0, "current.E_min must be > 0");
    if (points == 1) return {E_min};
    require(E_max > E_min, "current.E_max must exceed current.E_min");
    std::vector<double> g(points);
    const double n = static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) g[i] = E_min + (E_max - E_min) * (static_cast<double>(i) / n);
    return g;
}

RunConfig parse_config(std::string_view text) {
    RunConfig cfg;
    cfg.physics.theta = 1.0;
    bool have_experiment = false;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        if (!trim(line).empty()) {
            auto [key, value] = split_assignment(line, line_no);
            assign(cfg, key, value, line_no);
            have_experiment = have_experiment || key == "experiment";
        }
        if (nl == std::string_view::npos) break;
        pos = nl + 1;
    }
    if (!have_experiment) throw ConfigError(0, "missing required key 'experiment'");
    return cfg;
}

void apply_override(RunConfig& cfg, std::string_view assignment) {
    auto [key, value] = split_assignment(assignment, 0);
    assign(cfg, key, value, 0);
}

void validate(const RunConfig& cfg) {
    try {
        cfg.physics.validate();
        cfg.drive.validate();
        cfg.iv.current.validate();
        cfg.sweep.quadrature.validate();
        cfg.kink.lattice.kink.validate();
        require(cfg.evolver.points >= 3, "evolver.points must be >= 3");
        require(cfg.evolver.x_max > cfg.evolver.x_min, "evolver.x_max must exceed evolver.x_min");
        require(cfg.evolver.dt > 0.0, "evolver.dt must be > 0");
        require(cfg.evolver.alpha0 > 0.0, "evolver.alpha0 must be > 0");
        require(cfg.evolver.sweeps >= 1, "evolver.sweeps must be >= 1");
        require(cfg.kink.lattice.sites >= 3, "kink.sites must be >= 3");
        require(cfg.kink.dt > 0.0, "kink.dt must be > 0");
        require(cfg.kink.stride >= 1, "kink.stride must be >= 1");
        require(cfg.fourier.n_modes >= 1, "fourier.n_modes must be >= 1");
        (void)cfg.sweep.grid();
        (void)cfg.iv.grid();
    } catch (const DomainError& e) {
        throw ConfigError(0, e.what());
    }
}

std::vector<std::string> known_keys() {
    std::vector<std::string> out;
    for (const auto& [k, _] : registry()) out.push_back(k);
    return out;
}

}  // namespace cdw::lab
