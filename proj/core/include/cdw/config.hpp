#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cdw/chain_evolver.hpp"
#include "cdw/model.hpp"
#include "cdw/sine_gordon.hpp"
#include "cdw/tunneling.hpp"
#include "cdw/variational.hpp"

namespace cdw::lab {

enum class Experiment { SingleChain, PendulumKink, VariationalSweep, IvCurve, FourierCheck };

[[nodiscard]] const char* to_string(Experiment e) noexcept;

struct EvolverSettings {
    evolver::SchemeKind scheme = evolver::SchemeKind::DufortFrankelStandard;
    evolver::Boundary boundary = evolver::Boundary::Dirichlet;
    int sweeps = 1;
    std::size_t points = 513;
    double x_min = -12.566370614359172;   // -4 pi
    double x_max = 12.566370614359172;
    double alpha0 = 1.0;
    double x_c = 0.0;
    double dt = 0.01;
    std::size_t steps = 10000;
};

struct KinkSettings {
    sg::LatticeKink lattice;
    double dt = 1e-3;
    std::size_t steps = 5000;
    std::size_t stride = 500;
};

struct SweepSettings {
    variational::QuadratureSpec quadrature;
    double theta_min = -13.464675656813398;  // -(90/21) pi
    double theta_max = 13.464675656813398;
    std::size_t points = 91;
    variational::SweepOptions options;

    [[nodiscard]] std::vector<double> grid() const;
};

struct IvSettings {
    tunneling::CurrentParams current;
    double E_min = 0.005;
    double E_max = 5.0;
    std::size_t points = 1000;

    [[nodiscard]] std::vector<double> grid() const;
};

struct FourierSettings {
    double L = 1.0;
    double bL = 1e4;
    std::size_t n_modes = 10;
    double box_factor = 10.0;
};

struct RunConfig {
    Experiment experiment = Experiment::IvCurve;
    std::string output_path = "cdw-lab.csv";
    std::uint64_t seed = 0;

    model::PhysicalParams physics;
    model::FieldDriveParams drive;
    EvolverSettings evolver;
    KinkSettings kink;
    SweepSettings sweep;
    IvSettings iv;
    FourierSettings fourier;
};

// Parses `key = value` lines (`#` comments, blank lines). Unknown keys,
// malformed values or a missing `experiment` raise ConfigError with the
// offending line number. Angles and lengths accept a trailing `pi`
// (e.g. `-4pi`, `0.5*pi`).
[[nodiscard]] RunConfig parse_config(std::string_view text);

// Cross-field checks (model, drive and grid settings). ConfigError on failure.
void validate(const RunConfig& cfg);

// Applies one `key=value` override (line 0 in errors).
void apply_override(RunConfig& cfg, std::string_view assignment);

// All recognized keys, in documentation order.
[[nodiscard]] std::vector<std::string> known_keys();

}  // namespace cdw::lab
