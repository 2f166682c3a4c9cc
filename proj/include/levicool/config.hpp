#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "levicool/physics_params.hpp"

namespace levicool {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SweepSpec {
    std::string variable;  // theta | D | power2 | detuning | kappa
    double start = 0.0;
    double stop = 0.0;
    int steps = 1;
};

// Parsed configuration. Rates given as ratios of omega_tilde_1x are resolved
// per evaluation point, since the reference frequency itself depends on the
// swept geometry and powers.
struct SimulationConfig {
    // particle
    double r0 = 70e-9;
    double rho = 2200.0;
    double eps_r = 2.07;

    // tweezers
    double lambda = 1064e-9;
    double power1 = 0.8;
    double power2 = 0.6;
    double waist = 0.0;  // 0: calibrate from the targets below
    double ax = 1.0;
    double ay = 1.0;
    // bare-frequency calibration targets for particle 1 (rad/s)
    std::array<double, 3> target{2.0 * 3.14159265358979323846 * 406e3,
                                 2.0 * 3.14159265358979323846 * 439e3,
                                 2.0 * 3.14159265358979323846 * 154e3};

    // cavity
    double cav_length = 1.07e-2;
    double cav_waist = 41.1e-6;
    double kappa_over_w1x = 0.2;

    // geometry
    double theta = 3.14159265358979323846 / 8.0;
    double D_over_lambda = 2.65;

    // bath
    double n_th = 1e7;
    double gamma_over_w1x = 0.5e-9;

    // drive
    double detuning_over_w1x = 0.7;

    // solver
    double newton_tol = 1e-12;
    int max_iter = 60;
    bool as_printed = false;

    // sweeps (Cartesian product) and output
    std::vector<SweepSpec> sweeps;
    std::string out_path;
};

// Per-point overrides applied before resolution (CLI flags, sweep values).
struct PointOverrides {
    std::optional<double> theta;
    std::optional<double> D_over_lambda;
    std::optional<double> power2;
    std::optional<double> detuning_over_w1x;
    std::optional<double> kappa_over_w1x;
};

SimulationConfig parse_config(const std::string& text);
SimulationConfig load_config(const std::string& path);

// Build absolute physical parameters: calibrate waists if requested, then
// fix kappa, gamma and Delta_tilde from the ratios using the omega_tilde_1x
// of this specific point.
PhysicalParameters resolve_parameters(const SimulationConfig& cfg,
                                      const PointOverrides& ov = {});

}  // namespace levicool
