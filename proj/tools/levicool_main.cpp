#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "levicool/config.hpp"
#include "levicool/constants.hpp"
#include "levicool/cooling.hpp"
#include "levicool/darkmodes.hpp"
#include "levicool/sweep.hpp"

namespace {

using namespace levicool;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

constexpr const char* kModeNames[6] = {"x1", "x2", "y1", "y2", "z1", "z2"};

int effective_threads(int cli_threads) {
    if (const char* env = std::getenv("LEVICOOL_THREADS")) {
        try {
            return std::stoi(env);
        } catch (...) {
            throw ConfigError("LEVICOOL_THREADS is not an integer");
        }
    }
    return cli_threads;
}

SimulationConfig load(const std::string& path, bool as_printed) {
    SimulationConfig cfg = path.empty() ? SimulationConfig{} : load_config(path);
    if (as_printed) cfg.as_printed = true;
    return cfg;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot write output file '" + path + "'");
    f << text;
}

int cmd_couplings(const SimulationConfig& cfg, const std::string& sweep_var,
                  const std::string& out) {
    if (sweep_var.empty()) {
        const Model m = build_model(resolve_parameters(cfg));
        const double w1x = m.g.omega_tilde[kX1];
        std::cout << "omega_tilde_1x_Hz = " << fmt(w1x / (2.0 * constants::pi)) << "\n";
        for (int i = 0; i < 6; ++i)
            std::cout << "omega_tilde_" << kModeNames[i] << "_over_w1x = "
                      << fmt(m.g.omega_tilde[i] / w1x) << "\n";
        for (int i = 0; i < 6; ++i)
            std::cout << "G_" << kModeNames[i] << "_over_w1x = "
                      << fmt(std::abs(m.g.G[i]) / w1x) << "\n";
        std::cout << "G_x_over_w1x = " << fmt(m.g.G_mech[0] / w1x) << "\n"
                  << "G_y_over_w1x = " << fmt(m.g.G_mech[1] / w1x) << "\n"
                  << "G_z_over_w1x = " << fmt(m.g.G_mech[2] / w1x) << "\n";
        return 0;
    }

    SweepSpec sw;
    sw.variable = sweep_var;
    if (sweep_var == "theta") {
        sw.start = 0.0;
        sw.stop = 2.0 * constants::pi;
        sw.steps = 201;
    } else if (sweep_var == "D") {
        sw.start = 2.0;
        sw.stop = 4.0;
        sw.steps = 501;
    } else {
        throw ConfigError("couplings --sweep accepts theta or D");
    }
    for (const SweepSpec& c : cfg.sweeps)
        if (c.variable == sweep_var) sw = c;

    std::string csv = sweep_var;
    csv += ",G_x1_over_w1x,G_x2_over_w1x,G_y1_over_w1x,G_y2_over_w1x,"
           "G_z1_over_w1x,G_z2_over_w1x\n";
    for (int i = 0; i < sw.steps; ++i) {
        const double v = sw.steps == 1
                             ? sw.start
                             : sw.start + (sw.stop - sw.start) * i / (sw.steps - 1);
        PointOverrides ov;
        if (sweep_var == "theta") ov.theta = v;
        else ov.D_over_lambda = v;
        const Model m = build_model(resolve_parameters(cfg, ov));
        const double w1x = m.g.omega_tilde[kX1];
        csv += fmt(v);
        for (int k = 0; k < 6; ++k) csv += ',' + fmt(std::abs(m.g.G[k]) / w1x);
        csv += '\n';
    }
    if (out.empty()) std::cout << csv;
    else write_text(out, csv);
    return 0;
}

int cmd_steady_state(const SimulationConfig& cfg, const std::string& out) {
    const Model m = build_model(resolve_parameters(cfg));
    const SteadyState ss = solve_steady_state(m.g, cfg.newton_tol, cfg.max_iter);
    const LinearizedSystem sys = build_linearized_system(m.g, ss, cfg.as_printed);

    std::cout << "a_ss_re = " << fmt(ss.a_ss.real()) << "\n"
              << "a_ss_im = " << fmt(ss.a_ss.imag()) << "\n";
    for (int i = 0; i < 6; ++i)
        std::cout << "q_" << kModeNames[i] << " = " << fmt(ss.mu_ss[i]) << "\n";
    std::cout << "residual = " << fmt(ss.residual_norm) << "\n"
              << "iterations = " << ss.iterations << "\n"
              << "stable = " << (sys.stable ? "true" : "false") << "\n"
              << "spectral_abscissa = " << fmt(sys.spectral_abscissa) << "\n";

    if (!out.empty()) {
        std::string csv = "a_ss_re,a_ss_im,q_x1,q_x2,q_y1,q_y2,q_z1,q_z2,"
                          "residual,stable,spectral_abscissa\n";
        csv += fmt(ss.a_ss.real()) + ',' + fmt(ss.a_ss.imag());
        for (int i = 0; i < 6; ++i) csv += ',' + fmt(ss.mu_ss[i]);
        csv += ',' + fmt(ss.residual_norm);
        csv += sys.stable ? ",1," : ",0,";
        csv += fmt(sys.spectral_abscissa) + '\n';
        write_text(out, csv);
    }
    return 0;
}

int cmd_cool(const SimulationConfig& cfg, const PointOverrides& ov,
             const std::string& out) {
    const PhysicalParameters p = resolve_parameters(cfg, ov);
    const Model m = build_model(p);
    const double w1x = m.g.omega_tilde[kX1];
    const CoolingResult r = cool(m, cfg.as_printed);

    std::cout << "theta = " << fmt(p.theta) << "\n"
              << "detuning_over_w1x = " << fmt(p.Delta_tilde / w1x) << "\n"
              << "kappa_over_w1x = " << fmt(p.kappa / w1x) << "\n";
    for (int i = 0; i < 6; ++i)
        std::cout << "n_" << kModeNames[i] << " = " << fmt(r.n_bar[i]) << "\n";
    std::cout << "spectral_abscissa = " << fmt(r.spectral_abscissa) << "\n";

    if (!out.empty()) {
        std::string csv = "theta,detuning_over_w1x,kappa_over_w1x,"
                          "n_x1,n_x2,n_y1,n_y2,n_z1,n_z2,abscissa\n";
        csv += fmt(p.theta) + ',' + fmt(p.Delta_tilde / w1x) + ',' +
               fmt(p.kappa / w1x);
        for (int i = 0; i < 6; ++i) csv += ',' + fmt(r.n_bar[i]);
        csv += ',' + fmt(r.spectral_abscissa) + '\n';
        write_text(out, csv);
    }
    return 0;
}

int cmd_darkmodes(const SimulationConfig& cfg, const PointOverrides& ov,
                  const std::string& out) {
    const Model m = build_model(resolve_parameters(cfg, ov));
    const double w1x = m.g.omega_tilde[kX1];
    const DarkModeReport r = detect_dark_modes(m.g);

    for (int i = 0; i < 6; ++i)
        std::cout << "normal_freq_" << i << "_over_w1x = "
                  << fmt(r.normal_freqs[i] / w1x) << "\n";
    for (int i = 0; i < 6; ++i)
        std::cout << "C_AB_" << i << "_abs_over_w1x = "
                  << fmt(std::abs(r.C_AB(0, i)) / w1x) << "\n";
    std::cout << "dark_count = " << r.dark_count << "\n";
    for (size_t i = 0; i < r.dark_indices.size(); ++i)
        std::cout << "dark_" << i << " = mode " << r.dark_indices[i] << " ("
                  << r.mechanisms[i] << ")\n";

    if (!out.empty()) {
        std::string csv = "index,normal_freq_over_w1x,C_AB_abs_over_w1x,dark\n";
        for (int i = 0; i < 6; ++i) {
            bool dark = false;
            for (int d : r.dark_indices) dark = dark || d == i;
            csv += std::to_string(i) + ',' + fmt(r.normal_freqs[i] / w1x) + ',' +
                   fmt(std::abs(r.C_AB(0, i)) / w1x) + ',' + (dark ? '1' : '0') + '\n';
        }
        write_text(out, csv);
    }
    return 0;
}

int cmd_sweep(const SimulationConfig& cfg, int threads, const std::string& out) {
    const SweepResult res = run_sweep(cfg, threads);
    std::string path = out.empty() ? cfg.out_path : out;
    if (path.empty()) std::cout << format_csv(res);
    else emit_csv(res, path);
    std::cerr << res.rows.size() << " points, " << res.failed << " failed\n";
    return res.failed > 0 ? 4 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"steady-state cooling of two levitated nanoparticles coupled "
                 "to a cavity by coherent scattering"};
    app.require_subcommand(1);

    std::string config_path, out_path, sweep_var;
    int threads = 0;
    bool as_printed = false;
    double theta = 0.0, detuning = 0.0, kappa = 0.0, power2 = 0.0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "configuration file");
        sub->add_option("--out", out_path, "output CSV path");
        sub->add_option("--threads", threads, "worker thread count");
        sub->add_flag("--as-printed", as_printed,
                      "use the alternative literal drift-matrix signs");
    };

    CLI::App* c_coup = app.add_subcommand("couplings", "coupling magnitudes");
    add_common(c_coup);
    c_coup->add_option("--sweep", sweep_var, "sweep variable: theta or D");

    CLI::App* c_ss = app.add_subcommand("steady-state", "semiclassical steady state");
    add_common(c_ss);

    CLI::App* c_cool = app.add_subcommand("cool", "steady-state phonon numbers");
    add_common(c_cool);
    CLI::Option* o_theta = c_cool->add_option("--theta", theta, "polarization angle (rad)");
    CLI::Option* o_det = c_cool->add_option("--detuning", detuning, "detuning / omega_tilde_1x");
    CLI::Option* o_kap = c_cool->add_option("--kappa", kappa, "kappa / omega_tilde_1x");

    CLI::App* c_dark = app.add_subcommand("darkmodes", "dark-mode diagnosis");
    add_common(c_dark);
    CLI::Option* o_p2 = c_dark->add_option("--power2", power2, "tweezer 2 power (W)");

    CLI::App* c_sweep = app.add_subcommand("sweep", "grid sweep to CSV");
    add_common(c_sweep);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        const SimulationConfig cfg = load(config_path, as_printed);
        if (c_coup->parsed()) return cmd_couplings(cfg, sweep_var, out_path);
        if (c_ss->parsed()) return cmd_steady_state(cfg, out_path);
        if (c_cool->parsed()) {
            PointOverrides ov;
            if (o_theta->count()) ov.theta = theta;
            if (o_det->count()) ov.detuning_over_w1x = detuning;
            if (o_kap->count()) ov.kappa_over_w1x = kappa;
            return cmd_cool(cfg, ov, out_path);
        }
        if (c_dark->parsed()) {
            PointOverrides ov;
            if (o_p2->count()) ov.power2 = power2;
            return cmd_darkmodes(cfg, ov, out_path);
        }
        if (c_sweep->parsed())
            return cmd_sweep(cfg, effective_threads(threads), out_path);
    } catch (const levicool::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const levicool::ParameterError& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return 2;
    } catch (const levicool::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
