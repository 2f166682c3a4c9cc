#include "levicool/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "levicool/constants.hpp"
#include "levicool/couplings.hpp"

namespace levicool {

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(int line, const std::string& msg) {
    throw ConfigError("config line " + std::to_string(line) + ": " + msg);
}

// number with an optional unit suffix; lengths in m, powers in W,
// kHz/MHz are ordinary frequencies converted to rad/s, "pi" multiplies by pi
double parse_number(const std::string& raw, int line) {
    const std::string s = trim(raw);
    if (s.empty()) fail(line, "empty value");
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str()) fail(line, "malformed number '" + s + "'");
    std::string suffix = trim(std::string(end));
    if (suffix.empty()) return v;
    if (suffix == "nm") return v * 1e-9;
    if (suffix == "um") return v * 1e-6;
    if (suffix == "mm") return v * 1e-3;
    if (suffix == "cm") return v * 1e-2;
    if (suffix == "W") return v;
    if (suffix == "kHz") return v * 2.0 * constants::pi * 1e3;
    if (suffix == "MHz") return v * 2.0 * constants::pi * 1e6;
    if (suffix == "pi") return v * constants::pi;
    fail(line, "unknown unit suffix '" + suffix + "'");
}

bool parse_bool(const std::string& raw, int line) {
    const std::string s = trim(raw);
    if (s == "true" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "no") return false;
    fail(line, "expected boolean, got '" + s + "'");
}

void finish_sweep(const SweepSpec& sw, int line) {
    static const char* allowed[] = {"theta", "D", "power2", "detuning", "kappa"};
    bool ok = false;
    for (const char* a : allowed) ok = ok || sw.variable == a;
    if (!ok) fail(line, "unknown sweep variable '" + sw.variable + "'");
    if (sw.steps < 1) fail(line, "sweep steps must be >= 1");
    if (sw.start > sw.stop) fail(line, "sweep start must not exceed stop");
}

}  // namespace

SimulationConfig parse_config(const std::string& text) {
    SimulationConfig cfg;
    std::istringstream in(text);
    std::string raw;
    std::string section;
    int line = 0;
    int sweep_line = 0;

    while (std::getline(in, raw)) {
        ++line;
        std::string s = raw;
        const size_t hash = s.find_first_of("#;");
        if (hash != std::string::npos) s = s.substr(0, hash);
        s = trim(s);
        if (s.empty()) continue;

        if (s.front() == '[') {
            if (s.back() != ']') fail(line, "unterminated section header");
            if (section == "sweep") finish_sweep(cfg.sweeps.back(), sweep_line);
            section = trim(s.substr(1, s.size() - 2));
            if (section == "sweep") {
                cfg.sweeps.push_back({});
                sweep_line = line;
            } else if (section != "particle" && section != "tweezer" &&
                       section != "cavity" && section != "geometry" &&
                       section != "bath" && section != "drive" &&
                       section != "solver" && section != "output") {
                fail(line, "unknown section [" + section + "]");
            }
            continue;
        }

        const size_t eq = s.find('=');
        if (eq == std::string::npos) fail(line, "expected 'key = value'");
        const std::string key = trim(s.substr(0, eq));
        const std::string val = trim(s.substr(eq + 1));
        if (section.empty()) fail(line, "key '" + key + "' outside any section");

        if (section == "particle") {
            if (key == "radius") cfg.r0 = parse_number(val, line);
            else if (key == "density") cfg.rho = parse_number(val, line);
            else if (key == "epsilon") cfg.eps_r = parse_number(val, line);
            else fail(line, "unknown key '" + key + "' in [particle]");
        } else if (section == "tweezer") {
            if (key == "wavelength") cfg.lambda = parse_number(val, line);
            else if (key == "power1") cfg.power1 = parse_number(val, line);
            else if (key == "power2") cfg.power2 = parse_number(val, line);
            else if (key == "waist") cfg.waist = parse_number(val, line);
            else if (key == "ax") cfg.ax = parse_number(val, line);
            else if (key == "ay") cfg.ay = parse_number(val, line);
            else if (key == "target_fx") cfg.target[0] = parse_number(val, line);
            else if (key == "target_fy") cfg.target[1] = parse_number(val, line);
            else if (key == "target_fz") cfg.target[2] = parse_number(val, line);
            else fail(line, "unknown key '" + key + "' in [tweezer]");
        } else if (section == "cavity") {
            if (key == "length") cfg.cav_length = parse_number(val, line);
            else if (key == "waist") cfg.cav_waist = parse_number(val, line);
            else if (key == "kappa_over_w1x") cfg.kappa_over_w1x = parse_number(val, line);
            else fail(line, "unknown key '" + key + "' in [cavity]");
        } else if (section == "geometry") {
            if (key == "theta") cfg.theta = parse_number(val, line);
            else if (key == "d_over_lambda") cfg.D_over_lambda = parse_number(val, line);
            else fail(line, "unknown key '" + key + "' in [geometry]");
        } else if (section == "bath") {
            if (key == "n_th") cfg.n_th = parse_number(val, line);
            else if (key == "gamma_over_w1x") cfg.gamma_over_w1x = parse_number(val, line);
            else fail(line, "unknown key '" + key + "' in [bath]");
        } else if (section == "drive") {
            if (key == "detuning_over_w1x") cfg.detuning_over_w1x = parse_number(val, line);
            else fail(line, "unknown key '" + key + "' in [drive]");
        } else if (section == "solver") {
            if (key == "newton_tol") cfg.newton_tol = parse_number(val, line);
            else if (key == "max_iter") cfg.max_iter = static_cast<int>(parse_number(val, line));
            else if (key == "as_printed") cfg.as_printed = parse_bool(val, line);
            else fail(line, "unknown key '" + key + "' in [solver]");
        } else if (section == "sweep") {
            SweepSpec& sw = cfg.sweeps.back();
            if (key == "variable") sw.variable = val;
            else if (key == "start") sw.start = parse_number(val, line);
            else if (key == "stop") sw.stop = parse_number(val, line);
            else if (key == "steps") sw.steps = static_cast<int>(parse_number(val, line));
            else fail(line, "unknown key '" + key + "' in [sweep]");
        } else if (section == "output") {
            if (key == "path") cfg.out_path = val;
            else fail(line, "unknown key '" + key + "' in [output]");
        }
    }
    if (section == "sweep") finish_sweep(cfg.sweeps.back(), sweep_line);
    return cfg;
}

SimulationConfig load_config(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << f.rdbuf();
    return parse_config(buf.str());
}

namespace {

// The calibration targets are the effective frequencies of particle 1, which
// include binding and standing-wave shifts. Iterate the bare-frequency
// inversion until the effective frequencies match.
WaistCalibration calibrate_effective(const SimulationConfig& cfg,
                                     PhysicalParameters base) {
    base.kappa = 1.0;
    base.gamma.fill(1.0);
    base.Delta_tilde = 0.0;
    base.n_th.fill(0.0);

    std::array<double, 3> bare = cfg.target;
    WaistCalibration cal = calibrate_waists(bare, cfg.power1, base);
    for (int iter = 0; iter < 50; ++iter) {
        base.W_t = cal.W_t;
        base.A_x = cal.A_x;
        base.A_y = cal.A_y;
        const Model m = build_model(base);
        const double eff[3] = {m.g.omega_tilde[kX1], m.g.omega_tilde[kY1],
                               m.g.omega_tilde[kZ1]};
        double worst = 0.0;
        for (int i = 0; i < 3; ++i) {
            const double r = cfg.target[i] / eff[i];
            worst = std::max(worst, std::abs(r - 1.0));
            bare[i] *= r;
        }
        if (worst < 1e-12) break;
        cal = calibrate_waists(bare, cfg.power1, base);
    }
    return cal;
}

}  // namespace

PhysicalParameters resolve_parameters(const SimulationConfig& cfg,
                                      const PointOverrides& ov) {
    PhysicalParameters p;
    p.r0 = cfg.r0;
    p.rho = cfg.rho;
    p.eps_r = cfg.eps_r;
    p.lambda_tw = cfg.lambda;
    p.P_tw1 = cfg.power1;
    p.P_tw2 = ov.power2.value_or(cfg.power2);
    p.L_cav = cfg.cav_length;
    p.w_cav = cfg.cav_waist;
    p.theta = normalize_angle(ov.theta.value_or(cfg.theta));
    const double dl = ov.D_over_lambda.value_or(cfg.D_over_lambda);
    p.D = dl * cfg.lambda;
    p.x10 = -0.5 * p.D;
    p.x20 = 0.5 * p.D;

    if (cfg.waist > 0.0) {
        p.W_t = cfg.waist;
        p.A_x = cfg.ax;
        p.A_y = cfg.ay;
    } else {
        // calibrate at the base configuration, not the swept point, so the
        // waist stays a fixed physical property across a sweep
        PhysicalParameters base = p;
        base.P_tw2 = cfg.power2;
        base.theta = normalize_angle(cfg.theta);
        base.D = cfg.D_over_lambda * cfg.lambda;
        base.x10 = -0.5 * base.D;
        base.x20 = 0.5 * base.D;
        const WaistCalibration cal = calibrate_effective(cfg, base);
        p.W_t = cal.W_t;
        p.A_x = cal.A_x;
        p.A_y = cal.A_y;
    }

    p.n_th.fill(cfg.n_th);

    // reference frequency does not depend on kappa, gamma or the detuning,
    // so resolve the ratio-specified rates with placeholder values first
    p.kappa = 1.0;
    p.gamma.fill(1.0);
    p.Delta_tilde = 0.0;
    const Model ref = build_model(p);
    const double w1x = ref.g.omega_tilde[kX1];

    const double kr = ov.kappa_over_w1x.value_or(cfg.kappa_over_w1x);
    if (!(kr > 0.0)) throw ConfigError("kappa_over_w1x must be positive");
    p.kappa = kr * w1x;
    p.gamma.fill(cfg.gamma_over_w1x * w1x);
    p.Delta_tilde = ov.detuning_over_w1x.value_or(cfg.detuning_over_w1x) * w1x;
    p.validate();
    return p;
}

}  // namespace levicool
