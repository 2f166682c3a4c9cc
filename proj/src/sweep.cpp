#include "levicool/sweep.hpp"

#include <atomic>
#include <cstdio>
#include <fstream>
#include <thread>

#include "levicool/darkmodes.hpp"

namespace levicool {

namespace {

double grid_value(const SweepSpec& sw, int i) {
    if (sw.steps == 1) return sw.start;
    return sw.start + (sw.stop - sw.start) * static_cast<double>(i) /
                          static_cast<double>(sw.steps - 1);
}

void apply(PointOverrides& ov, const std::string& variable, double value) {
    if (variable == "theta") ov.theta = value;
    else if (variable == "D") ov.D_over_lambda = value;
    else if (variable == "power2") ov.power2 = value;
    else if (variable == "detuning") ov.detuning_over_w1x = value;
    else if (variable == "kappa") ov.kappa_over_w1x = value;
    else throw ConfigError("unknown sweep variable '" + variable + "'");
}

SweepRow evaluate_point(const SimulationConfig& cfg, const PointOverrides& ov,
                        std::vector<double> swept) {
    SweepRow row;
    row.swept = std::move(swept);
    try {
        const PhysicalParameters p = resolve_parameters(cfg, ov);
        const Model model = build_model(p);
        const double w1x = model.g.omega_tilde[kX1];
        const CoolingResult r = cool(model, cfg.as_printed);
        row.n_bar = r.n_bar;
        row.abscissa = r.spectral_abscissa;
        row.dark_count = detect_dark_modes(model.g).dark_count;
        for (int m = 0; m < 6; ++m) row.G_over_w1x[m] = std::abs(model.g.G[m]) / w1x;
    } catch (const ConfigError&) {
        row.error = 2;
    } catch (const ParameterError&) {
        row.error = 2;
    } catch (const NumericalError&) {
        row.error = 3;
    }
    return row;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

SweepResult run_sweep(const SimulationConfig& cfg, int threads) {
    if (cfg.sweeps.empty()) throw ConfigError("no [sweep] block in config");

    long long total = 1;
    for (const SweepSpec& sw : cfg.sweeps) {
        total *= sw.steps;
        if (total > 1000000) throw ConfigError("sweep grid exceeds 1e6 points");
    }

    SweepResult res;
    for (const SweepSpec& sw : cfg.sweeps) res.columns.push_back(sw.variable);
    const char* data_cols[] = {"n_x1", "n_x2", "n_y1", "n_y2", "n_z1", "n_z2",
                               "abscissa", "dark_count",
                               "G_x1_over_w1x", "G_x2_over_w1x", "G_y1_over_w1x",
                               "G_y2_over_w1x", "G_z1_over_w1x", "G_z2_over_w1x",
                               "error"};
    for (const char* c : data_cols) res.columns.push_back(c);

    res.rows.resize(static_cast<size_t>(total));

    int nthreads = threads;
    if (nthreads <= 0)
        nthreads = static_cast<int>(std::thread::hardware_concurrency());
    if (nthreads < 1) nthreads = 1;
    if (static_cast<long long>(nthreads) > total) nthreads = static_cast<int>(total);

    std::atomic<long long> next{0};
    auto worker = [&]() {
        for (;;) {
            const long long idx = next.fetch_add(1);
            if (idx >= total) return;
            // decode row-major grid index, first sweep block outermost
            long long rem = idx;
            std::vector<double> swept(cfg.sweeps.size());
            for (int b = static_cast<int>(cfg.sweeps.size()) - 1; b >= 0; --b) {
                const int i = static_cast<int>(rem % cfg.sweeps[b].steps);
                rem /= cfg.sweeps[b].steps;
                swept[b] = grid_value(cfg.sweeps[b], i);
            }
            PointOverrides ov;
            for (size_t b = 0; b < cfg.sweeps.size(); ++b)
                apply(ov, cfg.sweeps[b].variable, swept[b]);
            res.rows[static_cast<size_t>(idx)] = evaluate_point(cfg, ov, std::move(swept));
        }
    };

    std::vector<std::thread> pool;
    for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
    worker();
    for (std::thread& t : pool) t.join();

    for (const SweepRow& r : res.rows)
        if (r.error != 0) ++res.failed;
    if (2 * res.failed > static_cast<int>(res.rows.size()))
        throw NumericalError("more than half of the sweep points failed (" +
                             std::to_string(res.failed) + "/" +
                             std::to_string(res.rows.size()) + ")");
    return res;
}

std::string format_csv(const SweepResult& result) {
    std::string out;
    for (size_t i = 0; i < result.columns.size(); ++i) {
        if (i) out += ',';
        out += result.columns[i];
    }
    out += '\n';
    for (const SweepRow& r : result.rows) {
        for (size_t i = 0; i < r.swept.size(); ++i) {
            if (i) out += ',';
            out += fmt(r.swept[i]);
        }
        if (r.error == 0) {
            for (int m = 0; m < 6; ++m) out += ',' + fmt(r.n_bar[m]);
            out += ',' + fmt(r.abscissa);
            out += ',' + std::to_string(r.dark_count);
            for (int m = 0; m < 6; ++m) out += ',' + fmt(r.G_over_w1x[m]);
        } else {
            for (int i = 0; i < 14; ++i) out += ',';
        }
        out += ',' + std::to_string(r.error);
        out += '\n';
    }
    return out;
}

void emit_csv(const SweepResult& result, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot write output file '" + path + "'");
    f << format_csv(result);
    if (!f) throw ConfigError("write failed for '" + path + "'");
}

}  // namespace levicool
