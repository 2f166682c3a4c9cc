#pragma once

#include <string>
#include <vector>

#include "levicool/config.hpp"
#include "levicool/cooling.hpp"

namespace levicool {

// One evaluated grid point. On failure `error` is nonzero (2: parameter or
// configuration error, 3: numerical failure) and the data fields are unset.
struct SweepRow {
    std::vector<double> swept;       // one value per sweep block, grid order
    std::array<double, 6> n_bar{};
    double abscissa = 0.0;
    int dark_count = 0;
    std::array<double, 6> G_over_w1x{};
    int error = 0;
};

struct SweepResult {
    std::vector<std::string> columns;
    std::vector<SweepRow> rows;
    int failed = 0;
};

// Evaluate the Cartesian product of the config's sweep blocks (row-major,
// first block outermost). Throws if more than half the points fail.
SweepResult run_sweep(const SimulationConfig& cfg, int threads = 0);

std::string format_csv(const SweepResult& result);
void emit_csv(const SweepResult& result, const std::string& path);

}  // namespace levicool
