#pragma once

#include <array>

#include "levicool/linearized_system.hpp"

namespace levicool {

struct CovarianceMatrix {
    Eigen::Matrix<double, kDim, kDim> V;
    double residual;  // max |AV + VA^T + Q| relative to max |Q|
};

struct CoolingResult {
    std::array<double, 6> n_bar;  // steady-state phonon numbers, MechMode order
    bool stable;
    double spectral_abscissa;
    SteadyState steady_state;
    CovarianceMatrix cov;
    GSet g;
};

// Solve A V + V A^T = -Q for the stationary covariance. Throws NumericalError
// if A is not Hurwitz (no stationary state exists).
CovarianceMatrix solve_lyapunov(const Eigen::Matrix<double, kDim, kDim>& A,
                                const Eigen::Matrix<double, kDim, kDim>& Q);

// n_m = (V_qq + V_pp - 1) / 2 per mechanical mode.
std::array<double, 6> phonon_numbers(const CovarianceMatrix& cov);

// Full pipeline: couplings -> steady state -> drift -> Lyapunov -> phonons.
CoolingResult cool(const PhysicalParameters& p, bool as_printed = false);
CoolingResult cool(const Model& model, bool as_printed = false);

}  // namespace levicool
