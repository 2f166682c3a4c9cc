#pragma once

#include <array>

#include <Eigen/Core>

#include "levicool/couplings.hpp"

namespace levicool {

struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// State ordering of the 14-dimensional quadrature vector:
// (dX_a, dY_a, dp_x1, dp_x2, dp_y1, dp_y2, dp_z1, dp_z2,
//  dq_x1, dq_x2, dq_y1, dq_y2, dq_z1, dq_z2)
inline constexpr int kDim = 14;
inline constexpr int p_index(int mode) { return 2 + mode; }
inline constexpr int q_index(int mode) { return 8 + mode; }

struct SteadyState {
    Complex a_ss;                    // cavity amplitude
    std::array<double, 6> mu_ss;     // displacement expectations, q units
    double residual_norm;            // max |residual| / drive scale
    int iterations;
    bool displacement_warning;       // |q| beyond 1e6 zero-point lengths
};

struct LinearizedSystem {
    Eigen::Matrix<double, kDim, kDim> A;
    Eigen::Matrix<double, kDim, kDim> Q;
    bool stable;
    double spectral_abscissa;
};

struct StabilityVerdict {
    bool stable;
    double spectral_abscissa;
};

// Newton solve of the semiclassical steady-state equations. The two z
// equations are linear in the cavity amplitude and eliminated up front.
SteadyState solve_steady_state(const GSet& g, double tol = 1e-12,
                               int max_iter = 60);

// Fixed-point variant used as an independent cross-check: alternates the
// linear cavity solve with the linear mechanical solve.
SteadyState solve_steady_state_fixed_point(const GSet& g, double tol = 1e-12,
                                           int max_iter = 10000);

// Drift matrix. `as_printed` selects the alternative literal block signs
// (+kappa in the second cavity quadrature, +2F_1 in the first coupling row);
// the default uses the damped-cavity signs consistent with the linearized
// Hamiltonian.
Eigen::Matrix<double, kDim, kDim> build_drift_matrix(const GSet& g,
                                                     const SteadyState& ss,
                                                     bool as_printed = false);

Eigen::Matrix<double, kDim, kDim> build_noise_matrix(const GSet& g);

StabilityVerdict check_stability(const Eigen::Ref<const Eigen::MatrixXd>& A);

LinearizedSystem build_linearized_system(const GSet& g, const SteadyState& ss,
                                         bool as_printed = false);

}  // namespace levicool
