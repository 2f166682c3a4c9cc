#pragma once

#include <random>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "levicool/cooling.hpp"

namespace testutil {

using levicool::Complex;
using levicool::GSet;
using levicool::kDim;

// random coupling set with positive frequencies and weak damping, scaled so
// most draws are stable
inline GSet random_gset(std::mt19937& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    GSet g{};
    for (int m = 0; m < 6; ++m) {
        g.omega_tilde[m] = 0.5 + u(rng);
        g.zpf[m] = 1e-10;
        g.gamma[m] = 1e-6 + 1e-5 * u(rng);
        g.n_th[m] = 10.0 * u(rng);
        g.G[m] = Complex(0.2 * (u(rng) - 0.5), 0.2 * (u(rng) - 0.5));
    }
    for (int j = 0; j < 2; ++j) {
        g.G_ax[j] = 0.1 * (u(rng) - 0.5);
        g.G_ay[j] = 0.1 * (u(rng) - 0.5);
        g.R_x[j] = 0.05 * (u(rng) - 0.5);
        g.R_y[j] = 0.05 * (u(rng) - 0.5);
    }
    for (int mu = 0; mu < 3; ++mu) g.G_mech[mu] = 0.05 * (u(rng) - 0.5);
    for (int j = 0; j < 2; ++j)
        for (int jp = 0; jp < 2; ++jp) g.G_xy[j][jp] = 0.02 * (u(rng) - 0.5);
    g.Omega_tilde = Complex(u(rng), u(rng));
    g.Delta_tilde = 0.5 + u(rng);
    g.kappa = 0.1 + 0.3 * u(rng);
    return g;
}

// stationary covariance by exact discretization (Van Loan block exponential)
// iterated to the fixed point; independent of the Lyapunov solver
inline Eigen::MatrixXd integrate_covariance(const Eigen::MatrixXd& A,
                                            const Eigen::MatrixXd& Q,
                                            double h, int max_steps = 200000,
                                            double tol = 1e-13) {
    const int n = static_cast<int>(A.rows());
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    M.topLeftCorner(n, n) = -A * h;
    M.topRightCorner(n, n) = Q * h;
    M.bottomRightCorner(n, n) = A.transpose() * h;
    const Eigen::MatrixXd F = M.exp();
    Eigen::MatrixXd E = F.bottomRightCorner(n, n).transpose();  // expm(A h)
    Eigen::MatrixXd W = E * F.topRightCorner(n, n);             // noise over h

    // horizon doubling: V(2T) = E_T V(T) E_T^T + W_T, so starting from
    // V(h) = W_h the accumulated covariance converges geometrically even for
    // relaxation times many orders slower than h
    (void)max_steps;
    for (int s = 0; s < 128; ++s) {
        const Eigen::MatrixXd Wn = E * W * E.transpose() + W;
        const double d = (Wn - W).cwiseAbs().maxCoeff();
        W = Wn;
        E = (E * E).eval();
        if (d < tol * (1.0 + W.cwiseAbs().maxCoeff())) break;
    }
    return 0.5 * (W + W.transpose());
}

// Hamiltonian part of the drift matrix reconstructed from the quadratic form
// of H_lin: A_ham = S * Hessian(H), with S the symplectic form in the
// (X, Y, p..., q...) ordering
inline Eigen::Matrix<double, kDim, kDim> hamiltonian_drift(const GSet& g,
                                                           Complex a) {
    using levicool::p_index;
    using levicool::q_index;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

    Eigen::Matrix<double, kDim, kDim> M = Eigen::Matrix<double, kDim, kDim>::Zero();
    M(0, 0) = g.Delta_tilde;
    M(1, 1) = g.Delta_tilde;
    for (int m = 0; m < 6; ++m) {
        M(p_index(m), p_index(m)) = g.omega_tilde[m];
        M(q_index(m), q_index(m)) = g.omega_tilde[m];
    }

    double cX[6], cY[6];
    for (int j = 0; j < 2; ++j) {
        const Complex Gpx = g.G[levicool::kX1 + j] * inv_sqrt2;
        const Complex Gpy = g.G[levicool::kY1 + j] * inv_sqrt2;
        const Complex Gpz = g.G[levicool::kZ1 + j] * inv_sqrt2;
        const double Gpax = g.G_ax[j] * inv_sqrt2;
        const double Gpay = g.G_ay[j] * inv_sqrt2;
        cX[levicool::kX1 + j] = 2.0 * std::real(Gpax * a + Gpx);
        cY[levicool::kX1 + j] = 2.0 * std::imag(Gpax * a - Gpx);
        cX[levicool::kY1 + j] = 2.0 * std::real(Gpay * a + Gpy);
        cY[levicool::kY1 + j] = 2.0 * std::imag(Gpay * a - Gpy);
        cX[levicool::kZ1 + j] = -2.0 * std::imag(Gpz);
        cY[levicool::kZ1 + j] = -2.0 * std::real(Gpz);
    }
    for (int m = 0; m < 6; ++m) {
        M(0, q_index(m)) = M(q_index(m), 0) = cX[m];
        M(1, q_index(m)) = M(q_index(m), 1) = cY[m];
    }

    auto set_q = [&](int ma, int mb, double v) {
        M(q_index(ma), q_index(mb)) = v;
        M(q_index(mb), q_index(ma)) = v;
    };
    set_q(levicool::kX1, levicool::kX2, -g.G_mech[0]);
    set_q(levicool::kY1, levicool::kY2, -g.G_mech[1]);
    set_q(levicool::kZ1, levicool::kZ2, -g.G_mech[2]);
    set_q(levicool::kX1, levicool::kY1, g.G_xy[0][0]);
    set_q(levicool::kX1, levicool::kY2, -g.G_xy[0][1]);
    set_q(levicool::kX2, levicool::kY1, -g.G_xy[1][0]);
    set_q(levicool::kX2, levicool::kY2, g.G_xy[1][1]);

    Eigen::Matrix<double, kDim, kDim> S = Eigen::Matrix<double, kDim, kDim>::Zero();
    S(0, 1) = 1.0;
    S(1, 0) = -1.0;
    for (int m = 0; m < 6; ++m) {
        S(q_index(m), p_index(m)) = 1.0;
        S(p_index(m), q_index(m)) = -1.0;
    }
    return S * M;
}

}  // namespace testutil
