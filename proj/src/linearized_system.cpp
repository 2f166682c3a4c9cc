#include "levicool/linearized_system.hpp"

#include <cmath>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace levicool {

namespace {

// Eliminate the two z equations, which are linear in the cavity amplitude:
//   [w_z1 -G_z; -G_z w_z2] (z1,z2)^T = 2 (Im(G_z1 a), Im(G_z2 a))^T
Eigen::Matrix2d z_block(const GSet& g) {
    Eigen::Matrix2d Z;
    Z << g.omega_tilde[kZ1], -g.G_mech[2], -g.G_mech[2], g.omega_tilde[kZ2];
    return Z;
}

Eigen::Vector2d solve_z(const GSet& g, Complex a) {
    Eigen::Vector2d rhs(2.0 * std::imag(g.G[kZ1] * a), 2.0 * std::imag(g.G[kZ2] * a));
    return z_block(g).lu().solve(rhs);
}

double drive_scale(const GSet& g) {
    double s = std::abs(g.Omega_tilde);
    for (int j = 0; j < 2; ++j) {
        s = std::max(s, std::abs(g.R_x[j]));
        s = std::max(s, std::abs(g.R_y[j]));
    }
    return s > 0.0 ? s : 1.0;
}

// Residuals of the eight steady-state equations with z already eliminated;
// v = (Re a, Im a, x1, x2, y1, y2).
Eigen::Matrix<double, 6, 1> residual(const GSet& g,
                                     const Eigen::Matrix<double, 6, 1>& v) {
    const Complex a(v[0], v[1]);
    const Eigen::Vector2d z = solve_z(g, a);
    const double x1 = v[2], x2 = v[3], y1 = v[4], y2 = v[5];

    Complex Fc = (Complex(0.0, -g.Delta_tilde) - g.kappa) * a -
                 Complex(0.0, 1.0) * (std::conj(g.G[kX1]) * x1 + std::conj(g.G[kX2]) * x2 +
                                      std::conj(g.G[kY1]) * y1 + std::conj(g.G[kY2]) * y2) -
                 std::conj(g.G[kZ1]) * z[0] - std::conj(g.G[kZ2]) * z[1] -
                 Complex(0.0, 1.0) * std::conj(g.Omega_tilde);

    const double n_a = std::norm(a);
    Eigen::Matrix<double, 6, 1> F;
    F[0] = Fc.real();
    F[1] = Fc.imag();
    F[2] = -g.omega_tilde[kX1] * x1 - g.G_ax[0] * n_a - 2.0 * std::real(g.G[kX1] * a) +
           g.G_mech[0] * x2 - g.G_xy[0][0] * y1 + g.G_xy[0][1] * y2 - g.R_x[0];
    F[3] = -g.omega_tilde[kX2] * x2 - g.G_ax[1] * n_a - 2.0 * std::real(g.G[kX2] * a) +
           g.G_mech[0] * x1 + g.G_xy[1][0] * y1 - g.G_xy[1][1] * y2 + g.R_x[1];
    F[4] = -g.omega_tilde[kY1] * y1 - g.G_ay[0] * n_a - 2.0 * std::real(g.G[kY1] * a) +
           g.G_mech[1] * y2 - g.G_xy[0][0] * x1 + g.G_xy[1][0] * x2 - g.R_y[0];
    F[5] = -g.omega_tilde[kY2] * y2 - g.G_ay[1] * n_a - 2.0 * std::real(g.G[kY2] * a) +
           g.G_mech[1] * y1 + g.G_xy[0][1] * x1 - g.G_xy[1][1] * x2 + g.R_y[1];
    return F;
}

Eigen::Matrix<double, 6, 6> jacobian(const GSet& g,
                                     const Eigen::Matrix<double, 6, 1>& v) {
    const Complex a(v[0], v[1]);
    const Complex ca(Complex(0.0, -g.Delta_tilde) - g.kappa);

    const Eigen::Matrix2d Zlu = z_block(g);
    Eigen::Vector2d dz_dar = Zlu.lu().solve(
        Eigen::Vector2d(2.0 * std::imag(g.G[kZ1]), 2.0 * std::imag(g.G[kZ2])));
    Eigen::Vector2d dz_dai = Zlu.lu().solve(
        Eigen::Vector2d(2.0 * std::real(g.G[kZ1]), 2.0 * std::real(g.G[kZ2])));

    Eigen::Matrix<double, 6, 6> J = Eigen::Matrix<double, 6, 6>::Zero();

    // cavity rows
    const Complex dFc_dar = ca - std::conj(g.G[kZ1]) * dz_dar[0] - std::conj(g.G[kZ2]) * dz_dar[1];
    const Complex dFc_dai = ca * Complex(0.0, 1.0) - std::conj(g.G[kZ1]) * dz_dai[0] -
                            std::conj(g.G[kZ2]) * dz_dai[1];
    J(0, 0) = dFc_dar.real();
    J(1, 0) = dFc_dar.imag();
    J(0, 1) = dFc_dai.real();
    J(1, 1) = dFc_dai.imag();
    const int mech_modes[4] = {kX1, kX2, kY1, kY2};
    for (int col = 0; col < 4; ++col) {
        const Complex d = Complex(0.0, -1.0) * std::conj(g.G[mech_modes[col]]);
        J(0, 2 + col) = d.real();
        J(1, 2 + col) = d.imag();
    }

    // mechanical rows: d(-2Re(G a))/dar = -2 Re G, /dai = +2 Im G
    const double Gax[4] = {g.G_ax[0], g.G_ax[1], g.G_ay[0], g.G_ay[1]};
    for (int r = 0; r < 4; ++r) {
        const Complex G = g.G[mech_modes[r]];
        J(2 + r, 0) = -2.0 * Gax[r] * v[0] - 2.0 * G.real();
        J(2 + r, 1) = -2.0 * Gax[r] * v[1] + 2.0 * G.imag();
    }
    J(2, 2) = -g.omega_tilde[kX1];
    J(2, 3) = g.G_mech[0];
    J(2, 4) = -g.G_xy[0][0];
    J(2, 5) = g.G_xy[0][1];
    J(3, 2) = g.G_mech[0];
    J(3, 3) = -g.omega_tilde[kX2];
    J(3, 4) = g.G_xy[1][0];
    J(3, 5) = -g.G_xy[1][1];
    J(4, 2) = -g.G_xy[0][0];
    J(4, 3) = g.G_xy[1][0];
    J(4, 4) = -g.omega_tilde[kY1];
    J(4, 5) = g.G_mech[1];
    J(5, 2) = g.G_xy[0][1];
    J(5, 3) = -g.G_xy[1][1];
    J(5, 4) = g.G_mech[1];
    J(5, 5) = -g.omega_tilde[kY2];
    return J;
}

SteadyState pack_solution(const GSet& g, const Eigen::Matrix<double, 6, 1>& v,
                          int iters) {
    SteadyState ss{};
    ss.a_ss = Complex(v[0], v[1]);
    const Eigen::Vector2d z = solve_z(g, ss.a_ss);
    ss.mu_ss = {v[2], v[3], v[4], v[5], z[0], z[1]};
    ss.residual_norm = residual(g, v).cwiseAbs().maxCoeff() / drive_scale(g);
    ss.iterations = iters;
    ss.displacement_warning = false;
    for (double q : ss.mu_ss)
        if (std::abs(q) > 1e6) ss.displacement_warning = true;
    return ss;
}

Eigen::Matrix<double, 6, 1> initial_guess(const GSet& g) {
    // decoupled driven cavity: a = -i Omega* / (i Delta + kappa)
    Eigen::Matrix<double, 6, 1> v = Eigen::Matrix<double, 6, 1>::Zero();
    const Complex denom(g.kappa, g.Delta_tilde);
    if (std::abs(denom) > 0.0) {
        const Complex a0 = Complex(0.0, -1.0) * std::conj(g.Omega_tilde) / denom;
        v[0] = a0.real();
        v[1] = a0.imag();
    }
    return v;
}

}  // namespace

SteadyState solve_steady_state(const GSet& g, double tol, int max_iter) {
    const double scale = drive_scale(g);
    Eigen::Matrix<double, 6, 1> v = initial_guess(g);
    double rn = residual(g, v).cwiseAbs().maxCoeff();
    for (int it = 0; it < max_iter; ++it) {
        if (rn <= tol * scale) return pack_solution(g, v, it);
        const Eigen::Matrix<double, 6, 1> F = residual(g, v);
        const Eigen::Matrix<double, 6, 1> dv = jacobian(g, v).lu().solve(-F);
        // backtracking line search keeps the iteration contracting when the
        // full step overshoots near strongly displaced operating points
        double step = 1.0;
        Eigen::Matrix<double, 6, 1> vn = v + dv;
        double rnn = residual(g, vn).cwiseAbs().maxCoeff();
        for (int bt = 0; bt < 40 && rnn >= rn; ++bt) {
            step *= 0.5;
            vn = v + step * dv;
            rnn = residual(g, vn).cwiseAbs().maxCoeff();
        }
        v = vn;
        rn = rnn;
    }
    if (rn <= tol * scale) return pack_solution(g, v, max_iter);
    throw NumericalError("steady-state Newton iteration did not converge, residual " +
                         std::to_string(rn / scale));
}

SteadyState solve_steady_state_fixed_point(const GSet& g, double tol, int max_iter) {
    const double scale = drive_scale(g);
    Eigen::Matrix<double, 6, 1> v = initial_guess(g);

    Eigen::Matrix4d M;
    M << -g.omega_tilde[kX1], g.G_mech[0], -g.G_xy[0][0], g.G_xy[0][1],
         g.G_mech[0], -g.omega_tilde[kX2], g.G_xy[1][0], -g.G_xy[1][1],
         -g.G_xy[0][0], g.G_xy[1][0], -g.omega_tilde[kY1], g.G_mech[1],
         g.G_xy[0][1], -g.G_xy[1][1], g.G_mech[1], -g.omega_tilde[kY2];
    const auto Mlu = M.partialPivLu();

    for (int it = 0; it < max_iter; ++it) {
        // linear cavity solve at the current displacements
        const Eigen::Vector2d z = solve_z(g, Complex(v[0], v[1]));
        const Complex num =
            Complex(0.0, 1.0) * (std::conj(g.G[kX1]) * v[2] + std::conj(g.G[kX2]) * v[3] +
                                 std::conj(g.G[kY1]) * v[4] + std::conj(g.G[kY2]) * v[5]) +
            std::conj(g.G[kZ1]) * z[0] + std::conj(g.G[kZ2]) * z[1] +
            Complex(0.0, 1.0) * std::conj(g.Omega_tilde);
        const Complex a = num / (Complex(0.0, -g.Delta_tilde) - g.kappa);

        // linear mechanical solve at the new amplitude
        const double n_a = std::norm(a);
        Eigen::Vector4d b;
        b << g.G_ax[0] * n_a + 2.0 * std::real(g.G[kX1] * a) + g.R_x[0],
             g.G_ax[1] * n_a + 2.0 * std::real(g.G[kX2] * a) - g.R_x[1],
             g.G_ay[0] * n_a + 2.0 * std::real(g.G[kY1] * a) + g.R_y[0],
             g.G_ay[1] * n_a + 2.0 * std::real(g.G[kY2] * a) - g.R_y[1];
        const Eigen::Vector4d q = Mlu.solve(b);

        Eigen::Matrix<double, 6, 1> vn;
        vn << a.real(), a.imag(), q[0], q[1], q[2], q[3];
        const double rn = residual(g, vn).cwiseAbs().maxCoeff();
        v = vn;
        if (rn <= tol * scale) return pack_solution(g, v, it + 1);
    }
    throw NumericalError("steady-state fixed-point iteration did not converge");
}

Eigen::Matrix<double, kDim, kDim> build_drift_matrix(const GSet& g,
                                                     const SteadyState& ss,
                                                     bool as_printed) {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const Complex a = ss.a_ss;

    double Aj[2], Bj[2], Cj[2], Dj[2], Ej[2], Fj[2];
    for (int j = 0; j < 2; ++j) {
        const Complex Gpx = g.G[kX1 + j] * inv_sqrt2;
        const Complex Gpy = g.G[kY1 + j] * inv_sqrt2;
        const Complex Gpz = g.G[kZ1 + j] * inv_sqrt2;
        const double Gpax = g.G_ax[j] * inv_sqrt2;
        const double Gpay = g.G_ay[j] * inv_sqrt2;
        Aj[j] = std::imag(Gpax * a - Gpx);
        Bj[j] = std::real(Gpax * a + Gpx);
        Cj[j] = std::imag(Gpay * a - Gpy);
        Dj[j] = std::real(Gpay * a + Gpy);
        Ej[j] = std::imag(Gpz);
        Fj[j] = std::real(Gpz);
    }

    Eigen::Matrix<double, kDim, kDim> A = Eigen::Matrix<double, kDim, kDim>::Zero();

    // cavity block
    A(0, 0) = -g.kappa;
    A(0, 1) = g.Delta_tilde;
    A(1, 0) = -g.Delta_tilde;
    A(1, 1) = as_printed ? g.kappa : -g.kappa;

    // momentum rows: cavity columns and damping
    for (int j = 0; j < 2; ++j) {
        A(p_index(kX1 + j), 0) = -2.0 * Bj[j];
        A(p_index(kX1 + j), 1) = -2.0 * Aj[j];
        A(p_index(kY1 + j), 0) = -2.0 * Dj[j];
        A(p_index(kY1 + j), 1) = -2.0 * Cj[j];
        A(p_index(kZ1 + j), 0) = 2.0 * Ej[j];
        A(p_index(kZ1 + j), 1) = 2.0 * Fj[j];
    }
    for (int m = 0; m < 6; ++m) A(p_index(m), p_index(m)) = -g.gamma[m];

    // cavity rows: position columns
    A(0, q_index(kX1)) = 2.0 * Aj[0];
    A(0, q_index(kX2)) = 2.0 * Aj[1];
    A(0, q_index(kY1)) = 2.0 * Cj[0];
    A(0, q_index(kY2)) = 2.0 * Cj[1];
    // the as-printed variant carries +2F_1 here; the Hamiltonian-consistent
    // entry is -2F_1, matching the -2F_2 beside it
    A(0, q_index(kZ1)) = as_printed ? 2.0 * Fj[0] : -2.0 * Fj[0];
    A(0, q_index(kZ2)) = -2.0 * Fj[1];
    A(1, q_index(kX1)) = -2.0 * Bj[0];
    A(1, q_index(kX2)) = -2.0 * Bj[1];
    A(1, q_index(kY1)) = -2.0 * Dj[0];
    A(1, q_index(kY2)) = -2.0 * Dj[1];
    A(1, q_index(kZ1)) = 2.0 * Ej[0];
    A(1, q_index(kZ2)) = 2.0 * Ej[1];

    // momentum rows: position columns
    A(p_index(kX1), q_index(kX1)) = -g.omega_tilde[kX1];
    A(p_index(kX1), q_index(kX2)) = g.G_mech[0];
    A(p_index(kX1), q_index(kY1)) = -g.G_xy[0][0];
    A(p_index(kX1), q_index(kY2)) = g.G_xy[0][1];
    A(p_index(kX2), q_index(kX1)) = g.G_mech[0];
    A(p_index(kX2), q_index(kX2)) = -g.omega_tilde[kX2];
    A(p_index(kX2), q_index(kY1)) = g.G_xy[1][0];
    A(p_index(kX2), q_index(kY2)) = -g.G_xy[1][1];
    A(p_index(kY1), q_index(kX1)) = -g.G_xy[0][0];
    A(p_index(kY1), q_index(kX2)) = g.G_xy[1][0];
    A(p_index(kY1), q_index(kY1)) = -g.omega_tilde[kY1];
    A(p_index(kY1), q_index(kY2)) = g.G_mech[1];
    A(p_index(kY2), q_index(kX1)) = g.G_xy[0][1];
    A(p_index(kY2), q_index(kX2)) = -g.G_xy[1][1];
    A(p_index(kY2), q_index(kY1)) = g.G_mech[1];
    A(p_index(kY2), q_index(kY2)) = -g.omega_tilde[kY2];
    A(p_index(kZ1), q_index(kZ1)) = -g.omega_tilde[kZ1];
    A(p_index(kZ1), q_index(kZ2)) = g.G_mech[2];
    A(p_index(kZ2), q_index(kZ1)) = g.G_mech[2];
    A(p_index(kZ2), q_index(kZ2)) = -g.omega_tilde[kZ2];

    // position rows: dq = omega_tilde * dp
    for (int m = 0; m < 6; ++m) A(q_index(m), p_index(m)) = g.omega_tilde[m];

    return A;
}

Eigen::Matrix<double, kDim, kDim> build_noise_matrix(const GSet& g) {
    Eigen::Matrix<double, kDim, kDim> Q = Eigen::Matrix<double, kDim, kDim>::Zero();
    Q(0, 0) = g.kappa;
    Q(1, 1) = g.kappa;
    for (int m = 0; m < 6; ++m)
        Q(p_index(m), p_index(m)) = g.gamma[m] * (2.0 * g.n_th[m] + 1.0);
    return Q;
}

StabilityVerdict check_stability(const Eigen::Ref<const Eigen::MatrixXd>& A) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(A, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success)
        throw NumericalError("eigensolver failed on drift matrix");
    const double abscissa = es.eigenvalues().real().maxCoeff();
    return {abscissa < 0.0, abscissa};
}

LinearizedSystem build_linearized_system(const GSet& g, const SteadyState& ss,
                                         bool as_printed) {
    LinearizedSystem sys{};
    sys.A = build_drift_matrix(g, ss, as_printed);
    sys.Q = build_noise_matrix(g);
    const StabilityVerdict v = check_stability(sys.A);
    sys.stable = v.stable;
    sys.spectral_abscissa = v.spectral_abscissa;
    return sys;
}

}  // namespace levicool
