#include "levicool/cooling.hpp"

#include <cmath>
#include <string>

#include <Eigen/Dense>

namespace levicool {

CovarianceMatrix solve_lyapunov(const Eigen::Matrix<double, kDim, kDim>& A,
                                const Eigen::Matrix<double, kDim, kDim>& Q) {
    const StabilityVerdict v = check_stability(A);
    if (!v.stable)
        throw NumericalError("drift matrix is not Hurwitz, no stationary state exists "
                             "(spectral abscissa " + std::to_string(v.spectral_abscissa) + ")");

    // vec(AV + VA^T) = (I (x) A + A (x) I) vec(V) = -vec(Q)
    constexpr int n = kDim;
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n * n, n * n);
    for (int bi = 0; bi < n; ++bi) {
        K.block(bi * n, bi * n, n, n) += A;  // I (x) A
        for (int bj = 0; bj < n; ++bj)       // A (x) I
            K.block(bi * n, bj * n, n, n).diagonal().array() += A(bi, bj);
    }

    Eigen::VectorXd q(n * n);
    for (int col = 0; col < n; ++col) q.segment(col * n, n) = -Q.col(col);
    const Eigen::VectorXd vvec = K.partialPivLu().solve(q);

    CovarianceMatrix cov{};
    for (int col = 0; col < n; ++col) cov.V.col(col) = vvec.segment(col * n, n);
    cov.V = 0.5 * (cov.V + cov.V.transpose()).eval();

    const double qmax = Q.cwiseAbs().maxCoeff();
    const double scale = qmax > 0.0 ? qmax : 1.0;
    cov.residual = (A * cov.V + cov.V * A.transpose() + Q).cwiseAbs().maxCoeff() / scale;
    if (!(cov.residual < 1e-8))
        throw NumericalError("Lyapunov solve residual too large: " +
                             std::to_string(cov.residual));
    return cov;
}

std::array<double, 6> phonon_numbers(const CovarianceMatrix& cov) {
    std::array<double, 6> n{};
    for (int m = 0; m < 6; ++m) {
        double nb = 0.5 * (cov.V(q_index(m), q_index(m)) +
                           cov.V(p_index(m), p_index(m)) - 1.0);
        if (nb < 0.0) {
            if (nb < -1e-9)
                throw NumericalError("negative phonon number " + std::to_string(nb) +
                                     " in mode " + std::to_string(m));
            nb = 0.0;
        }
        n[m] = nb;
    }
    return n;
}

CoolingResult cool(const Model& model, bool as_printed) {
    CoolingResult r{};
    r.g = model.g;
    r.steady_state = solve_steady_state(model.g);
    const LinearizedSystem sys = build_linearized_system(model.g, r.steady_state, as_printed);
    r.stable = sys.stable;
    r.spectral_abscissa = sys.spectral_abscissa;
    r.cov = solve_lyapunov(sys.A, sys.Q);
    r.n_bar = phonon_numbers(r.cov);
    return r;
}

CoolingResult cool(const PhysicalParameters& p, bool as_printed) {
    return cool(build_model(p), as_printed);
}

}  // namespace levicool
