#include "levicool/darkmodes.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace levicool {

ArrowheadSystem build_arrowhead(const GSet& g) {
    ArrowheadSystem s{};
    s.H_a = g.Delta_tilde;

    Eigen::Matrix<double, 6, 6>& H = s.H_b;
    H.setZero();
    for (int m = 0; m < 6; ++m) H(m, m) = g.omega_tilde[m];
    H(kX1, kX2) = -0.5 * g.G_mech[0];
    H(kY1, kY2) = -0.5 * g.G_mech[1];
    H(kZ1, kZ2) = -0.5 * g.G_mech[2];
    H(kX1, kY1) = 0.5 * g.G_xy[0][0];
    H(kX1, kY2) = -0.5 * g.G_xy[0][1];
    H(kX2, kY1) = -0.5 * g.G_xy[1][0];
    H(kX2, kY2) = 0.5 * g.G_xy[1][1];
    H = H.selfadjointView<Eigen::Upper>();

    // beam-splitter cavity couplings; the z modes enter with a 90 degree phase
    for (int j = 0; j < 2; ++j) {
        s.C_ab(0, kX1 + j) = g.G[kX1 + j] + Complex(g.G_ax[j], 0.0);
        s.C_ab(0, kY1 + j) = g.G[kY1 + j] + Complex(g.G_ay[j], 0.0);
        s.C_ab(0, kZ1 + j) = Complex(0.0, 1.0) * g.G[kZ1 + j];
    }
    return s;
}

DarkModeReport diagonalize_mech(const ArrowheadSystem& sys) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, 6, 6>> es(sys.H_b);
    if (es.info() != Eigen::Success)
        throw NumericalError("mechanical block diagonalization failed");

    Eigen::Matrix<double, 6, 6> P = es.eigenvectors();  // columns, ascending
    for (int c = 0; c < 6; ++c) {
        int imax = 0;
        P.col(c).cwiseAbs().maxCoeff(&imax);
        if (P(imax, c) < 0.0) P.col(c) = -P.col(c);
    }

    DarkModeReport r{};
    for (int i = 0; i < 6; ++i) r.normal_freqs[i] = es.eigenvalues()[i];
    r.U_b = P.transpose();
    r.C_AB = sys.C_ab * P;
    r.dark_count = 0;
    return r;
}

DarkModeReport detect_dark_modes(const GSet& g, double tol_coupling,
                                 double tol_degeneracy) {
    const ArrowheadSystem sys = build_arrowhead(g);
    DarkModeReport r = diagonalize_mech(sys);

    double cmax = 0.0;
    for (int s = 0; s < 6; ++s) cmax = std::max(cmax, std::abs(r.C_AB(0, s)));

    std::array<bool, 6> dark{};
    // rule 1: a normal mode with no residual cavity coupling is dark
    for (int s = 0; s < 6; ++s) {
        if (std::abs(r.C_AB(0, s)) < tol_coupling * cmax) {
            dark[s] = true;
            r.dark_indices.push_back(s);
            r.mechanisms.push_back("zero-coupling");
        }
    }

    // rule 2: l degenerate coupled modes hybridize into one bright and l-1 dark
    const double gap_tol = tol_degeneracy * g.omega_tilde[kX1];
    int s = 0;
    while (s < 6) {
        if (dark[s]) {
            ++s;
            continue;
        }
        std::vector<int> cluster{s};
        int t = s + 1;
        while (t < 6) {
            if (dark[t]) {
                ++t;
                continue;
            }
            if (r.normal_freqs[t] - r.normal_freqs[cluster.back()] < gap_tol)
                cluster.push_back(t);
            else
                break;
            ++t;
        }
        for (size_t i = 0; i + 1 < cluster.size(); ++i) {
            r.dark_indices.push_back(cluster[i]);
            r.mechanisms.push_back("degeneracy (l-1 rule)");
        }
        s = cluster.back() + 1;
    }

    r.dark_count = static_cast<int>(r.dark_indices.size());
    return r;
}

}  // namespace levicool
