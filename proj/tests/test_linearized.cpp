#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "levicool/constants.hpp"
#include "levicool/linearized_system.hpp"

using namespace levicool;
namespace kc = levicool::constants;

namespace {

PhysicalParameters work_point(double theta = kc::pi / 8.0) {
    PhysicalParameters p;
    p.W_t = 0.6e-6;
    p.A_x = 1.0;
    p.A_y = 0.9;
    p.theta = theta;
    p.D = 2.65 * p.lambda_tw;
    p.x10 = -0.5 * p.D;
    p.x20 = 0.5 * p.D;
    const double w_ref = 2.0 * kc::pi * 400e3;
    p.kappa = 0.2 * w_ref;
    p.Delta_tilde = 0.7 * w_ref;
    p.gamma.fill(0.5e-9 * w_ref);
    p.n_th.fill(1e7);
    return p;
}

GSet decoupled_gset() {
    GSet g{};
    for (int m = 0; m < 6; ++m) {
        g.omega_tilde[m] = 1.0 + 0.1 * m;
        g.zpf[m] = 1e-10;
        g.gamma[m] = 1e-6;
        g.n_th[m] = 100.0;
    }
    g.Omega_tilde = Complex(2.0, 1.0);
    g.Delta_tilde = 0.9;
    g.kappa = 0.25;
    return g;
}

}  // namespace

TEST_CASE("decoupled steady state is the driven-cavity closed form") {
    const GSet g = decoupled_gset();
    const SteadyState ss = solve_steady_state(g);
    const Complex expect =
        Complex(0.0, -1.0) * std::conj(g.Omega_tilde) / Complex(g.kappa, g.Delta_tilde);
    CHECK(std::abs(ss.a_ss - expect) < 1e-12 * std::abs(expect));
    for (double q : ss.mu_ss) CHECK(q == 0.0);
    CHECK(ss.residual_norm < 1e-12);
}

TEST_CASE("Newton converges at the paper work point with tiny residual") {
    const Model m = build_model(work_point());
    const SteadyState ss = solve_steady_state(m.g);
    CHECK(ss.residual_norm < 1e-10);
    CHECK(ss.iterations < 30);
    CHECK(std::isfinite(ss.a_ss.real()));
    CHECK(!ss.displacement_warning);
}

TEST_CASE("Newton and fixed-point solvers agree") {
    const Model m = build_model(work_point());
    const SteadyState a = solve_steady_state(m.g);
    const SteadyState b = solve_steady_state_fixed_point(m.g);
    const double scale = std::abs(a.a_ss) + 1.0;
    CHECK(std::abs(a.a_ss - b.a_ss) < 1e-8 * scale);
    for (int i = 0; i < 6; ++i) {
        const double s = std::abs(a.mu_ss[i]) + std::abs(a.a_ss);
        CHECK(std::abs(a.mu_ss[i] - b.mu_ss[i]) < 1e-8 * s);
    }
}

TEST_CASE("z displacements satisfy the eliminated linear equations") {
    const Model m = build_model(work_point());
    const GSet& g = m.g;
    const SteadyState ss = solve_steady_state(g);
    const double r1 = g.omega_tilde[kZ1] * ss.mu_ss[kZ1] - g.G_mech[2] * ss.mu_ss[kZ2] -
                      2.0 * std::imag(g.G[kZ1] * ss.a_ss);
    const double r2 = g.omega_tilde[kZ2] * ss.mu_ss[kZ2] - g.G_mech[2] * ss.mu_ss[kZ1] -
                      2.0 * std::imag(g.G[kZ2] * ss.a_ss);
    const double scale = std::abs(g.omega_tilde[kZ1] * ss.mu_ss[kZ1]) + 1e-300;
    CHECK(std::abs(r1) < 1e-10 * scale);
    CHECK(std::abs(r2) < 1e-10 * scale);
}

TEST_CASE("drift matrix block structure") {
    const Model m = build_model(work_point());
    const SteadyState ss = solve_steady_state(m.g);
    const auto A = build_drift_matrix(m.g, ss);

    // cavity damping in both quadratures
    CHECK(A(0, 0) == -m.g.kappa);
    CHECK(A(1, 1) == -m.g.kappa);
    CHECK(A(0, 1) == m.g.Delta_tilde);
    CHECK(A(1, 0) == -m.g.Delta_tilde);

    // position rows only couple to their own momentum
    for (int mm = 0; mm < 6; ++mm) {
        for (int col = 0; col < kDim; ++col) {
            if (col == p_index(mm))
                CHECK(A(q_index(mm), col) == m.g.omega_tilde[mm]);
            else
                CHECK(A(q_index(mm), col) == 0.0);
        }
        CHECK(A(p_index(mm), p_index(mm)) == -m.g.gamma[mm]);
    }

    // z sector has no x/y cross terms
    for (int zr : {p_index(kZ1), p_index(kZ2)})
        for (int mm : {kX1, kX2, kY1, kY2}) CHECK(A(zr, q_index(mm)) == 0.0);

    // as-printed toggles exactly the two documented entries
    const auto Ap = build_drift_matrix(m.g, ss, true);
    Eigen::Matrix<double, kDim, kDim> diff = Ap - A;
    CHECK(diff(1, 1) == doctest::Approx(2.0 * m.g.kappa));
    CHECK(diff(0, q_index(kZ1)) == doctest::Approx(-2.0 * (A(0, q_index(kZ1)))).epsilon(1e-12));
    diff(1, 1) = 0.0;
    diff(0, q_index(kZ1)) = 0.0;
    CHECK(diff.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("noise matrix is the diagonal input-noise correlator") {
    const Model m = build_model(work_point());
    const auto Q = build_noise_matrix(m.g);
    CHECK(Q(0, 0) == m.g.kappa);
    CHECK(Q(1, 1) == m.g.kappa);
    for (int mm = 0; mm < 6; ++mm) {
        CHECK(Q(p_index(mm), p_index(mm)) ==
              doctest::Approx(m.g.gamma[mm] * (2.0 * m.g.n_th[mm] + 1.0)));
        CHECK(Q(q_index(mm), q_index(mm)) == 0.0);
    }
    CHECK(Q.cwiseAbs().sum() == doctest::Approx(Q.diagonal().cwiseAbs().sum()));
}

TEST_CASE("stability detection") {
    Eigen::MatrixXd A = -Eigen::MatrixXd::Identity(4, 4);
    StabilityVerdict v = check_stability(A);
    CHECK(v.stable);
    CHECK(v.spectral_abscissa == doctest::Approx(-1.0));

    A(2, 2) = 0.5;
    v = check_stability(A);
    CHECK(!v.stable);
    CHECK(v.spectral_abscissa == doctest::Approx(0.5));

    const Model m = build_model(work_point());
    const SteadyState ss = solve_steady_state(m.g);
    const LinearizedSystem sys = build_linearized_system(m.g, ss);
    CHECK(sys.stable);
    CHECK(sys.spectral_abscissa < 0.0);
}

TEST_CASE("drift matrix is symplectically consistent with the linearized Hamiltonian") {
    std::mt19937 rng(20240811);
    for (int draw = 0; draw < 25; ++draw) {
        const GSet g = testutil::random_gset(rng);
        SteadyState ss{};
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        ss.a_ss = Complex(u(rng), u(rng));

        const auto A = build_drift_matrix(g, ss);
        Eigen::Matrix<double, kDim, kDim> A_ham = testutil::hamiltonian_drift(g, ss.a_ss);
        A_ham(0, 0) += -g.kappa;
        A_ham(1, 1) += -g.kappa;
        for (int mm = 0; mm < 6; ++mm) A_ham(p_index(mm), p_index(mm)) += -g.gamma[mm];

        const double scale = A.cwiseAbs().maxCoeff();
        CHECK((A - A_ham).cwiseAbs().maxCoeff() < 1e-9 * scale);
    }
}
