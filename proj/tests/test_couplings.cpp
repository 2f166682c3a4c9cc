#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "levicool/constants.hpp"
#include "levicool/couplings.hpp"

using namespace levicool;
namespace kc = levicool::constants;

namespace {

PhysicalParameters work_point(double theta = kc::pi / 8.0, double DoL = 2.65) {
    PhysicalParameters p;
    p.W_t = 0.6e-6;
    p.A_x = 1.0;
    p.A_y = 0.9;
    p.theta = theta;
    p.D = DoL * p.lambda_tw;
    p.x10 = -0.5 * p.D;
    p.x20 = 0.5 * p.D;
    p.kappa = 1e5;
    p.Delta_tilde = 3e5;
    p.gamma.fill(1e-3);
    p.n_th.fill(1e7);
    return p;
}

double max_abs_G(const GSet& g) {
    double m = 0.0;
    for (int i = 0; i < 6; ++i) m = std::max(m, std::abs(g.G[i]));
    return m;
}

}  // namespace

TEST_CASE("Green tensor is the transverse far-field projector") {
    const PhysicalParameters p = work_point();
    const DerivedConstants c = derive_constants(p);
    const Eigen::Vector3d R0(p.D, 0.0, 0.0);
    const GreensTensor g = greens_far_field(R0, c.k_tw, c);

    // transversality: the dyadic annihilates the separation direction
    CHECK((g.tensor * R0).norm() < 1e-12 * g.tensor.norm() * R0.norm());
    // symmetry
    CHECK((g.tensor - g.tensor.transpose()).norm() < 1e-15 * g.tensor.norm());
    // magnitude equals eta_f(k) on the transverse components
    CHECK(std::abs(g.tensor(1, 1)) ==
          doctest::Approx(c.alpha_pol * c.k_tw * c.k_tw / (4.0 * kc::pi * kc::eps0 * p.D))
              .epsilon(1e-12));
}

TEST_CASE("coherent-scattering couplings against directly keyed formulas") {
    const PhysicalParameters p = work_point();
    const DerivedConstants c = derive_constants(p);
    const CoherentScatteringCouplings cs = coherent_scattering_couplings(p, c);

    const double th = p.theta;
    for (int j = 0; j < 2; ++j) {
        const double e = j == 0 ? c.eps_tw1 : c.eps_tw2;
        const double ph = c.k * (j == 0 ? p.x10 : p.x20);
        const double pref = c.alpha_pol * c.eps_cav * e / (2.0 * kc::hbar);
        CHECK(cs.Omega[j] ==
              doctest::Approx(-pref * std::cos(th) * std::cos(ph)).epsilon(1e-13));
        CHECK(cs.g_x[j] ==
              doctest::Approx(pref * c.k * std::cos(th) * std::cos(th) * std::sin(ph))
                  .epsilon(1e-13));
        CHECK(cs.g_y[j] ==
              doctest::Approx(pref * c.k * std::sin(2.0 * th) * std::sin(ph) / 2.0)
                  .epsilon(1e-13));
        CHECK(cs.g_z[j] ==
              doctest::Approx(-pref * c.k_tw * std::cos(th) * std::cos(ph))
                  .epsilon(1e-13));
    }
}

TEST_CASE("tweezer binding coefficients at theta = 0 collapse to axial forms") {
    PhysicalParameters p = work_point(0.0);
    const DerivedConstants c = derive_constants(p);
    const TweezerBinding tw = tweezer_binding(p, c);

    const double P = c.alpha_pol * c.eta_f_tw * c.eps_tw1 * c.eps_tw2;
    const double cD = std::cos(c.k_tw * p.D), sD = std::sin(c.k_tw * p.D);
    const double D = p.D, kt = c.k_tw;

    CHECK(tw.R_alpha ==
          doctest::Approx(P * (cD / D + kt * sD) / kc::hbar).epsilon(1e-12));
    CHECK(tw.R_beta == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(tw.k_x ==
          doctest::Approx(P * (kt * kt * cD + cD * (-3.0 + 1.0) / (D * D) +
                               kt * sD * (-3.0 + 1.0) / D))
              .epsilon(1e-12));
    CHECK(tw.k_y ==
          doctest::Approx(P * (cD * 3.0 / (D * D) + kt * sD / D)).epsilon(1e-12));
    CHECK(tw.k_z ==
          doctest::Approx(P * (kt * kt * cD + kt * sD / D + cD / (D * D)))
              .epsilon(1e-12));
    CHECK(tw.k_xy == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(tw.v_x == doctest::Approx(P * cD / (p.W_t * p.W_t)).epsilon(1e-12));
    CHECK(tw.v_z == doctest::Approx(P * cD / (2.0 * c.z_R * c.z_R)).epsilon(1e-12));
}

TEST_CASE("coupling magnitudes vanish at the polarization nodes") {
    for (double th : {kc::pi / 2.0, 1.5 * kc::pi}) {
        const Model m = build_model(work_point(th));
        const double w1x = m.g.omega_tilde[kX1];
        for (int i = 0; i < 6; ++i) CHECK(std::abs(m.g.G[i]) < 1e-12 * w1x);
        // the drive picks up cos(theta) dust from the finite representation of
        // pi/2, so it only vanishes to roundoff in the prefactors
        CHECK(std::abs(m.g.Omega_tilde) < 1e-8 * w1x);
    }
    for (double th : {0.0, kc::pi}) {
        const Model m = build_model(work_point(th));
        const double w1x = m.g.omega_tilde[kX1];
        CHECK(std::abs(m.g.G[kY1]) < 1e-12 * w1x);
        CHECK(std::abs(m.g.G[kY2]) < 1e-12 * w1x);
        CHECK(std::abs(m.g.G[kX1]) > 1e-3 * w1x);
    }
}

TEST_CASE("coupling magnitudes are pi-periodic in theta") {
    for (double th : {0.1, 0.4, 1.1, 2.0}) {
        const Model a = build_model(work_point(th));
        const Model b = build_model(work_point(th + kc::pi));
        const double scale = max_abs_G(a.g);
        for (int i = 0; i < 6; ++i)
            CHECK(std::abs(std::abs(a.g.G[i]) - std::abs(b.g.G[i])) < 1e-10 * scale);
        for (int i = 0; i < 6; ++i)
            CHECK(a.g.omega_tilde[i] ==
                  doctest::Approx(b.g.omega_tilde[i]).epsilon(1e-12));
    }
}

TEST_CASE("composite assembly identities") {
    const PhysicalParameters p = work_point();
    const Model m = build_model(p);
    const EffectiveModel& em = m.em;
    const DerivedConstants& c = m.c;

    CHECK(em.Omega_tilde ==
          em.cs.Omega[0] + em.cs.Omega[1] + em.twg.Omega_alpha + em.cavg.Omega_beta);
    CHECK(em.R_tilde_x == em.tw.R_alpha + em.cav.g_alpha / 2.0);
    CHECK(em.R_tilde_y == em.tw.R_beta + em.cav.g_beta / 2.0);
    for (int j = 0; j < 2; ++j) {
        CHECK(em.g_tilde_x[j] == em.cs.g_x[j] + em.twg.g_ax[j] + em.cavg.g_bx[j]);
        const double sign = j == 0 ? 1.0 : -1.0;
        CHECK(em.g_tilde_ax[j] ==
              doctest::Approx(em.self.g_ax[j] + sign * em.cav.g_alpha).epsilon(1e-14));
        CHECK(em.g_tilde_ay[j] ==
              doctest::Approx(em.self.g_ay[j] + sign * em.cav.g_beta).epsilon(1e-14));
    }

    // effective frequencies from the binding shifts
    for (int j = 0; j < 2; ++j)
        for (int mu = 0; mu < 3; ++mu) {
            const double w2 = em.omega_bare[j][mu] * em.omega_bare[j][mu] +
                              2.0 * em.v[mu] / c.m + em.k_bind[mu] / c.m;
            CHECK(em.omega_tilde[j][mu] == doctest::Approx(std::sqrt(w2)).epsilon(1e-13));
        }

    // dimensionless set: zero-point scaling
    for (int mm = 0; mm < 6; ++mm) {
        CHECK(m.g.omega_tilde[mm] == em.omega_tilde[mm % 2][mm / 2]);
        CHECK(m.g.zpf[mm] ==
              doctest::Approx(std::sqrt(kc::hbar / (2.0 * c.m * m.g.omega_tilde[mm])))
                  .epsilon(1e-14));
    }
    for (int mu = 0; mu < 3; ++mu)
        CHECK(m.g.G_mech[mu] ==
              doctest::Approx(2.0 * em.k_bind[mu] * m.g.zpf[2 * mu] *
                              m.g.zpf[2 * mu + 1] / kc::hbar)
                  .epsilon(1e-14));
    for (int j = 0; j < 2; ++j)
        for (int jp = 0; jp < 2; ++jp)
            CHECK(m.g.G_xy[j][jp] ==
                  doctest::Approx(2.0 * em.k_xy * m.g.zpf[kX1 + j] *
                                  m.g.zpf[kY1 + jp] / kc::hbar)
                      .epsilon(1e-14));
}

TEST_CASE("standing-wave phase convention places the G_x zero at D = 3 lambda") {
    // at integer D/lambda both foci sit where sin(k x_j0) = 0
    const Model m3 = build_model(work_point(kc::pi / 8.0, 3.0));
    const double w1x = m3.g.omega_tilde[kX1];
    CHECK(std::abs(m3.g.G[kX1]) < 1e-3 * w1x);
    CHECK(std::abs(m3.g.G[kZ1]) > 0.05 * w1x);

    const Model m25 = build_model(work_point(kc::pi / 8.0, 2.5));
    CHECK(std::abs(m25.g.G[kX1]) > 0.05 * m25.g.omega_tilde[kX1]);
}

TEST_CASE("build_model normalizes theta and validates") {
    PhysicalParameters p = work_point(-kc::pi / 8.0);
    const Model m = build_model(p);
    CHECK(m.p.theta == doctest::Approx(2.0 * kc::pi - kc::pi / 8.0));

    p.r0 = 0.0;
    CHECK_THROWS_AS(build_model(p), ParameterError);
}
