#include "levicool/couplings.hpp"

#include <cmath>

#include "levicool/constants.hpp"

namespace levicool {

using namespace constants;

namespace {

// Standing-wave phase of particle j at its focal position. The focal offsets
// are cavity-frame coordinates, so only the cavity-axis component enters.
double cavity_phase(const PhysicalParameters& p, const DerivedConstants& c, int j) {
    return c.k * (j == 0 ? p.x10 : p.x20);
}

}  // namespace

GreensTensor greens_far_field(const Eigen::Vector3d& R0, double k0,
                              const DerivedConstants& c) {
    const double r = R0.norm();
    if (!(r > 0.0)) throw ParameterError("Green tensor requires nonzero separation");
    GreensTensor g{};
    g.k0 = k0;
    g.R0 = R0;
    // e^{ik0 r} * eta_f(k0) * (r^2 delta_uv - u v)/r^2, with eta_f at separation r
    const double eta = c.alpha_pol * k0 * k0 / (4.0 * pi * eps0 * r);
    const Complex pref = std::exp(Complex(0.0, k0 * r)) * eta;
    Eigen::Matrix3d proj = Eigen::Matrix3d::Identity() - (R0 * R0.transpose()) / (r * r);
    g.tensor = pref * proj;
    return g;
}

CavitySelfCouplings cavity_self_couplings(const PhysicalParameters& p,
                                          const DerivedConstants& c) {
    CavitySelfCouplings out{};
    const double pref = c.alpha_pol * c.eps_cav * c.eps_cav / hbar;
    for (int j = 0; j < 2; ++j) {
        const double ph = cavity_phase(p, c, j);
        out.omega_sh[j] = -pref * std::cos(ph) * std::cos(ph);
        out.g_ax[j] = pref * c.k * std::cos(p.theta) * std::sin(2.0 * ph);
        out.g_ay[j] = pref * c.k * std::sin(p.theta) * std::sin(2.0 * ph);
    }
    return out;
}

CoherentScatteringCouplings coherent_scattering_couplings(const PhysicalParameters& p,
                                                          const DerivedConstants& c) {
    CoherentScatteringCouplings out{};
    const double th = p.theta;
    for (int j = 0; j < 2; ++j) {
        const double pref = c.alpha_pol * c.eps_cav * c.eps_tw(j) / (2.0 * hbar);
        const double ph = cavity_phase(p, c, j);
        out.Omega[j] = -pref * std::cos(th) * std::cos(ph);
        out.g_x[j] = pref * c.k * std::cos(th) * std::cos(th) * std::sin(ph);
        out.g_y[j] = pref * c.k * std::sin(2.0 * th) * std::sin(ph) / 2.0;
        out.g_z[j] = -pref * c.k_tw * std::cos(th) * std::cos(ph);
    }
    return out;
}

TweezerBinding tweezer_binding(const PhysicalParameters& p,
                               const DerivedConstants& c) {
    TweezerBinding out{};
    const double P = c.alpha_pol * c.eta_f_tw * c.eps_tw1 * c.eps_tw2;
    const double D = p.D, kt = c.k_tw;
    const double s = std::sin(p.theta), co = std::cos(p.theta);
    const double s2 = s * s, c2 = co * co, s4 = s2 * s2, c4 = c2 * c2;
    const double cD = std::cos(kt * D), sD = std::sin(kt * D);

    out.R_alpha = P * (cD * c2 * co / D + kt * sD * c2 * co - 2.0 * co * s2 * cD / D) / hbar;
    // second term keeps the printed sin(kD) with the cavity wave number
    out.R_beta = P * (cD * (2.0 * s2 * s - 2.0 * s) / D +
                      kt * std::sin(c.k * D) * c2 * s + c2 * s * cD / D) / hbar;

    out.v_x = P * c2 * cD / (p.A_x * p.W_t * p.A_x * p.W_t);
    out.v_y = P * c2 * cD / (p.A_y * p.W_t * p.A_y * p.W_t);
    out.v_z = P * c2 * cD / (2.0 * c.z_R * c.z_R);

    out.k_x = P * (kt * kt * cD * c4 +
                   cD * (12.0 * c2 * s2 - 2.0 * s2 - 3.0 * c4 + c2) / (D * D) +
                   kt * sD * (4.0 * c2 * s2 - 3.0 * c4 + c2) / D);
    out.k_y = P * (cD * (12.0 * s4 - 14.0 * s2 - 3.0 * c2 * s2 + c2 + 2.0) / (D * D) +
                   kt * sD * (4.0 * s4 - 4.0 * s2 - 3.0 * s2 * c2 + c2) / D +
                   kt * kt * cD * s2 * c2);
    out.k_z = P * (kt * kt * cD * c2 + kt * sD * c2 / D +
                   cD * c2 / (D * D) + 2.0 * s2 * cD / (D * D));
    out.k_xy = P * (cD * (-5.0 * co * s2 * s + 3.0 * s * co - 3.0 * c2 * co * s) / (D * D) +
                    kt * sD * (4.0 * co * s2 * s - 3.0 * c2 * co * s - 2.0 * s * co) / D +
                    kt * kt * cD * co * s);
    return out;
}

CavityBinding cavity_binding(const PhysicalParameters& p,
                             const DerivedConstants& c) {
    CavityBinding out{};
    const double D = p.D, k = c.k;
    const double cD = std::cos(k * D), sD = std::sin(k * D);
    const double ch = std::cos(k * D / 2.0);
    const double pref = 4.0 * c.alpha_pol * c.eps_cav * c.eps_cav * c.eta_f_cav;
    out.shift = -pref * cD * ch * ch;
    out.g_alpha = pref * ((cD / D + k * sD) * std::cos(p.theta) * ch * ch +
                          k * std::cos(p.theta) * cD * sD / 2.0) / hbar;
    out.g_beta = pref * ((cD / D + k * sD) * ch * ch + k * cD * sD / 2.0) *
                 std::sin(p.theta) / hbar;
    return out;
}

TwGcavCouplings tw_gcav_couplings(const PhysicalParameters& p,
                                  const DerivedConstants& c) {
    TwGcavCouplings out{};
    const double D = p.D, k = c.k;
    const double cD = std::cos(k * D), sD = std::sin(k * D);
    const double ch = std::cos(k * D / 2.0), sh = std::sin(k * D / 2.0);
    const double co = std::cos(p.theta), si = std::sin(p.theta);
    const double esum = c.eps_tw1 + c.eps_tw2;
    const double pref = c.alpha_pol * c.eps_cav * c.eta_f_cav / (2.0 * hbar);

    out.Omega_alpha = -pref * esum * co * cD * ch;

    // the 1/D term is printed with cos(2 theta), which would leave a residual
    // x coupling at theta = pi/2 where every coherent-scattering channel shuts
    // off; cos^2 matches the stated zeros and agrees at theta = 0
    const double x_common = esum * cD * ch * co * co / D +
                            esum * k * sD * ch * co * co;
    out.g_ax[0] = pref * (x_common + c.eps_tw2 * cD * k * sh * co * co);
    out.g_ax[1] = -pref * (x_common + c.eps_tw1 * cD * k * sh * co * co);

    const double y_common = esum * cD * ch * std::sin(2.0 * p.theta) / D +
                            esum * k * sD * ch * co * si;
    out.g_ay[0] = pref * (y_common + c.eps_tw2 * cD * k * sh * co * si);
    out.g_ay[1] = -pref * (y_common + c.eps_tw1 * cD * k * sh * co * si);

    for (int j = 0; j < 2; ++j)
        out.g_az[j] = -pref * c.eps_tw(j) * c.k_tw * cD * ch * co;
    return out;
}

CavGtwCouplings cav_gtw_couplings(const PhysicalParameters& p,
                                  const DerivedConstants& c) {
    CavGtwCouplings out{};
    const double D = p.D, k = c.k, kt = c.k_tw;
    const double ch = std::cos(k * D / 2.0), sh = std::sin(k * D / 2.0);
    const double co = std::cos(p.theta), si = std::sin(p.theta);
    const double esum = c.eps_tw1 + c.eps_tw2;
    const Complex phase = std::exp(Complex(0.0, -kt * D));
    const double pref_tw = c.alpha_pol * c.eps_cav * c.eta_f_tw / (2.0 * hbar);

    out.Omega_beta = -pref_tw * esum * co * ch * phase;

    const Complex x_common = esum * co * co * ch / D +
                             Complex(0.0, kt) * esum * co * co * ch;
    out.g_bx[0] = pref_tw * (x_common + c.eps_tw2 * k * co * co * sh) * phase;
    out.g_bx[1] = -pref_tw * (x_common + c.eps_tw1 * k * co * co * sh) * phase;

    const Complex y_common = 2.0 * esum * si * co * ch / D +
                             Complex(0.0, kt) * esum * si * co * ch;
    out.g_by[0] = pref_tw * (y_common + c.eps_tw2 * k * si * co * sh) * phase;
    out.g_by[1] = -pref_tw * (y_common + c.eps_tw1 * k * si * co * sh) * phase;

    // the z components carry the cavity far-field constant
    const double pref_cav = c.alpha_pol * c.eps_cav * c.eta_f_cav / (2.0 * hbar);
    for (int j = 0; j < 2; ++j)
        out.g_bz[j] = -pref_cav * c.eps_tw(j) * kt * co * ch * phase;
    return out;
}

EffectiveModel assemble_effective(const PhysicalParameters& p,
                                  const DerivedConstants& c) {
    EffectiveModel em{};
    em.self = cavity_self_couplings(p, c);
    em.cs = coherent_scattering_couplings(p, c);
    em.tw = tweezer_binding(p, c);
    em.cav = cavity_binding(p, c);
    em.twg = tw_gcav_couplings(p, c);
    em.cavg = cav_gtw_couplings(p, c);

    em.omega_bare = trap_frequencies(p, c).omega;
    const double kb[3] = {em.tw.k_x, em.tw.k_y, em.tw.k_z};
    const double vv[3] = {em.tw.v_x, em.tw.v_y, em.tw.v_z};
    for (int j = 0; j < 2; ++j) {
        for (int mu = 0; mu < 3; ++mu) {
            const double w2 = em.omega_bare[j][mu] * em.omega_bare[j][mu] +
                              2.0 * vv[mu] / c.m + kb[mu] / c.m;
            if (!(w2 > 0.0))
                throw ParameterError("trap destabilized by binding terms");
            em.omega_tilde[j][mu] = std::sqrt(w2);
        }
    }
    em.k_bind[0] = kb[0];
    em.k_bind[1] = kb[1];
    em.k_bind[2] = kb[2];
    em.v[0] = vv[0];
    em.v[1] = vv[1];
    em.v[2] = vv[2];
    em.k_xy = em.tw.k_xy;

    em.Omega_tilde = em.cs.Omega[0] + em.cs.Omega[1] + em.twg.Omega_alpha +
                     em.cavg.Omega_beta;
    em.R_tilde_x = em.tw.R_alpha + em.cav.g_alpha / 2.0;
    em.R_tilde_y = em.tw.R_beta + em.cav.g_beta / 2.0;

    for (int j = 0; j < 2; ++j) {
        em.g_tilde_x[j] = em.cs.g_x[j] + em.twg.g_ax[j] + em.cavg.g_bx[j];
        em.g_tilde_y[j] = em.cs.g_y[j] + em.twg.g_ay[j] + em.cavg.g_by[j];
        em.g_tilde_z[j] = em.cs.g_z[j] + em.twg.g_az[j] + em.cavg.g_bz[j];
        const double sign = (j == 0) ? 1.0 : -1.0;  // -(-1)^j
        em.g_tilde_ax[j] = em.self.g_ax[j] + sign * em.cav.g_alpha;
        em.g_tilde_ay[j] = em.self.g_ay[j] + sign * em.cav.g_beta;
    }

    em.delta_shift = em.self.omega_sh[0] + em.self.omega_sh[1] + em.cav.shift / hbar;
    return em;
}

GSet dimensionless_couplings(const EffectiveModel& em, const PhysicalParameters& p,
                             const DerivedConstants& c) {
    GSet g{};
    const double sqrt2 = std::sqrt(2.0);
    // MechMode order x1,x2,y1,y2,z1,z2 maps to axis = mode/2, particle = mode%2
    for (int m = 0; m < 6; ++m) {
        const int axis = m / 2, j = m % 2;
        g.omega_tilde[m] = em.omega_tilde[j][axis];
        g.zpf[m] = std::sqrt(hbar / (2.0 * c.m * g.omega_tilde[m]));
    }
    for (int j = 0; j < 2; ++j) {
        g.G[kX1 + j] = sqrt2 * em.g_tilde_x[j] * g.zpf[kX1 + j];
        g.G[kY1 + j] = sqrt2 * em.g_tilde_y[j] * g.zpf[kY1 + j];
        g.G[kZ1 + j] = sqrt2 * em.g_tilde_z[j] * g.zpf[kZ1 + j];
        g.G_ax[j] = sqrt2 * em.g_tilde_ax[j] * g.zpf[kX1 + j];
        g.G_ay[j] = sqrt2 * em.g_tilde_ay[j] * g.zpf[kY1 + j];
        g.R_x[j] = sqrt2 * em.R_tilde_x * g.zpf[kX1 + j];
        g.R_y[j] = sqrt2 * em.R_tilde_y * g.zpf[kY1 + j];
    }
    for (int mu = 0; mu < 3; ++mu)
        g.G_mech[mu] = 2.0 * em.k_bind[mu] * g.zpf[2 * mu] * g.zpf[2 * mu + 1] / hbar;
    for (int j = 0; j < 2; ++j)
        for (int jp = 0; jp < 2; ++jp)
            g.G_xy[j][jp] = 2.0 * em.k_xy * g.zpf[kX1 + j] * g.zpf[kY1 + jp] / hbar;

    g.Omega_tilde = em.Omega_tilde;
    g.Delta_tilde = p.Delta_tilde;
    g.kappa = p.kappa;
    g.gamma = p.gamma;
    g.n_th = p.n_th;
    return g;
}

Model build_model(const PhysicalParameters& p) {
    Model m;
    m.p = p;
    m.p.theta = normalize_angle(p.theta);
    m.p.validate();
    m.c = derive_constants(m.p);
    m.em = assemble_effective(m.p, m.c);
    m.g = dimensionless_couplings(m.em, m.p, m.c);
    return m;
}

}  // namespace levicool
