#include "levicool/physics_params.hpp"

#include <cmath>

#include "levicool/constants.hpp"

namespace levicool {

using namespace constants;

double normalize_angle(double theta) {
    double t = std::fmod(theta, 2.0 * pi);
    if (t < 0.0) t += 2.0 * pi;
    return t;
}

void PhysicalParameters::validate() const {
    if (!(r0 > 0.0)) throw ParameterError("particle radius must be positive");
    if (!(rho > 0.0)) throw ParameterError("density must be positive");
    if (!(eps_r > 1.0)) throw ParameterError("relative dielectric constant must exceed 1");
    if (P_tw1 < 0.0 || P_tw2 < 0.0) throw ParameterError("tweezer powers must be non-negative");
    if (!(W_t > 0.0)) throw ParameterError("tweezer waist must be positive");
    if (!(A_x > 0.0) || !(A_y > 0.0)) throw ParameterError("waist scaling factors must be positive");
    if (!(lambda_tw > 0.0)) throw ParameterError("wavelength must be positive");
    if (!(L_cav > 0.0) || !(w_cav > 0.0)) throw ParameterError("cavity geometry must be positive");
    if (!(D > 0.0)) throw ParameterError("particle separation must be positive");
    if (!(kappa > 0.0)) throw ParameterError("cavity linewidth must be positive");
    for (double g : gamma)
        if (!(g > 0.0)) throw ParameterError("mechanical damping rates must be positive");
    for (double n : n_th)
        if (n < 0.0) throw ParameterError("bath occupations must be non-negative");
}

DerivedConstants derive_constants(const PhysicalParameters& p) {
    if (!(p.r0 > 0.0)) throw ParameterError("particle radius must be positive");
    if (!(p.W_t > 0.0)) throw ParameterError("tweezer waist must be positive");
    if (!(p.D > 0.0)) throw ParameterError("particle separation must be positive");
    if (p.P_tw1 < 0.0 || p.P_tw2 < 0.0) throw ParameterError("tweezer powers must be non-negative");

    DerivedConstants c{};
    c.V_np = 4.0 * pi * p.r0 * p.r0 * p.r0 / 3.0;
    c.alpha_pol = eps0 * 3.0 * (p.eps_r - 1.0) / (p.eps_r + 2.0) * c.V_np;
    c.m = p.rho * c.V_np;

    c.k_tw = 2.0 * pi / p.lambda_tw;
    c.omega_tw = c_light * c.k_tw;
    // the laser-cavity detuning is ~1e6 rad/s against omega_tw ~ 2e15, so the
    // cavity wave number and mode frequency are evaluated at the tweezer laser
    c.k = c.k_tw;

    const double denom = pi * eps0 * c_light * p.W_t * p.W_t * p.A_x * p.A_y;
    c.eps_tw1 = std::sqrt(4.0 * p.P_tw1 / denom);
    c.eps_tw2 = std::sqrt(4.0 * p.P_tw2 / denom);

    c.z_R = pi * p.W_t * p.W_t / p.lambda_tw;

    c.V_cav = pi / 4.0 * p.w_cav * p.w_cav * p.L_cav;
    c.eps_cav = std::sqrt(hbar * c.omega_tw / (2.0 * eps0 * c.V_cav));

    c.eta_f_cav = c.alpha_pol * c.k * c.k / (4.0 * pi * eps0 * p.D);
    c.eta_f_tw = c.alpha_pol * c.k_tw * c.k_tw / (4.0 * pi * eps0 * p.D);
    return c;
}

TrapFrequencies trap_frequencies(const PhysicalParameters& p,
                                 const DerivedConstants& c) {
    TrapFrequencies f{};
    for (int j = 0; j < 2; ++j) {
        const double e = c.eps_tw(j);
        const double s = std::sqrt(c.alpha_pol * e * e / (2.0 * c.m * p.W_t * p.W_t));
        f.omega[j][0] = s * std::sqrt(2.0) / p.A_x;
        f.omega[j][1] = s * std::sqrt(2.0) / p.A_y;
        f.omega[j][2] = s * p.lambda_tw / (pi * p.W_t);
    }
    return f;
}

WaistCalibration calibrate_waists(const std::array<double, 3>& target,
                                  double P, const PhysicalParameters& p) {
    const double wx = target[0], wy = target[1], wz = target[2];
    if (!(wx > 0.0) || !(wy > 0.0) || !(wz > 0.0))
        throw ParameterError("calibration targets must be positive frequencies");
    if (!(P > 0.0)) throw ParameterError("calibration power must be positive");

    // With u = A_x*A_y and S = alpha*eps_tw^2/(2 m W_t^2):
    //   wx^2 = 2S/A_x^2, wy^2 = 2S/A_y^2, wz^2 = S lambda^2/(pi W_t)^2,
    //   S = C/(W_t^4 u) with C = 2 P alpha/(m pi eps0 c).
    const double V_np = 4.0 * pi * p.r0 * p.r0 * p.r0 / 3.0;
    const double alpha_pol = eps0 * 3.0 * (p.eps_r - 1.0) / (p.eps_r + 2.0) * V_np;
    const double m = p.rho * V_np;
    const double C = 2.0 * P * alpha_pol / (m * pi * eps0 * c_light);
    const double lam = p.lambda_tw;

    const double u = std::pow(8.0 * C * std::pow(pi, 4) * std::pow(wz, 4) /
                                  (std::pow(lam, 4) * std::pow(wx, 3) * std::pow(wy, 3)),
                              0.25);
    const double S = wx * wy * u / 2.0;

    WaistCalibration cal{};
    cal.W_t = std::sqrt(S) * lam / (pi * wz);
    cal.A_x = std::sqrt(u * wy / wx);
    cal.A_y = std::sqrt(u * wx / wy);
    if (!std::isfinite(cal.W_t) || !std::isfinite(cal.A_x) || !std::isfinite(cal.A_y))
        throw ParameterError("waist calibration produced non-finite values");
    return cal;
}

}  // namespace levicool
