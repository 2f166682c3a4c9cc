#pragma once

#include <array>
#include <stdexcept>

namespace levicool {

// Thrown when raw inputs violate their invariants or a configuration
// cannot support a stable trap.
struct ParameterError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Mechanical mode index convention used across the whole library:
// 0:x1 1:x2 2:y1 3:y2 4:z1 5:z2.
enum MechMode : int { kX1 = 0, kX2, kY1, kY2, kZ1, kZ2 };

// Raw experimental inputs. Focal coordinates x10/x20/y10/y20 are measured
// in the cavity frame (x along the cavity axis), so the standing-wave phase
// of particle j is simply k*x_j0.
struct PhysicalParameters {
    // particle
    double r0 = 70e-9;        // radius (m)
    double rho = 2200.0;      // density (kg/m^3)
    double eps_r = 2.07;      // relative dielectric constant

    // tweezers
    double lambda_tw = 1064e-9;  // wavelength (m)
    double P_tw1 = 0.8;          // power, tweezer 1 (W)
    double P_tw2 = 0.6;          // power, tweezer 2 (W)
    double W_t = 0.0;            // focal waist (m); 0 means "calibrate me"
    double A_x = 1.0;            // waist scaling factor, x
    double A_y = 1.0;            // waist scaling factor, y

    // cavity
    double L_cav = 1.07e-2;   // length (m)
    double w_cav = 41.1e-6;   // waist (m)
    double kappa = 0.0;       // linewidth (rad/s)

    // geometry
    double theta = 0.0;       // polarization angle (rad), normalized to [0,2pi)
    double D = 0.0;           // particle separation along cavity axis (m)
    double x10 = 0.0, x20 = 0.0;  // focal offsets along the cavity axis (m)
    double y10 = 0.0, y20 = 0.0;  // transverse focal offsets (m)

    // baths, one entry per MechMode
    std::array<double, 6> gamma{};  // mechanical damping (rad/s)
    std::array<double, 6> n_th{};   // bath occupation

    // effective drive detuning of the linearized system (rad/s); a direct
    // input, the bare laser-cavity detuning is only back-computed for reports
    double Delta_tilde = 0.0;

    void validate() const;
};

struct DerivedConstants {
    double alpha_pol;   // polarizability (C m^2/V)
    double V_np;        // particle volume (m^3)
    double m;           // particle mass (kg)
    double eps_tw1;     // tweezer 1 field amplitude (V/m)
    double eps_tw2;     // tweezer 2 field amplitude (V/m)
    double eps_cav;     // cavity field amplitude (V/m)
    double k;           // cavity wave number (1/m)
    double k_tw;        // tweezer wave number (1/m)
    double omega_tw;    // tweezer angular frequency (rad/s)
    double z_R;         // Rayleigh range (m)
    double V_cav;       // cavity mode volume (m^3)
    double eta_f_cav;   // far-field constant at k
    double eta_f_tw;    // far-field constant at k_tw

    double eps_tw(int j) const { return j == 0 ? eps_tw1 : eps_tw2; }
};

struct TrapFrequencies {
    // bare trap frequencies (rad/s), [particle][axis] with axis 0:x 1:y 2:z
    std::array<std::array<double, 3>, 2> omega;
};

struct WaistCalibration {
    double W_t;
    double A_x;
    double A_y;
};

DerivedConstants derive_constants(const PhysicalParameters& p);

TrapFrequencies trap_frequencies(const PhysicalParameters& p,
                                 const DerivedConstants& c);

// Closed-form inversion of the trap-frequency formulas: find (W_t, A_x, A_y)
// such that particle j driven at power P has bare frequencies target (rad/s,
// order x,y,z).
WaistCalibration calibrate_waists(const std::array<double, 3>& target,
                                  double P, const PhysicalParameters& p);

// theta reduced to [0, 2pi)
double normalize_angle(double theta);

}  // namespace levicool
