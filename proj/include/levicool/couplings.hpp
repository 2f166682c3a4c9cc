#pragma once

#include <array>
#include <complex>

#include <Eigen/Core>

#include "levicool/physics_params.hpp"

namespace levicool {

using Complex = std::complex<double>;

// Far-field dyadic Green tensor times the polarizability, alpha*G(R0).
struct GreensTensor {
    Eigen::Matrix3cd tensor;
    double k0;
    Eigen::Vector3d R0;
};

GreensTensor greens_far_field(const Eigen::Vector3d& R0, double k0,
                              const DerivedConstants& c);

// ---- component coefficients of the interaction Hamiltonians ----------------

// cavity intensity terms: frequency shift and trilinear couplings
struct CavitySelfCouplings {
    std::array<double, 2> omega_sh;  // rad/s
    std::array<double, 2> g_ax;      // rad/(s m)
    std::array<double, 2> g_ay;      // rad/(s m)
};

// tweezer light scattered into the cavity mode
struct CoherentScatteringCouplings {
    std::array<double, 2> Omega;  // cavity drive per particle (rad/s)
    std::array<double, 2> g_x;    // rad/(s m)
    std::array<double, 2> g_y;
    std::array<double, 2> g_z;
};

// tweezer-tweezer optical binding
struct TweezerBinding {
    double R_alpha;  // rad/(s m)
    double R_beta;
    double v_x, v_y, v_z;      // N/m, single-particle frequency shifts
    double k_x, k_y, k_z;      // N/m, inter-particle binding
    double k_xy;               // N/m, x-y cross binding
};

// cavity-cavity scattering between the particles
struct CavityBinding {
    double shift;    // detuning shift absorbed into Delta' (J)
    double g_alpha;  // rad/(s m)
    double g_beta;
};

// tweezer field against the cavity-induced dipole radiation (real)
struct TwGcavCouplings {
    double Omega_alpha;            // rad/s
    std::array<double, 2> g_ax;    // rad/(s m)
    std::array<double, 2> g_ay;
    std::array<double, 2> g_az;
};

// cavity field against the tweezer-induced dipole radiation (complex)
struct CavGtwCouplings {
    Complex Omega_beta;             // rad/s
    std::array<Complex, 2> g_bx;    // rad/(s m)
    std::array<Complex, 2> g_by;
    std::array<Complex, 2> g_bz;
};

CavitySelfCouplings cavity_self_couplings(const PhysicalParameters& p,
                                          const DerivedConstants& c);
CoherentScatteringCouplings coherent_scattering_couplings(const PhysicalParameters& p,
                                                          const DerivedConstants& c);
TweezerBinding tweezer_binding(const PhysicalParameters& p,
                               const DerivedConstants& c);
CavityBinding cavity_binding(const PhysicalParameters& p,
                             const DerivedConstants& c);
TwGcavCouplings tw_gcav_couplings(const PhysicalParameters& p,
                                  const DerivedConstants& c);
CavGtwCouplings cav_gtw_couplings(const PhysicalParameters& p,
                                  const DerivedConstants& c);

// ---- assembled seven-mode Hamiltonian coefficients --------------------------

struct EffectiveModel {
    std::array<std::array<double, 3>, 2> omega_bare;   // trap freqs [j][x,y,z]
    std::array<std::array<double, 3>, 2> omega_tilde;  // effective freqs [j][x,y,z]
    Complex Omega_tilde;                 // cavity drive (rad/s)
    double R_tilde_x, R_tilde_y;         // displacement drives (rad/(s m))
    std::array<Complex, 2> g_tilde_x;    // composite linear couplings (rad/(s m))
    std::array<Complex, 2> g_tilde_y;
    std::array<Complex, 2> g_tilde_z;
    std::array<double, 2> g_tilde_ax;    // composite trilinear couplings
    std::array<double, 2> g_tilde_ay;
    double k_bind[3];                    // k_x, k_y, k_z (N/m)
    double k_xy;                         // N/m
    double v[3];                         // v_x, v_y, v_z (N/m)
    double delta_shift;                  // Sum_j w_sh + cavity binding shift (rad/s),
                                         // used only to back-compute the bare detuning

    // component coefficients kept for auditing
    CavitySelfCouplings self;
    CoherentScatteringCouplings cs;
    TweezerBinding tw;
    CavityBinding cav;
    TwGcavCouplings twg;
    CavGtwCouplings cavg;
};

EffectiveModel assemble_effective(const PhysicalParameters& p,
                                  const DerivedConstants& c);

// Dimensionless linearized coupling set feeding the Langevin equations.
// Mechanical arrays follow the MechMode ordering x1,x2,y1,y2,z1,z2.
struct GSet {
    std::array<double, 6> omega_tilde;   // rad/s
    std::array<double, 6> zpf;           // zero-point lengths (m)
    std::array<Complex, 6> G;            // G_{mu_j} (rad/s)
    std::array<double, 2> G_ax;          // trilinear, x_j
    std::array<double, 2> G_ay;          // trilinear, y_j
    double G_mech[3];                    // G_x, G_y, G_z (rad/s)
    double G_xy[2][2];                   // G_{x_j y_{j'}} (rad/s)
    std::array<double, 2> R_x;           // displacement drives (rad/s)
    std::array<double, 2> R_y;
    Complex Omega_tilde;                 // rad/s
    double Delta_tilde;                  // rad/s
    double kappa;                        // rad/s
    std::array<double, 6> gamma;
    std::array<double, 6> n_th;
};

GSet dimensionless_couplings(const EffectiveModel& em, const PhysicalParameters& p,
                             const DerivedConstants& c);

// Full parameter-to-couplings bundle; the common front half of every pipeline.
struct Model {
    PhysicalParameters p;
    DerivedConstants c;
    EffectiveModel em;
    GSet g;
};

Model build_model(const PhysicalParameters& p);

}  // namespace levicool
