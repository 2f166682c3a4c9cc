#pragma once

#include <array>
#include <string>
#include <vector>

#include "levicool/linearized_system.hpp"

namespace levicool {

// Arrowhead form of the beam-splitter Hamiltonian: one cavity mode coupled
// to six mechanical modes that also couple among themselves.
struct ArrowheadSystem {
    Eigen::Matrix<double, 6, 6> H_b;          // mechanical block (rad/s)
    Eigen::Matrix<std::complex<double>, 1, 6> C_ab;  // cavity-mechanical row
    double H_a;                               // cavity entry, Delta_tilde
};

struct DarkModeReport {
    std::array<double, 6> normal_freqs;       // ascending
    Eigen::Matrix<double, 6, 6> U_b;          // rows: normal modes in bare basis
    Eigen::Matrix<std::complex<double>, 1, 6> C_AB;  // rotated cavity couplings
    int dark_count;
    std::vector<int> dark_indices;            // indices into normal_freqs
    std::vector<std::string> mechanisms;      // per dark mode
};

ArrowheadSystem build_arrowhead(const GSet& g);

// Diagonalize H_b; eigenvalues ascending, each eigenvector's largest-magnitude
// component made positive. Returns U_b with normal modes as rows and writes
// the rotated couplings C_AB = C_ab U_b^T.
DarkModeReport diagonalize_mech(const ArrowheadSystem& sys);

// Apply the zero-coupling rule and the (l-1) degeneracy rule. The degeneracy
// tolerance must exceed the avoided-crossing gap opened by the x-y
// cross-binding (about 2e-3 omega_tilde_1x at the power crossings), otherwise
// the hybridized pair is never classified as degenerate.
DarkModeReport detect_dark_modes(const GSet& g, double tol_coupling = 1e-8,
                                 double tol_degeneracy = 5e-3);

}  // namespace levicool
