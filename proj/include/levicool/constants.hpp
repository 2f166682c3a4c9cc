#pragma once

namespace levicool::constants {

inline constexpr double hbar = 1.054571817e-34;      // J s
inline constexpr double eps0 = 8.8541878128e-12;     // F/m
inline constexpr double c_light = 299792458.0;       // m/s
inline constexpr double pi = 3.141592653589793238462643383279502884;

}  // namespace levicool::constants
