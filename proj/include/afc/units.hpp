#pragma once

namespace afc {

inline constexpr double speed_of_light = 299792458.0;  // m/s
inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr double two_pi = 2.0 * pi;

// User-facing frequencies are ordinary frequencies (Hz); everything inside
// the library is angular (rad/s).
constexpr double angular(double hz) { return two_pi * hz; }
constexpr double ordinary(double rad_per_s) { return rad_per_s / two_pi; }

}  // namespace afc
