#pragma once

#include <complex>
#include <numbers>

namespace magnomech {

using cd = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Config files carry ordinary frequencies f (Hz); everything internal is
// angular, omega = 2*pi*f.
constexpr double to_angular(double hz) { return kTwoPi * hz; }
constexpr double to_ordinary(double rad_per_s) { return rad_per_s / kTwoPi; }

}  // namespace magnomech
