#pragma once

#include <optional>
#include <string>
#include <vector>

#include "magnomech/observables.hpp"

namespace magnomech {

struct Peak {
  std::size_t index = 0;
  double delta = 0.0;  // rad/s
  double height = 0.0;  // Re[eps_out]
  double prominence = 0.0;
};

struct Dip {
  std::size_t index = 0;
  double delta = 0.0;
  double value = 0.0;  // Re[eps_out] at the floor
  double prominence = 0.0;
  // Set only when the dip has a peak on both sides.
  std::optional<double> depth;      // lower flanking peak minus floor
  std::optional<double> width;      // full width at half depth, rad/s
  std::optional<double> asymmetry;  // (h_R - h_L) / (h_R + h_L)
};

struct SpectralFeatures {
  std::vector<Peak> peaks;
  std::vector<Dip> dips;
  std::vector<std::string> warnings;

  std::vector<double> window_widths() const;
  std::vector<double> asymmetries() const;
  double max_abs_asymmetry() const;
};

struct FeatureOptions {
  double relative_prominence = 0.01;  // of the global maximum of Re[eps_out]
  std::size_t min_separation = 3;     // grid points
};

/// Transparency windows and absorption peaks of Re[eps_out].
SpectralFeatures extract_features(const ResponseSpectrum& spectrum, const FeatureOptions& options = {});
SpectralFeatures extract_features(const std::vector<double>& delta, const std::vector<double>& absorption,
                                  const FeatureOptions& options = {});

/// Fano asymmetry threshold separating the off-resonant (Delta_n = 0.5 omega_d)
/// and resonant (Delta_n = omega_d) regimes. Regenerate with
/// tools/derive_fano_threshold.
inline constexpr double kFanoAsymmetryThreshold = 0.24;

}  // namespace magnomech
