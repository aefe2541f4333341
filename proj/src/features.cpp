#include "magnomech/features.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace magnomech {

std::vector<double> SpectralFeatures::window_widths() const {
  std::vector<double> out;
  for (const auto& d : dips) {
    if (d.width) out.push_back(*d.width);
  }
  return out;
}

std::vector<double> SpectralFeatures::asymmetries() const {
  std::vector<double> out;
  for (const auto& d : dips) {
    if (d.asymmetry) out.push_back(*d.asymmetry);
  }
  return out;
}

double SpectralFeatures::max_abs_asymmetry() const {
  double m = 0.0;
  for (double a : asymmetries()) m = std::max(m, std::abs(a));
  return m;
}

namespace {

struct Candidate {
  std::size_t index;
  bool is_peak;
  double prominence;
};

// Topographic prominence of a local maximum of y at i.
double prominence_of_max(const std::vector<double>& y, std::size_t i) {
  double left_min = y[i];
  for (std::size_t k = i; k-- > 0;) {
    if (y[k] > y[i]) break;
    left_min = std::min(left_min, y[k]);
  }
  double right_min = y[i];
  for (std::size_t k = i + 1; k < y.size(); ++k) {
    if (y[k] > y[i]) break;
    right_min = std::min(right_min, y[k]);
  }
  return y[i] - std::max(left_min, right_min);
}

std::vector<Candidate> local_maxima(const std::vector<double>& y, bool is_peak, double min_prominence) {
  std::vector<Candidate> out;
  const std::size_t n = y.size();
  std::size_t i = 1;
  while (i + 1 < n) {
    if (y[i] > y[i - 1]) {
      // Walk a plateau to its end; report its middle.
      std::size_t j = i;
      while (j + 1 < n && y[j + 1] == y[i]) ++j;
      if (j + 1 < n && y[j + 1] < y[i]) {
        const std::size_t mid = (i + j) / 2;
        const double p = prominence_of_max(y, mid);
        if (p >= min_prominence) out.push_back({mid, is_peak, p});
      }
      i = j + 1;
    } else {
      ++i;
    }
  }
  return out;
}

// Position where y crosses `level` between indices a (below) and b, by
// linear interpolation on the delta grid.
double crossing(const std::vector<double>& x, const std::vector<double>& y, std::size_t a, std::size_t b,
                double level) {
  const double t = (level - y[a]) / (y[b] - y[a]);
  return x[a] + t * (x[b] - x[a]);
}

}  // namespace

SpectralFeatures extract_features(const std::vector<double>& x, const std::vector<double>& y,
                                  const FeatureOptions& options) {
  if (x.size() != y.size()) throw std::invalid_argument("feature extraction needs matching grids");
  SpectralFeatures f;
  if (y.size() < 3) {
    f.warnings.push_back("grid too small for feature extraction");
    return f;
  }

  const double global_max = *std::max_element(y.begin(), y.end());
  const double scale = global_max > 0.0 ? global_max : std::abs(*std::min_element(y.begin(), y.end()));
  const double min_prominence = options.relative_prominence * scale;

  std::vector<double> neg(y.size());
  std::transform(y.begin(), y.end(), neg.begin(), [](double v) { return -v; });

  std::vector<Candidate> all = local_maxima(y, true, min_prominence);
  const std::vector<Candidate> dips = local_maxima(neg, false, min_prominence);
  all.insert(all.end(), dips.begin(), dips.end());
  std::sort(all.begin(), all.end(), [](const Candidate& a, const Candidate& b) { return a.index < b.index; });

  // Enforce alternation: of two neighbours of the same kind keep the more extreme.
  std::vector<Candidate> seq;
  for (const auto& c : all) {
    if (!seq.empty() && seq.back().is_peak == c.is_peak) {
      const bool replace = c.is_peak ? y[c.index] > y[seq.back().index] : y[c.index] < y[seq.back().index];
      if (replace) seq.back() = c;
      continue;
    }
    seq.push_back(c);
  }

  const std::size_t sep = options.min_separation;
  for (std::size_t k = 0; k < seq.size(); ++k) {
    const std::size_t i = seq[k].index;
    if (i < sep || i + sep >= y.size()) {
      f.warnings.push_back("extremum at grid index " + std::to_string(i) + " is near the grid boundary");
    }
    if (k > 0 && i - seq[k - 1].index < sep) {
      f.warnings.push_back("extrema at grid indices " + std::to_string(seq[k - 1].index) + " and " +
                           std::to_string(i) + " are closer than " + std::to_string(sep) + " points");
    }
  }

  for (std::size_t k = 0; k < seq.size(); ++k) {
    const auto& c = seq[k];
    if (c.is_peak) {
      f.peaks.push_back({c.index, x[c.index], y[c.index], c.prominence});
      continue;
    }
    Dip dip{c.index, x[c.index], y[c.index], c.prominence, {}, {}, {}};
    if (k > 0 && k + 1 < seq.size()) {
      const std::size_t left = seq[k - 1].index;
      const std::size_t right = seq[k + 1].index;
      const double h_left = y[left] - y[c.index];
      const double h_right = y[right] - y[c.index];
      const double depth = std::min(h_left, h_right);
      dip.depth = depth;
      dip.asymmetry = (h_right - h_left) / (h_right + h_left);

      const double level = y[c.index] + 0.5 * depth;
      std::size_t a = c.index;
      while (a > left && y[a] < level) --a;
      std::size_t b = c.index;
      while (b < right && y[b] < level) ++b;
      const double lo = crossing(x, y, a + 1, a, level);
      const double hi = crossing(x, y, b - 1, b, level);
      dip.width = hi - lo;
    }
    f.dips.push_back(dip);
  }
  return f;
}

SpectralFeatures extract_features(const ResponseSpectrum& spectrum, const FeatureOptions& options) {
  std::vector<double> absorption(spectrum.size());
  std::transform(spectrum.eout.begin(), spectrum.eout.end(), absorption.begin(),
                 [](cd e) { return e.real(); });
  return extract_features(spectrum.delta, absorption, options);
}

}  // namespace magnomech
