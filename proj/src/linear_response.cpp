#include "magnomech/linear_response.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "magnomech/errors.hpp"

namespace magnomech {

namespace {

constexpr cd kI{0.0, 1.0};

struct SphereSlots {
  std::size_t magnon, magnon_dag, x, y;
};

constexpr SphereSlots kSlots[2] = {{kMagnon1, kMagnon1Dag, kPosition1, kMomentum1},
                                   {kMagnon2, kMagnon2Dag, kPosition2, kMomentum2}};

}  // namespace

bool DriftMatrix::has_conjugate_pair_symmetry() const {
  for (std::size_t r = 0; r < kModeCount; ++r) {
    const std::size_t pr = conjugate_partner(r);
    for (std::size_t c = 0; c < kModeCount; ++c) {
      if (a(pr, conjugate_partner(c)) != std::conj(a(r, c))) return false;
    }
  }
  return true;
}

DriftMatrix build_drift_matrix(const SystemConfig& config, const SteadyState& steady) {
  const Detunings det = detunings(config);
  DriftMatrix d;
  auto& a = d.a;

  const cd gain = 2.0 * config.opa.lambda * std::polar(1.0, config.opa.theta);
  a(kCavity, kCavity) = -cd(config.kappa_c, det.cavity);
  a(kCavity, kCavityDag) = gain;

  for (std::size_t j = 0; j < 2; ++j) {
    const auto& sp = config.spheres[j];
    const auto& s = kSlots[j];
    const cd g = steady.magnomechanical_product(static_cast<int>(j));  // R0_j n_js

    a(kCavity, s.magnon) = -kI * sp.r;

    a(s.magnon, s.magnon) = -cd(sp.kappa_n, steady.shifted_detuning[j]);
    a(s.magnon, kCavity) = -kI * sp.r;
    a(s.magnon, s.x) = -kI * g;

    a(s.x, s.y) = sp.omega_d;

    a(s.y, s.x) = -sp.omega_d;
    a(s.y, s.y) = -sp.gamma_d;
    a(s.y, s.magnon) = -std::conj(g);
    a(s.y, s.magnon_dag) = -g;
  }

  // Daggered rows are the conjugates of their partners with paired columns
  // swapped.
  for (std::size_t r : {kCavity, kMagnon1, kMagnon2}) {
    const std::size_t pr = conjugate_partner(r);
    for (std::size_t c = 0; c < kModeCount; ++c) {
      a(pr, conjugate_partner(c)) = std::conj(a(r, c));
    }
  }
  return d;
}

std::array<cd, kModeCount> solve_driven(const DriftMatrix& drift, double delta, std::span<const cd> source) {
  ComplexMatrix m(kModeCount);
  for (std::size_t r = 0; r < kModeCount; ++r) {
    for (std::size_t c = 0; c < kModeCount; ++c) m(r, c) = -drift.a(r, c);
    m(r, r) += -kI * delta;
  }
  const std::vector<cd> u = solve_dense(std::move(m), source);
  std::array<cd, kModeCount> out{};
  std::copy(u.begin(), u.end(), out.begin());
  return out;
}

FluctuationSolution solve_fluctuations(const DriftMatrix& drift, double delta, double eps_p) {
  std::array<cd, kModeCount> b{};
  b[kCavity] = eps_p;
  return {delta, solve_driven(drift, delta, b)};
}

FluctuationSolution solve_fluctuations(const SystemConfig& config, const SteadyState& steady, double delta) {
  return solve_fluctuations(build_drift_matrix(config, steady), delta, config.drive.eps_p);
}

double fluctuation_residual(const DriftMatrix& drift, double delta, std::span<const cd> u,
                            std::span<const cd> source) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t r = 0; r < kModeCount; ++r) {
    cd acc = -kI * delta * u[r];
    for (std::size_t c = 0; c < kModeCount; ++c) acc -= drift.a(r, c) * u[c];
    num += std::norm(acc - source[r]);
    den += std::norm(source[r]);
  }
  return std::sqrt(num / den);
}

StabilityReport stability_check(const DriftMatrix& drift) {
  Eigen::MatrixXcd m(kModeCount, kModeCount);
  for (std::size_t r = 0; r < kModeCount; ++r) {
    for (std::size_t c = 0; c < kModeCount; ++c) m(r, c) = drift.a(r, c);
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eigenvalue iteration did not converge");
  }
  StabilityReport report;
  const auto& values = solver.eigenvalues();
  report.eigenvalues.assign(values.data(), values.data() + values.size());
  std::sort(report.eigenvalues.begin(), report.eigenvalues.end(), [](cd x, cd y) {
    return x.real() != y.real() ? x.real() > y.real() : x.imag() > y.imag();
  });
  report.max_real_part = report.eigenvalues.front().real();
  report.stable = report.max_real_part < 0.0;
  return report;
}

}  // namespace magnomech
