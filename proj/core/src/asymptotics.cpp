#include "dcmap/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <numbers>

namespace dcmap {

double LinearizedModel::characteristic(double lambda) const {
  return (matrix[0][0] - lambda) * (matrix[1][1] - lambda) - matrix[0][1] * matrix[1][0];
}

std::array<double, 2> LinearizedModel::eigenvalues() const {
  const double t = trace(), d = determinant();
  const double root = std::sqrt(t * t - 4.0 * d);
  // Larger root first, the smaller from the product to avoid cancellation.
  const double big = (t + std::copysign(root, t)) / 2.0;
  const double small = d / big;
  return big < small ? std::array{big, small} : std::array{small, big};
}

BoundReport check_lemma_bounds(const EdgeRatioField& xy, const ToleranceConfig& tol) {
  const double c = xy.c();
  if (!(c > 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "lemma bounds need c > 1");
  }
  BoundReport report;
  report.c = c;
  const int size = xy.lattice_size();
  for (int M = 1; M <= size; ++M) {
    for (int N = -M + 1; N <= M - 1; ++N) {
      const SublatticeLabel z{N, M};
      const SublatticeLabel up = z.shifted(0, 1);
      if (!xy.has_x(z) || !xy.has_y(up)) continue;
      const double x = xy.x(z), y = xy.y(up);
      const double x_lo = -(c - 1.0) / (M - N), x_hi = (c - 1.0) / (M + N);
      const double y_hi = (c - 1.0) / (M + N) + 2.0 * (c - 1.0) / (M - N);
      BoundEntry e;
      e.z = z;
      e.epsilon = (c - 1.0) / (M - N);
      e.delta = (c - 1.0) / (M + N + 1);
      e.x_slack = std::min(x - x_lo, x_hi - x);
      e.y_slack = std::min(y, y_hi - y);
      e.violated = !(e.x_slack >= -tol.abs_tol) || !(e.y_slack >= -tol.abs_tol);
      if (e.violated) ++report.violations;
      report.entries.push_back(e);
    }
  }
  return report;
}

double AsymptoticFit::k_at(int M) const {
  for (const auto& [m, k] : samples) {
    if (m == M) return k;
  }
  throw Error(ErrorKind::InvalidArgument, "M was not sampled");
}

AsymptoticFit fit_radius_growth(const RadiusField& field, int n0, int m_max) {
  if (m_max < kMinFitLength) {
    throw Error(ErrorKind::InsufficientData,
                "radius growth fit needs M_max >= " + std::to_string(kMinFitLength));
  }
  const double c = field.c();
  AsymptoticFit fit;
  fit.c = c;
  fit.n0 = n0;
  const int m_lo = std::max(std::abs(n0), 1);
  for (int M = m_lo; M <= m_max; ++M) {
    const SublatticeLabel z{n0, M};
    if (!field.contains(z)) {
      throw Error(ErrorKind::InsufficientData, "radius column not populated",
                  ErrorLocation{ErrorLocation::Space::Sublattice, n0, M});
    }
    const double r = field.at(z);
    if (!is_proper_radius(r)) continue;
    fit.samples.emplace_back(M, r * std::pow(static_cast<double>(M), 1.0 - c));
  }
  if (fit.samples.empty() || fit.samples.back().first != m_max) {
    throw Error(ErrorKind::InsufficientData, "no proper radius at M_max");
  }
  fit.k_estimate = fit.samples.back().second;
  const int half = m_max / 2;
  const double k_half = fit.k_at(half);
  fit.k_extrapolated = (m_max * fit.k_estimate - half * k_half) / (m_max - half);

  const int base = std::abs(n0);
  const SublatticeLabel zb{n0, base};
  if (field.contains(zb) && is_proper_radius(field.at(zb))) {
    const double r0 = field.at(zb);
    double product = 1.0, worst = 0.0;
    for (int k = 1; base + k <= m_max; ++k) {
      product *= (2.0 * k + (c - 1.0)) / (2.0 * k - (c - 1.0));
      const double r = field.at({n0, base + k});
      worst = std::max(worst, std::abs(r / (r0 * product) - 1.0));
    }
    fit.max_abs_defect = worst;
  } else {
    fit.max_abs_defect = std::numeric_limits<double>::quiet_NaN();
  }
  return fit;
}

namespace {

bool tail_non_increasing(const std::vector<double>& values, std::size_t count) {
  if (values.size() < 2) return true;
  const std::size_t from = values.size() > count ? values.size() - count : 0;
  for (std::size_t k = from + 1; k < values.size(); ++k) {
    if (values[k] > values[k - 1] + kDeviationFloor) return false;
  }
  return true;
}

bool improved(double start, double end) { return end < start || start <= kDeviationFloor; }

}  // namespace

XyDecayReport check_xy_decay(const EdgeRatioField& xy, int n0, int n_max, int n_start) {
  if (n_start < 1 || n_max < n_start + 3 || n_max < kMinFitLength) {
    throw Error(ErrorKind::InsufficientData, "xy decay needs 1 <= n_start < n_max and n_max >= 50");
  }
  const double c = xy.c();
  XyDecayReport report;
  report.c = c;
  report.n0 = n0;
  report.threshold = kXyDecayFactor * std::abs(c - 1.0) + kDeviationFloor;
  for (int n = n_start; n <= n_max; ++n) {
    const SublatticeLabel z{n0, n};
    if (!xy.has_x(z) || !xy.has_y(z)) {
      throw Error(ErrorKind::InsufficientData, "edge variables not populated",
                  ErrorLocation{ErrorLocation::Space::Sublattice, n0, n});
    }
    report.samples.push_back({n, std::abs(n * xy.y(z) - (c - 1.0) / 2.0),
                              static_cast<double>(n) * n * xy.x(z)});
  }
  std::vector<double> dev;
  for (const auto& s : report.samples) dev.push_back(s.y_deviation);
  report.start_deviation = dev.front();
  report.end_deviation = dev.back();
  report.decreasing = improved(report.start_deviation, report.end_deviation) && tail_non_increasing(dev, 10);

  const int third = (n_max - n_start) / 3;
  double early = 0, late = 0;
  for (const auto& s : report.samples) {
    if (s.n <= n_start + third) early = std::max(early, std::abs(s.scaled_x));
    if (s.n >= n_max - third) late = std::max(late, std::abs(s.scaled_x));
  }
  report.growth_ratio = early > kDeviationFloor ? late / early : (late > kDeviationFloor ? HUGE_VAL : 1.0);
  report.bounded = report.growth_ratio <= kBoundedGrowthRatio;
  report.pass = report.end_deviation < report.threshold && report.decreasing && report.bounded;
  return report;
}

DiagonalReport check_diagonal_growth(const ConformalLattice& lat, int n0, int m0, int n_check, int n_start,
                                     std::optional<double> k) {
  if (n_start < 1 || n_check < n_start || n_check < kMinFitLength) {
    throw Error(ErrorKind::InsufficientData, "diagonal check needs n_check >= 50");
  }
  if (!lat.contains(n0 + n_check, m0 + n_check)) {
    throw Error(ErrorKind::InsufficientData, "diagonal not populated",
                ErrorLocation{ErrorLocation::Space::Lattice, n0 + n_check, m0 + n_check});
  }
  const double c = canonical_exponent(lat.kind(), lat.c());
  DiagonalReport report;
  report.c = c;
  report.n0 = n0;
  report.m0 = m0;
  const double target = c * std::numbers::pi / 4.0;
  for (int n = 1; n <= n_check; ++n) {
    const ExtendedComplex& f = lat.at(n0 + n, m0 + n);
    if (f.is_infinite()) {
      throw Error(ErrorKind::InsufficientData, "infinite diagonal value",
                  ErrorLocation{ErrorLocation::Space::Lattice, n0 + n, m0 + n});
    }
    report.samples.push_back({n, std::abs(std::arg(f.value()) - target),
                              std::abs(f.value()) * std::pow(static_cast<double>(n), -c)});
  }
  std::vector<double> dev;
  for (const auto& s : report.samples) {
    if (s.n >= n_start) dev.push_back(s.arg_deviation);
  }
  report.check_deviation = dev.back();
  report.decreasing = improved(dev.front(), dev.back()) && tail_non_increasing(dev, 10);
  report.argument_ok = report.check_deviation < kArgumentTolerance && report.decreasing;

  report.modulus_estimate = report.samples.back().scaled_modulus;
  const double mid = report.samples[static_cast<std::size_t>(n_check / 2 - 1)].scaled_modulus;
  report.modulus_change = std::abs(report.modulus_estimate - mid) / report.modulus_estimate;
  report.modulus_ok = report.modulus_estimate > 0 && report.modulus_change < kConvergenceBand;
  if (k) {
    const double expected = *k * std::numbers::sqrt2 / c;
    report.k_mismatch = std::abs(report.modulus_estimate - expected) / expected;
    report.modulus_ok = report.modulus_ok && *report.k_mismatch < kConvergenceBand;
  }
  return report;
}

PainleveAsymptoteReport check_painleve_asymptote(const PainleveSolution& sol) {
  if (sol.steps() < kMinPainleveSteps) {
    throw Error(ErrorKind::InsufficientData,
                "painleve asymptote needs at least " + std::to_string(kMinPainleveSteps) + " steps");
  }
  PainleveAsymptoteReport report;
  report.c = sol.c();
  report.deviations.assign(static_cast<std::size_t>(sol.steps()) + 1, 0.0);
  for (int n = 1; n <= sol.steps(); ++n) {
    report.deviations[static_cast<std::size_t>(n)] =
        std::abs(std::tan(sol.alpha(n)) * std::pow(1.0 + 1.0 / n, 1.0 - sol.c()) - 1.0);
  }
  report.end_deviation = report.deviations.back();
  report.decreasing = improved(report.deviations[50], report.end_deviation) &&
                      tail_non_increasing(report.deviations, 10);
  report.pass = report.end_deviation < kArgumentTolerance && report.decreasing;
  return report;
}

}  // namespace dcmap
