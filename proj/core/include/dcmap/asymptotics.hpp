#pragma once

#include <array>
#include <optional>
#include <vector>

#include "dcmap/painleve.hpp"
#include "dcmap/radii.hpp"

namespace dcmap {

/// Linear part of the X/Y recurrence along a column, with its inhomogeneous
/// term (c - 1) / n.
struct LinearizedModel {
  std::array<std::array<double, 2>, 2> matrix{{{5.0, -2.0}, {-2.0, 1.0}}};

  double trace() const { return matrix[0][0] + matrix[1][1]; }
  double determinant() const { return matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0]; }
  /// det(A - lambda I).
  double characteristic(double lambda) const;
  /// Roots of the characteristic polynomial, smaller first.
  std::array<double, 2> eigenvalues() const;
  static double inhomogeneous(double c, int n) { return (c - 1.0) / n; }
};

struct BoundEntry {
  SublatticeLabel z;
  double epsilon = 0;  ///< (c-1)/(M-N)
  double delta = 0;    ///< (c-1)/(M+N+1)
  /// Distance from X(N,M) and Y(N,M+1) to the nearest end of their intervals;
  /// negative when outside.
  double x_slack = 0;
  double y_slack = 0;
  bool violated = false;
};

struct BoundReport {
  double c = 1;
  std::vector<BoundEntry> entries;
  std::size_t violations = 0;

  bool ok() const { return violations == 0; }
};

/// At every label with M > |N| where X(N,M) and Y(N,M+1) are stored:
///   -(c-1)/(M-N) <= X(N,M) <= (c-1)/(M+N)
///   0 <= Y(N,M+1) <= (c-1)/(M+N) + 2(c-1)/(M-N)
/// each widened by abs_tol. Requires c > 1; smaller exponents go through
/// dual_radii.
BoundReport check_lemma_bounds(const EdgeRatioField& xy, const ToleranceConfig& tol = {});

inline constexpr int kMinFitLength = 50;
/// Relative band for K estimates and diagonal moduli.
inline constexpr double kConvergenceBand = 0.03;

struct AsymptoticFit {
  double c = 1;
  int n0 = 0;
  /// (M, R(N0 + iM) * M^(1-c)).
  std::vector<std::pair<int, double>> samples;
  double k_estimate = 0;
  /// One 1/M elimination step between M_max / 2 and M_max.
  double k_extrapolated = 0;
  /// max |R(N0, M0+n) / (R(N0, M0) prod (2k + c - 1)/(2k - c + 1)) - 1|; NaN
  /// without a proper base radius.
  double max_abs_defect = 0;

  /// K_M; throws InvalidArgument if M was not sampled.
  double k_at(int M) const;
};

/// K_M = R(N0 + iM) M^(1-c) for |N0| <= M <= m_max, skipping M = 0 and
/// non-proper radii. InsufficientData if m_max < kMinFitLength or the column
/// is not populated up to m_max.
AsymptoticFit fit_radius_growth(const RadiusField& field, int n0, int m_max);

inline constexpr double kXyDecayFactor = 0.05;
/// Late window maximum of |n^2 x_n| over the early window maximum.
inline constexpr double kBoundedGrowthRatio = 1.5;
/// Absolute floor under which deviations count as zero.
inline constexpr double kDeviationFloor = 1e-12;

struct XyDecaySample {
  int n = 0;
  double y_deviation = 0;  ///< |n y_n - (c-1)/2|
  double scaled_x = 0;     ///< n^2 x_n
};

struct XyDecayReport {
  double c = 1;
  int n0 = 0;
  std::vector<XyDecaySample> samples;
  double threshold = 0;
  double start_deviation = 0;
  double end_deviation = 0;
  bool decreasing = false;
  double growth_ratio = 0;
  bool bounded = false;
  bool pass = false;
};

/// x_n = X(N0, n), y_n = Y(N0, n) for n_start <= n <= n_max. Passes when the
/// deviation at n_max is below kXyDecayFactor |c-1|, smaller than at n_start,
/// and n^2 x_n does not grow between the first and last thirds of the range.
XyDecayReport check_xy_decay(const EdgeRatioField& xy, int n0, int n_max = 200, int n_start = 50);

inline constexpr double kArgumentTolerance = 0.02;

struct DiagonalSample {
  int n = 0;
  double arg_deviation = 0;   ///< |arg f(n0+n, m0+n) - c pi/4|
  double scaled_modulus = 0;  ///< |f(n0+n, m0+n)| n^-c
};

struct DiagonalReport {
  double c = 1;
  int n0 = 0;
  int m0 = 0;
  std::vector<DiagonalSample> samples;
  double check_deviation = 0;
  bool decreasing = false;
  double modulus_estimate = 0;
  /// Relative change of the scaled modulus between n_check / 2 and n_check.
  double modulus_change = 0;
  /// |modulus - K sqrt(2) / c| relative, when K was given.
  std::optional<double> k_mismatch;
  bool argument_ok = false;
  bool modulus_ok = false;
};

/// Samples the diagonal for 1 <= n <= n_check. argument_ok: deviation at
/// n_check below kArgumentTolerance, not above the one at n_start, and
/// non-increasing over the last ten samples (up to kDeviationFloor).
DiagonalReport check_diagonal_growth(const ConformalLattice& lat, int n0, int m0, int n_check = 100,
                                     int n_start = 50, std::optional<double> k = std::nullopt);

struct PainleveAsymptoteReport {
  double c = 1;
  /// |tan(alpha_n) (1 + 1/n)^(1-c) - 1| for n = 1..steps; index 0 unused.
  std::vector<double> deviations;
  double end_deviation = 0;
  bool decreasing = false;
  bool pass = false;
};

inline constexpr int kMinPainleveSteps = 100;

/// Passes when the deviation at the last step is below kArgumentTolerance,
/// below the one at n = 50 and non-increasing over the last ten steps.
PainleveAsymptoteReport check_painleve_asymptote(const PainleveSolution& sol);

}  // namespace dcmap
