#pragma once

#include <vector>

#include "dcmap/lattice.hpp"

namespace dcmap {

/// Unitary solution u_n = e^{i alpha_n} of the discrete Painleve-II equation
///   (n+1)(u_n^2 - 1)(u_{n+1} - i u_n)/(i + u_n u_{n+1})
///     - n (u_n^2 + 1)(u_{n-1} + i u_n)/(i + u_{n-1} u_n) = c u_n
/// on n = 0..steps.
class PainleveSolution {
 public:
  PainleveSolution(double c, std::vector<double> alphas, std::vector<double> drift = {});

  double c() const { return c_; }
  int steps() const { return static_cast<int>(alphas_.size()) - 1; }
  const std::vector<double>& alphas() const { return alphas_; }
  double alpha(int n) const;
  complex u(int n) const;

  /// | |u_n| - 1 | before renormalization, per computed step (drift[0] = 0).
  const std::vector<double>& drift() const { return drift_; }
  double max_drift() const;

 private:
  double c_;
  std::vector<double> alphas_;
  std::vector<double> drift_;
};

struct PainleveOptions {
  /// 0 selects 128 + 3 * steps bits; the recurrence amplifies rounding by
  /// about 3 + 2*sqrt(2) per step.
  long precision_bits = 0;
};

inline constexpr double kMaxUnitaryDrift = 1e-6;

/// Forward solve from u_0 = e^{ic pi/4} with per-step renormalization to the
/// unit circle. Throws BranchLoss if an angle leaves (0, pi/2) or the drift
/// exceeds kMaxUnitaryDrift.
PainleveSolution dpii_solve(double c, int steps, const PainleveOptions& opts = {});

/// |LHS - RHS| at 1 <= n <= steps - 1 divided by the largest term modulus.
double dpii_residual(const PainleveSolution& sol, int n);

/// Half the argument of (f(n,n+1) - f(n,n)) / (f(n+1,n) - f(n,n)).
double alpha_from_lattice(const ConformalLattice& lat, int n, const ToleranceConfig& tol = {});

}  // namespace dcmap
