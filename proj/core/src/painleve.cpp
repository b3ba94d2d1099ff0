#include "dcmap/painleve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "detail/mp_real.hpp"

namespace dcmap {

using detail::MpComplex;
using detail::MpReal;

PainleveSolution::PainleveSolution(double c, std::vector<double> alphas, std::vector<double> drift)
    : c_(c), alphas_(std::move(alphas)), drift_(std::move(drift)) {
  if (alphas_.empty()) throw Error(ErrorKind::InvalidArgument, "empty Painleve solution");
  if (drift_.empty()) drift_.assign(alphas_.size(), 0.0);
  if (drift_.size() != alphas_.size()) {
    throw Error(ErrorKind::InvalidArgument, "drift and angle sequences differ in length");
  }
}

double PainleveSolution::alpha(int n) const {
  if (n < 0 || n > steps()) {
    throw Error(ErrorKind::InvalidArgument, "index outside the solution",
                ErrorLocation{ErrorLocation::Space::Sequence, n, 0});
  }
  return alphas_[static_cast<std::size_t>(n)];
}

complex PainleveSolution::u(int n) const { return std::polar(1.0, alpha(n)); }

double PainleveSolution::max_drift() const { return *std::max_element(drift_.begin(), drift_.end()); }

PainleveSolution dpii_solve(double c, int steps, const PainleveOptions& opts) {
  if (!(c > 0.0 && c < 2.0)) throw Error(ErrorKind::InvalidArgument, "dPII branch requires 0 < c < 2");
  if (steps < 1) throw Error(ErrorKind::InvalidArgument, "steps must be at least 1");
  const long prec = opts.precision_bits ? opts.precision_bits : 128 + 3L * steps;
  const MpReal cc(c, prec);
  const MpReal one(1.0, prec);
  const MpComplex unit(one, MpReal(prec));
  const MpComplex i_unit(MpReal(prec), one);
  constexpr double half_pi = std::numbers::pi / 2;

  std::vector<double> alphas{c * std::numbers::pi / 4};
  std::vector<double> drift{0.0};
  alphas.reserve(static_cast<std::size_t>(steps) + 1);
  drift.reserve(static_cast<std::size_t>(steps) + 1);

  MpComplex prev(prec);
  MpComplex cur = MpComplex::polar_unit(0.25 * (cc * MpReal::pi(prec)));
  for (int n = 0; n < steps; ++n) {
    const MpComplex sq = cur * cur;
    MpComplex a = cc * cur;
    if (n > 0) {
      a = a + static_cast<double>(n) * ((sq + unit) * (prev + cur.times_i()) / (i_unit + prev * cur));
    }
    const MpComplex b = static_cast<double>(n + 1) * (sq - unit);
    MpComplex next = ((a + b * cur) / (b - a * cur)).times_i();

    const MpReal modulus = abs(next);
    const double d = std::abs((modulus - one).to_double());
    next = MpComplex(next.re / modulus, next.im / modulus);
    const double alpha = arg(next).to_double();

    const ErrorLocation where{ErrorLocation::Space::Sequence, n + 1, 0};
    if (!(d <= kMaxUnitaryDrift)) throw Error(ErrorKind::BranchLoss, "unit-modulus drift too large", where);
    if (!(alpha > 0.0 && alpha < half_pi)) {
      throw Error(ErrorKind::BranchLoss, "angle left (0, pi/2)", where);
    }
    alphas.push_back(alpha);
    drift.push_back(d);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return PainleveSolution(c, std::move(alphas), std::move(drift));
}

double dpii_residual(const PainleveSolution& sol, int n) {
  if (n < 1 || n > sol.steps() - 1) {
    throw Error(ErrorKind::InvalidArgument, "residual index must satisfy 1 <= n <= steps - 1",
                ErrorLocation{ErrorLocation::Space::Sequence, n, 0});
  }
  const complex i(0.0, 1.0);
  const complex um = sol.u(n - 1), u = sol.u(n), up = sol.u(n + 1);
  const complex t1 = static_cast<double>(n + 1) * (u * u - 1.0) * (up - i * u) / (i + u * up);
  const complex t2 = static_cast<double>(n) * (u * u + 1.0) * (um + i * u) / (i + um * u);
  const complex t3 = sol.c() * u;
  const double scale = std::max({std::abs(t1), std::abs(t2), std::abs(t3)});
  const double defect = std::abs(t1 - t2 - t3);
  return scale > 0 ? defect / scale : defect;
}

double alpha_from_lattice(const ConformalLattice& lat, int n, const ToleranceConfig& tol) {
  if (n < 0 || n + 1 > lat.size()) {
    throw Error(ErrorKind::InvalidArgument, "diagonal index outside lattice",
                ErrorLocation{ErrorLocation::Space::Lattice, n, n});
  }
  const auto &f = lat.at(n, n), &up = lat.at(n, n + 1), &right = lat.at(n + 1, n);
  if (f.is_infinite() || up.is_infinite() || right.is_infinite()) {
    throw Error(ErrorKind::ZeroEdge, "infinite vertex on the diagonal stencil",
                ErrorLocation{ErrorLocation::Space::Lattice, n, n});
  }
  const complex e_up = up.value() - f.value();
  const complex e_right = right.value() - f.value();
  const double scale = std::max(1.0, std::abs(f.value()));
  if (std::abs(e_up) < tol.degenerate_tol * scale || std::abs(e_right) < tol.degenerate_tol * scale) {
    throw Error(ErrorKind::ZeroEdge, "zero-length diagonal stencil edge",
                ErrorLocation{ErrorLocation::Space::Lattice, n, n});
  }
  return 0.5 * std::arg(e_up / e_right);
}

}  // namespace dcmap
