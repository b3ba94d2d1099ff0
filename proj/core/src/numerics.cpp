#include "dcmap/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>

namespace dcmap {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DegenerateQuad: return "DegenerateQuad";
    case ErrorKind::SingularStep: return "SingularStep";
    case ErrorKind::ZeroEdge: return "ZeroEdge";
    case ErrorKind::EquiViolation: return "EquiViolation";
    case ErrorKind::MissingNeighbor: return "MissingNeighbor";
    case ErrorKind::NonFiniteRadius: return "NonFiniteRadius";
    case ErrorKind::BranchLoss: return "BranchLoss";
    case ErrorKind::InsufficientData: return "InsufficientData";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

std::string ErrorLocation::describe() const {
  switch (space) {
    case Space::Lattice:
      return "(n,m)=(" + std::to_string(first) + "," + std::to_string(second) + ")";
    case Space::Sublattice:
      return "(N,M)=(" + std::to_string(first) + "," + std::to_string(second) + ")";
    case Space::Sequence:
      return "n=" + std::to_string(first);
  }
  return {};
}

namespace {

std::string compose(ErrorKind kind, const std::string& what,
                    const std::optional<ErrorLocation>& where) {
  std::string msg = std::string(to_string(kind)) + ": " + what;
  if (where) msg += " at " + where->describe();
  return msg;
}

double scale_of(std::initializer_list<ExtendedComplex> zs) {
  double s = 1.0;
  for (const auto& z : zs) {
    if (z.is_finite()) s = std::max(s, std::abs(z.value()));
  }
  return s;
}

int count_infinite(std::initializer_list<ExtendedComplex> zs) {
  return static_cast<int>(
      std::count_if(zs.begin(), zs.end(), [](const auto& z) { return z.is_infinite(); }));
}

void require_nonzero(complex factor, double scale, const ToleranceConfig& tol) {
  if (std::abs(factor) < tol.degenerate_tol * scale) {
    throw Error(ErrorKind::DegenerateQuad, "vanishing cross-ratio denominator");
  }
}

}  // namespace

Error::Error(ErrorKind kind, const std::string& what, std::optional<ErrorLocation> where)
    : std::runtime_error(compose(kind, what, where)), kind_(kind), where_(where) {}

void ToleranceConfig::validate() const {
  if (!(rel_tol > 0) || !(abs_tol > 0) || !(degenerate_tol > 0)) {
    throw Error(ErrorKind::InvalidArgument, "tolerances must be strictly positive");
  }
}

complex ExtendedComplex::value() const {
  if (infinite_) throw Error(ErrorKind::InvalidArgument, "value() of the point at infinity");
  return value_;
}

ExtendedComplex cross_ratio(const ExtendedComplex& a, const ExtendedComplex& b,
                            const ExtendedComplex& c, const ExtendedComplex& d,
                            const ToleranceConfig& tol) {
  if (count_infinite({a, b, c, d}) > 1) {
    throw Error(ErrorKind::InvalidArgument, "cross-ratio with more than one infinite argument");
  }
  const double s = scale_of({a, b, c, d});
  // Each branch drops the two factors that contain the infinite point; their
  // ratio tends to -1.
  if (a.is_infinite()) {
    const complex den = b.value() - c.value();
    require_nonzero(den, s, tol);
    return (d.value() - c.value()) / den;
  }
  if (b.is_infinite()) {
    const complex den = d.value() - a.value();
    require_nonzero(den, s, tol);
    return (d.value() - c.value()) / den;
  }
  if (c.is_infinite()) {
    const complex den = d.value() - a.value();
    require_nonzero(den, s, tol);
    return (b.value() - a.value()) / den;
  }
  if (d.is_infinite()) {
    const complex den = b.value() - c.value();
    require_nonzero(den, s, tol);
    return (b.value() - a.value()) / den;
  }
  const complex bc = b.value() - c.value();
  const complex da = d.value() - a.value();
  require_nonzero(bc, s, tol);
  require_nonzero(da, s, tol);
  return (a.value() - b.value()) * (c.value() - d.value()) / (bc * da);
}

ExtendedComplex solve_fourth(const ExtendedComplex& a, const ExtendedComplex& b,
                             const ExtendedComplex& c, const ToleranceConfig& tol) {
  if (count_infinite({a, b, c}) > 1) {
    throw Error(ErrorKind::InvalidArgument, "solve_fourth with more than one infinite argument");
  }
  const double s = scale_of({a, b, c});
  const double eps = tol.degenerate_tol * s;
  auto distinct = [eps](const ExtendedComplex& x, const ExtendedComplex& y) {
    if (x.is_infinite() || y.is_infinite()) return true;
    return std::abs(x.value() - y.value()) >= eps;
  };
  if (!distinct(a, b) || !distinct(b, c) || !distinct(a, c)) {
    throw Error(ErrorKind::DegenerateQuad, "solve_fourth inputs are not pairwise distinct");
  }
  if (a.is_infinite()) return 2.0 * c.value() - b.value();
  if (b.is_infinite()) return 0.5 * (a.value() + c.value());
  if (c.is_infinite()) return 2.0 * a.value() - b.value();

  const complex za = a.value(), zb = b.value(), zc = c.value();
  const complex den = 2.0 * zb - za - zc;
  if (std::abs(den) < eps) {
    throw Error(ErrorKind::DegenerateQuad, "solve_fourth: singular linear system (2b = a + c)");
  }
  return (za * zb + zb * zc - 2.0 * za * zc) / den;
}

}  // namespace dcmap
