#pragma once

// Minimal RAII wrapper around MPFR with per-value precision. Results of
// binary operations carry the larger precision of the two operands, so a
// computation seeded at precision p stays at p without global state.

#include <mpfr.h>

#include <algorithm>
#include <complex>
#include <utility>

namespace dcmap::detail {

class MpReal {
 public:
  explicit MpReal(mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  MpReal(double x, mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_d(v_, x, MPFR_RNDN); }
  MpReal(const MpReal& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  MpReal(MpReal&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }
  MpReal& operator=(const MpReal& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  MpReal& operator=(MpReal&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~MpReal() { mpfr_clear(v_); }

  static MpReal pi(mpfr_prec_t prec) {
    MpReal r(prec);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
  }

  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

  friend MpReal operator+(const MpReal& a, const MpReal& b) { return binary(a, b, mpfr_add); }
  friend MpReal operator-(const MpReal& a, const MpReal& b) { return binary(a, b, mpfr_sub); }
  friend MpReal operator*(const MpReal& a, const MpReal& b) { return binary(a, b, mpfr_mul); }
  friend MpReal operator/(const MpReal& a, const MpReal& b) { return binary(a, b, mpfr_div); }
  MpReal operator-() const {
    MpReal r(precision());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }
  friend MpReal operator*(double s, const MpReal& a) {
    MpReal r(a.precision());
    mpfr_mul_d(r.v_, a.v_, s, MPFR_RNDN);
    return r;
  }

  friend MpReal sqrt(const MpReal& a) { return unary(a, mpfr_sqrt); }
  friend MpReal sin(const MpReal& a) { return unary(a, mpfr_sin); }
  friend MpReal cos(const MpReal& a) { return unary(a, mpfr_cos); }
  friend MpReal abs(const MpReal& a) { return unary(a, mpfr_abs); }
  friend MpReal atan2(const MpReal& y, const MpReal& x) { return binary(y, x, mpfr_atan2); }

  friend int compare(const MpReal& a, const MpReal& b) { return mpfr_cmp(a.v_, b.v_); }

 private:
  template <class Op>
  static MpReal binary(const MpReal& a, const MpReal& b, Op op) {
    MpReal r(std::max(a.precision(), b.precision()));
    op(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  template <class Op>
  static MpReal unary(const MpReal& a, Op op) {
    MpReal r(a.precision());
    op(r.v_, a.v_, MPFR_RNDN);
    return r;
  }

  mpfr_t v_;
};

struct MpComplex {
  MpReal re;
  MpReal im;

  explicit MpComplex(mpfr_prec_t prec) : re(prec), im(prec) {}
  MpComplex(MpReal r, MpReal i) : re(std::move(r)), im(std::move(i)) {}
  MpComplex(std::complex<double> z, mpfr_prec_t prec) : re(z.real(), prec), im(z.imag(), prec) {}

  /// e^{i*theta}
  static MpComplex polar_unit(const MpReal& theta) { return {cos(theta), sin(theta)}; }

  std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }

  friend MpComplex operator+(const MpComplex& a, const MpComplex& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend MpComplex operator-(const MpComplex& a, const MpComplex& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend MpComplex operator*(const MpComplex& a, const MpComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend MpComplex operator*(const MpReal& s, const MpComplex& a) { return {s * a.re, s * a.im}; }
  friend MpComplex operator*(double s, const MpComplex& a) { return {s * a.re, s * a.im}; }
  friend MpComplex operator/(const MpComplex& a, const MpComplex& b) {
    const MpReal den = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
  }
  /// Multiplication by i.
  MpComplex times_i() const { return {-im, re}; }

  friend MpReal norm(const MpComplex& a) { return a.re * a.re + a.im * a.im; }
  friend MpReal abs(const MpComplex& a) { return sqrt(norm(a)); }
  friend MpReal arg(const MpComplex& a) { return atan2(a.im, a.re); }
};

}  // namespace dcmap::detail
