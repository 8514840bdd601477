#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include "psg/generator.hpp"

namespace psg {

/// Closed real interval. Bounds are rounded outward: an error-free residual
/// (fma or two-sum) decides whether the nearest result is already a valid
/// bound, otherwise it is moved one ulp.
struct Ival {
  double lo = 0.0;
  double hi = 0.0;

  Ival() = default;
  constexpr Ival(double v) : lo(v), hi(v) {}  // NOLINT: implicit point intervals
  constexpr Ival(double l, double h) : lo(l), hi(h) {}

  bool finite() const noexcept { return std::isfinite(lo) && std::isfinite(hi); }
  bool contains(double x) const noexcept { return lo <= x && x <= hi; }
  double width() const noexcept { return hi - lo; }
  double mid() const noexcept { return 0.5 * (lo + hi); }
};

namespace ival_detail {
constexpr double kInf = std::numeric_limits<double>::infinity();
inline double down(double x) noexcept { return std::nextafter(x, -kInf); }
inline double up(double x) noexcept { return std::nextafter(x, kInf); }
// Residuals are unreliable near the underflow range; fall back to one ulp.
inline bool tiny(double x) noexcept { return x != 0.0 && std::abs(x) < 1e-290; }

/// r = exact - rounded; the sign says which side the rounded value lies on.
inline double lower(double rounded, double r) noexcept {
  if (!std::isfinite(rounded) || tiny(rounded)) return down(rounded);
  return r < 0.0 ? down(rounded) : rounded;
}
inline double upper(double rounded, double r) noexcept {
  if (!std::isfinite(rounded) || tiny(rounded)) return up(rounded);
  return r > 0.0 ? up(rounded) : rounded;
}
inline double two_sum_err(double a, double b, double s) noexcept {
  const double bb = s - a;
  return (a - (s - bb)) + (b - bb);
}
inline double add_lo(double a, double b) noexcept { const double s = a + b; return lower(s, two_sum_err(a, b, s)); }
inline double add_hi(double a, double b) noexcept { const double s = a + b; return upper(s, two_sum_err(a, b, s)); }
inline double mul_lo(double a, double b) noexcept { const double p = a * b; return lower(p, std::fma(a, b, -p)); }
inline double mul_hi(double a, double b) noexcept { const double p = a * b; return upper(p, std::fma(a, b, -p)); }
// a/b - q has the sign of (a - q b) / b.
inline double div_err(double a, double b, double q) noexcept {
  const double r = std::fma(-q, b, a);
  return b < 0.0 ? -r : r;
}
inline double div_lo(double a, double b) noexcept { const double q = a / b; return lower(q, div_err(a, b, q)); }
inline double div_hi(double a, double b) noexcept { const double q = a / b; return upper(q, div_err(a, b, q)); }

inline Ival sane(Ival r) noexcept {
  if (std::isnan(r.lo) || std::isnan(r.hi)) return {-kInf, kInf};
  return r;
}
}  // namespace ival_detail

inline Ival operator+(Ival a, Ival b) noexcept {
  return ival_detail::sane({ival_detail::add_lo(a.lo, b.lo), ival_detail::add_hi(a.hi, b.hi)});
}
inline Ival operator-(Ival a) noexcept { return {-a.hi, -a.lo}; }
inline Ival operator-(Ival a, Ival b) noexcept { return a + (-b); }
inline Ival operator*(Ival a, Ival b) noexcept {
  using namespace ival_detail;
  const double x[4][2] = {{a.lo, b.lo}, {a.lo, b.hi}, {a.hi, b.lo}, {a.hi, b.hi}};
  double lo = kInf, hi = -kInf;
  for (const auto& p : x) {
    if (std::isnan(p[0] * p[1])) return sane({NAN, NAN});
    lo = std::min(lo, mul_lo(p[0], p[1]));
    hi = std::max(hi, mul_hi(p[0], p[1]));
  }
  return {lo, hi};
}
inline Ival sqr(Ival a) noexcept {
  using namespace ival_detail;
  const double m = std::max(std::abs(a.lo), std::abs(a.hi));
  if (a.lo <= 0.0 && a.hi >= 0.0) return {0.0, mul_hi(m, m)};
  const double n = std::min(std::abs(a.lo), std::abs(a.hi));
  return {mul_lo(n, n), mul_hi(m, m)};
}
/// Division by an interval not containing zero; otherwise the whole line.
inline Ival operator/(Ival a, Ival b) noexcept {
  using namespace ival_detail;
  if (b.lo <= 0.0 && b.hi >= 0.0) return {-kInf, kInf};
  const double x[4][2] = {{a.lo, b.lo}, {a.lo, b.hi}, {a.hi, b.lo}, {a.hi, b.hi}};
  double lo = kInf, hi = -kInf;
  for (const auto& p : x) {
    if (std::isnan(p[0] / p[1])) return sane({NAN, NAN});
    lo = std::min(lo, div_lo(p[0], p[1]));
    hi = std::max(hi, div_hi(p[0], p[1]));
  }
  return {lo, hi};
}
inline Ival sqrt(Ival a) noexcept {
  using namespace ival_detail;
  const auto root = [](double x, bool want_hi) {
    const double s = std::sqrt(x);
    const double r = std::fma(-s, s, x);  // sign of x - s^2 is the sign of sqrt(x) - s
    return want_hi ? upper(s, r) : lower(s, r);
  };
  return {a.lo <= 0.0 ? 0.0 : std::max(0.0, root(a.lo, false)), root(std::max(0.0, a.hi), true)};
}
inline Ival hull(Ival a, Ival b) noexcept { return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)}; }

/// Axis-aligned complex box re x im.
struct Box {
  Ival re;
  Ival im;

  Box() = default;
  Box(Ival r, Ival i) : re(r), im(i) {}
  Box(Complex z) : re(z.real()), im(z.imag()) {}  // NOLINT: implicit point boxes

  static Box around(Complex z, double half) { return {{z.real() - half, z.real() + half}, {z.imag() - half, z.imag() + half}}; }

  bool finite() const noexcept { return re.finite() && im.finite(); }
  Complex mid() const noexcept { return {re.mid(), im.mid()}; }
  double max_width() const noexcept { return std::max(re.width(), im.width()); }
  /// b lies strictly inside *this.
  bool contains_interior(const Box& b) const noexcept {
    return re.lo < b.re.lo && b.re.hi < re.hi && im.lo < b.im.lo && b.im.hi < im.hi;
  }
  bool contains(Complex z) const noexcept { return re.contains(z.real()) && im.contains(z.imag()); }
};

inline Box operator+(const Box& a, const Box& b) noexcept { return {a.re + b.re, a.im + b.im}; }
inline Box operator-(const Box& a, const Box& b) noexcept { return {a.re - b.re, a.im - b.im}; }
inline Box operator*(const Box& a, const Box& b) noexcept {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline Box sqr(const Box& a) noexcept { return {sqr(a.re) - sqr(a.im), Ival(2.0) * (a.re * a.im)}; }
/// Enclosure of |z - c|^2 over the box.
inline Ival norm2(const Box& a, Complex c = {}) noexcept {
  return sqr(a.re - Ival(c.real())) + sqr(a.im - Ival(c.imag()));
}

/// Interval Horner; the result encloses p(b).
Box interval_eval(const Polynomial& p, const Box& b);
/// Chain evaluation, factor by factor.
Box interval_eval(const Generator& h, const Box& b);
/// Enclosure of h'(b) by the chain rule.
Box interval_derivative(const Generator& h, const Box& b);
/// Mean-value form h(m) + h'(b) (b - m) around the box midpoint m; its excess
/// shrinks quadratically with the box width.
Box interval_eval_centered(const Generator& h, const Box& b);
/// Intersection of the Horner and mean-value enclosures.
Box interval_enclose(const Generator& h, const Box& b);
/// Enclosure of 1 / b, or an unbounded box when b may contain zero.
Box reciprocal(const Box& b);

}  // namespace psg
