#pragma once

// Outward-rounded double intervals. Every operation rounds to nearest and
// then pushes each endpoint past the exact result by a margin of 2^-51
// relative plus a subnormal floor, which dominates the rounding error of a
// single correctly rounded IEEE operation.

#include <lat40/matrix.hpp>

#include <algorithm>
#include <cmath>

namespace lat40::interval {

inline constexpr double kRel = 0x1p-51;
inline constexpr double kAbs = 0x1p-1000;

inline double down(double x) { return x - (std::fabs(x) * kRel + kAbs); }
inline double up(double x) { return x + (std::fabs(x) * kRel + kAbs); }

struct Interval {
  double lo = 0, hi = 0;
};

Interval from_rational(const Rational& q);

inline Interval add(Interval a, Interval b) { return {down(a.lo + b.lo), up(a.hi + b.hi)}; }

// a·k for an exactly representable integer k.
inline Interval scale(Interval a, double k) {
  if (k >= 0) return {down(a.lo * k), up(a.hi * k)};
  return {down(a.hi * k), up(a.lo * k)};
}

// k - a for an exactly representable integer k.
inline Interval sub_from(double k, Interval a) { return {down(k - a.hi), up(k - a.lo)}; }

inline Interval square(Interval a) {
  if (a.lo >= 0) return {std::max(0.0, down(a.lo * a.lo)), up(a.hi * a.hi)};
  if (a.hi <= 0) return {std::max(0.0, down(a.hi * a.hi)), up(a.lo * a.lo)};
  return {0.0, up(std::max(a.lo * a.lo, a.hi * a.hi))};
}

// Product of two intervals with non-negative lower ends.
inline Interval mul_nonneg(Interval a, Interval b) {
  return {std::max(0.0, down(a.lo * b.lo)), up(a.hi * b.hi)};
}

// Upper bound of sqrt(x / y) for x >= 0, y > 0 given as upper and lower ends.
inline double sqrt_ratio_up(double x_hi, double y_lo) {
  if (x_hi <= 0) return 0.0;
  return up(std::sqrt(up(x_hi / y_lo)));
}

}  // namespace lat40::interval
