#include "interval.hpp"

namespace lat40::interval {

Interval from_rational(const Rational& q) {
  // mpq_get_d truncates, so the exact value is within one ulp of d.
  const double d = q.get_d();
  return {down(down(d)), up(up(d))};
}

}  // namespace lat40::interval
