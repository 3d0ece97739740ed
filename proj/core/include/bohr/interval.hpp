#pragma once

#include <string_view>

namespace bohr {

/// How much trust a BoundInterval carries.
///
/// `Certified` intervals are guaranteed to contain the true value: they come
/// from exact closed forms, outward-rounded arithmetic, or explicit tail and
/// Lipschitz bounds. `Heuristic` intervals have a guaranteed lower end (a
/// feasible witness) but an upper end that is only an optimizer estimate.
/// `Clamped` marks a certified interval that was intersected with [0, 1].
/// `Widened` marks an optimizer that did not converge: the upper end was
/// replaced by a crude but valid bound.
enum class BoundStatus { Certified, Heuristic, Clamped, Widened };

std::string_view to_string(BoundStatus status);

/// Enclosure [lo, hi] of a real quantity.
struct BoundInterval {
  double lo = 0.0;
  double hi = 0.0;
  BoundStatus status = BoundStatus::Certified;

  static BoundInterval exact(double v) { return {v, v, BoundStatus::Certified}; }

  double width() const { return hi - lo; }
  double mid() const { return lo + 0.5 * (hi - lo); }
  bool contains(double v) const { return lo <= v && v <= hi; }
  bool certified() const { return status == BoundStatus::Certified || status == BoundStatus::Clamped; }
};

/// Worst of two statuses, for quantities derived from both.
BoundStatus combine(BoundStatus a, BoundStatus b);

/// Outward-rounded interval arithmetic over doubles.
///
/// Every operation is computed in round-to-nearest and then widened by one
/// ulp in each direction, which covers the half-ulp rounding error of a
/// single IEEE operation. Only the operations the series and norm code need
/// are provided.
class Interval {
 public:
  constexpr Interval() = default;
  constexpr explicit Interval(double v) : lo_(v), hi_(v) {}
  Interval(double lo, double hi);

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double width() const { return hi_ - lo_; }

  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  friend Interval operator/(const Interval& a, const Interval& b);

  Interval& operator+=(const Interval& o) { return *this = *this + o; }
  Interval& operator*=(const Interval& o) { return *this = *this * o; }

 private:
  double lo_ = 0.0;
  double hi_ = 0.0;
};

/// Square root of a non-negative interval.
Interval sqrt(const Interval& x);

/// x^(1/k) for x >= 0, k >= 1.
Interval root(const Interval& x, unsigned k);

double round_down(double v);
double round_up(double v);

}  // namespace bohr
