#include "bohr/interval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bohr {

std::string_view to_string(BoundStatus status) {
  switch (status) {
    case BoundStatus::Certified: return "certified";
    case BoundStatus::Heuristic: return "heuristic";
    case BoundStatus::Clamped: return "clamped";
    case BoundStatus::Widened: return "widened";
  }
  return "unknown";
}

BoundStatus combine(BoundStatus a, BoundStatus b) {
  auto rank = [](BoundStatus s) {
    switch (s) {
      case BoundStatus::Certified: return 0;
      case BoundStatus::Clamped: return 1;
      case BoundStatus::Widened: return 2;
      case BoundStatus::Heuristic: return 3;
    }
    return 3;
  };
  return rank(a) >= rank(b) ? a : b;
}

double round_down(double v) {
  if (v == 0.0) return -std::numeric_limits<double>::denorm_min();
  return std::nextafter(v, -std::numeric_limits<double>::infinity());
}

double round_up(double v) {
  if (v == 0.0) return std::numeric_limits<double>::denorm_min();
  return std::nextafter(v, std::numeric_limits<double>::infinity());
}

namespace {

// Exact zeros stay exact; it keeps x = 0 evaluations degenerate.
double down(double v) { return v == 0.0 ? 0.0 : round_down(v); }
double up(double v) { return v == 0.0 ? 0.0 : round_up(v); }

// Directed rounding from the exact error term: true value = v + err.
double lower_of(double v, double err) { return err < 0.0 ? round_down(v) : v; }
double upper_of(double v, double err) { return err > 0.0 ? round_up(v) : v; }

double sum_error(double a, double b, double s) {
  if (!std::isfinite(s)) return 0.0;
  const double bb = s - a;
  return (a - (s - bb)) + (b - bb);
}

double prod_error(double a, double b, double p) { return std::isfinite(p) ? std::fma(a, b, -p) : 0.0; }

// Sign of a/b - q.
double quot_error(double a, double b, double q) {
  if (!std::isfinite(q) || b == 0.0) return 0.0;
  const double r = std::fma(-q, b, a);
  return b > 0.0 ? r : -r;
}

}  // namespace

Interval::Interval(double lo, double hi) : lo_(lo), hi_(hi) {
  if (!(lo <= hi)) throw std::invalid_argument("Interval: lo > hi");
}

Interval operator+(const Interval& a, const Interval& b) {
  Interval r;
  const double lo = a.lo_ + b.lo_;
  const double hi = a.hi_ + b.hi_;
  r.lo_ = lower_of(lo, sum_error(a.lo_, b.lo_, lo));
  r.hi_ = upper_of(hi, sum_error(a.hi_, b.hi_, hi));
  return r;
}

Interval operator-(const Interval& a, const Interval& b) {
  Interval r;
  const double lo = a.lo_ - b.hi_;
  const double hi = a.hi_ - b.lo_;
  r.lo_ = lower_of(lo, sum_error(a.lo_, -b.hi_, lo));
  r.hi_ = upper_of(hi, sum_error(a.hi_, -b.lo_, hi));
  return r;
}

Interval operator*(const Interval& a, const Interval& b) {
  Interval r;
  r.lo_ = std::numeric_limits<double>::infinity();
  r.hi_ = -std::numeric_limits<double>::infinity();
  for (double x : {a.lo_, a.hi_})
    for (double y : {b.lo_, b.hi_}) {
      const double p = x * y;
      const double e = prod_error(x, y, p);
      r.lo_ = std::min(r.lo_, lower_of(p, e));
      r.hi_ = std::max(r.hi_, upper_of(p, e));
    }
  return r;
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.lo_ <= 0.0 && b.hi_ >= 0.0) throw std::domain_error("Interval: division by an interval containing 0");
  Interval r;
  r.lo_ = std::numeric_limits<double>::infinity();
  r.hi_ = -std::numeric_limits<double>::infinity();
  for (double x : {a.lo_, a.hi_})
    for (double y : {b.lo_, b.hi_}) {
      const double q = x / y;
      const double e = quot_error(x, y, q);
      r.lo_ = std::min(r.lo_, lower_of(q, e));
      r.hi_ = std::max(r.hi_, upper_of(q, e));
    }
  return r;
}

Interval sqrt(const Interval& x) {
  if (x.lo() < 0.0) throw std::domain_error("Interval: sqrt of negative interval");
  // IEEE sqrt is correctly rounded; the residual r*r - x tells the direction.
  auto lo_root = [](double v) {
    const double r = std::sqrt(v);
    return std::fma(r, r, -v) > 0.0 ? down(r) : r;
  };
  auto hi_root = [](double v) {
    const double r = std::sqrt(v);
    return std::fma(r, r, -v) < 0.0 ? up(r) : r;
  };
  return Interval(std::max(0.0, lo_root(x.lo())), hi_root(x.hi()));
}

Interval root(const Interval& x, unsigned k) {
  if (k == 0) throw std::invalid_argument("Interval: zeroth root");
  if (x.lo() < 0.0) throw std::domain_error("Interval: root of negative interval");
  if (k == 1) return x;
  if (k == 2) return sqrt(x);
  // std::pow is within a few ulp, but 1/k is itself rounded, which perturbs
  // the result by a relative |ln x| * eps. Widen by both.
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const double inv = 1.0 / static_cast<double>(k);
  auto bound = [&](double v, double sign) {
    if (v == 0.0 || v == 1.0) return v;
    const double r = std::pow(v, inv);
    const double rel = (8.0 + std::abs(std::log(v))) * eps;
    return sign < 0 ? round_down(r * (1.0 - rel)) : round_up(r * (1.0 + rel));
  };
  return Interval(std::max(0.0, bound(x.lo(), -1.0)), bound(x.hi(), 1.0));
}

}  // namespace bohr
