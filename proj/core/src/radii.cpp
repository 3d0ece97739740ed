#include "bohr/radii.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bohr {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr std::uint64_t kMaxTerms = 20'000'000;

// Coefficients c_m split into an explicit head (m <= head) and a tail whose
// consecutive ratios c_{m+1}/c_m are known in closed form.
class Coefficients {
 public:
  explicit Coefficients(const SeriesSpec& s) : n_(s.n) {
    if (s.n == 0) throw std::invalid_argument("eval_series: n must be >= 1");
    if (const auto* t = std::get_if<TableCoefficients>(&s.source)) {
      if (t->table.n != s.n) throw std::invalid_argument("eval_series: table built for a different n");
      t->table.validate();
      upper_side_ = t->side == TableSide::Upper;
      factor_ = upper_side_ ? t->table.tail_upper_factor : 1.0;
      for (const auto& pr : t->table.per_m) {
        if (upper_side_) {
          head_.push_back(pr.upper);
        } else if (pr.certified || !t->certified_only) {
          head_.push_back(pr.lower);
          if (!pr.certified && pr.lower > 1.0) status_ = BoundStatus::Heuristic;
        } else {
          head_.push_back(1.0);
        }
      }
    } else {
      head_.push_back(1.0);
    }
  }

  std::uint64_t head() const { return head_.size(); }
  BoundStatus status() const { return status_; }

  Interval explicit_coeff(std::uint64_t m) const { return Interval(head_[m - 1]); }

  // c_m for the first tail index, computed directly.
  Interval first_tail_coeff(std::uint64_t m) const {
    if (!upper_side_) return Interval(1.0);
    Interval count(static_cast<double>(n_));
    for (std::uint64_t k = 2; k <= m; ++k)
      count = count * Interval(static_cast<double>(n_ + k - 1)) / Interval(static_cast<double>(k));
    return Interval(factor_) * sqrt(count);
  }

  // c_{m+1} / c_m inside the tail.
  Interval ratio(std::uint64_t m) const {
    if (!upper_side_) return Interval(1.0);
    return sqrt(Interval(static_cast<double>(n_ + m)) / Interval(static_cast<double>(m + 1)));
  }

  // Upper bound on c_{k+1}/c_k for every k > m.
  double ratio_bound(std::uint64_t m) const { return ratio(m).hi(); }

 private:
  std::size_t n_;
  std::vector<double> head_;
  bool upper_side_ = true;  // sqrtN mode behaves like the upper side with factor 1
  double factor_ = 1.0;
  BoundStatus status_ = BoundStatus::Certified;
};

}  // namespace

BoundInterval eval_series(const SeriesSpec& s, double x, double tol) {
  if (!(x >= 0.0 && x < 1.0)) throw std::domain_error("eval_series: x must lie in [0, 1)");
  if (!(tol > 0.0)) throw std::invalid_argument("eval_series: tol must be > 0");
  const Coefficients c(s);
  if (x == 0.0) return {0.0, 0.0, c.status()};

  const Interval xi(x);
  const std::uint64_t head = c.head();
  Interval xpow(1.0);
  Interval sum(0.0);
  Interval next;
  for (std::uint64_t m = 1; m <= kMaxTerms; ++m) {
    Interval t;
    if (m <= head) {
      xpow = xpow * xi;
      t = c.explicit_coeff(m) * xpow;
    } else {
      t = next;
    }
    sum += t;
    if (m < head) continue;

    if (m == head) {
      next = c.first_tail_coeff(m + 1) * (xpow * xi);
    } else {
      next = t * c.ratio(m) * xi;
    }
    // Terms beyond m: c_{m+1} x^{m+1} / (1 - rho x).
    const Interval denom = Interval(1.0) - Interval(c.ratio_bound(m)) * xi;
    if (denom.lo() <= 0.0) continue;
    const double tail = (Interval(next.hi()) / Interval(denom.lo())).hi();
    if (tail <= std::max(0.5 * tol, 16.0 * kEps * sum.hi())) {
      return {sum.lo(), tail == 0.0 ? sum.hi() : round_up(sum.hi() + tail), c.status()};
    }
  }
  throw std::runtime_error("eval_series: no convergence within " + std::to_string(kMaxTerms) + " terms at x = " +
                           std::to_string(x));
}

RootEnclosure solve_root(const SeriesSpec& s, double tol) {
  if (!(s.lambda >= 1.0)) throw std::invalid_argument("solve_root: lambda must be >= 1");
  if (!(tol > 0.0)) throw std::invalid_argument("solve_root: tol must be > 0");
  const double target = s.lambda / 2.0;
  BoundStatus status = BoundStatus::Certified;
  auto eval = [&](double x, double etol) {
    const auto v = eval_series(s, x, etol);
    status = combine(status, v.status);
    return v;
  };

  RootEnclosure out;
  double lo = 0.0;
  // Every coefficient is >= 1, so the series dominates x/(1-x) and the root
  // lies below lambda/(lambda+2). Start there and widen if undecided.
  double hi = (Interval(s.lambda) / Interval(s.lambda + 2.0)).hi();
  while (!(eval(hi, tol).lo > target)) {
    hi = 0.5 * (hi + 1.0);
    if (hi >= 1.0) throw std::runtime_error("solve_root: could not bracket the root");
  }

  double etol = 0.25 * tol;
  const double etol_floor = 1e-17;
  while (hi - lo > tol) {
    ++out.iterations;
    const double mid = lo + 0.5 * (hi - lo);
    const auto v = eval(mid, etol);
    if (v.lo > target) {
      hi = mid;
    } else if (v.hi < target) {
      lo = mid;
    } else if (etol > etol_floor) {
      etol = std::max(etol_floor, etol / 16.0);
    } else {
      // The root sits within rounding of mid; probe a quarter-tol either side.
      const double a = std::max(lo, mid - 0.25 * tol);
      const double b = std::min(hi, mid + 0.25 * tol);
      bool moved = false;
      if (a > lo && eval(a, etol).hi < target) {
        lo = a;
        moved = true;
      }
      if (b < hi && eval(b, etol).lo > target) {
        hi = b;
        moved = true;
      }
      if (!moved) break;
    }
    if (out.iterations > 10'000) break;
  }
  out.root = {lo, hi, status};
  return out;
}

GammaBounds solve_gamma_bounds(std::size_t n, double lambda, const CoefficientBounds& table, double tol,
                               bool certified_only) {
  SeriesSpec upper{n, TableCoefficients{table, TableSide::Upper, certified_only}, lambda};
  SeriesSpec lower{n, TableCoefficients{table, TableSide::Lower, certified_only}, lambda};
  return {solve_root(upper, tol).root, solve_root(lower, tol).root};
}

double asymptotic_reference(std::size_t n, Exponent q) {
  if (n < 2) throw std::invalid_argument("asymptotic_reference: n must be >= 2");
  const double qq = q.is_infinite() ? 2.0 : std::min(q.value(), 2.0);
  const double e = 1.0 - 1.0 / qq;
  const double base = std::log(static_cast<double>(n)) / static_cast<double>(n);
  return std::pow(base, e);
}

BohrReport bohr_bounds_report(std::size_t n, double lambda, const SpaceSpec& spec, const CoefficientBounds& table,
                              std::optional<double> k_disk, double tol) {
  spec.validate();
  if (spec.domain_dim != n || table.n != n) throw std::invalid_argument("bohr_bounds_report: n differs from spec or table");
  if (k_disk && !(*k_disk > 0.0 && *k_disk <= 1.0))
    throw std::invalid_argument("bohr_bounds_report: K_disk must lie in (0, 1]");

  BohrReport r;
  r.n = n;
  r.lambda = lambda;
  r.spec = spec;
  r.provenance = table.provenance;
  r.beta = solve_root(SeriesSpec{n, SqrtNCoefficients{}, lambda}, tol).root;
  const auto g = solve_gamma_bounds(n, lambda, table, tol);
  r.gamma_lo = g.gamma_lo;
  r.gamma_hi = g.gamma_hi;
  r.k_lower = g.gamma_lo.lo;
  // K^n <= K(D, X, lambda) as well as gamma_n / K(D, X, lambda)
  if (k_disk) r.k_upper = std::min(*k_disk, (Interval(g.gamma_hi.hi) / Interval(*k_disk)).hi());
  if (n >= 2) r.asymptotic_ref = asymptotic_reference(n, spec.domain_exponent);
  r.gamma_capital = gamma_capital(table);
  r.one_third_bound = (Interval(1.0) / (Interval(3.0) * Interval(r.gamma_capital.hi))).lo();
  r.one_third_ok = r.gamma_lo.lo > r.one_third_bound;

  const double trivial_root = (Interval(lambda) / Interval(lambda + 2.0)).hi();
  r.chain_ok = r.beta.lo <= r.gamma_lo.hi && r.gamma_lo.lo <= r.gamma_hi.hi && r.gamma_hi.lo <= trivial_root;
  r.large_lambda = lambda >= 2.0;
  r.theorem_applies = spec.scalar_codomain();

  r.gap = r.gamma_hi.hi - r.gamma_lo.lo;
  if (table.m_max > 2) {
    const auto cut = solve_gamma_bounds(n, lambda, table.truncated(table.m_max - 2), tol);
    r.gap_truncated = cut.gamma_hi.hi - cut.gamma_lo.lo;
  }
  return r;
}

}  // namespace bohr
