#pragma once

#include <cstdint>
#include <optional>
#include <variant>

#include "bohr/interval.hpp"
#include "bohr/sidon.hpp"

namespace bohr {

/// H_n: coefficient 1 at m = 1, sqrt(N_m(n)) for m >= 2.
struct SqrtNCoefficients {};

enum class TableSide { Lower, Upper };

/// H~_n with table coefficients. Upper side: U_m, then
/// tail_upper_factor * sqrt(N_m(n)) beyond m_max. Lower side: L_m, then 1.
/// With `certified_only`, heuristic L_m are replaced by 1.
struct TableCoefficients {
  CoefficientBounds table;
  TableSide side = TableSide::Upper;
  bool certified_only = true;
};

struct SeriesSpec {
  std::size_t n = 1;
  std::variant<SqrtNCoefficients, TableCoefficients> source;
  double lambda = 1.0;
};

/// Encloses sum_m c_m x^m for 0 <= x < 1 with width <= tol (up to rounding
/// of the partial sum). Throws std::domain_error for x outside [0, 1).
BoundInterval eval_series(const SeriesSpec& s, double x, double tol);

struct RootEnclosure {
  BoundInterval root;
  unsigned iterations = 0;
};

/// Root of series(x) = lambda / 2 in (0, 1) by bisection on certified
/// evaluations. Width <= tol.
RootEnclosure solve_root(const SeriesSpec& s, double tol);

struct GammaBounds {
  BoundInterval gamma_lo;  ///< root with upper-side coefficients
  BoundInterval gamma_hi;  ///< root with lower-side coefficients
};

GammaBounds solve_gamma_bounds(std::size_t n, double lambda, const CoefficientBounds& table, double tol,
                               bool certified_only = true);

/// (ln n / n)^{1 - 1/min(q, 2)}, n >= 2.
double asymptotic_reference(std::size_t n, Exponent q);

struct BohrReport {
  std::size_t n = 1;
  double lambda = 1.0;
  SpaceSpec spec;
  BoundInterval beta;
  BoundInterval gamma_lo;
  BoundInterval gamma_hi;
  double k_lower = 0.0;
  /// min(K_disk, gamma_hi / K_disk) when K_disk is given.
  std::optional<double> k_upper;
  std::optional<double> asymptotic_ref;
  BoundInterval gamma_capital;
  /// 1 / (3 Gamma_n), rounded down from the upper end of Gamma_n.
  double one_third_bound = 0.0;
  /// beta <= gamma_lo <= gamma_hi <= lambda / (lambda + 2), interval-wise.
  bool chain_ok = false;
  /// gamma_lo.lo > one_third_bound.
  bool one_third_ok = false;
  bool large_lambda = false;
  /// The lower bound gamma_n <= K^n relies on lemmas proved for scalar
  /// codomains; false for d >= 2.
  bool theorem_applies = true;
  /// gamma_hi.hi - gamma_lo.lo with the table cut at m_max - 2 (when m_max > 2).
  std::optional<double> gap_truncated;
  double gap = 0.0;
  std::string provenance;
};

/// Assembles beta_n, the gamma_n enclosure and the derived bounds for one n.
/// k_disk, when given, must lie in (0, 1].
BohrReport bohr_bounds_report(std::size_t n, double lambda, const SpaceSpec& spec, const CoefficientBounds& table,
                              std::optional<double> k_disk, double tol);

}  // namespace bohr
