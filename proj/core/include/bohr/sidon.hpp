#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bohr/interval.hpp"
#include "bohr/polynomial.hpp"

namespace bohr {

class SidonCache;
struct CacheRecord;

/// How the lower end of a SidonEstimate was obtained.
enum class SidonMethod {
  ExactM1,     ///< m = 1, scalar codomain: S(1, n) = 1
  Search,      ///< coefficient-space witness search
  TrivialOne,  ///< budget 0: single-monomial witness, ratio 1
  SqrtNCap,    ///< the upper cap is 1, so lower = upper = 1
};

/// Which certified bound supplies the upper end.
enum class UpperSource {
  Exact,            ///< known value (m = 1 scalar)
  SqrtN,            ///< sqrt(N_m(n)), Parseval; scalar or l^d_2 codomains
  ParitySplit,      ///< 1 + (n-1)/sqrt(2) for m = 2, scalar codomain
  NormEquivalence,  ///< min(N, d^{|1/2-1/p|} sqrt(N)) for other l^d_p
};

std::string_view to_string(SidonMethod m);
std::string_view to_string(UpperSource s);
SidonMethod parse_sidon_method(std::string_view text);
UpperSource parse_upper_source(std::string_view text);

/// Two-sided estimate of S(m, n) = chi_mon(P(^m l^n_q, X)).
struct SidonEstimate {
  std::uint32_t m = 1;
  std::size_t n = 1;
  SpaceSpec spec;
  double lower = 1.0;
  double upper = 1.0;
  std::optional<HomogeneousPolynomial> witness;
  SidonMethod method = SidonMethod::TrivialOne;
  std::uint64_t seed = 0;
  std::uint64_t budget = 0;
  /// True when `lower` is backed by a certified sup-norm bound (or is exact).
  bool certified = true;
  UpperSource upper_source = UpperSource::SqrtN;
};

/// Tuning of the witness search. Budget is spent in fixed segments of a
/// fixed restart sequence, so the estimate is monotone in budget.
struct SidonSearchOptions {
  unsigned segment = 50;           ///< evaluations between certifications
  unsigned restart_length = 500;   ///< evaluations per restart
  unsigned certification_mesh = 64;
  unsigned checkpoint_sup_restarts = 24;  ///< heuristic sup restarts when uncertifiable
};

/// Certified upper bound for S(m, n) on `spec` and where it comes from.
std::pair<double, UpperSource> sidon_upper_cap(std::uint32_t m, const SpaceSpec& spec);

/// Factor c with S(m, n) <= c sqrt(N_m(n)) for every m (1 for scalar and
/// l^d_2 codomains, d^{|1/2 - 1/p|} otherwise).
double sidon_tail_factor(const SpaceSpec& spec);

/// Lower and upper bounds for S(m, n), n = spec.domain_dim.
///
/// Budget 0 gives [1, cap] with a single-monomial witness. Otherwise the
/// search maximizes ||Q||_1 / ||Q||_inf over coefficient vectors on the unit
/// sphere; on the polydisc with n <= 3 every checkpoint is certified with
/// norm_sup_certified, elsewhere the ratio is heuristic and `certified` is
/// false.
SidonEstimate sidon_bounds(std::uint32_t m, const SpaceSpec& spec, std::uint64_t budget, std::uint64_t seed,
                           const SidonSearchOptions& options = {});

/// chi_mon(P(^m l^n_q, X)); the same constant as S(m, n).
inline SidonEstimate chi_mon(std::uint32_t m, const SpaceSpec& spec, std::uint64_t budget, std::uint64_t seed,
                             const SidonSearchOptions& options = {}) {
  return sidon_bounds(m, spec, budget, seed, options);
}

/// Cache record for `e`, stamped with the current time. Uncertified search
/// results carry the method tag "search-heuristic".
CacheRecord to_cache_record(const SidonEstimate& e);

enum class TailPolicy { SqrtNUpperOneLower };

struct CoefficientPair {
  double lower = 1.0;
  double upper = 1.0;
  bool certified = true;  ///< lower end certified
};

/// Bounds (L_m, U_m) on S(m, n) for 1 <= m <= m_max. Beyond m_max,
/// L_m = 1 and U_m = tail_upper_factor * sqrt(N_m(n)).
struct CoefficientBounds {
  std::size_t n = 1;
  std::uint32_t m_max = 1;
  SpaceSpec spec;
  std::vector<CoefficientPair> per_m;  ///< per_m[m - 1]
  TailPolicy tail_policy = TailPolicy::SqrtNUpperOneLower;
  double tail_upper_factor = 1.0;
  std::string provenance = "computed";
  std::size_t cache_warnings = 0;

  const CoefficientPair& at(std::uint32_t m) const { return per_m.at(m - 1); }
  /// Throws std::invalid_argument unless 1 <= L_m <= U_m <= cap for all m.
  void validate() const;
  /// Copy keeping only m <= new_max.
  CoefficientBounds truncated(std::uint32_t new_max) const;
};

/// Table with L_m = 1 and U_m = cap for m >= 2 (and the exact m = 1 entry
/// for scalar codomains).
CoefficientBounds trivial_table(std::uint32_t m_max, const SpaceSpec& spec);

/// Runs sidon_bounds for m = 1..m_max, reading and writing `cache` when
/// given. Cache entries are keyed by (m, n, q, d, p, budget, seed).
CoefficientBounds build_coefficient_table(std::uint32_t m_max, const SpaceSpec& spec, std::uint64_t budget,
                                          std::uint64_t seed, SidonCache* cache = nullptr,
                                          const SidonSearchOptions& options = {});

/// K^n_m = (lambda / chi)^{1/m} for an enclosure of chi, clamped to [0, 1]
/// (status `clamped` when the clamp was active).
BoundInterval homogeneous_bohr_radius(std::uint32_t m, double lambda, const BoundInterval& chi);

/// Gamma_n = sup_m S(m, n)^{1/m}, enclosed from the table and its tail.
BoundInterval gamma_capital(const CoefficientBounds& table);

}  // namespace bohr
