#pragma once

#include <cstdint>
#include <string_view>
#include <variant>

#include "bohr/polynomial.hpp"

namespace bohr {

enum class VerdictKind { Holds, Violated, Inconclusive };

std::string_view to_string(VerdictKind k);

struct Verdict {
  VerdictKind kind = VerdictKind::Inconclusive;
  /// Signed slack of the tested inequality; positive means it holds.
  double margin = 0.0;
  /// Violated verdicts are certified only against a certified or exact sup.
  bool certified = false;
  /// Domain point or family parameter behind the verdict.
  std::variant<std::monostate, CVector, double> witness;
};

/// f_a(z) = (a - z) / (1 - a z) truncated at degree M on the disc:
/// c_0 = a, c_k = -(1 - a^2) a^{k-1}. Carries the geometric omitted tail and
/// declared_sup = 1.
TruncatedPowerSeries moebius_family(double a, std::uint32_t M);

struct HeuristicSup {
  unsigned restarts = 16;
  std::uint64_t seed = 0;
};
struct CertifiedSup {
  unsigned mesh = 64;
};
struct DeclaredSup {
  double value = 1.0;
};
using SupMode = std::variant<HeuristicSup, CertifiedSup, DeclaredSup>;

/// Compares coefficient_majorant(f, r) with lambda * ||f||_inf.
///
/// The sup enclosure accounts for the omitted tail of f. A heuristic sup has
/// no upper end, so it can only ever support `holds`.
Verdict check_bohr_sample(const TruncatedPowerSeries& f, double r, double lambda, const SupMode& mode);

/// Tests sup_z sum_{|alpha| = m} ||x_alpha z^alpha|| <= sidon_upper (1 - ||x_0||^2)
/// for f with ||f||_inf <= 1. The left side is sampled (plus the norm_one
/// witness), so `holds` is a non-refutation; margin >= -1e-9 counts as holding.
Verdict wiener_bound_check(const TruncatedPowerSeries& f, std::uint32_t m, double sidon_upper, std::size_t samples,
                           std::uint64_t seed);

/// margin = max over the torus orbit of z of ||Q(v)|| minus
/// (sum_alpha ||x_alpha z^alpha||^2)^{1/2}.
///
/// Requires two corner coefficients x_{m e_j}, x_{m e_j'} sharing a nonzero
/// codomain coordinate, and all |z_i| > 0; throws std::invalid_argument
/// otherwise. The orbit is scanned on a phase grid (n <= 3), at the phase
/// alignment of the shared coordinate and at `samples` random phases. For
/// n <= 3 a grid-plus-Lipschitz upper bound of the orbit maximum certifies
/// violations.
Verdict corner_strictness_check(const HomogeneousPolynomial& q, const CVector& z, std::size_t samples,
                                std::uint64_t seed);

/// Series with independent complex Gaussian coefficients for every
/// multi-index of degree <= max_degree, scaled by 2^{-|alpha|}.
TruncatedPowerSeries random_series(const SpaceSpec& spec, std::uint32_t max_degree, std::uint64_t seed);

struct NormalizedSeries {
  TruncatedPowerSeries f;
  bool certified = false;  ///< ||f||_inf <= target is certified
};

/// Rescales f so that ||f||_inf <= target. Uses the certified mesh bound when
/// the guard allows it (q = inf, n <= 3; at most 2^16 mesh nodes), otherwise
/// the heuristic sup with an extra factor 0.9.
NormalizedSeries normalize_sup(const TruncatedPowerSeries& f, double target, std::uint64_t seed);

/// Random m-homogeneous polynomial (m >= 1, n >= 2) whose corner
/// coefficients at e_1 and e_2 share a nonzero codomain coordinate.
HomogeneousPolynomial random_corner_instance(std::uint32_t m, const SpaceSpec& spec, std::uint64_t seed);

}  // namespace bohr
