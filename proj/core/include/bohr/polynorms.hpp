#pragma once

#include <cstdint>

#include "bohr/interval.hpp"
#include "bohr/polynomial.hpp"

namespace bohr {

/// ||Q||_1 = sup_{z in dB} sum_alpha ||x_alpha z^alpha||.
///
/// q = inf: the closed form sum_alpha ||x_alpha||, degenerate and certified.
/// Finite q: multi-start projected ascent over the positive orthant of the
/// sphere. `lo` is the value at the best feasible witness (always valid),
/// `hi` the optimizer's estimate (status heuristic). If no restart reached a
/// stationary point, `hi` becomes the crude closed-form bound and the status
/// is `widened`.
BoundInterval norm_one(const HomogeneousPolynomial& q);

/// ||Q||_2 = sup_{z in dB} (sum_alpha ||x_alpha z^alpha||^2)^{1/2}, same
/// conventions as norm_one.
BoundInterval norm_two(const HomogeneousPolynomial& q);

struct SupEstimate {
  double lower = 0.0;  ///< ||P(witness)||, a valid lower bound of ||P||_inf
  CVector witness;     ///< feasible point on the unit sphere of l^n_q
};

/// Lower bound for ||P||_inf by multi-start ascent in magnitudes and phases.
/// Restart k depends only on (seed, k), so more restarts never lower the bound.
SupEstimate norm_sup_heuristic(const HomogeneousPolynomial& p, unsigned restarts, std::uint64_t seed);
SupEstimate norm_sup_heuristic(const TruncatedPowerSeries& f, unsigned restarts, std::uint64_t seed);

/// Evaluation budget for norm_sup_certified.
struct MeshGuard {
  std::size_t max_dim = 3;
  unsigned max_mesh = 64;
};

/// Certified enclosure of ||Q||_inf for q = inf by a phase mesh with spacing
/// 2 pi / mesh plus a phase-Lipschitz bound.
///
/// With one phase fixed by homogeneity, any torus point is within
/// delta = pi / mesh (max-coordinate distance) of a mesh node, and
/// ||Q(phi) - Q(phi')|| <= sum_alpha ||x_alpha|| |alpha.(phi - phi')|
///                      <= m sum_alpha ||x_alpha|| delta.
/// The Bernstein inequality for exponential sums of type m also gives
/// sup <= max_mesh / (1 - m delta); the smaller bound is used.
///
/// Throws std::invalid_argument for finite q, and std::length_error when n or
/// mesh exceed the guard.
BoundInterval norm_sup_certified(const HomogeneousPolynomial& q, unsigned mesh, MeshGuard guard = {});

/// Same for a truncated series on the polydisc; all n phases are meshed and
/// the Lipschitz constant is sum_alpha |alpha| ||x_alpha||.
BoundInterval norm_sup_certified(const TruncatedPowerSeries& f, unsigned mesh, MeshGuard guard = {});

/// Encloses sup_{z in B} sum_alpha ||x_alpha|| r^{|alpha|} |z^alpha|, including
/// the omitted-tail bound of f when present.
BoundInterval coefficient_majorant(const TruncatedPowerSeries& f, double r);

}  // namespace bohr
