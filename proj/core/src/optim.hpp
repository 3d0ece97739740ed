#pragma once

// Local optimizers over the positive orthant of the l^n_q sphere and over
// points of the sphere with phases. Internal to bohrkit_core.

#include <cstdint>
#include <span>
#include <vector>

#include "bohr/polynomial.hpp"
#include "bohr/spaces.hpp"

namespace bohr::detail {

/// G(t) = sum_i w_i t^{beta_i} with w_i >= 0 and integer beta_i.
struct PositivePolynomial {
  std::vector<double> weights;
  std::vector<std::vector<std::uint32_t>> exponents;
  std::size_t dim = 0;

  double value(std::span<const double> t) const;
  void gradient(std::span<const double> t, std::span<double> out) const;
};

/// sum ||x_alpha||_p t^alpha (power = 1) or sum ||x_alpha||_p^2 t^{2 alpha} (power = 2).
PositivePolynomial majorant_polynomial(std::span<const Term> terms, Exponent p, unsigned power, double radius = 1.0);

struct PositiveMax {
  double value = 0.0;
  std::vector<double> witness;
  bool converged = false;
};

/// Multi-start projected ascent of G over {t >= 0, ||t||_q = 1}, q finite.
/// `extra_starts` are tried first, then the barycentre, corners, pair
/// midpoints and `random_starts` seeded points. With `structured` false only
/// the extra and random starts are used.
PositiveMax maximize_on_positive_sphere(const PositivePolynomial& g, Exponent q, std::size_t random_starts,
                                        std::uint64_t seed, std::span<const std::vector<double>> extra_starts = {},
                                        bool structured = true);

/// Crude certified bound: sum_i w_i max_{||t||_q = 1} t^{beta_i}, using the
/// closed-form maximizer t_j = (beta_j / |beta|)^{1/q}.
double positive_sphere_upper_bound(const PositivePolynomial& g, Exponent q);

/// Maximizes ||sum x_alpha z^alpha||_p over the unit sphere of l^n_q.
/// For q = inf only phases move (the sup sits on the torus).
struct SupSearch {
  std::span<const Term> terms;
  SpaceSpec spec;
  unsigned max_iterations = 300;

  double value(std::span<const Complex> z) const;
  /// Ascent from z; returns the final value, z is updated in place.
  double ascend(CVector& z) const;
};

/// Rounding-error bound for one evaluation of ||sum x_alpha z^alpha||_p with
/// |z_i| <= 1.
double evaluation_error_bound(std::span<const Term> terms, const SpaceSpec& spec);

}  // namespace bohr::detail
