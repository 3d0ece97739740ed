#pragma once

#include <optional>
#include <span>
#include <vector>

#include "bohr/multiindex.hpp"
#include "bohr/spaces.hpp"

namespace bohr {

/// One coefficient x_alpha in C^d of a polynomial.
struct Term {
  MultiIndex index;
  CVector coeff;
};

/// Vector-valued m-homogeneous polynomial Q(z) = sum_{|alpha| = m} x_alpha z^alpha.
///
/// Terms are kept sorted in the descending lexicographic order of
/// enumerate_indices, so every sum over terms runs in a fixed order.
class HomogeneousPolynomial {
 public:
  /// Validates that every index has degree m and length n, coefficient
  /// length d, and no index repeats.
  HomogeneousPolynomial(std::uint32_t degree, SpaceSpec spec, std::vector<Term> terms);

  /// Coefficients listed in enumerate_indices(m, n) order; zero entries are dropped.
  static HomogeneousPolynomial from_dense(std::uint32_t degree, SpaceSpec spec, const std::vector<CVector>& coeffs);
  static HomogeneousPolynomial zero(std::uint32_t degree, SpaceSpec spec);

  std::uint32_t degree() const { return degree_; }
  const SpaceSpec& spec() const { return spec_; }
  std::span<const Term> terms() const { return terms_; }
  bool is_zero() const;

  /// Coefficient at alpha, or nullptr when absent.
  const CVector* coefficient(const MultiIndex& alpha) const;

 private:
  std::uint32_t degree_ = 0;
  SpaceSpec spec_;
  std::vector<Term> terms_;
};

/// Majorant bound for the coefficients a truncation dropped: for every
/// degree k > the series' max_degree, sup_{z in B} sum_{|alpha| = k}
/// ||x_alpha z^alpha|| <= scale * ratio^(k-1).
struct GeometricTail {
  double scale = 0.0;
  double ratio = 0.0;

  /// Bound on sum_{k > max_degree} scale * ratio^(k-1) r^k.
  double majorant(std::uint32_t max_degree, double r) const;
};

/// Truncation f = sum_{|alpha| <= M} x_alpha z^alpha of a power series.
class TruncatedPowerSeries {
 public:
  TruncatedPowerSeries(std::uint32_t max_degree, SpaceSpec spec, std::vector<Term> terms);

  std::uint32_t max_degree() const { return max_degree_; }
  const SpaceSpec& spec() const { return spec_; }
  std::span<const Term> terms() const { return terms_; }

  /// x_0, the constant coefficient (zero vector when absent).
  CVector constant_term() const;
  /// Degree-m slice as a homogeneous polynomial.
  HomogeneousPolynomial slice(std::uint32_t m) const;

  /// Known bound on the omitted coefficients, when the series is a truncation
  /// of a known function.
  const std::optional<GeometricTail>& omitted_tail() const { return tail_; }
  void set_omitted_tail(GeometricTail tail) { tail_ = tail; }

  /// Sup norm of the untruncated function when known in closed form.
  const std::optional<double>& declared_sup() const { return declared_sup_; }
  void set_declared_sup(double v) { declared_sup_ = v; }

 private:
  std::uint32_t max_degree_ = 0;
  SpaceSpec spec_;
  std::vector<Term> terms_;
  std::optional<GeometricTail> tail_;
  std::optional<double> declared_sup_;
};

/// sum_alpha x_alpha z^alpha, compensated summation per codomain coordinate.
CVector evaluate(std::span<const Term> terms, std::size_t codomain_dim, std::span<const Complex> z);
CVector evaluate(const HomogeneousPolynomial& p, std::span<const Complex> z);
CVector evaluate(const TruncatedPowerSeries& f, std::span<const Complex> z);

/// (sum_alpha ||x_alpha z^alpha||_p^2)^{1/2}, the pointwise l^2 aggregate.
double coefficient_l2_aggregate(std::span<const Term> terms, Exponent p, std::span<const Complex> z);

/// sum_alpha ||x_alpha||_p.
double coefficient_l1_sum(std::span<const Term> terms, Exponent p);

}  // namespace bohr
