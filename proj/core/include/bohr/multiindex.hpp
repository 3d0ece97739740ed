#pragma once

#include <compare>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace bohr {

/// Exponent tuple alpha in N_0^n.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<std::uint32_t> entries);

  /// m * e_j in n variables.
  static MultiIndex corner(std::size_t n, std::size_t j, std::uint32_t m);

  std::size_t size() const { return entries_.size(); }
  std::uint32_t operator[](std::size_t i) const { return entries_[i]; }
  std::span<const std::uint32_t> entries() const { return entries_; }

  /// |alpha|, the total degree.
  std::uint64_t degree() const;

  /// True when alpha = |alpha| * e_j for some j and |alpha| > 0.
  bool is_corner() const;

  auto operator<=>(const MultiIndex&) const = default;

 private:
  std::vector<std::uint32_t> entries_;
};

/// N_m(n) = C(n+m-1, m), exactly.
///
/// Throws std::overflow_error when the result does not fit in 64 bits.
std::uint64_t count_multi_indices(std::uint64_t m, std::uint64_t n);

/// Lambda(m, n) in descending lexicographic order, e.g. (2,0), (1,1), (0,2).
std::vector<MultiIndex> enumerate_indices(std::uint32_t m, std::size_t n);

/// z^alpha = prod z_i^{alpha_i}; the empty product is 1.
std::complex<double> monomial_eval(const MultiIndex& alpha, std::span<const std::complex<double>> z);

/// prod t_i^{alpha_i} for real t.
double monomial_eval(const MultiIndex& alpha, std::span<const double> t);

}  // namespace bohr
