#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace bohr {

using Complex = std::complex<double>;
/// A point of C^n (domain) or a vector of C^d (codomain).
using CVector = std::vector<Complex>;

/// An l^p exponent: a finite real >= 1 or infinity.
class Exponent {
 public:
  static Exponent finite(double p);
  static Exponent infinity() { return Exponent(); }
  /// Accepts "inf" (also "infinity", "Inf") or a decimal number >= 1.
  static Exponent parse(const std::string& text);

  bool is_infinite() const { return infinite_; }
  /// Finite value; throws for infinity.
  double value() const;
  /// Finite value or +inf.
  double as_double() const;

  /// "inf" or the shortest round-trip decimal.
  std::string to_string() const;

  bool operator==(const Exponent&) const = default;

 private:
  Exponent() = default;
  double value_ = 0.0;
  bool infinite_ = true;
};

/// Domain l^n_q and codomain X = l^d_p.
struct SpaceSpec {
  std::size_t domain_dim = 1;
  Exponent domain_exponent = Exponent::infinity();
  std::size_t codomain_dim = 1;
  Exponent codomain_exponent = Exponent::finite(2.0);

  static SpaceSpec scalar(std::size_t n, Exponent q) { return SpaceSpec{n, q, 1, Exponent::finite(2.0)}; }

  /// Throws std::invalid_argument on n = 0 or d = 0.
  void validate() const;
  bool scalar_codomain() const { return codomain_dim == 1; }

  bool operator==(const SpaceSpec&) const = default;
};

double vector_norm(std::span<const Complex> v, Exponent exponent);
double vector_norm(std::span<const double> v, Exponent exponent);

/// p' with 1/p + 1/p' = 1.
Exponent dual_exponent(Exponent p);

/// Deterministic 64-bit seed derived from (seed, index); splitmix64 mixing.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// `count` points on the unit sphere of l^n_q: complex Gaussians normalized in
/// the q-norm. Not surface-uniform for q != 2; phases are uniform.
std::vector<CVector> sample_sphere(const SpaceSpec& spec, std::uint64_t seed, std::size_t count);

/// (z_1 e^{2 pi i theta_1}, ..., z_n e^{2 pi i theta_n}).
CVector torus_orbit(std::span<const Complex> z, std::span<const double> theta);

/// Norming functional of v in the dual of l^d_p: w with ||w||_{p'} <= 1 and
/// Re sum w_k v_k = ||v||_p. Zero vector maps to zero.
CVector norming_functional(std::span<const Complex> v, Exponent p);

}  // namespace bohr
