#include "bohr/polynomial.hpp"

#include "bohr/interval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bohr {

namespace {

void sort_and_check(std::vector<Term>& terms, const SpaceSpec& spec) {
  for (const auto& t : terms) {
    if (t.index.size() != spec.domain_dim) throw std::invalid_argument("polynomial: index length != n");
    if (t.coeff.size() != spec.codomain_dim) throw std::invalid_argument("polynomial: coefficient length != d");
  }
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
    if (a.index.degree() != b.index.degree()) return a.index.degree() < b.index.degree();
    return a.index > b.index;
  });
  for (std::size_t i = 1; i < terms.size(); ++i)
    if (terms[i].index == terms[i - 1].index) throw std::invalid_argument("polynomial: repeated multi-index");
}

// Neumaier compensated sum, real and imaginary parts separately.
struct CompensatedSum {
  double re = 0.0, re_c = 0.0, im = 0.0, im_c = 0.0;

  static void add(double& s, double& c, double x) {
    const double t = s + x;
    if (std::abs(s) >= std::abs(x))
      c += (s - t) + x;
    else
      c += (x - t) + s;
    s = t;
  }
  void add(Complex v) {
    add(re, re_c, v.real());
    add(im, im_c, v.imag());
  }
  Complex value() const { return {re + re_c, im + im_c}; }
};

}  // namespace

HomogeneousPolynomial::HomogeneousPolynomial(std::uint32_t degree, SpaceSpec spec, std::vector<Term> terms)
    : degree_(degree), spec_(spec), terms_(std::move(terms)) {
  spec_.validate();
  for (const auto& t : terms_)
    if (t.index.degree() != degree_) throw std::invalid_argument("HomogeneousPolynomial: term degree != m");
  sort_and_check(terms_, spec_);
}

HomogeneousPolynomial HomogeneousPolynomial::from_dense(std::uint32_t degree, SpaceSpec spec,
                                                        const std::vector<CVector>& coeffs) {
  auto indices = enumerate_indices(degree, spec.domain_dim);
  if (coeffs.size() != indices.size()) throw std::invalid_argument("from_dense: need N_m(n) coefficients");
  std::vector<Term> terms;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    const bool nonzero = std::any_of(coeffs[i].begin(), coeffs[i].end(), [](Complex c) { return c != Complex{}; });
    if (nonzero) terms.push_back({std::move(indices[i]), coeffs[i]});
  }
  return HomogeneousPolynomial(degree, spec, std::move(terms));
}

HomogeneousPolynomial HomogeneousPolynomial::zero(std::uint32_t degree, SpaceSpec spec) {
  return HomogeneousPolynomial(degree, spec, {});
}

bool HomogeneousPolynomial::is_zero() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) {
    return std::all_of(t.coeff.begin(), t.coeff.end(), [](Complex c) { return c == Complex{}; });
  });
}

const CVector* HomogeneousPolynomial::coefficient(const MultiIndex& alpha) const {
  for (const auto& t : terms_)
    if (t.index == alpha) return &t.coeff;
  return nullptr;
}

double GeometricTail::majorant(std::uint32_t max_degree, double r) const {
  if (scale == 0.0 || r == 0.0) return 0.0;
  if (ratio * r >= 1.0) return std::numeric_limits<double>::infinity();
  // sum_{k > M} scale ratio^{k-1} r^k = scale ratio^M r^{M+1} / (1 - ratio r)
  const double head = scale * std::pow(ratio, max_degree) * std::pow(r, max_degree + 1.0);
  // pow and the division each carry a few ulp; widen generously.
  constexpr double eps = std::numeric_limits<double>::epsilon();
  return round_up(head / (1.0 - ratio * r) * (1.0 + (2.0 * max_degree + 16.0) * eps));
}

TruncatedPowerSeries::TruncatedPowerSeries(std::uint32_t max_degree, SpaceSpec spec, std::vector<Term> terms)
    : max_degree_(max_degree), spec_(spec), terms_(std::move(terms)) {
  spec_.validate();
  for (const auto& t : terms_)
    if (t.index.degree() > max_degree_) throw std::invalid_argument("TruncatedPowerSeries: term degree > M");
  sort_and_check(terms_, spec_);
}

CVector TruncatedPowerSeries::constant_term() const {
  for (const auto& t : terms_)
    if (t.index.degree() == 0) return t.coeff;
  return CVector(spec_.codomain_dim, Complex{});
}

HomogeneousPolynomial TruncatedPowerSeries::slice(std::uint32_t m) const {
  std::vector<Term> out;
  for (const auto& t : terms_)
    if (t.index.degree() == m) out.push_back(t);
  return HomogeneousPolynomial(m, spec_, std::move(out));
}

CVector evaluate(std::span<const Term> terms, std::size_t codomain_dim, std::span<const Complex> z) {
  std::vector<CompensatedSum> acc(codomain_dim);
  for (const auto& t : terms) {
    const Complex mono = monomial_eval(t.index, z);
    for (std::size_t k = 0; k < codomain_dim; ++k) acc[k].add(t.coeff[k] * mono);
  }
  CVector out(codomain_dim);
  for (std::size_t k = 0; k < codomain_dim; ++k) out[k] = acc[k].value();
  return out;
}

CVector evaluate(const HomogeneousPolynomial& p, std::span<const Complex> z) {
  if (z.size() != p.spec().domain_dim) throw std::invalid_argument("evaluate: point length != n");
  return evaluate(p.terms(), p.spec().codomain_dim, z);
}

CVector evaluate(const TruncatedPowerSeries& f, std::span<const Complex> z) {
  if (z.size() != f.spec().domain_dim) throw std::invalid_argument("evaluate: point length != n");
  return evaluate(f.terms(), f.spec().codomain_dim, z);
}

double coefficient_l2_aggregate(std::span<const Term> terms, Exponent p, std::span<const Complex> z) {
  double acc = 0.0;
  for (const auto& t : terms) {
    const double v = vector_norm(std::span<const Complex>(t.coeff), p) * std::abs(monomial_eval(t.index, z));
    acc += v * v;
  }
  return std::sqrt(acc);
}

double coefficient_l1_sum(std::span<const Term> terms, Exponent p) {
  double acc = 0.0;
  for (const auto& t : terms) acc += vector_norm(std::span<const Complex>(t.coeff), p);
  return acc;
}

}  // namespace bohr
