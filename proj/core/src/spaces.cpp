#include "bohr/spaces.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace bohr {

Exponent Exponent::finite(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw std::invalid_argument("Exponent: finite exponent must be a real >= 1");
  Exponent e;
  e.value_ = p;
  e.infinite_ = false;
  return e;
}

Exponent Exponent::parse(const std::string& text) {
  if (text == "inf" || text == "Inf" || text == "infinity" || text == "INF") return infinity();
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end) throw std::invalid_argument("Exponent: cannot parse '" + text + "'");
  return finite(v);
}

double Exponent::value() const {
  if (infinite_) throw std::logic_error("Exponent: value() of infinity");
  return value_;
}

double Exponent::as_double() const { return infinite_ ? std::numeric_limits<double>::infinity() : value_; }

std::string Exponent::to_string() const {
  if (infinite_) return "inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value_);
  return std::string(buf, ptr);
}

void SpaceSpec::validate() const {
  if (domain_dim == 0) throw std::invalid_argument("SpaceSpec: domain dimension n must be >= 1");
  if (codomain_dim == 0) throw std::invalid_argument("SpaceSpec: codomain dimension d must be >= 1");
}

namespace {

template <class Abs, class T>
double lp_norm(std::span<const T> v, Exponent exponent, Abs abs) {
  if (v.empty()) throw std::invalid_argument("vector_norm: empty vector");
  double scale = 0.0;
  for (const auto& x : v) scale = std::max(scale, abs(x));
  if (exponent.is_infinite() || scale == 0.0) return scale;
  const double q = exponent.value();
  double acc = 0.0;
  if (q == 1.0) {
    for (const auto& x : v) acc += abs(x);
    return acc;
  }
  for (const auto& x : v) {
    const double r = abs(x) / scale;
    acc += q == 2.0 ? r * r : std::pow(r, q);
  }
  return scale * (q == 2.0 ? std::sqrt(acc) : std::pow(acc, 1.0 / q));
}

}  // namespace

double vector_norm(std::span<const Complex> v, Exponent exponent) {
  return lp_norm(v, exponent, [](const Complex& c) { return std::abs(c); });
}

double vector_norm(std::span<const double> v, Exponent exponent) {
  return lp_norm(v, exponent, [](double x) { return std::abs(x); });
}

Exponent dual_exponent(Exponent p) {
  if (p.is_infinite()) return Exponent::finite(1.0);
  if (p.value() == 1.0) return Exponent::infinity();
  return Exponent::finite(p.value() / (p.value() - 1.0));
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::vector<CVector> sample_sphere(const SpaceSpec& spec, std::uint64_t seed, std::size_t count) {
  spec.validate();
  if (count == 0) throw std::invalid_argument("sample_sphere: count must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<CVector> out;
  out.reserve(count);
  while (out.size() < count) {
    CVector z(spec.domain_dim);
    for (auto& c : z) c = Complex(gauss(rng), gauss(rng));
    const double r = vector_norm(std::span<const Complex>(z), spec.domain_exponent);
    if (r == 0.0) continue;
    for (auto& c : z) c /= r;
    out.push_back(std::move(z));
  }
  return out;
}

CVector torus_orbit(std::span<const Complex> z, std::span<const double> theta) {
  if (z.size() != theta.size()) throw std::invalid_argument("torus_orbit: length mismatch");
  CVector out(z.size());
  for (std::size_t i = 0; i < z.size(); ++i)
    out[i] = z[i] * std::polar(1.0, 2.0 * std::numbers::pi * theta[i]);
  return out;
}

CVector norming_functional(std::span<const Complex> v, Exponent p) {
  CVector w(v.size(), Complex{});
  const double norm = vector_norm(v, p);
  if (norm == 0.0) return w;
  auto conj_sign = [](const Complex& c) { return std::conj(c) / std::abs(c); };
  if (p.is_infinite()) {
    std::size_t k = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
      if (std::abs(v[i]) > std::abs(v[k])) k = i;
    w[k] = conj_sign(v[k]);
    return w;
  }
  const double pv = p.value();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double a = std::abs(v[i]);
    if (a == 0.0) continue;
    if (pv == 1.0) {
      w[i] = conj_sign(v[i]);
    } else {
      w[i] = conj_sign(v[i]) * std::pow(a / norm, pv - 1.0);
    }
  }
  return w;
}

}  // namespace bohr
