#include "bohr/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "bohr/polynorms.hpp"
#include "optim.hpp"

namespace bohr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct SupBounds {
  double lo = 0.0;
  double hi = kInf;
  bool certified_hi = false;
};

SupBounds sup_bounds(const TruncatedPowerSeries& f, const SupMode& mode) {
  const double tail = f.omitted_tail() ? f.omitted_tail()->majorant(f.max_degree(), 1.0) : 0.0;
  const double err = detail::evaluation_error_bound(f.terms(), f.spec());
  SupBounds b;
  if (const auto* h = std::get_if<HeuristicSup>(&mode)) {
    const auto est = norm_sup_heuristic(f, h->restarts, h->seed);
    b.lo = std::max(0.0, round_down(est.lower - err - tail));
  } else if (const auto* c = std::get_if<CertifiedSup>(&mode)) {
    const auto enc = norm_sup_certified(f, c->mesh);
    b.lo = std::max(0.0, round_down(enc.lo - tail));
    b.hi = tail == 0.0 ? enc.hi : round_up(enc.hi + tail);
    b.certified_hi = std::isfinite(b.hi);
  } else {
    const double v = std::get<DeclaredSup>(mode).value;
    if (!(v > 0.0)) throw std::invalid_argument("check_bohr_sample: declared sup must be > 0");
    b.lo = b.hi = v;
    b.certified_hi = true;
  }
  return b;
}

// Largest ||Q(v)|| over v = (|z_j| e^{i phi_j}) on a phase grid with the last
// phase fixed, and the grid spacing in max-coordinate distance.
double orbit_grid_max(const HomogeneousPolynomial& q, const std::vector<double>& radii, unsigned grid, CVector& best_v) {
  const std::size_t n = radii.size();
  const std::size_t free_dims = n - 1;
  std::vector<unsigned> k(free_dims, 0);
  CVector v(n);
  v[n - 1] = radii[n - 1];
  double best = 0.0;
  const double step = 2.0 * std::numbers::pi / grid;
  while (true) {
    for (std::size_t j = 0; j < free_dims; ++j) v[j] = std::polar(radii[j], step * k[j]);
    const auto val = evaluate(q, v);
    const double nv = vector_norm(std::span<const Complex>(val), q.spec().codomain_exponent);
    if (nv > best) {
      best = nv;
      best_v = v;
    }
    std::size_t j = 0;
    while (j < free_dims && ++k[j] == grid) k[j++] = 0;
    if (j == free_dims) break;
  }
  return best;
}

}  // namespace

std::string_view to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::Holds: return "holds";
    case VerdictKind::Violated: return "violated";
    case VerdictKind::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

TruncatedPowerSeries moebius_family(double a, std::uint32_t M) {
  if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("moebius_family: a must lie in (0, 1)");
  if (M == 0) throw std::invalid_argument("moebius_family: M must be >= 1");
  const auto spec = SpaceSpec::scalar(1, Exponent::infinity());
  std::vector<Term> terms;
  terms.push_back({MultiIndex({0}), {Complex(a, 0.0)}});
  const double s = 1.0 - a * a;
  double ak = 1.0;
  for (std::uint32_t k = 1; k <= M; ++k) {
    terms.push_back({MultiIndex({k}), {Complex(-s * ak, 0.0)}});
    ak *= a;
  }
  TruncatedPowerSeries f(M, spec, std::move(terms));
  f.set_omitted_tail(GeometricTail{s, a});
  f.set_declared_sup(1.0);
  return f;
}

Verdict check_bohr_sample(const TruncatedPowerSeries& f, double r, double lambda, const SupMode& mode) {
  if (!(r >= 0.0 && r <= 1.0)) throw std::invalid_argument("check_bohr_sample: r must lie in [0, 1]");
  if (!(lambda >= 1.0)) throw std::invalid_argument("check_bohr_sample: lambda must be >= 1");
  const auto maj = coefficient_majorant(f, r);
  const auto sup = sup_bounds(f, mode);
  const Interval lam(lambda);
  const double allowed_lo = (lam * Interval(sup.lo)).lo();
  const double allowed_hi = std::isfinite(sup.hi) ? (lam * Interval(sup.hi)).hi() : kInf;

  Verdict v;
  v.witness = r;
  // Only x_0 contributes: ||x_0|| <= ||f||_inf since x_0 is the torus mean of f.
  const bool constant_only =
      (r == 0.0 || std::all_of(f.terms().begin(), f.terms().end(), [](const Term& t) { return t.index.degree() == 0; })) &&
      !(r > 0.0 && f.omitted_tail() && f.omitted_tail()->scale > 0.0);
  if (constant_only) {
    v.kind = VerdictKind::Holds;
    v.margin = std::max(0.0, allowed_lo - maj.hi);
    v.certified = true;
    return v;
  }
  if (maj.hi <= allowed_lo) {
    v.kind = VerdictKind::Holds;
    v.margin = allowed_lo - maj.hi;
    v.certified = maj.certified();
  } else if (maj.lo > allowed_hi) {
    v.kind = VerdictKind::Violated;
    v.margin = allowed_hi - maj.lo;
    v.certified = sup.certified_hi && maj.certified();
  } else {
    v.kind = VerdictKind::Inconclusive;
    v.margin = allowed_lo - maj.hi;
  }
  return v;
}

Verdict wiener_bound_check(const TruncatedPowerSeries& f, std::uint32_t m, double sidon_upper, std::size_t samples,
                           std::uint64_t seed) {
  if (m == 0) throw std::invalid_argument("wiener_bound_check: m must be >= 1");
  const auto slice = f.slice(m);
  if (slice.terms().empty()) throw std::invalid_argument("wiener_bound_check: degree-m slice is empty");
  const auto& spec = f.spec();
  const auto x0 = f.constant_term();
  const double a0 = vector_norm(std::span<const Complex>(x0), spec.codomain_exponent);
  const double bound = sidon_upper * (1.0 - a0 * a0);

  auto weighted_sum = [&](std::span<const Complex> z) {
    double s = 0.0;
    for (const auto& t : slice.terms())
      s += vector_norm(std::span<const Complex>(t.coeff), spec.codomain_exponent) * std::abs(monomial_eval(t.index, z));
    return s;
  };

  Verdict v;
  double best = norm_one(slice).lo;
  if (samples > 0) {
    const auto pts = sample_sphere(spec, seed, samples);
    for (const auto& z : pts) {
      const double s = weighted_sum(z);
      if (s > best) {
        best = s;
        v.witness = z;
      }
    }
  }
  v.margin = bound - best;
  if (v.margin >= -1e-9) {
    v.kind = VerdictKind::Holds;
  } else {
    v.kind = VerdictKind::Violated;
    v.certified = true;
  }
  return v;
}

Verdict corner_strictness_check(const HomogeneousPolynomial& q, const CVector& z, std::size_t samples,
                                std::uint64_t seed) {
  const auto& spec = q.spec();
  const std::size_t n = spec.domain_dim;
  const std::uint32_t m = q.degree();
  if (z.size() != n) throw std::invalid_argument("corner_strictness_check: z has the wrong dimension");
  if (std::any_of(z.begin(), z.end(), [](Complex c) { return !(std::abs(c) > 0.0); }))
    throw std::invalid_argument("corner_strictness_check: every |z_i| must be > 0");

  // Corner coefficients and a codomain coordinate shared by two of them.
  std::vector<const CVector*> corner(n, nullptr);
  for (std::size_t j = 0; j < n && m > 0; ++j) corner[j] = q.coefficient(MultiIndex::corner(n, j, m));
  std::optional<std::size_t> shared;
  for (std::size_t k = 0; k < spec.codomain_dim && !shared; ++k) {
    std::size_t count = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (corner[j] && (*corner[j])[k] != Complex{}) ++count;
    if (count >= 2) shared = k;
  }
  if (!shared)
    throw std::invalid_argument(
        "corner_strictness_check: need two corner coefficients with a common nonzero coordinate");

  double agg = 0.0;
  for (const auto& t : q.terms()) {
    const double c = vector_norm(std::span<const Complex>(t.coeff), spec.codomain_exponent) *
                     std::abs(monomial_eval(t.index, std::span<const Complex>(z)));
    agg += c * c;
  }
  agg = std::sqrt(agg);

  std::vector<double> radii(n);
  for (std::size_t j = 0; j < n; ++j) radii[j] = std::abs(z[j]);
  auto value_at = [&](const CVector& v) {
    const auto val = evaluate(q, v);
    return vector_norm(std::span<const Complex>(val), spec.codomain_exponent);
  };

  Verdict out;
  double best = -1.0;
  CVector best_v;
  auto consider = [&](CVector v) {
    const double val = value_at(v);
    if (val > best) {
      best = val;
      best_v = std::move(v);
    }
  };

  // Align the shared coordinate of every corner term.
  {
    CVector v(n);
    for (std::size_t j = 0; j < n; ++j) {
      double phi = 0.0;
      if (corner[j] && (*corner[j])[*shared] != Complex{}) phi = -std::arg((*corner[j])[*shared]) / m;
      v[j] = std::polar(radii[j], phi);
    }
    consider(std::move(v));
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  for (std::size_t s = 0; s < samples; ++s) {
    CVector v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = std::polar(radii[j], angle(rng));
    consider(std::move(v));
  }

  std::optional<double> orbit_upper;
  if (n <= 3) {
    const unsigned grid = 64;
    CVector gv;
    const double gmax = orbit_grid_max(q, radii, grid, gv);
    if (gmax > best) {
      best = gmax;
      best_v = gv;
    }
    if (n >= 2) {
      // ||Q(v) - Q(v')|| <= sum_alpha ||x_alpha|| |z^alpha| |alpha.(phi - phi')|.
      double lip = 0.0;
      for (const auto& t : q.terms())
        lip += static_cast<double>(t.index.degree()) *
               vector_norm(std::span<const Complex>(t.coeff), spec.codomain_exponent) *
               std::abs(monomial_eval(t.index, std::span<const Complex>(z)));
      const double delta = std::numbers::pi / grid;
      const double err = detail::evaluation_error_bound(q.terms(), spec);
      orbit_upper = round_up(gmax + lip * delta * (1.0 + 1e-12) + err);
    } else {
      orbit_upper = round_up(gmax + detail::evaluation_error_bound(q.terms(), spec));
    }
  }

  out.witness = best_v;
  out.margin = best - agg;
  if (out.margin > 1e-9) {
    out.kind = VerdictKind::Holds;
    out.certified = true;
  } else if (orbit_upper && *orbit_upper < agg * (1.0 - 1e-12)) {
    out.kind = VerdictKind::Violated;
    out.certified = true;
    out.margin = *orbit_upper - agg;
  } else {
    out.kind = VerdictKind::Inconclusive;
  }
  return out;
}

TruncatedPowerSeries random_series(const SpaceSpec& spec, std::uint32_t max_degree, std::uint64_t seed) {
  spec.validate();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::vector<Term> terms;
  for (std::uint32_t k = 0; k <= max_degree; ++k) {
    const double scale = std::ldexp(1.0, -static_cast<int>(k));
    for (auto& alpha : enumerate_indices(k, spec.domain_dim)) {
      CVector c(spec.codomain_dim);
      for (auto& v : c) v = scale * Complex(gauss(rng), gauss(rng));
      terms.push_back({std::move(alpha), std::move(c)});
    }
  }
  return TruncatedPowerSeries(max_degree, spec, std::move(terms));
}

NormalizedSeries normalize_sup(const TruncatedPowerSeries& f, double target, std::uint64_t seed) {
  if (!(target > 0.0)) throw std::invalid_argument("normalize_sup: target must be > 0");
  const auto& spec = f.spec();
  const MeshGuard guard;
  double scale = 0.0;
  bool certified = false;
  if (spec.domain_exponent.is_infinite() && spec.domain_dim <= guard.max_dim) {
    // Keep the mesh at <= 2^16 nodes; n = 3 drops from 64 to 40 per axis.
    unsigned mesh = guard.max_mesh;
    while (mesh > 8 && std::pow(static_cast<double>(mesh), static_cast<double>(spec.domain_dim)) > 65536.0) --mesh;
    const auto enc = norm_sup_certified(f, mesh, guard);
    // Rounded products c * scale can exceed the exact ones by an ulp.
    scale = (Interval(target) / Interval(enc.hi)).lo() * (1.0 - 4.0 * std::numeric_limits<double>::epsilon());
    certified = true;
  } else {
    const auto est = norm_sup_heuristic(f, 16, seed);
    scale = 0.9 * target / est.lower;
  }
  std::vector<Term> terms(f.terms().begin(), f.terms().end());
  for (auto& t : terms)
    for (auto& c : t.coeff) c *= scale;
  TruncatedPowerSeries g(f.max_degree(), spec, std::move(terms));
  return {std::move(g), certified};
}

HomogeneousPolynomial random_corner_instance(std::uint32_t m, const SpaceSpec& spec, std::uint64_t seed) {
  spec.validate();
  if (m == 0 || spec.domain_dim < 2) throw std::invalid_argument("random_corner_instance: need m >= 1 and n >= 2");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::bernoulli_distribution keep(0.5);
  const std::size_t n = spec.domain_dim;
  std::vector<Term> terms;
  for (auto& alpha : enumerate_indices(m, n)) {
    const bool forced = alpha == MultiIndex::corner(n, 0, m) || alpha == MultiIndex::corner(n, 1, m);
    if (!forced && !keep(rng)) continue;
    CVector c(spec.codomain_dim);
    for (auto& v : c) v = Complex(gauss(rng), gauss(rng));
    if (forced && c[0] == Complex{}) c[0] = 1.0;
    terms.push_back({std::move(alpha), std::move(c)});
  }
  return HomogeneousPolynomial(m, spec, std::move(terms));
}

}  // namespace bohr
