#include "bohr/polynorms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "optim.hpp"

namespace bohr {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr std::uint64_t kNormSeed = 0x6e6f726d5f6f6e65ULL;

// Relative error allowance for a positive-polynomial value computed in
// floating point: each term is a product of `degree` factors and a weight.
double positive_value_slack(const detail::PositivePolynomial& g) {
  std::uint64_t degree = 0;
  for (const auto& beta : g.exponents) {
    std::uint64_t s = 0;
    for (auto b : beta) s += b;
    degree = std::max(degree, s);
  }
  return 4.0 * (static_cast<double>(degree) + static_cast<double>(g.weights.size()) + 8.0) * kEps;
}

BoundInterval optimize_weighted(const HomogeneousPolynomial& q, unsigned power) {
  const auto& spec = q.spec();
  const auto g = detail::majorant_polynomial(q.terms(), spec.codomain_exponent, power);
  auto finish = [power](double v) { return power == 2 ? std::sqrt(v) : v; };
  if (g.weights.empty()) return BoundInterval::exact(0.0);

  if (spec.domain_exponent.is_infinite()) {
    double acc = 0.0;
    for (double w : g.weights) acc += w;
    return BoundInterval::exact(finish(acc));
  }
  const auto best = detail::maximize_on_positive_sphere(g, spec.domain_exponent, 8, kNormSeed);
  const double slack = positive_value_slack(g);
  const double lo = std::max(0.0, round_down(best.value * (1.0 - slack)));
  if (best.converged) {
    return {finish(lo), std::max(finish(lo), finish(best.value)), BoundStatus::Heuristic};
  }
  const double crude = detail::positive_sphere_upper_bound(g, spec.domain_exponent);
  return {finish(lo), round_up(finish(crude)), BoundStatus::Widened};
}

SupEstimate sup_heuristic(std::span<const Term> terms, const SpaceSpec& spec, unsigned restarts, std::uint64_t seed) {
  if (restarts == 0) throw std::invalid_argument("norm_sup_heuristic: restarts must be >= 1");
  spec.validate();
  const std::size_t n = spec.domain_dim;
  detail::SupSearch search{terms, spec};
  SupEstimate best;
  best.lower = -1.0;
  for (unsigned k = 0; k < restarts; ++k) {
    CVector z;
    if (k == 0) {
      const double t = spec.domain_exponent.is_infinite()
                           ? 1.0
                           : std::pow(static_cast<double>(n), -1.0 / spec.domain_exponent.value());
      z.assign(n, Complex(t, 0.0));
    } else {
      z = sample_sphere(spec, derive_seed(seed, k), 1).front();
    }
    const double v = search.ascend(z);
    if (v > best.lower) {
      best.lower = v;
      best.witness = std::move(z);
    }
  }
  return best;
}

// Max of ||P|| over a phase mesh; `fixed_last` pins the last phase to 0.
// On the mesh z^alpha is the root of unity w^{alpha.k mod mesh}, so every
// monomial is a table lookup.
double mesh_max(std::span<const Term> terms, const SpaceSpec& spec, unsigned mesh, bool fixed_last) {
  const std::size_t n = spec.domain_dim;
  const std::size_t d = spec.codomain_dim;
  const std::size_t free_dims = fixed_last ? n - 1 : n;
  const double step = 2.0 * std::numbers::pi / mesh;
  std::vector<Complex> roots(mesh);
  for (unsigned r = 0; r < mesh; ++r) roots[r] = std::polar(1.0, step * r);

  std::vector<unsigned> k(free_dims, 0);
  CVector value(d);
  std::vector<double> comp_re(d), comp_im(d);
  auto add = [](double& sum, double& comp, double x) {
    const double t = sum + x;
    comp += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  };
  double best = 0.0;
  while (true) {
    std::fill(value.begin(), value.end(), Complex{});
    std::fill(comp_re.begin(), comp_re.end(), 0.0);
    std::fill(comp_im.begin(), comp_im.end(), 0.0);
    for (const auto& t : terms) {
      std::uint64_t idx = 0;
      for (std::size_t j = 0; j < free_dims; ++j) idx += static_cast<std::uint64_t>(t.index[j]) * k[j];
      const Complex w = roots[idx % mesh];
      for (std::size_t c = 0; c < d; ++c) {
        const Complex term = t.coeff[c] * w;
        double re = value[c].real(), im = value[c].imag();
        add(re, comp_re[c], term.real());
        add(im, comp_im[c], term.imag());
        value[c] = {re, im};
      }
    }
    for (std::size_t c = 0; c < d; ++c) value[c] += Complex(comp_re[c], comp_im[c]);
    best = std::max(best, vector_norm(std::span<const Complex>(value), spec.codomain_exponent));
    std::size_t j = 0;
    while (j < free_dims && ++k[j] == mesh) k[j++] = 0;
    if (j == free_dims) break;
  }
  return best;
}

BoundInterval certified_from_mesh(std::span<const Term> terms, const SpaceSpec& spec, unsigned mesh,
                                  const MeshGuard& guard, bool homogeneous) {
  spec.validate();
  if (!spec.domain_exponent.is_infinite())
    throw std::invalid_argument("norm_sup_certified: only the polydisc (q = inf) is supported");
  if (mesh == 0) throw std::invalid_argument("norm_sup_certified: mesh must be >= 1");
  if (spec.domain_dim > guard.max_dim || mesh > guard.max_mesh)
    throw std::length_error("norm_sup_certified: n = " + std::to_string(spec.domain_dim) +
                            ", mesh = " + std::to_string(mesh) + " exceeds the evaluation guard (n <= " +
                            std::to_string(guard.max_dim) + ", mesh <= " + std::to_string(guard.max_mesh) + ")");

  double lipschitz = 0.0;
  std::uint64_t type = 0;
  for (const auto& t : terms) {
    const auto deg = t.index.degree();
    lipschitz += static_cast<double>(deg) * vector_norm(std::span<const Complex>(t.coeff), spec.codomain_exponent);
    type = std::max(type, deg);
  }
  lipschitz = round_up(lipschitz * (1.0 + 4.0 * (terms.size() + spec.codomain_dim + 4.0) * kEps));

  const bool fixed_last = homogeneous;
  const double best = mesh_max(terms, spec, mesh, fixed_last);
  const double err = detail::evaluation_error_bound(terms, spec);
  const double lo = std::max(0.0, round_down(best - err));
  const double top = round_up(best + err);

  const bool single_node = fixed_last && spec.domain_dim == 1;
  if (single_node) return {lo, top, BoundStatus::Certified};

  // Max-coordinate distance from any phase vector to the nearest node, plus
  // slack for the rounded node positions.
  const double delta = round_up(round_up(std::numbers::pi) / mesh) + 16.0 * kEps;
  double hi = round_up(top + round_up(lipschitz * delta));
  const double shrink = static_cast<double>(type) * delta;
  if (shrink < 1.0) hi = std::min(hi, round_up(top / round_down(1.0 - shrink) * (1.0 + 4.0 * kEps)));
  return {lo, hi, BoundStatus::Certified};
}

}  // namespace

BoundInterval norm_one(const HomogeneousPolynomial& q) { return optimize_weighted(q, 1); }

BoundInterval norm_two(const HomogeneousPolynomial& q) { return optimize_weighted(q, 2); }

SupEstimate norm_sup_heuristic(const HomogeneousPolynomial& p, unsigned restarts, std::uint64_t seed) {
  return sup_heuristic(p.terms(), p.spec(), restarts, seed);
}

SupEstimate norm_sup_heuristic(const TruncatedPowerSeries& f, unsigned restarts, std::uint64_t seed) {
  return sup_heuristic(f.terms(), f.spec(), restarts, seed);
}

BoundInterval norm_sup_certified(const HomogeneousPolynomial& q, unsigned mesh, MeshGuard guard) {
  return certified_from_mesh(q.terms(), q.spec(), mesh, guard, true);
}

BoundInterval norm_sup_certified(const TruncatedPowerSeries& f, unsigned mesh, MeshGuard guard) {
  return certified_from_mesh(f.terms(), f.spec(), mesh, guard, false);
}

BoundInterval coefficient_majorant(const TruncatedPowerSeries& f, double r) {
  if (!(r >= 0.0 && r <= 1.0)) throw std::invalid_argument("coefficient_majorant: r must lie in [0, 1]");
  const auto& spec = f.spec();
  const double tail = f.omitted_tail() ? f.omitted_tail()->majorant(f.max_degree(), r) : 0.0;
  const double norm_slack = (spec.codomain_dim + 4.0) * kEps;

  if (spec.domain_exponent.is_infinite()) {
    Interval acc(0.0);
    for (const auto& t : f.terms()) {
      const double c = vector_norm(std::span<const Complex>(t.coeff), spec.codomain_exponent);
      if (c == 0.0) continue;
      Interval term(round_down(c * (1.0 - norm_slack)), round_up(c * (1.0 + norm_slack)));
      const Interval rr(r);
      for (std::uint64_t k = 0; k < t.index.degree(); ++k) term *= rr;
      acc += term;
    }
    const double hi = tail > 0.0 ? round_up(acc.hi() + tail) : acc.hi();
    return {std::max(0.0, acc.lo()), hi, BoundStatus::Certified};
  }

  // Finite q: a common witness for the lower end, slice-wise suprema for the upper.
  const auto g = detail::majorant_polynomial(f.terms(), spec.codomain_exponent, 1, r);
  double lo = 0.0;
  if (!g.weights.empty()) {
    const auto best = detail::maximize_on_positive_sphere(g, spec.domain_exponent, 8, kNormSeed);
    lo = std::max(0.0, round_down(best.value * (1.0 - positive_value_slack(g) - norm_slack)));
  }
  double hi = 0.0;
  BoundStatus status = BoundStatus::Certified;
  for (std::uint32_t k = 0; k <= f.max_degree(); ++k) {
    const auto slice = f.slice(k);
    if (slice.terms().empty()) continue;
    if (k == 0) {
      hi += round_up(vector_norm(std::span<const Complex>(slice.terms().front().coeff), spec.codomain_exponent) *
                     (1.0 + norm_slack));
      continue;
    }
    const auto s = norm_one(slice);
    status = combine(status, s.status);
    hi = round_up(hi + round_up(s.hi * std::pow(r, static_cast<double>(k)) * (1.0 + (k + 4.0) * kEps)));
  }
  hi = round_up(hi + tail);
  return {lo, std::max(lo, hi), status};
}

}  // namespace bohr
