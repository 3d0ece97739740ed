#include "optim.hpp"

#include "bohr/interval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>

namespace bohr::detail {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// prod t_k^{beta_k}, skipping one factor of t_j when j is given.
double power_product(std::span<const std::uint32_t> beta, std::span<const double> t, std::size_t skip = SIZE_MAX) {
  double p = 1.0;
  for (std::size_t k = 0; k < t.size(); ++k) {
    const std::uint32_t e = beta[k] - (k == skip ? 1u : 0u);
    for (std::uint32_t i = 0; i < e; ++i) p *= t[k];
  }
  return p;
}

bool retract_to_sphere(std::vector<double>& t, Exponent q) {
  for (auto& v : t) v = std::max(v, 0.0);
  const double r = vector_norm(std::span<const double>(t), q);
  if (!(r > 0.0) || !std::isfinite(r)) return false;
  for (auto& v : t) v /= r;
  return true;
}

struct LocalResult {
  double value;
  bool converged;
};

LocalResult ascend_positive(const PositivePolynomial& g, Exponent q, std::vector<double>& t) {
  const std::size_t n = t.size();
  std::vector<double> grad(n), trial(n);
  double f = g.value(t);
  double step = 0.25;
  for (int it = 0; it < 2000; ++it) {
    g.gradient(t, grad);
    double gn = 0.0;
    for (double v : grad) gn += v * v;
    gn = std::sqrt(gn);
    if (gn == 0.0) return {f, true};
    bool moved = false;
    while (step > 1e-13) {
      for (std::size_t j = 0; j < n; ++j) trial[j] = t[j] + step * grad[j] / gn;
      if (retract_to_sphere(trial, q)) {
        const double ft = g.value(trial);
        if (ft > f) {
          t = trial;
          f = ft;
          step = std::min(step * 2.0, 1.0);
          moved = true;
          break;
        }
      }
      step *= 0.5;
    }
    if (!moved) return {f, true};
  }
  return {f, false};
}

}  // namespace

double PositivePolynomial::value(std::span<const double> t) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) acc += weights[i] * power_product(exponents[i], t);
  return acc;
}

void PositivePolynomial::gradient(std::span<const double> t, std::span<double> out) const {
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t i = 0; i < weights.size(); ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      const auto e = exponents[i][j];
      if (e == 0) continue;
      out[j] += weights[i] * static_cast<double>(e) * power_product(exponents[i], t, j);
    }
  }
}

PositivePolynomial majorant_polynomial(std::span<const Term> terms, Exponent p, unsigned power, double radius) {
  PositivePolynomial g;
  for (const auto& term : terms) {
    const double c = vector_norm(std::span<const Complex>(term.coeff), p);
    if (c == 0.0) continue;
    g.dim = term.index.size();
    const double w = (power == 2 ? c * c : c) * std::pow(radius, static_cast<double>(power * term.index.degree()));
    std::vector<std::uint32_t> beta(term.index.entries().begin(), term.index.entries().end());
    for (auto& b : beta) b *= power;
    g.weights.push_back(w);
    g.exponents.push_back(std::move(beta));
  }
  return g;
}

PositiveMax maximize_on_positive_sphere(const PositivePolynomial& g, Exponent q, std::size_t random_starts,
                                        std::uint64_t seed, std::span<const std::vector<double>> extra_starts,
                                        bool structured) {
  if (q.is_infinite()) throw std::invalid_argument("maximize_on_positive_sphere: q must be finite");
  const std::size_t n = g.dim;
  PositiveMax best;
  if (g.weights.empty()) {
    best.value = 0.0;
    best.converged = true;
    return best;
  }
  std::vector<std::vector<double>> starts(extra_starts.begin(), extra_starts.end());
  if (structured) starts.emplace_back(n, 1.0);
  for (std::size_t j = 0; structured && j < n; ++j) {
    std::vector<double> e(n, 0.0);
    e[j] = 1.0;
    starts.push_back(std::move(e));
  }
  if (structured && n <= 6) {
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        std::vector<double> e(n, 0.0);
        e[j] = e[k] = 1.0;
        starts.push_back(std::move(e));
      }
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  for (std::size_t r = 0; r < random_starts; ++r) {
    std::vector<double> t(n);
    for (auto& v : t) v = std::abs(gauss(rng));
    starts.push_back(std::move(t));
  }
  if (starts.empty()) starts.emplace_back(n, 1.0);
  best.value = -1.0;
  for (auto& t : starts) {
    if (t.size() != n || !retract_to_sphere(t, q)) continue;
    const auto res = ascend_positive(g, q, t);
    if (res.value > best.value) {
      best.value = res.value;
      best.witness = t;
      best.converged = res.converged;
    }
  }
  return best;
}

double positive_sphere_upper_bound(const PositivePolynomial& g, Exponent q) {
  double acc = 0.0;
  for (std::size_t i = 0; i < g.weights.size(); ++i) {
    const auto& beta = g.exponents[i];
    double total = 0.0;
    for (auto b : beta) total += b;
    double log_max = 0.0;
    if (!q.is_infinite() && total > 0.0) {
      for (auto b : beta)
        if (b > 0) log_max += (b / q.value()) * std::log(b / total);
    }
    acc += g.weights[i] * std::exp(log_max);
  }
  // exp/log each contribute a few ulp per term.
  return round_up(acc * (1.0 + 64.0 * kEps * (1.0 + static_cast<double>(g.weights.size()))));
}

double SupSearch::value(std::span<const Complex> z) const {
  const auto v = evaluate(terms, spec.codomain_dim, z);
  return vector_norm(std::span<const Complex>(v), spec.codomain_exponent);
}

double SupSearch::ascend(CVector& z) const {
  const std::size_t n = spec.domain_dim;
  const std::size_t d = spec.codomain_dim;
  const bool move_radii = !spec.domain_exponent.is_infinite();
  std::vector<double> t(n), phi(n);
  for (std::size_t j = 0; j < n; ++j) {
    t[j] = move_radii ? std::abs(z[j]) : 1.0;
    phi[j] = std::arg(z[j]);
  }
  auto build = [&](const std::vector<double>& tt, const std::vector<double>& ph) {
    CVector out(n);
    for (std::size_t j = 0; j < n; ++j) out[j] = std::polar(tt[j], ph[j]);
    return out;
  };
  z = build(t, phi);
  double f = value(z);
  double step = 0.5;
  std::vector<double> g_t(n), g_phi(n), t_trial(n), phi_trial(n);
  std::vector<Complex> s(terms.size());

  for (unsigned it = 0; it < max_iterations; ++it) {
    const auto v = evaluate(terms, d, z);
    const auto w = norming_functional(v, spec.codomain_exponent);
    for (std::size_t a = 0; a < terms.size(); ++a) {
      Complex acc{};
      for (std::size_t k = 0; k < d; ++k) acc += w[k] * terms[a].coeff[k];
      s[a] = acc;
    }
    std::fill(g_t.begin(), g_t.end(), 0.0);
    std::fill(g_phi.begin(), g_phi.end(), 0.0);
    for (std::size_t a = 0; a < terms.size(); ++a) {
      const auto& alpha = terms[a].index;
      const Complex sz = s[a] * monomial_eval(alpha, z);
      for (std::size_t j = 0; j < n; ++j) {
        if (alpha[j] == 0) continue;
        g_phi[j] -= static_cast<double>(alpha[j]) * sz.imag();
        if (move_radii) {
          // d/dt_j of t^alpha e^{i alpha.phi}
          Complex partial = static_cast<double>(alpha[j]) * std::polar(1.0, phi[j]);
          for (std::size_t k = 0; k < n; ++k) {
            const std::uint32_t e = alpha[k] - (k == j ? 1u : 0u);
            for (std::uint32_t i = 0; i < e; ++i) partial *= z[k];
          }
          g_t[j] += (s[a] * partial).real();
        }
      }
    }
    double gn = 0.0;
    for (std::size_t j = 0; j < n; ++j) gn += g_phi[j] * g_phi[j] + g_t[j] * g_t[j];
    gn = std::sqrt(gn);
    if (gn < 1e-14) break;
    bool moved = false;
    while (step > 1e-12) {
      for (std::size_t j = 0; j < n; ++j) {
        phi_trial[j] = phi[j] + step * g_phi[j] / gn;
        t_trial[j] = t[j] + step * g_t[j] / gn;
      }
      if (!move_radii || retract_to_sphere(t_trial, spec.domain_exponent)) {
        auto zt = build(move_radii ? t_trial : t, phi_trial);
        const double ft = value(zt);
        if (ft > f) {
          f = ft;
          z = std::move(zt);
          phi = phi_trial;
          if (move_radii) t = t_trial;
          step = std::min(step * 2.0, 1.0);
          moved = true;
          break;
        }
      }
      step *= 0.5;
    }
    if (!moved) break;
  }
  return f;
}

double evaluation_error_bound(std::span<const Term> terms, const SpaceSpec& spec) {
  double l1 = 0.0;
  std::uint64_t max_degree = 0;
  for (const auto& t : terms) {
    l1 += vector_norm(std::span<const Complex>(t.coeff), spec.codomain_exponent);
    max_degree = std::max(max_degree, t.index.degree());
  }
  const double factor = 4.0 * (static_cast<double>(max_degree) + 8.0) * (static_cast<double>(spec.codomain_dim) + 1.0);
  return round_up(l1 * factor * kEps);
}

}  // namespace bohr::detail
