#include "bohr/sidon.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <random>
#include <stdexcept>
#include <thread>

#include "bohr/cache.hpp"
#include "bohr/multiindex.hpp"
#include "bohr/polynorms.hpp"
#include "optim.hpp"

namespace bohr {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double sqrt_up(double v) { return sqrt(Interval(v)).hi(); }

double checked_count(std::uint32_t m, std::size_t n) {
  return static_cast<double>(count_multi_indices(m, n));
}

struct Problem {
  std::uint32_t m;
  SpaceSpec spec;
  std::vector<MultiIndex> indices;

  std::size_t dim() const { return 2 * indices.size() * spec.codomain_dim; }

  std::vector<Term> terms(const std::vector<double>& x) const {
    const std::size_t d = spec.codomain_dim;
    std::vector<Term> out;
    out.reserve(indices.size());
    for (std::size_t a = 0; a < indices.size(); ++a) {
      CVector c(d);
      bool nonzero = false;
      for (std::size_t k = 0; k < d; ++k) {
        c[k] = Complex(x[2 * (a * d + k)], x[2 * (a * d + k) + 1]);
        nonzero = nonzero || c[k] != Complex{};
      }
      if (nonzero) out.push_back({indices[a], std::move(c)});
    }
    return out;
  }

  HomogeneousPolynomial polynomial(const std::vector<double>& x) const {
    return HomogeneousPolynomial(m, spec, terms(x));
  }
};

void normalize(std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  s = std::sqrt(s);
  if (s == 0.0) {
    x.front() = 1.0;
    return;
  }
  for (auto& v : x) v /= s;
}

std::vector<double> structured_start(const Problem& pb, std::uint64_t k, std::mt19937_64& rng) {
  std::vector<double> x(pb.dim(), 0.0);
  std::normal_distribution<double> gauss;
  std::bernoulli_distribution coin;
  const std::size_t d = pb.spec.codomain_dim;
  for (std::size_t a = 0; a < pb.indices.size(); ++a) {
    for (std::size_t c = 0; c < d; ++c) {
      const std::size_t re = 2 * (a * d + c);
      switch (k) {
        case 0: x[re] = 1.0; break;
        case 1: x[re] = (a % 2 == 0) ? 1.0 : -1.0; break;
        default:
          if (k % 2 == 0) {
            x[re] = coin(rng) ? 1.0 : -1.0;
          } else {
            x[re] = gauss(rng);
            x[re + 1] = gauss(rng);
          }
      }
    }
  }
  normalize(x);
  return x;
}

// Ratio ||Q||_1 / ||Q||_inf with warm-started inner optimizers.
struct Evaluator {
  const Problem& pb;

  struct Warm {
    CVector z;              // argmax of ||Q(z)||
    std::vector<double> t;  // argmax of the ||.||_1 majorant (finite q)
  };

  double one(const std::vector<Term>& terms, Warm& w, bool thorough, std::uint64_t seed) const {
    const auto& spec = pb.spec;
    if (spec.domain_exponent.is_infinite()) {
      double s = 0.0;
      for (const auto& t : terms) s += vector_norm(std::span<const Complex>(t.coeff), spec.codomain_exponent);
      return s;
    }
    const auto g = detail::majorant_polynomial(terms, spec.codomain_exponent, 1);
    std::vector<std::vector<double>> extra{w.t};
    const auto best = detail::maximize_on_positive_sphere(g, spec.domain_exponent, thorough ? 2 : 0, seed, extra,
                                                          thorough);
    w.t = best.witness;
    return best.value;
  }

  double sup(const std::vector<Term>& terms, Warm& w, unsigned random_starts, std::mt19937_64& rng,
             unsigned iterations) const {
    detail::SupSearch search{terms, pb.spec, iterations};
    CVector z = w.z;
    double best = search.ascend(z);
    w.z = z;
    for (unsigned r = 0; r < random_starts; ++r) {
      CVector y = sample_sphere(pb.spec, rng(), 1).front();
      const double v = search.ascend(y);
      if (v > best) {
        best = v;
        w.z = std::move(y);
      }
    }
    return best;
  }

  double ratio(const std::vector<double>& x, Warm& w, bool thorough, std::mt19937_64& rng) const {
    const auto terms = pb.terms(x);
    const double s = sup(terms, w, thorough ? 3 : 1, rng, thorough ? 300 : 60);
    if (!(s > 0.0)) return 0.0;
    return one(terms, w, thorough, rng()) / s;
  }
};

struct Checkpoint {
  double ratio = 0.0;
  bool certified = false;
  std::vector<double> x;
};

bool certifiable(const SpaceSpec& spec, unsigned mesh) {
  const MeshGuard guard;
  return spec.domain_exponent.is_infinite() && spec.domain_dim <= guard.max_dim && mesh <= guard.max_mesh;
}

Checkpoint checkpoint(const Problem& pb, const std::vector<double>& x, const SidonSearchOptions& opt,
                      std::uint64_t seed, double incumbent_sup) {
  Checkpoint c;
  c.x = x;
  const auto poly = pb.polynomial(x);
  if (poly.is_zero()) return c;
  const auto& spec = pb.spec;
  if (certifiable(spec, opt.certification_mesh)) {
    double s = 0.0;
    for (const auto& t : poly.terms()) s += vector_norm(std::span<const Complex>(t.coeff), spec.codomain_exponent);
    const double one_lo = round_down(s * (1.0 - (poly.terms().size() + spec.codomain_dim + 4.0) * kEps));
    const auto sup = norm_sup_certified(poly, opt.certification_mesh);
    c.ratio = (Interval(one_lo) / Interval(sup.hi)).lo();
    c.certified = true;
    return c;
  }
  const double one = norm_one(poly).lo;
  const double sup = std::max(norm_sup_heuristic(poly, opt.checkpoint_sup_restarts, seed).lower, incumbent_sup);
  c.ratio = sup > 0.0 ? one / sup : 0.0;
  c.certified = false;
  return c;
}

// One restart: `segments` blocks of opt.segment evaluations, each followed
// by a checkpoint. Depends only on (seed, restart), never on the total budget.
std::vector<Checkpoint> run_restart(const Problem& pb, std::uint64_t seed, std::uint64_t restart, unsigned segments,
                                    const SidonSearchOptions& opt) {
  std::mt19937_64 rng(derive_seed(seed, restart));
  std::normal_distribution<double> gauss;
  const Evaluator ev{pb};

  Evaluator::Warm warm;
  warm.z = CVector(pb.spec.domain_dim, Complex(1.0, 0.0));
  if (!pb.spec.domain_exponent.is_infinite()) {
    const double t = std::pow(static_cast<double>(pb.spec.domain_dim), -1.0 / pb.spec.domain_exponent.value());
    for (auto& c : warm.z) c = Complex(t, 0.0);
    warm.t.assign(pb.spec.domain_dim, t);
  }

  auto x = structured_start(pb, restart, rng);
  double fx = ev.ratio(x, warm, true, rng);
  double sigma = 0.3;
  std::vector<Checkpoint> out;
  out.reserve(segments);
  std::vector<double> y(x.size());
  for (unsigned s = 0; s < segments; ++s) {
    for (unsigned e = 0; e < opt.segment; ++e) {
      for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] + sigma * gauss(rng);
      normalize(y);
      auto trial_warm = warm;
      const double fy = ev.ratio(y, trial_warm, false, rng);
      if (fy > fx) {
        x = y;
        warm = std::move(trial_warm);
        fx = ev.ratio(x, warm, true, rng);
        sigma = std::min(1.0, sigma * 1.5);
      } else {
        sigma = std::max(1e-4, sigma * 0.9);
      }
    }
    const double incumbent_sup = detail::SupSearch{pb.terms(x), pb.spec}.value(warm.z);
    out.push_back(checkpoint(pb, x, opt, derive_seed(derive_seed(seed, restart), s), incumbent_sup));
  }
  return out;
}

HomogeneousPolynomial single_monomial(std::uint32_t m, const SpaceSpec& spec) {
  CVector c(spec.codomain_dim, Complex{});
  c[0] = 1.0;
  return HomogeneousPolynomial(m, spec, {Term{MultiIndex::corner(spec.domain_dim, 0, m), c}});
}

}  // namespace

std::string_view to_string(SidonMethod m) {
  switch (m) {
    case SidonMethod::ExactM1: return "exact-m1";
    case SidonMethod::Search: return "search";
    case SidonMethod::TrivialOne: return "trivial-one";
    case SidonMethod::SqrtNCap: return "sqrtN-cap";
  }
  return "unknown";
}

std::string_view to_string(UpperSource s) {
  switch (s) {
    case UpperSource::Exact: return "exact";
    case UpperSource::SqrtN: return "sqrtN";
    case UpperSource::ParitySplit: return "parity-split";
    case UpperSource::NormEquivalence: return "norm-equivalence";
  }
  return "unknown";
}

SidonMethod parse_sidon_method(std::string_view text) {
  for (auto m : {SidonMethod::ExactM1, SidonMethod::Search, SidonMethod::TrivialOne, SidonMethod::SqrtNCap})
    if (to_string(m) == text) return m;
  throw std::invalid_argument("unknown Sidon method: " + std::string(text));
}

UpperSource parse_upper_source(std::string_view text) {
  for (auto s : {UpperSource::Exact, UpperSource::SqrtN, UpperSource::ParitySplit, UpperSource::NormEquivalence})
    if (to_string(s) == text) return s;
  throw std::invalid_argument("unknown upper source: " + std::string(text));
}

double sidon_tail_factor(const SpaceSpec& spec) {
  if (spec.codomain_dim == 1) return 1.0;
  const Exponent p = spec.codomain_exponent;
  if (!p.is_infinite() && p.value() == 2.0) return 1.0;
  const double e = std::abs(0.5 - (p.is_infinite() ? 0.0 : 1.0 / p.value()));
  return round_up(std::pow(static_cast<double>(spec.codomain_dim), e) * (1.0 + 8.0 * kEps));
}

std::pair<double, UpperSource> sidon_upper_cap(std::uint32_t m, const SpaceSpec& spec) {
  spec.validate();
  if (m == 0) throw std::invalid_argument("sidon_upper_cap: m must be >= 1");
  const double count = checked_count(m, spec.domain_dim);
  if (m == 1 && spec.scalar_codomain()) return {1.0, UpperSource::Exact};
  const double root_n = sqrt_up(count);
  const double factor = sidon_tail_factor(spec);
  if (factor == 1.0) return {root_n, UpperSource::SqrtN};
  const double scaled = round_up(factor * root_n);
  if (count <= scaled) return {count, UpperSource::NormEquivalence};
  return {scaled, UpperSource::NormEquivalence};
}

SidonEstimate sidon_bounds(std::uint32_t m, const SpaceSpec& spec, std::uint64_t budget, std::uint64_t seed,
                           const SidonSearchOptions& options) {
  spec.validate();
  if (m == 0) throw std::invalid_argument("sidon_bounds: m must be >= 1");
  if (options.segment == 0 || options.restart_length < options.segment)
    throw std::invalid_argument("sidon_bounds: need 0 < segment <= restart_length");

  SidonEstimate est;
  est.m = m;
  est.n = spec.domain_dim;
  est.spec = spec;
  est.seed = seed;
  est.budget = budget;
  est.certified = true;
  est.witness = single_monomial(m, spec);
  std::tie(est.upper, est.upper_source) = sidon_upper_cap(m, spec);

  if (m == 1 && spec.scalar_codomain()) {
    est.lower = est.upper = 1.0;
    est.method = SidonMethod::ExactM1;
    return est;
  }
  if (est.upper <= 1.0) {
    est.lower = est.upper = 1.0;
    est.method = SidonMethod::SqrtNCap;
    return est;
  }
  est.lower = 1.0;
  if (budget == 0) {
    est.method = SidonMethod::TrivialOne;
    return est;
  }

  // Searched estimates for m = 2 on a scalar codomain use the parity-split cap:
  // the diagonal coefficients are a sign average of Q, the rest obey Parseval.
  if (m == 2 && spec.scalar_codomain() && spec.domain_dim >= 2) {
    const double split = (Interval(1.0) + Interval(static_cast<double>(spec.domain_dim - 1)) / sqrt(Interval(2.0))).hi();
    if (split < est.upper) {
      est.upper = split;
      est.upper_source = UpperSource::ParitySplit;
    }
  }

  Problem pb{m, spec, enumerate_indices(m, spec.domain_dim)};
  const std::uint64_t total_segments = (budget + options.segment - 1) / options.segment;
  const std::uint64_t per_restart = options.restart_length / options.segment;
  const std::uint64_t restarts = (total_segments + per_restart - 1) / per_restart;

  std::vector<std::vector<Checkpoint>> results(restarts);
  auto work = [&](std::uint64_t k) {
    const std::uint64_t segs = std::min(per_restart, total_segments - k * per_restart);
    results[k] = run_restart(pb, seed, k, static_cast<unsigned>(segs), options);
  };
  const unsigned threads =
      static_cast<unsigned>(std::min<std::uint64_t>(restarts, std::max(1u, std::thread::hardware_concurrency())));
  if (threads <= 1) {
    for (std::uint64_t k = 0; k < restarts; ++k) work(k);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::uint64_t k = w; k < restarts; k += threads) work(k);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  est.method = SidonMethod::Search;
  const Checkpoint* best = nullptr;
  for (const auto& r : results)
    for (const auto& c : r)
      if (c.ratio > 1.0 && (!best || c.ratio > best->ratio)) best = &c;
  if (!best) return est;

  if (best->certified) {
    if (best->ratio > est.upper)
      throw std::logic_error("sidon_bounds: certified witness ratio exceeds the certified upper bound");
    est.lower = best->ratio;
  } else {
    est.lower = std::min(best->ratio, est.upper);
    est.certified = false;
  }
  est.witness = pb.polynomial(best->x);
  return est;
}

void CoefficientBounds::validate() const {
  if (m_max == 0 || per_m.size() != m_max) throw std::invalid_argument("CoefficientBounds: per_m must hold m_max pairs");
  if (spec.domain_dim != n) throw std::invalid_argument("CoefficientBounds: spec dimension differs from n");
  for (std::uint32_t m = 1; m <= m_max; ++m) {
    const auto& pr = at(m);
    const double cap = sidon_upper_cap(m, spec).first;
    if (!(pr.lower >= 1.0 && pr.lower <= pr.upper && pr.upper <= cap))
      throw std::invalid_argument("CoefficientBounds: need 1 <= L_m <= U_m <= cap at m = " + std::to_string(m));
  }
}

CoefficientBounds CoefficientBounds::truncated(std::uint32_t new_max) const {
  if (new_max == 0 || new_max > m_max) throw std::invalid_argument("CoefficientBounds::truncated: bad m_max");
  CoefficientBounds out = *this;
  out.m_max = new_max;
  out.per_m.resize(new_max);
  return out;
}

CoefficientBounds trivial_table(std::uint32_t m_max, const SpaceSpec& spec) {
  if (m_max == 0) throw std::invalid_argument("trivial_table: m_max must be >= 1");
  spec.validate();
  CoefficientBounds t;
  t.n = spec.domain_dim;
  t.m_max = m_max;
  t.spec = spec;
  t.tail_upper_factor = sidon_tail_factor(spec);
  t.provenance = "trivial";
  for (std::uint32_t m = 1; m <= m_max; ++m) {
    const double cap = sidon_upper_cap(m, spec).first;
    t.per_m.push_back({1.0, cap, true});
  }
  return t;
}

CacheRecord to_cache_record(const SidonEstimate& e) {
  CacheRecord r;
  r.m = e.m;
  r.n = e.n;
  r.q = e.spec.domain_exponent;
  r.d = e.spec.codomain_dim;
  r.p = e.spec.codomain_exponent;
  r.lower = e.lower;
  r.upper = e.upper;
  r.method = std::string(to_string(e.method));
  if (e.method == SidonMethod::Search && !e.certified) r.method += "-heuristic";
  r.budget = e.budget;
  r.seed = e.seed;
  r.created_at = utc_timestamp();
  r.certified = e.certified;
  r.upper_source = std::string(to_string(e.upper_source));
  return r;
}

namespace {

CacheRecord key_for(std::uint32_t m, const SpaceSpec& spec, std::uint64_t budget, std::uint64_t seed) {
  CacheRecord r;
  r.m = m;
  r.n = spec.domain_dim;
  r.q = spec.domain_exponent;
  r.d = spec.codomain_dim;
  r.p = spec.codomain_exponent;
  r.budget = budget;
  r.seed = seed;
  return r;
}

}  // namespace

CoefficientBounds build_coefficient_table(std::uint32_t m_max, const SpaceSpec& spec, std::uint64_t budget,
                                          std::uint64_t seed, SidonCache* cache, const SidonSearchOptions& options) {
  if (m_max == 0) throw std::invalid_argument("build_coefficient_table: m_max must be >= 1");
  spec.validate();
  CoefficientBounds t;
  t.n = spec.domain_dim;
  t.m_max = m_max;
  t.spec = spec;
  t.tail_upper_factor = sidon_tail_factor(spec);

  std::vector<CacheRecord> stored;
  bool rebuild = false;
  if (cache) {
    auto contents = cache->load();
    if (contents.corrupt_lines > 0) {
      rebuild = true;
      t.cache_warnings = contents.corrupt_lines;
      std::cerr << "warning: " << contents.corrupt_lines << " corrupt line(s) in " << cache->path().string()
                << "; rebuilding the table\n";
    } else {
      stored = std::move(contents.records);
    }
  }

  std::size_t hits = 0;
  std::vector<CacheRecord> fresh;
  for (std::uint32_t m = 1; m <= m_max; ++m) {
    const auto key = key_for(m, spec, budget, seed);
    auto it = std::find_if(stored.begin(), stored.end(), [&](const CacheRecord& r) { return r.same_key(key); });
    const double cap = sidon_upper_cap(m, spec).first;
    if (it != stored.end() && it->lower >= 1.0 && it->lower <= it->upper && it->upper <= cap) {
      t.per_m.push_back({it->lower, it->upper, it->certified});
      ++hits;
      continue;
    }
    const auto est = sidon_bounds(m, spec, budget, seed, options);
    t.per_m.push_back({est.lower, est.upper, est.certified});
    fresh.push_back(to_cache_record(est));
  }
  if (cache && !fresh.empty()) cache->upsert(fresh);

  if (rebuild)
    t.provenance = "rebuilt";
  else if (hits == m_max)
    t.provenance = "cache";
  else if (hits == 0)
    t.provenance = "computed";
  else
    t.provenance = "mixed";
  t.validate();
  return t;
}

BoundInterval homogeneous_bohr_radius(std::uint32_t m, double lambda, const BoundInterval& chi) {
  if (m == 0) throw std::invalid_argument("homogeneous_bohr_radius: m must be >= 1");
  if (!(lambda >= 1.0)) throw std::invalid_argument("homogeneous_bohr_radius: lambda must be >= 1");
  if (!(chi.lo >= 1.0) || !(chi.lo <= chi.hi))
    throw std::invalid_argument("homogeneous_bohr_radius: chi must satisfy 1 <= lo <= hi");
  const Interval lam(lambda);
  const double lo = root(lam / Interval(chi.hi), m).lo();
  const double hi = root(lam / Interval(chi.lo), m).hi();
  BoundStatus status = chi.status;
  if (hi > 1.0) {
    return {std::min(lo, 1.0), 1.0, combine(status, BoundStatus::Clamped)};
  }
  return {std::max(0.0, lo), hi, status};
}

BoundInterval gamma_capital(const CoefficientBounds& table) {
  table.validate();
  double lo = 1.0;
  double hi = 1.0;
  BoundStatus status = BoundStatus::Certified;
  for (std::uint32_t m = 1; m <= table.m_max; ++m) {
    const auto& pr = table.at(m);
    lo = std::max(lo, root(Interval(pr.lower), m).lo());
    hi = std::max(hi, root(Interval(pr.upper), m).hi());
    if (!pr.certified && pr.lower > 1.0) status = BoundStatus::Heuristic;
  }

  // Tail m > m_max: a_m = (c^2 N_m)^{1/(2m)}. The ratios N_{m+1}/N_m =
  // (n+m)/(m+1) decrease, so for m > M, a_m^{2m} <= C rho^m with
  // rho = (n+M)/(M+1) and C = c^2 N_M rho^{-M}; hence
  // a_m <= sqrt(rho) max(1, C^{1/(2(M+1))}).
  if (table.n == 1) return {lo, hi, status};  // N_m(1) = 1 caps every tail term at 1
  const double n = static_cast<double>(table.n);
  const double c = table.tail_upper_factor;
  const double slack = 1e-12;
  double log_count = 0.0;  // log N_M
  for (std::uint32_t k = 1; k <= table.m_max; ++k) log_count += std::log((n + k - 1.0) / k);
  for (std::uint64_t M = table.m_max; M < 10'000'000; ++M) {
    const double rho = (n + M) / (M + 1.0);
    const double log_c = 2.0 * std::log(c) + log_count - M * std::log(rho);
    const double bound = std::exp(0.5 * std::log(rho) + std::max(0.0, log_c / (2.0 * (M + 1.0)))) * (1.0 + slack);
    if (bound <= hi) return {lo, hi, status};
    if (bound <= hi * (1.0 + 1e-9)) return {lo, bound, status};
    const double m_next = M + 1.0;
    log_count += std::log((n + m_next - 1.0) / m_next);
    const double a = std::exp((2.0 * std::log(c) + log_count) / (2.0 * m_next)) * (1.0 + slack);
    hi = std::max(hi, a);
  }
  throw std::runtime_error("gamma_capital: tail scan did not terminate");
}

}  // namespace bohr
