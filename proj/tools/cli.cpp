#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <ostream>
#include <variant>

#include "CLI11.hpp"
#include "bohr/cache.hpp"
#include "bohr/radii.hpp"
#include "bohr/sidon.hpp"
#include "bohr/verify.hpp"
#include "json.hpp"

namespace bohrkit::cli {

namespace {

using bohr::Exponent;
using bohr::SpaceSpec;

using Cell = std::variant<std::monostate, std::string, double, std::int64_t, bool>;

struct Report {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::size_t cache_warnings = 0;
};

std::string fmt_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string csv_cell(const Cell& c) {
  struct {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(const std::string& s) const {
      if (s.find_first_of(",\"\n") == std::string::npos) return s;
      std::string q = "\"";
      for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
      return q + "\"";
    }
    std::string operator()(double v) const { return fmt_real(v); }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
  } visitor;
  return std::visit(visitor, c);
}

nlohmann::json json_cell(const Cell& c) {
  struct {
    nlohmann::json operator()(std::monostate) const { return nullptr; }
    nlohmann::json operator()(const std::string& s) const { return s; }
    nlohmann::json operator()(double v) const {
      if (!std::isfinite(v)) return fmt_real(v);
      return std::strtod(fmt_real(v).c_str(), nullptr);
    }
    nlohmann::json operator()(std::int64_t v) const { return v; }
    nlohmann::json operator()(bool b) const { return b; }
  } visitor;
  return std::visit(visitor, c);
}

void emit(const Report& r, const RunConfig& cfg, std::ostream& out) {
  if (cfg.format == Format::Csv) {
    if (cfg.stamp) out << "# bohrkit " << bohr::utc_timestamp() << '\n';
    for (std::size_t i = 0; i < r.columns.size(); ++i) out << (i ? "," : "") << r.columns[i];
    out << '\n';
    for (const auto& row : r.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
      out << '\n';
    }
    return;
  }
  // ordered output keeps the column order of the CSV form
  auto ordered = nlohmann::ordered_json::array();
  for (const auto& row : r.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[r.columns[i]] = json_cell(row[i]);
    ordered.push_back(std::move(obj));
  }
  out << ordered.dump(2) << '\n';
}

Cell real(double v) { return v; }
Cell integer(std::uint64_t v) { return static_cast<std::int64_t>(v); }
Cell opt_real(const std::optional<double>& v) { return v ? Cell(*v) : Cell(std::monostate{}); }

SpaceSpec spec_for(const RunConfig& c, std::size_t n) { return SpaceSpec{n, c.q, c.d, c.p}; }

std::optional<bohr::SidonCache> open_cache(const RunConfig& c) {
  if (!c.use_cache) return std::nullopt;
  if (c.cache_path) return bohr::SidonCache(*c.cache_path);
  if (const char* env = std::getenv("BOHRKIT_CACHE"); env && *env) return bohr::SidonCache(bohr::default_cache_path());
  return std::nullopt;
}

bohr::CoefficientBounds table_for(const RunConfig& c, std::size_t n, std::optional<bohr::SidonCache>& cache) {
  const auto spec = spec_for(c, n);
  if (c.budget == 0) return bohr::trivial_table(c.m_max, spec);
  return bohr::build_coefficient_table(c.m_max, spec, c.budget, c.seed, cache ? &*cache : nullptr);
}

std::string witness_hash(const bohr::SidonEstimate& e) {
  if (e.method != bohr::SidonMethod::Search || !e.witness) return "-";
  // FNV-1a over exponents and coefficient bit patterns.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xff;
      h *= 0x100000001b3ULL;
    }
  };
  for (const auto& t : e.witness->terms()) {
    for (auto a : t.index.entries()) mix(a);
    for (const auto& c : t.coeff) {
      std::uint64_t re, im;
      const double r = c.real(), i = c.imag();
      std::memcpy(&re, &r, 8);
      std::memcpy(&im, &i, 8);
      mix(re);
      mix(im);
    }
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Report run_beta(const RunConfig& c) {
  Report r;
  r.columns = {"n", "lambda", "beta_lo", "beta_hi", "iterations"};
  for (std::size_t n = c.n_first; n <= c.n_last; ++n)
    for (double lam : c.lambdas) {
      const auto root = bohr::solve_root({n, bohr::SqrtNCoefficients{}, lam}, c.tol);
      r.rows.push_back({integer(n), real(lam), real(root.root.lo), real(root.root.hi), integer(root.iterations)});
    }
  return r;
}

Report run_gamma(const RunConfig& c) {
  Report r;
  r.columns = {"n",          "lambda",        "beta_lo",         "beta_hi",   "gamma_lo_lo",   "gamma_lo_hi",
               "gamma_hi_lo", "gamma_hi_hi",  "k_lower",         "k_upper",   "Gamma_lo",      "Gamma_hi",
               "one_third_bound", "gap",      "gap_truncated",   "tail_m_max", "table_provenance", "chain_ok",
               "theorem_applies", "large_lambda"};
  auto cache = open_cache(c);
  for (std::size_t n = c.n_first; n <= c.n_last; ++n) {
    const auto table = table_for(c, n, cache);
    r.cache_warnings += table.cache_warnings;
    for (double lam : c.lambdas) {
      const auto rep = bohr::bohr_bounds_report(n, lam, spec_for(c, n), table, c.k_disk, c.tol);
      r.rows.push_back({integer(n), real(lam), real(rep.beta.lo), real(rep.beta.hi), real(rep.gamma_lo.lo),
                        real(rep.gamma_lo.hi), real(rep.gamma_hi.lo), real(rep.gamma_hi.hi), real(rep.k_lower),
                        opt_real(rep.k_upper), real(rep.gamma_capital.lo), real(rep.gamma_capital.hi),
                        real(rep.one_third_bound), real(rep.gap), opt_real(rep.gap_truncated), integer(table.m_max),
                        table.provenance, rep.chain_ok, rep.theorem_applies, rep.large_lambda});
    }
  }
  return r;
}

Report run_sidon(const RunConfig& c) {
  Report r;
  r.columns = {"m", "n", "q", "d", "p", "lower", "upper", "method", "certified", "upper_source", "witness_hash"};
  auto cache = open_cache(c);
  std::vector<bohr::CacheRecord> records;
  for (std::size_t n = c.n_first; n <= c.n_last; ++n) {
    const auto e = bohr::sidon_bounds(c.m, spec_for(c, n), c.budget, c.seed);
    std::string method(bohr::to_string(e.method));
    r.rows.push_back({integer(e.m), integer(e.n), c.q.to_string(), integer(c.d), c.p.to_string(), real(e.lower),
                      real(e.upper), method, e.certified, std::string(bohr::to_string(e.upper_source)),
                      witness_hash(e)});
    if (cache) records.push_back(bohr::to_cache_record(e));
  }
  if (cache && !records.empty()) cache->upsert(records);
  return r;
}

Report run_table(const RunConfig& c) {
  Report r;
  r.columns = {"n", "q", "lambda", "beta_lo", "beta_hi", "gamma_lo", "gamma_hi", "asymptotic_ref", "ratio_lo",
               "ratio_hi"};
  auto cache = open_cache(c);
  for (std::size_t n = c.n_first; n <= c.n_last; ++n) {
    const auto table = table_for(c, n, cache);
    r.cache_warnings += table.cache_warnings;
    for (double lam : c.lambdas) {
      const auto beta = bohr::solve_root({n, bohr::SqrtNCoefficients{}, lam}, c.tol).root;
      const auto g = bohr::solve_gamma_bounds(n, lam, table, c.tol);
      std::vector<Cell> row{integer(n), c.q.to_string(), real(lam), real(beta.lo), real(beta.hi), real(g.gamma_lo.lo),
                            real(g.gamma_hi.hi)};
      if (n >= 2) {
        const double ref = bohr::asymptotic_reference(n, c.q);
        const auto ratio = bohr::Interval(beta.lo, beta.hi) / bohr::Interval(ref);
        row.insert(row.end(), {real(ref), real(ratio.lo()), real(ratio.hi())});
      } else {
        row.insert(row.end(), {std::monostate{}, std::monostate{}, std::monostate{}});
      }
      r.rows.push_back(std::move(row));
    }
  }
  return r;
}

struct Tally {
  std::size_t instances = 0, holds = 0, violated = 0, certified_violations = 0, inconclusive = 0;
  double min_margin = std::numeric_limits<double>::infinity();
  std::string witness;

  void add(const bohr::Verdict& v, const std::string& label) {
    ++instances;
    switch (v.kind) {
      case bohr::VerdictKind::Holds: ++holds; break;
      case bohr::VerdictKind::Violated:
        ++violated;
        if (v.certified) ++certified_violations;
        break;
      case bohr::VerdictKind::Inconclusive: ++inconclusive; break;
    }
    if (v.margin < min_margin) {
      min_margin = v.margin;
      witness = label;
    }
  }
};

Report run_verify(const RunConfig& c) {
  Report r;
  r.columns = {"check",    "n",           "lambda", "r", "instances", "holds", "violated", "certified_violations",
               "inconclusive", "min_margin", "witness"};
  auto push = [&](const char* check, std::size_t n, double lam, std::optional<double> radius, const Tally& t) {
    r.rows.push_back({std::string(check), integer(n), real(lam), opt_real(radius), integer(t.instances),
                      integer(t.holds), integer(t.violated), integer(t.certified_violations), integer(t.inconclusive),
                      real(t.min_margin), t.witness});
  };

  switch (c.check) {
    case Check::Moebius:
      for (double lam : c.lambdas)
        for (double rad : c.radii) {
          Tally t;
          for (std::size_t k = 1; k <= c.grid; ++k) {
            const double a = static_cast<double>(k) / static_cast<double>(c.grid + 1);
            const auto f = bohr::moebius_family(a, c.truncation);
            t.add(bohr::check_bohr_sample(f, rad, lam, bohr::DeclaredSup{1.0}), "a=" + fmt_real(a));
          }
          push("moebius", 1, lam, rad, t);
        }
      break;
    case Check::Bohr:
      for (std::size_t n = c.n_first; n <= c.n_last; ++n)
        for (double lam : c.lambdas) {
          const double rad = bohr::solve_root({n, bohr::SqrtNCoefficients{}, lam}, c.tol).root.lo;
          Tally t;
          for (std::size_t i = 0; i < c.samples; ++i) {
            const auto seed = bohr::derive_seed(c.seed, i);
            const auto f = bohr::random_series(spec_for(c, n), c.m_max, seed);
            t.add(bohr::check_bohr_sample(f, rad, lam, bohr::HeuristicSup{8, seed}), "instance=" + std::to_string(i));
          }
          push("bohr", n, lam, rad, t);
        }
      break;
    case Check::Wiener:
      for (std::size_t n = c.n_first; n <= c.n_last; ++n) {
        const auto spec = spec_for(c, n);
        Tally t;
        for (std::size_t i = 0; i < c.samples; ++i) {
          const auto seed = bohr::derive_seed(c.seed, i);
          const auto g = bohr::normalize_sup(bohr::random_series(spec, c.m_max, seed), 1.0, seed);
          for (std::uint32_t m = 1; m <= c.m_max; ++m) {
            const double cap = bohr::sidon_upper_cap(m, spec).first;
            t.add(bohr::wiener_bound_check(g.f, m, cap, 64, bohr::derive_seed(seed, m)),
                  "instance=" + std::to_string(i) + ",m=" + std::to_string(m));
          }
        }
        push("wiener", n, 1.0, std::nullopt, t);
      }
      break;
    case Check::Corner:
      for (std::size_t n = c.n_first; n <= c.n_last; ++n) {
        const auto spec = spec_for(c, n);
        Tally t;
        for (std::size_t i = 0; i < c.samples; ++i) {
          const auto seed = bohr::derive_seed(c.seed, i);
          const auto q = bohr::random_corner_instance(c.m, spec, seed);
          auto z = bohr::sample_sphere(spec, bohr::derive_seed(seed, 1), 1).front();
          for (auto& zi : z) zi *= 0.9;
          t.add(bohr::corner_strictness_check(q, z, 256, bohr::derive_seed(seed, 2)), "instance=" + std::to_string(i));
        }
        push("corner", n, 1.0, std::nullopt, t);
      }
      break;
  }
  return r;
}

Exponent parse_exponent(const std::string& text, const char* flag) {
  try {
    return Exponent::parse(text);
  } catch (const std::exception& e) {
    throw ConfigError(std::string(flag) + ": " + e.what());
  }
}

}  // namespace

std::pair<std::size_t, std::size_t> parse_range(const std::string& text) {
  auto parse_one = [&](const std::string& s) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(s, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != s.size() || s.front() == '-')
      throw ConfigError("--n: expected a positive integer or a range like 2..20, got '" + text + "'");
    return static_cast<std::size_t>(v);
  };
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const auto v = parse_one(text);
    return {v, v};
  }
  return {parse_one(text.substr(0, dots)), parse_one(text.substr(dots + 2))};
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    auto parse_num = [&](const std::string& s) {
      std::size_t pos = 0;
      double v = 0.0;
      try {
        v = std::stod(s, &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos == 0 || pos != s.size()) throw ConfigError("expected a number, got '" + s + "' in '" + text + "'");
      return v;
    };
    const auto slash = item.find('/');
    if (slash == std::string::npos) {
      out.push_back(parse_num(item));
    } else {
      const double den = parse_num(item.substr(slash + 1));
      if (den == 0.0) throw ConfigError("zero denominator in '" + item + "'");
      out.push_back(parse_num(item.substr(0, slash)) / den);
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

void RunConfig::validate() const {
  if (n_first < 1) throw ConfigError("--n must be >= 1");
  if (n_first > n_last) throw ConfigError("--n range is empty (first > last)");
  if (lambdas.empty()) throw ConfigError("--lambda needs at least one value");
  for (double l : lambdas)
    if (!(l >= 1.0) || !std::isfinite(l)) throw ConfigError("--lambda values must be finite and >= 1, got " + fmt_real(l));
  if (!(tol > 0.0)) throw ConfigError("--tol must be > 0");
  if (d < 1) throw ConfigError("--d must be >= 1");
  if (m < 1) throw ConfigError("--m must be >= 1");
  if (m_max < 1) throw ConfigError("--m-max must be >= 1");
  if (k_disk && !(*k_disk > 0.0 && *k_disk <= 1.0)) throw ConfigError("--k-disk must lie in (0, 1]");
  if (stamp && format != Format::Csv) throw ConfigError("--stamp requires --format csv");
  if (command == Command::Verify) {
    for (double r : radii)
      if (!(r >= 0.0 && r <= 1.0)) throw ConfigError("--r values must lie in [0, 1]");
    if (grid < 1) throw ConfigError("--grid must be >= 1");
    if (truncation < 1) throw ConfigError("--truncation must be >= 1");
    if (check == Check::Corner && n_first < 2) throw ConfigError("verify --check corner needs --n >= 2");
  }
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    config.validate();
    Report report;
    switch (config.command) {
      case Command::Beta: report = run_beta(config); break;
      case Command::Gamma: report = run_gamma(config); break;
      case Command::Sidon: report = run_sidon(config); break;
      case Command::Table: report = run_table(config); break;
      case Command::Verify: report = run_verify(config); break;
    }
    emit(report, config, out);
    if (report.cache_warnings > 0)
      err << "warning: skipped " << report.cache_warnings << " corrupt cache line(s); affected tables were rebuilt\n";
    return kOk;
  } catch (const bohr::CacheIoError& e) {
    err << "cache error: " << e.what() << '\n';
    return kCacheError;
  } catch (const std::invalid_argument& e) {
    err << "configuration error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::domain_error& e) {
    err << "configuration error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::length_error& e) {
    err << "configuration error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << "numeric error: " << e.what() << '\n';
    return kNumericError;
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"certified Bohr radius and Sidon constant bounds", "bohrkit"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string n_text = "1", lambda_text = "1", q_text = "inf", p_text = "2", format_text = "csv";
  std::string r_text = "0.35,1/3", check_text = "moebius", cache_text;
  std::string k_disk_text;
  bool no_cache = false;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--n", n_text, "dimension n or range a..b");
    sub->add_option("--lambda", lambda_text, "comma-separated lambda values (>= 1)");
    sub->add_option("--q", q_text, "domain exponent: number >= 1 or inf");
    sub->add_option("--d", cfg.d, "codomain dimension");
    sub->add_option("--p", p_text, "codomain exponent: number >= 1 or inf");
    sub->add_option("--m", cfg.m, "homogeneity degree");
    sub->add_option("--m-max", cfg.m_max, "largest degree in the coefficient table");
    sub->add_option("--budget", cfg.budget, "Sidon search evaluations per degree (0 = trivial table)");
    sub->add_option("--tol", cfg.tol, "target width of root enclosures");
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--cache", cache_text, "Sidon cache file (default: $BOHRKIT_CACHE)");
    sub->add_flag("--no-cache", no_cache, "ignore the Sidon cache");
    sub->add_option("--format", format_text, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_flag("--stamp", cfg.stamp, "prepend a '#' timestamp line (csv only)");
    sub->add_option("--k-disk", k_disk_text, "K(D, X, lambda) in (0, 1] for the upper bound");
  };

  struct Sub {
    const char* name;
    const char* help;
    Command command;
  };
  const Sub subs[] = {{"beta", "certified beta_n enclosures", Command::Beta},
                      {"gamma", "gamma_n enclosure and theorem chain", Command::Gamma},
                      {"sidon", "Sidon constant bounds S(m, n)", Command::Sidon},
                      {"table", "beta/gamma comparison against the asymptotic reference", Command::Table},
                      {"verify", "Bohr inequality and lemma checks", Command::Verify}};
  std::vector<CLI::App*> apps;
  for (const auto& s : subs) {
    auto* sub = app.add_subcommand(s.name, s.help);
    common(sub);
    if (s.command == Command::Verify) {
      sub->add_option("--check", check_text, "moebius, bohr, wiener or corner")
          ->check(CLI::IsMember({"moebius", "bohr", "wiener", "corner"}));
      sub->add_option("--r", r_text, "comma-separated radii (fractions allowed)");
      sub->add_option("--grid", cfg.grid, "Moebius parameter grid size");
      sub->add_option("--samples", cfg.samples, "random instances per row");
      sub->add_option("--truncation", cfg.truncation, "Moebius truncation degree");
    }
    apps.push_back(sub);
  }

  try {
    std::vector<std::string> args;
    for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    for (std::size_t i = 0; i < apps.size(); ++i)
      if (apps[i]->parsed()) cfg.command = subs[i].command;
    std::tie(cfg.n_first, cfg.n_last) = parse_range(n_text);
    cfg.lambdas = parse_real_list(lambda_text);
    cfg.q = parse_exponent(q_text, "--q");
    cfg.p = parse_exponent(p_text, "--p");
    cfg.format = format_text == "json" ? Format::Json : Format::Csv;
    if (!cache_text.empty()) cfg.cache_path = cache_text;
    cfg.use_cache = !no_cache;
    if (!k_disk_text.empty()) cfg.k_disk = parse_real_list(k_disk_text).at(0);
    cfg.radii = parse_real_list(r_text);
    cfg.check = check_text == "bohr"     ? Check::Bohr
                : check_text == "wiener" ? Check::Wiener
                : check_text == "corner" ? Check::Corner
                                         : Check::Moebius;
  } catch (const std::exception& e) {
    err << "configuration error: " << e.what() << '\n';
    return kConfigError;
  }
  return run(cfg, out, err);
}

}  // namespace bohrkit::cli
