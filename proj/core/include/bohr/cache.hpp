#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bohr/spaces.hpp"

namespace bohr {

/// Raised when the cache file cannot be read or written.
class CacheIoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One persisted Sidon estimate; a line of the JSONL cache file:
/// {"m","n","q","d","p","lower","upper","method","budget","seed","created_at"}
/// plus optional "certified" and "upper_source". q and p are numbers or "inf".
struct CacheRecord {
  std::uint32_t m = 1;
  std::size_t n = 1;
  Exponent q = Exponent::infinity();
  std::size_t d = 1;
  Exponent p = Exponent::finite(2.0);
  double lower = 1.0;
  double upper = 1.0;
  std::string method;
  std::uint64_t budget = 0;
  std::uint64_t seed = 0;
  std::string created_at;
  bool certified = true;
  std::string upper_source;

  /// Same (m, n, q, d, p).
  bool same_problem(const CacheRecord& o) const;
  /// Same problem, budget and seed.
  bool same_key(const CacheRecord& o) const;
};

/// Serializes one record as a single JSON line (no trailing newline).
std::string to_json_line(const CacheRecord& r);
/// Parses a line; std::nullopt for malformed or incomplete lines. Unknown
/// fields are ignored.
std::optional<CacheRecord> parse_json_line(const std::string& line);

/// Line-delimited JSON store of Sidon estimates.
///
/// Writes take an exclusive lock on `<path>.lock`, re-read the file, merge
/// and replace it atomically, so concurrent writers never lose records.
class SidonCache {
 public:
  explicit SidonCache(std::filesystem::path path);

  const std::filesystem::path& path() const { return path_; }

  struct Contents {
    std::vector<CacheRecord> records;
    std::size_t corrupt_lines = 0;
  };
  /// Missing file reads as empty. Corrupt lines are skipped and counted.
  Contents load() const;

  /// Record with the same key, if any.
  std::optional<CacheRecord> find(const CacheRecord& key) const;
  /// Tightest merge over all budgets and seeds of one problem: largest
  /// lower, smallest upper.
  std::optional<CacheRecord> tightest(const CacheRecord& problem) const;

  /// Inserts, or tightens the stored record with the same key (larger lower,
  /// smaller upper). Returns the stored record.
  CacheRecord upsert(const CacheRecord& record);
  void upsert(const std::vector<CacheRecord>& records);

  /// Corrupt lines seen by the last load().
  std::size_t last_corrupt_lines() const { return last_corrupt_; }

 private:
  std::filesystem::path path_;
  mutable std::size_t last_corrupt_ = 0;
};

/// $BOHRKIT_CACHE when set, otherwise "bohrkit_sidon_cache.jsonl".
std::filesystem::path default_cache_path();

/// UTC time as ISO-8601, e.g. 2026-10-18T12:00:00Z.
std::string utc_timestamp();

}  // namespace bohr
