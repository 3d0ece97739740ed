#include "bohr/cache.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <ctime>
#include <fstream>
#include <random>

#include "json.hpp"

namespace bohr {

namespace {

using nlohmann::json;

json exponent_json(const Exponent& e) {
  if (e.is_infinite()) return "inf";
  return e.value();
}

Exponent exponent_from(const json& j) {
  if (j.is_string()) return Exponent::parse(j.get<std::string>());
  if (j.is_number()) return Exponent::finite(j.get<double>());
  throw std::invalid_argument("exponent must be a number or \"inf\"");
}

class FileLock {
 public:
  explicit FileLock(const std::filesystem::path& target) {
    const auto lock_path = target.string() + ".lock";
    fd_ = ::open(lock_path.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
    if (fd_ < 0) throw CacheIoError("cannot open lock file " + lock_path + ": " + std::strerror(errno));
    while (::flock(fd_, LOCK_EX) != 0) {
      if (errno == EINTR) continue;
      const int err = errno;
      ::close(fd_);
      throw CacheIoError("cannot lock " + lock_path + ": " + std::strerror(err));
    }
  }
  ~FileLock() {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;

 private:
  int fd_ = -1;
};

void merge_into(CacheRecord& stored, const CacheRecord& incoming) {
  if (incoming.lower > stored.lower) {
    stored.lower = incoming.lower;
    stored.method = incoming.method;
    stored.certified = incoming.certified;
  }
  if (incoming.upper < stored.upper) {
    stored.upper = incoming.upper;
    stored.upper_source = incoming.upper_source;
  }
}

}  // namespace

bool CacheRecord::same_problem(const CacheRecord& o) const {
  return m == o.m && n == o.n && q == o.q && d == o.d && p == o.p;
}

bool CacheRecord::same_key(const CacheRecord& o) const {
  return same_problem(o) && budget == o.budget && seed == o.seed;
}

std::string to_json_line(const CacheRecord& r) {
  json j = json::object();
  j["m"] = r.m;
  j["n"] = r.n;
  j["q"] = exponent_json(r.q);
  j["d"] = r.d;
  j["p"] = exponent_json(r.p);
  j["lower"] = r.lower;
  j["upper"] = r.upper;
  j["method"] = r.method;
  j["budget"] = r.budget;
  j["seed"] = r.seed;
  j["created_at"] = r.created_at;
  j["certified"] = r.certified;
  if (!r.upper_source.empty()) j["upper_source"] = r.upper_source;
  return j.dump();
}

std::optional<CacheRecord> parse_json_line(const std::string& line) {
  try {
    const json j = json::parse(line);
    if (!j.is_object()) return std::nullopt;
    CacheRecord r;
    r.m = j.at("m").get<std::uint32_t>();
    r.n = j.at("n").get<std::size_t>();
    r.q = exponent_from(j.at("q"));
    r.d = j.at("d").get<std::size_t>();
    r.p = exponent_from(j.at("p"));
    r.lower = j.at("lower").get<double>();
    r.upper = j.at("upper").get<double>();
    r.method = j.at("method").get<std::string>();
    r.budget = j.at("budget").get<std::uint64_t>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.created_at = j.at("created_at").get<std::string>();
    r.certified = j.value("certified", true);
    r.upper_source = j.value("upper_source", std::string{});
    if (r.m == 0 || r.n == 0 || r.d == 0 || !(r.lower <= r.upper)) return std::nullopt;
    return r;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

SidonCache::SidonCache(std::filesystem::path path) : path_(std::move(path)) {}

SidonCache::Contents SidonCache::load() const {
  Contents out;
  std::error_code ec;
  if (!std::filesystem::exists(path_, ec)) {
    last_corrupt_ = 0;
    return out;
  }
  std::ifstream in(path_);
  if (!in) throw CacheIoError("cannot read cache " + path_.string());
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (auto r = parse_json_line(line))
      out.records.push_back(std::move(*r));
    else
      ++out.corrupt_lines;
  }
  if (in.bad()) throw CacheIoError("error while reading cache " + path_.string());
  last_corrupt_ = out.corrupt_lines;
  return out;
}

std::optional<CacheRecord> SidonCache::find(const CacheRecord& key) const {
  for (auto& r : load().records)
    if (r.same_key(key)) return r;
  return std::nullopt;
}

std::optional<CacheRecord> SidonCache::tightest(const CacheRecord& problem) const {
  std::optional<CacheRecord> best;
  for (const auto& r : load().records) {
    if (!r.same_problem(problem)) continue;
    if (!best)
      best = r;
    else
      merge_into(*best, r);
  }
  return best;
}

CacheRecord SidonCache::upsert(const CacheRecord& record) {
  upsert(std::vector<CacheRecord>{record});
  return *find(record);
}

void SidonCache::upsert(const std::vector<CacheRecord>& records) {
  if (path_.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path_.parent_path(), ec);
  }
  FileLock lock(path_);
  auto contents = load();
  auto& all = contents.records;
  for (const auto& rec : records) {
    auto it = std::find_if(all.begin(), all.end(), [&](const CacheRecord& r) { return r.same_key(rec); });
    if (it == all.end())
      all.push_back(rec);
    else
      merge_into(*it, rec);
  }

  std::random_device rd;
  const auto tmp = path_.string() + ".tmp." + std::to_string(::getpid()) + "." + std::to_string(rd());
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw CacheIoError("cannot write cache " + tmp);
    for (const auto& r : all) out << to_json_line(r) << '\n';
    out.flush();
    if (!out) throw CacheIoError("error while writing cache " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path_, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw CacheIoError("cannot replace cache " + path_.string());
  }
}

std::filesystem::path default_cache_path() {
  if (const char* env = std::getenv("BOHRKIT_CACHE"); env && *env) return env;
  return "bohrkit_sidon_cache.jsonl";
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace bohr
