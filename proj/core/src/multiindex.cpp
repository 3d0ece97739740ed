#include "bohr/multiindex.hpp"

#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace bohr {

MultiIndex::MultiIndex(std::vector<std::uint32_t> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw std::invalid_argument("MultiIndex: length must be >= 1");
}

MultiIndex MultiIndex::corner(std::size_t n, std::size_t j, std::uint32_t m) {
  if (j >= n) throw std::out_of_range("MultiIndex::corner: j >= n");
  std::vector<std::uint32_t> e(n, 0);
  e[j] = m;
  return MultiIndex(std::move(e));
}

std::uint64_t MultiIndex::degree() const {
  return std::accumulate(entries_.begin(), entries_.end(), std::uint64_t{0});
}

bool MultiIndex::is_corner() const {
  std::size_t nonzero = 0;
  for (auto e : entries_) nonzero += (e != 0);
  return nonzero == 1;
}

__extension__ using u128 = unsigned __int128;

std::uint64_t count_multi_indices(std::uint64_t m, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("count_multi_indices: n must be >= 1");
  // C(n-1+m, m) = C(n-1+m, n-1); iterate over the smaller of the two.
  const std::uint64_t k = std::min(m, n - 1);
  const std::uint64_t top = n - 1 + m;
  if (top < m) throw std::overflow_error("count_multi_indices: n + m overflows");
  // r_i = C(top - k + i, i); r_i * (top - k + i + 1) is divisible by i + 1.
  u128 r = 1;
  const std::uint64_t base = top - k;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (base + i) / i;
    if (r > std::numeric_limits<std::uint64_t>::max())
      throw std::overflow_error("count_multi_indices: C(" + std::to_string(top) + ", " + std::to_string(m) +
                                ") exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(r);
}

namespace {

void enumerate_rec(std::uint32_t remaining, std::size_t pos, std::vector<std::uint32_t>& cur,
                   std::vector<MultiIndex>& out) {
  const std::size_t n = cur.size();
  if (pos + 1 == n) {
    cur[pos] = remaining;
    out.emplace_back(cur);
    return;
  }
  for (std::uint32_t e = remaining + 1; e-- > 0;) {
    cur[pos] = e;
    enumerate_rec(remaining - e, pos + 1, cur, out);
  }
  cur[pos] = 0;
}

}  // namespace

std::vector<MultiIndex> enumerate_indices(std::uint32_t m, std::size_t n) {
  if (n == 0) throw std::invalid_argument("enumerate_indices: n must be >= 1");
  const auto count = count_multi_indices(m, n);
  if (count > (std::uint64_t{1} << 32))
    throw std::length_error("enumerate_indices: Lambda(m, n) too large to materialize");
  std::vector<MultiIndex> out;
  out.reserve(static_cast<std::size_t>(count));
  std::vector<std::uint32_t> cur(n, 0);
  enumerate_rec(m, 0, cur, out);
  return out;
}

std::complex<double> monomial_eval(const MultiIndex& alpha, std::span<const std::complex<double>> z) {
  if (alpha.size() != z.size()) throw std::invalid_argument("monomial_eval: length mismatch");
  std::complex<double> p{1.0, 0.0};
  for (std::size_t i = 0; i < z.size(); ++i) {
    for (std::uint32_t k = 0; k < alpha[i]; ++k) p *= z[i];
  }
  return p;
}

double monomial_eval(const MultiIndex& alpha, std::span<const double> t) {
  if (alpha.size() != t.size()) throw std::invalid_argument("monomial_eval: length mismatch");
  double p = 1.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (std::uint32_t k = 0; k < alpha[i]; ++k) p *= t[i];
  }
  return p;
}

}  // namespace bohr
