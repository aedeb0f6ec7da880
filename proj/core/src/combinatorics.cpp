#include "mono/combinatorics.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "mono/error.hpp"

namespace mono {
namespace {

constexpr int kTableSize = 68;

// Pascal's triangle; entries that overflow are saturated at UINT64_MAX.
struct BinomialTable {
  std::array<std::array<std::uint64_t, kTableSize>, kTableSize> c{};

  BinomialTable() {
    for (int n = 0; n < kTableSize; ++n) {
      c[n][0] = 1;
      for (int k = 1; k <= n; ++k) {
        const std::uint64_t a = c[n - 1][k - 1];
        const std::uint64_t b = k < n ? c[n - 1][k] : 0;
        c[n][k] = (a > UINT64_MAX - b) ? UINT64_MAX : a + b;
      }
    }
  }
};

const BinomialTable& table() {
  static const BinomialTable t;
  return t;
}

}  // namespace

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  if (n < kTableSize) {
    const std::uint64_t v = table().c[n][k];
    if (v == UINT64_MAX) throw DomainError("binomial coefficient overflows 64 bits");
    return v;
  }
  // Multiplicative formula with a 128-bit intermediate; each partial
  // product C(n-k+i, i) is an integer.
  __extension__ using Wide = unsigned __int128;
  Wide acc = 1;
  for (int i = 1; i <= k; ++i) {
    acc = acc * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (acc > UINT64_MAX) throw DomainError("binomial coefficient overflows 64 bits");
  }
  return static_cast<std::uint64_t>(acc);
}

BigInt binomial_big(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt acc = 1;
  for (int i = 1; i <= k; ++i) {
    acc *= n - k + i;
    acc /= i;
  }
  return acc;
}

std::uint64_t factorial(int n) {
  if (n < 0) throw DomainError("factorial of negative number");
  if (n > 20) throw DomainError("factorial overflows 64 bits");
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

std::uint64_t colex_rank(std::span<const int> combo) {
  std::uint64_t rank = 0;
  for (std::size_t i = 0; i < combo.size(); ++i)
    rank += binomial(combo[i], static_cast<int>(i) + 1);
  return rank;
}

void colex_unrank(std::uint64_t rank, int k, std::span<int> out) {
  // The i-th element (1-based) is the largest c with C(c, i) <= remaining
  // rank; found by doubling then bisection.
  auto fits = [&](int c, int i) {
    try {
      return binomial(c, i) <= rank;
    } catch (const DomainError&) {
      return false;
    }
  };
  for (int i = k; i >= 1; --i) {
    int lo = i - 1;
    int hi = i;
    while (fits(hi, i)) {
      lo = hi;
      hi *= 2;
    }
    while (hi - lo > 1) {
      const int mid = lo + (hi - lo) / 2;
      if (fits(mid, i)) lo = mid;
      else hi = mid;
    }
    out[static_cast<std::size_t>(i - 1)] = lo;
    rank -= binomial(lo, i);
  }
}

bool next_combination_colex(std::span<int> combo, int n) {
  const std::size_t k = combo.size();
  for (std::size_t i = 0; i < k; ++i) {
    const int limit = (i + 1 < k) ? combo[i + 1] : n;
    if (combo[i] + 1 < limit) {
      ++combo[i];
      for (std::size_t j = 0; j < i; ++j) combo[j] = static_cast<int>(j);
      return true;
    }
  }
  return false;
}

std::vector<std::vector<int>> all_permutations(int r) {
  std::vector<int> p(static_cast<std::size_t>(r));
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::size_t permutation_index(std::span<const int> perm) {
  // Lehmer code.
  const std::size_t r = perm.size();
  std::size_t index = 0;
  for (std::size_t i = 0; i < r; ++i) {
    std::size_t smaller = 0;
    for (std::size_t j = i + 1; j < r; ++j)
      if (perm[j] < perm[i]) ++smaller;
    index = index * (r - i) + smaller;
  }
  return index;
}

}  // namespace mono
