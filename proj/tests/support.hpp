#pragma once

// Test helpers and plaintext oracles. Oracles are written independently of the
// library: no share arithmetic, no layouts, just the defining formula.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "bte/bte.hpp"

namespace testing_support {

using bte::Word;

/// Session + dealer pair that runs one protocol through plan/provision/online.
struct Harness {
  bte::Session session;
  bte::Dealer dealer;

  explicit Harness(std::uint64_t seed = 1, unsigned cap = bte::kDefaultFaninCap)
      : session(bte::SessionOptions{cap, true}), dealer(seed, cap) {}

  template <class F>
  auto run(F&& f) {
    return bte::run_protocol(session, dealer, std::forward<F>(f));
  }
};

/// A sharing with explicitly chosen halves.
inline bte::Shared from_halves(std::vector<Word> s0, std::vector<Word> s1, bte::RingSpec ring) {
  return bte::Shared(bte::Share{0, ring, std::move(s0)}, bte::Share{1, ring, std::move(s1)});
}

inline bte::Shared bool_from_halves(std::vector<Word> s0, std::vector<Word> s1) {
  return from_halves(std::move(s0), std::move(s1), bte::kBool);
}

inline std::vector<Word> random_values(bte::Rng& rng, std::size_t n, Word mask) {
  std::vector<Word> v(n);
  for (auto& x : v) x = rng.next() & mask;
  return v;
}

// ---- oracles ---------------------------------------------------------------------

inline Word mod_pow2(Word v, unsigned k) { return k >= 64 ? v : v & ((Word{1} << k) - 1); }

/// [(a mod 2^k) + (b mod 2^k) >= 2^k], evaluated in 128-bit arithmetic.
inline Word overflow_oracle(Word a, Word b, unsigned k) {
  const unsigned __int128 sum =
      static_cast<unsigned __int128>(mod_pow2(a, k)) + static_cast<unsigned __int128>(mod_pow2(b, k));
  return sum >= (static_cast<unsigned __int128>(1) << k) ? 1 : 0;
}

inline int highest_set_bit(Word v) {
  int h = -1;
  for (int j = 0; j < 64; ++j)
    if ((v >> j) & 1) h = j;
  return h;
}

/// Wagner-Fischer over full (L+1)^2 table.
template <class Seq>
std::size_t levenshtein(const Seq& a, const Seq& b) {
  std::vector<std::vector<std::size_t>> t(a.size() + 1, std::vector<std::size_t>(b.size() + 1));
  for (std::size_t i = 0; i <= a.size(); ++i) t[i][0] = i;
  for (std::size_t j = 0; j <= b.size(); ++j) t[0][j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i)
    for (std::size_t j = 1; j <= b.size(); ++j)
      t[i][j] = std::min({t[i - 1][j] + 1, t[i][j - 1] + 1,
                          t[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
  return t[a.size()][b.size()];
}

/// Lowest index attaining the max (or min).
inline std::size_t arg_extreme(const std::vector<Word>& v, bool want_max) {
  std::size_t best = 0;
  for (std::size_t j = 1; j < v.size(); ++j)
    if (want_max ? v[j] > v[best] : v[j] < v[best]) best = j;
  return best;
}

// ---- statistics ---------------------------------------------------------------------

/// p-value of Pearson's goodness-of-fit against the uniform distribution.
inline double uniform_p_value(const std::vector<std::uint64_t>& counts) {
  const double total = std::accumulate(counts.begin(), counts.end(), 0.0);
  const double expect = total / static_cast<double>(counts.size());
  double stat = 0;
  for (auto c : counts) stat += (c - expect) * (c - expect) / expect;
  boost::math::chi_squared dist(static_cast<double>(counts.size() - 1));
  return boost::math::cdf(boost::math::complement(dist, stat));
}

/// p-value of the chi-square homogeneity test between two histograms.
inline double homogeneity_p_value(const std::vector<std::uint64_t>& a,
                                  const std::vector<std::uint64_t>& b) {
  const double na = std::accumulate(a.begin(), a.end(), 0.0);
  const double nb = std::accumulate(b.begin(), b.end(), 0.0);
  double stat = 0;
  std::size_t df = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double col = static_cast<double>(a[k] + b[k]);
    if (col == 0) continue;
    const double ea = col * na / (na + nb), eb = col * nb / (na + nb);
    stat += (a[k] - ea) * (a[k] - ea) / ea + (b[k] - eb) * (b[k] - eb) / eb;
    ++df;
  }
  boost::math::chi_squared dist(static_cast<double>(df - 1));
  return boost::math::cdf(boost::math::complement(dist, stat));
}

}  // namespace testing_support
