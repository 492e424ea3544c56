#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bte/protocols/b2a.hpp"
#include "bte/protocols/equality.hpp"
#include "bte/protocols/max.hpp"
#include "bte/ring.hpp"

namespace bte {

inline constexpr RingSpec kGenomeRing{16};
inline constexpr std::size_t kMaxGenomeLength = std::size_t{1} << 13;

inline Word encode_base(char c) {
  switch (c) {
    case 'A': return 0;
    case 'T': return 1;
    case 'G': return 2;
    case 'C': return 3;
    default: break;
  }
  throw Error(ErrorKind::domain, std::string("not a DNA base: '") + c + "'");
}

inline std::vector<Word> encode_genome(std::string_view s) {
  std::vector<Word> out;
  out.reserve(s.size());
  for (char c : s) out.push_back(encode_base(c));
  return out;
}

/// Per-character arithmetic shares over Z_2^16, batch = string length.
inline Shared share_genome(std::string_view s, Rng& rng) {
  return share(encode_genome(s), kGenomeRing, rng);
}

namespace detail {

inline void check_genomes(std::span<const Shared> a, std::span<const Shared> b) {
  require(!a.empty() && a.size() == b.size(), ErrorKind::shape,
          "edit distance needs the same number of left and right strings");
  const std::size_t len = a[0].size();
  require(len >= 1, ErrorKind::shape, "empty genome string");
  require(len <= kMaxGenomeLength, ErrorKind::capability, "genome string too long");
  for (std::size_t p = 0; p < a.size(); ++p) {
    require(a[p].ring() == kGenomeRing && b[p].ring() == kGenomeRing, ErrorKind::domain,
            "genome shares must live in Z_2^16");
    require(a[p].size() == len && b[p].size() == len, ErrorKind::shape,
            "genome strings must share one length");
  }
}

}  // namespace detail

/// e[i][j] = [a_i != b_j] for each pair, row-major L*L per pair. One batched
/// Equality plus one B2A (3 rounds), then e = 1 - eq locally.
inline std::vector<Shared> mismatch_matrices(Session& s, std::span<const Shared> a,
                                             std::span<const Shared> b) {
  detail::check_genomes(a, b);
  const std::size_t len = a[0].size();
  std::vector<Shared> lhs, rhs;
  for (std::size_t p = 0; p < a.size(); ++p)
    for (std::size_t i = 0; i < len; ++i)
      for (std::size_t j = 0; j < len; ++j) {
        lhs.push_back(slice(a[p], i, 1));
        rhs.push_back(slice(b[p], j, 1));
      }
  const Shared eq = b2a(s, equality(s, concat(lhs), concat(rhs)), kGenomeRing);
  const Shared e = add_const(mul_const(eq, kGenomeRing.mask()), 1);
  return split(e, a.size());
}

inline Shared mismatch_matrix(Session& s, const Shared& a, const Shared& b) {
  return mismatch_matrices(s, std::span<const Shared>(&a, 1), std::span<const Shared>(&b, 1))[0];
}

/// Levenshtein distance for a batch of equal-length pairs. Cells on one
/// anti-diagonal are independent, so each diagonal (across all pairs) is a
/// single batched 3-Min: 3 + 4(2L - 1) = 8L - 1 rounds.
inline Shared edit_distances(Session& s, std::span<const Shared> a, std::span<const Shared> b) {
  const std::vector<Shared> e = mismatch_matrices(s, a, b);
  const std::size_t pairs = a.size();
  const std::size_t len = a[0].size();
  const std::size_t side = len + 1;
  const RingSpec ring = kGenomeRing;

  // Both parties' DP tables; boundaries are public (held by party 0).
  std::array<std::vector<Word>, 2> dp{std::vector<Word>(pairs * side * side),
                                      std::vector<Word>(pairs * side * side)};
  auto at = [&](std::size_t p, std::size_t i, std::size_t j) { return (p * side + i) * side + j; };
  for (std::size_t p = 0; p < pairs; ++p)
    for (std::size_t k = 0; k < side; ++k) {
      dp[0][at(p, k, 0)] = k;
      dp[0][at(p, 0, k)] = k;
    }

  for (std::size_t d = 2; d <= 2 * len; ++d) {
    const std::size_t ilo = d > len ? d - len : 1;
    const std::size_t ihi = std::min(len, d - 1);
    const std::size_t cells = (ihi - ilo + 1) * pairs;
    std::array<Shared, 3> in;
    for (auto& x : in) x = detail::zeros(ring, cells);
    std::size_t c = 0;
    for (std::size_t p = 0; p < pairs; ++p)
      for (std::size_t i = ilo; i <= ihi; ++i, ++c) {
        const std::size_t j = d - i;
        for (unsigned q = 0; q < 2; ++q) {
          const Word one = q == 0 ? 1 : 0;
          in[0][q].values[c] = ring.reduce(dp[q][at(p, i - 1, j)] + one);
          in[1][q].values[c] = ring.reduce(dp[q][at(p, i, j - 1)] + one);
          in[2][q].values[c] =
              ring.reduce(dp[q][at(p, i - 1, j - 1)] + e[p][q].values[(i - 1) * len + (j - 1)]);
        }
      }
    const Shared m = min3(s, in);
    c = 0;
    for (std::size_t p = 0; p < pairs; ++p)
      for (std::size_t i = ilo; i <= ihi; ++i, ++c)
        for (unsigned q = 0; q < 2; ++q) dp[q][at(p, i, d - i)] = m[q].values[c];
  }

  Shared out = detail::zeros(ring, pairs);
  for (std::size_t p = 0; p < pairs; ++p)
    for (unsigned q = 0; q < 2; ++q) out[q].values[p] = dp[q][at(p, len, len)];
  return out;
}

inline Shared edit_distance(Session& s, const Shared& a, const Shared& b) {
  return edit_distances(s, std::span<const Shared>(&a, 1), std::span<const Shared>(&b, 1));
}

inline std::size_t edit_distance_rounds(std::size_t len) { return 8 * len - 1; }

}  // namespace bte
