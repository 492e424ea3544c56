#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "bte/gates.hpp"
#include "bte/protocols/layout.hpp"
#include "bte/ring.hpp"

namespace bte {

namespace detail {

inline Word low_mask(unsigned k) { return k >= 64 ? ~Word{0} : (Word{1} << k) - 1; }

struct BlockPrefix {
  std::vector<Shared> tp;    // in-block MSNZB, LSB-first
  std::vector<Shared> fold;  // fold[b] = XOR of tp over block b (= "block b is nonzero")
};

/// First round shared by MSNZB and Overflow: in-block prefix-OR, then the
/// local XOR of neighbours turns it into an in-block one-hot.
inline BlockPrefix block_prefix(Session& s, const std::vector<Shared>& d, const BlockLayout& lay) {
  std::vector<std::vector<Shared>> groups;
  for (std::size_t b = 0; b < lay.blocks(); ++b)
    for (unsigned j = lay.bottom(b); j < lay.top(b); ++j)
      groups.emplace_back(d.begin() + j, d.begin() + lay.top(b) + 1);
  std::vector<Shared> ors = or_layer(s, std::move(groups));

  std::vector<Shared> t(d.size());
  std::size_t g = 0;
  for (std::size_t b = 0; b < lay.blocks(); ++b) {
    for (unsigned j = lay.bottom(b); j < lay.top(b); ++j) t[j] = std::move(ors[g++]);
    t[lay.top(b)] = d[lay.top(b)];
  }

  BlockPrefix out;
  out.tp.resize(d.size());
  for (std::size_t b = 0; b < lay.blocks(); ++b) {
    const unsigned top = lay.top(b);
    for (unsigned j = lay.bottom(b); j <= top; ++j)
      out.tp[j] = j == top ? t[j] : bxor(t[j], t[j + 1]);
    out.fold.push_back(
        xor_fold(std::span<const Shared>(out.tp.data() + lay.bottom(b), lay.sizes[b])));
  }
  return out;
}

inline void check_planes(const std::vector<Shared>& planes) {
  require(!planes.empty(), ErrorKind::shape, "no bit planes");
  for (const auto& p : planes) {
    require(p.ring().boolean(), ErrorKind::domain, "bit planes must be boolean shares");
    require(p.size() == planes[0].size(), ErrorKind::shape, "bit planes differ in batch");
  }
}

}  // namespace detail

/// One-hot of the highest set bit (all zero for x = 0). Planes are LSB-first.
inline std::vector<Shared> msnzb(Session& s, const std::vector<Shared>& planes) {
  detail::check_planes(planes);
  const BlockLayout lay = block_layout(static_cast<unsigned>(planes.size()));
  detail::BlockPrefix pre = detail::block_prefix(s, planes, lay);

  std::vector<std::vector<Shared>> groups;
  for (std::size_t b = 1; b < lay.blocks(); ++b)
    for (unsigned j = lay.bottom(b); j <= lay.top(b); ++j) {
      std::vector<Shared> g{pre.tp[j]};
      for (std::size_t h = 0; h < b; ++h) g.push_back(bnot(pre.fold[h]));
      groups.push_back(std::move(g));
    }
  std::vector<Shared> ands = and_layer(s, groups);

  std::vector<Shared> z(planes.size());
  std::size_t g = 0;
  for (unsigned j = lay.bottom(0); j <= lay.top(0); ++j) z[j] = pre.tp[j];
  for (std::size_t b = 1; b < lay.blocks(); ++b)
    for (unsigned j = lay.bottom(b); j <= lay.top(b); ++j) z[j] = std::move(ands[g++]);
  return z;
}

/// z = [(x0 mod 2^k) + (x1 mod 2^k) >= 2^k]. Two rounds: the block prefix, then
/// one AND layer that folds in both the cross-block MSNZB and the test of
/// party 1's bit at the most significant difference of d0 = x0 and d1 = -x1.
inline Shared overflow_2r(Session& s, const Shared& x, unsigned k) {
  const RingSpec ring = x.ring();
  require(!ring.boolean(), ErrorKind::domain, "overflow over a boolean ring");
  require(k >= 1 && k <= ring.width(), ErrorKind::domain,
          "overflow exponent k=" + std::to_string(k) + " outside [1, " +
              std::to_string(ring.width()) + "]");
  const BlockLayout lay = block_layout(ring);
  const Word mk = detail::low_mask(k);

  const Shared d = per_party([&](unsigned p) {
    return local::map(x[p], [&](Word v) { return (p == 0 ? v : Word{0} - v) & mk; });
  });
  const std::vector<Shared> dp = bit_decompose(d);
  detail::BlockPrefix pre = detail::block_prefix(s, dp, lay);

  std::vector<std::vector<Shared>> groups;
  for (std::size_t b = 0; b < lay.blocks(); ++b)
    for (unsigned j = lay.bottom(b); j <= lay.top(b); ++j) {
      // u: party 0 holds 0, party 1 holds its own d bit.
      Shared u(Share{0, kBool, std::vector<Word>(x.size())}, dp[j][1]);
      std::vector<Shared> g{pre.tp[j], std::move(u)};
      for (std::size_t h = 0; h < b; ++h) g.push_back(bnot(pre.fold[h]));
      groups.push_back(std::move(g));
    }
  const std::vector<Shared> v = and_layer(s, groups);
  Shared z = bnot(xor_fold(v));

  for (std::size_t i = 0; i < x.size(); ++i)
    if ((x[1].values[i] & mk) == 0) z[1].values[i] ^= 1;
  return z;
}

// ---------------------------------------------------------------------------
// One-round variant. x_i mod 2^k is split as y_i || z_i with n1 high and n2
// low bits; an overflow happens iff y0 + y1 >= 2^n1, or y0 + y1 = 2^n1 - 1 and
// the low halves overflow. Each case is a disjoint bank of AND gates over
// locally computed indicator bits, so everything fits in one round.

struct OverflowParams {
  unsigned k = 0;
  unsigned n1 = 0;
  unsigned n2 = 0;
};

struct OverflowBudget {
  std::size_t and2 = 0;    // b1 bank
  std::size_t and_n1 = 0;  // b2 bank, fan-in n1
  std::size_t and4 = 0;    // b3 bank
  unsigned n1 = 0;

  /// Bits per party for one instance.
  std::uint64_t bits() const { return 2 * and2 + std::uint64_t{n1} * and_n1 + 4 * and4; }
};

inline void check_overflow_params(const OverflowParams& prm, RingSpec ring, unsigned cap) {
  require(!ring.boolean(), ErrorKind::domain, "overflow over a boolean ring");
  require(prm.k >= 1 && prm.k <= ring.width(), ErrorKind::domain,
          "overflow exponent k outside the ring");
  require(prm.n1 + prm.n2 == prm.k, ErrorKind::capability,
          "split n1+n2 must equal k");
  require(prm.n1 >= 2 && prm.n1 <= cap, ErrorKind::capability,
          "split n1=" + std::to_string(prm.n1) + " needs an n1-fan-in AND within [2, " +
              std::to_string(cap) + "]");
  require(cap >= 4, ErrorKind::capability, "one-round overflow needs 4-fan-in AND");
  require(prm.n1 <= 20 && prm.n2 <= 20, ErrorKind::capability,
          "split too large: banks hold 2^n1 - 1 and 2^n2 - 1 gates");
}

inline OverflowBudget overflow_1r_budget(const OverflowParams& prm) {
  require(prm.n1 <= 20 && prm.n2 <= 20, ErrorKind::capability, "split too large");
  const std::size_t g1 = (std::size_t{1} << prm.n1) - 1;
  const std::size_t g2 = (std::size_t{1} << prm.n2) - 1;
  return {g1, g2, g2, prm.n1};
}

/// Default split for k = n; widths 32 and 64 are refused (banks of 2^16 and
/// more 8-fan-in gates per instance).
inline OverflowParams default_overflow_1r_params(RingSpec ring) {
  switch (ring.width()) {
    case 8: return {8, 4, 4};
    case 16: return {16, 8, 8};
    default: break;
  }
  throw Error(ErrorKind::capability, "one-round overflow has no default split for width " +
                                         std::to_string(ring.width()) +
                                         "; pass an explicit split");
}

inline Shared overflow_1r(Session& s, const Shared& x, const OverflowParams& prm) {
  const RingSpec ring = x.ring();
  check_overflow_params(prm, ring, s.fanin_cap());
  const OverflowBudget bud = overflow_1r_budget(prm);
  const std::size_t batch = x.size();
  const Word mk = detail::low_mask(prm.k);
  const Word ymax = (Word{1} << prm.n1) - 1;
  const Word zmask = (Word{1} << prm.n2) - 1;
  const Word zmod = Word{1} << prm.n2;

  auto y_of = [&](Word v) { return (v & mk) >> prm.n2; };
  auto z_of = [&](Word v) { return v & zmask; };
  auto bits = [&](unsigned p, auto&& f) {
    Share sh{p, kBool, std::vector<Word>(batch)};
    for (std::size_t i = 0; i < batch; ++i) sh.values[i] = f(x[p].values[i]) ? 1 : 0;
    return sh;
  };
  auto zero = [&](unsigned p) { return Share{p, kBool, std::vector<Word>(batch)}; };

  // b1: [y0 = a1] * [y1 >= 2^n1 - a1]
  std::vector<std::vector<Shared>> bank1;
  for (Word a1 = 1; a1 <= bud.and2; ++a1) {
    Shared al1(bits(0, [&](Word v) { return y_of(v) == a1; }), zero(1));
    Shared al2(zero(0), bits(1, [&](Word v) { return y_of(v) >= (ymax + 1) - a1; }));
    bank1.push_back({std::move(al1), std::move(al2)});
  }
  // b2: AND_j beta[j]; XOR of the halves is y0[j] ^ y1[j] when both guards hold.
  std::vector<std::vector<Shared>> bank2;
  for (Word a2 = 1; a2 <= bud.and_n1; ++a2) {
    std::vector<Shared> g;
    for (unsigned j = 0; j < prm.n1; ++j) {
      g.emplace_back(bits(0,
                          [&](Word v) {
                            const Word y = y_of(v);
                            return (y != 0 && z_of(v) == a2) ? ((y >> j) & 1) != 0 : true;
                          }),
                     bits(1, [&](Word v) {
                       const Word y = y_of(v);
                       return (y != 0 && z_of(v) >= zmod - a2) ? ((y >> j) & 1) != 0 : true;
                     }));
    }
    bank2.push_back(std::move(g));
  }
  // b3: one of y0, y1 is zero and the other all-ones, and the low halves overflow.
  std::vector<std::vector<Shared>> bank3;
  for (Word a3 = 1; a3 <= bud.and4; ++a3) {
    Shared g1(bits(0, [&](Word v) { return y_of(v) == 0; }),
              bits(1, [&](Word v) { return y_of(v) == 0; }));
    Shared g2(bits(0, [&](Word v) { return y_of(v) == ymax; }),
              bits(1, [&](Word v) { return y_of(v) == ymax; }));
    Shared g3(bits(0, [&](Word v) { return z_of(v) == a3; }), zero(1));
    Shared g4(zero(0), bits(1, [&](Word v) { return z_of(v) >= zmod - a3; }));
    bank3.push_back({std::move(g1), std::move(g2), std::move(g3), std::move(g4)});
  }

  std::vector<Shared> outs;
  {
    ParallelScope scope(s);
    for (auto* bank : {&bank1, &bank2, &bank3}) {
      if (bank->empty()) continue;
      auto ys = scope.launch([&] { return mult_bank(s, *bank); });
      for (auto& y : ys) outs.push_back(std::move(y));
    }
    scope.join();
  }
  return xor_fold(outs);
}

inline Shared overflow_1r(Session& s, const Shared& x) {
  return overflow_1r(s, x, default_overflow_1r_params(x.ring()));
}

}  // namespace bte
