#pragma once

#include <array>
#include <vector>

#include "bte/gates.hpp"
#include "bte/protocols/comparison.hpp"
#include "bte/ring.hpp"

/// Reference constructions restricted to 2-fan-in gates, kept to reproduce the
/// comparison rows of the cost tables.
namespace bte::baseline {

inline Shared equality(Session& s, const Shared& x, const Shared& y) {
  require(!x.ring().boolean(), ErrorKind::domain, "equality over a boolean ring");
  require(x.ring() == y.ring() && x.size() == y.size(), ErrorKind::shape,
          "equality operands differ in ring or batch");
  return bnot(or_tree(s, bit_decompose(asym_sub(x, y)), 2));
}

/// Log-depth prefix-OR (n - s gates at stride s), then n 2-ANDs.
inline Shared overflow(Session& s, const Shared& x, unsigned k) {
  const RingSpec ring = x.ring();
  require(!ring.boolean(), ErrorKind::domain, "overflow over a boolean ring");
  require(k >= 1 && k <= ring.width(), ErrorKind::domain, "overflow exponent out of range");
  const Word mk = detail::low_mask(k);
  const unsigned n = ring.width();
  const Shared d = per_party([&](unsigned p) {
    return local::map(x[p], [&](Word v) { return (p == 0 ? v : Word{0} - v) & mk; });
  });
  const std::vector<Shared> dp = bit_decompose(d);

  std::vector<Shared> t = dp;
  for (unsigned stride = 1; stride < n; stride *= 2) {
    std::vector<std::vector<Shared>> groups;
    for (unsigned j = 0; j + stride < n; ++j) groups.push_back({t[j], t[j + stride]});
    const std::vector<Shared> ors = or_layer(s, std::move(groups));
    for (unsigned j = 0; j + stride < n; ++j) t[j] = ors[j];
  }
  std::vector<std::vector<Shared>> bank;
  for (unsigned j = 0; j < n; ++j) {
    Shared tp = j + 1 < n ? bxor(t[j], t[j + 1]) : t[j];
    Shared u(Share{0, kBool, std::vector<Word>(x.size())}, dp[j][1]);
    bank.push_back({std::move(tp), std::move(u)});
  }
  Shared z = bnot(xor_fold(mult_bank(s, bank)));
  for (std::size_t i = 0; i < x.size(); ++i)
    if ((x[1].values[i] & mk) == 0) z[1].values[i] ^= 1;
  return z;
}

inline Shared comparison(Session& s, const Shared& x, const Shared& y) {
  const RingSpec ring = x.ring();
  require(!ring.boolean(), ErrorKind::domain, "comparison over a boolean ring");
  require(y.ring() == ring && y.size() == x.size(), ErrorKind::shape,
          "comparison operands differ in ring or batch");
  const Shared d = sub(x, y);
  const std::array<Shared, 3> vs{x, y, d};
  const std::vector<Shared> ofs = split(overflow(s, concat(vs), ring.width() - 1), 3);
  const Shared xm = detail::msb_from_overflow(ofs[0], x);
  const Shared ym = detail::msb_from_overflow(ofs[1], y);
  const Shared dm = detail::msb_from_overflow(ofs[2], d);
  const Shared diff = bxor(xm, ym);
  const std::vector<std::vector<Shared>> bank{{diff, ym}, {bnot(diff), dm}};
  const std::vector<Shared> vw = mult_bank(s, bank);
  return bxor(vw[0], vw[1]);
}

/// b0 + b1 - 2 b0 b1 with one arithmetic 2-MULT of trivial shares (2n bits).
inline Shared b2a(Session& s, const Shared& b, RingSpec ring) {
  require(b.ring().boolean() && !ring.boolean(), ErrorKind::domain,
          "b2a needs a boolean input and an arithmetic ring");
  const Shared b0(Share{0, ring, b[0].values}, Share{1, ring, std::vector<Word>(b.size())});
  const Shared b1(Share{0, ring, std::vector<Word>(b.size())}, Share{1, ring, b[1].values});
  return sub(lift(b, ring), mul_const(mult(s, {b0, b1}), 2));
}

/// Tournament: m = x0 + [x0 < x1](x1 - x0), then the same against x2.
inline Shared max3(Session& s, const std::array<Shared, 3>& xs) {
  Shared m = xs[0];
  for (std::size_t j = 1; j < 3; ++j) {
    const Shared c = baseline::b2a(s, baseline::comparison(s, m, xs[j]), m.ring());
    m = add(m, mult(s, {c, sub(xs[j], m)}));
  }
  return m;
}

}  // namespace bte::baseline
