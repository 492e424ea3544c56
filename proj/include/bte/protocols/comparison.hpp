#pragma once

#include <array>
#include <vector>

#include "bte/gates.hpp"
#include "bte/protocols/overflow.hpp"
#include "bte/ring.hpp"

namespace bte {

namespace detail {

/// Share of msb(v) from an overflow bit at k = n-1: of ^ msb(v0) ^ msb(v1).
inline Shared msb_from_overflow(const Shared& of, const Shared& v) {
  const unsigned top = v.ring().width() - 1;
  return per_party([&](unsigned p) {
    Share out = of[p];
    for (std::size_t i = 0; i < out.size(); ++i) out.values[i] ^= (v[p].values[i] >> top) & 1;
    return out;
  });
}

}  // namespace detail

/// z = [x < y]. The three overflows (x, y, x - y) run as one batched call, so
/// the sign bits cost two rounds; one 2-AND round combines them.
/// Exact for all unsigned x, y: with msb(x) != msb(y) the answer is msb(y),
/// otherwise it is the borrow msb(x - y).
inline Shared comparison(Session& s, const Shared& x, const Shared& y) {
  const RingSpec ring = x.ring();
  require(!ring.boolean(), ErrorKind::domain, "comparison over a boolean ring");
  require(y.ring() == ring && y.size() == x.size(), ErrorKind::shape,
          "comparison operands differ in ring or batch");
  const Shared d = sub(x, y);
  const std::array<Shared, 3> vs{x, y, d};
  const Shared of = overflow_2r(s, concat(vs), ring.width() - 1);
  const std::vector<Shared> ofs = split(of, 3);
  const Shared xm = detail::msb_from_overflow(ofs[0], x);
  const Shared ym = detail::msb_from_overflow(ofs[1], y);
  const Shared dm = detail::msb_from_overflow(ofs[2], d);

  const Shared diff = bxor(xm, ym);
  const std::vector<std::vector<Shared>> bank{{diff, ym}, {bnot(diff), dm}};
  const std::vector<Shared> vw = mult_bank(s, bank);
  return bxor(vw[0], vw[1]);
}

}  // namespace bte
