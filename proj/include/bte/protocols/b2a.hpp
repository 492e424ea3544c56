#pragma once

#include <array>
#include <string>
#include <vector>

#include "bte/gates.hpp"
#include "bte/material.hpp"
#include "bte/ring.hpp"

namespace bte {

namespace detail {

inline void check_bool_arith(const Shared& b, RingSpec ring) {
  require(b.ring().boolean(), ErrorKind::domain, "expected a boolean share");
  require(!ring.boolean(), ErrorKind::domain, "target ring must be arithmetic");
}

/// (own, 0) in party `holder`'s favour, reinterpreting a boolean share in `ring`.
inline Shared held_by(unsigned holder, const Shared& b, RingSpec ring, bool negate = false) {
  Share own{holder, ring, b[holder].values};
  if (negate)
    for (Word& v : own.values) v ^= 1;
  Share zero{1 - holder, ring, std::vector<Word>(b.size())};
  return holder == 0 ? Shared(std::move(own), std::move(zero))
                     : Shared(std::move(zero), std::move(own));
}

}  // namespace detail

/// One-round B2A with caller-supplied blinding material: n bits per party.
///   z0 = x0 - 2(x'x'' + x''a + c0),  z1 = x1 - 2(x'b + c1).
inline Shared b2a_with_material(Session& s, const Shared& xb,
                                std::array<B2aMaterial, 2>& mat) {
  const RingSpec ring = mat[0].ring;
  detail::check_bool_arith(xb, ring);
  for (unsigned p = 0; p < 2; ++p) {
    require(mat[p].party == p, ErrorKind::shape, "B2A material out of party order");
    require(mat[p].ring == ring, ErrorKind::shape, "B2A material rings differ");
    require(mat[p].batch() == xb.size() && mat[p].c.size() == xb.size(), ErrorKind::shape,
            "B2A material batch does not match the input");
    require(!mat[p].consumed, ErrorKind::reuse, "B2A material already consumed");
  }
  mat[0].consumed = mat[1].consumed = true;

  const std::size_t n = xb.size();
  Session::Payloads out;
  for (unsigned p = 0; p < 2; ++p) {
    out[p].resize(n);
    for (std::size_t i = 0; i < n; ++i) out[p][i] = ring.reduce(xb[p].values[i] - mat[p].mask[i]);
  }
  const Session::Payloads got = s.exchange(ring, out);
  Shared z(Share{0, ring, std::vector<Word>(n)}, Share{1, ring, std::vector<Word>(n)});
  if (got[0].empty()) return z;
  for (std::size_t i = 0; i < n; ++i) {
    const Word xp = out[0][i];   // x' = x0 - a
    const Word xpp = got[0][i];  // x'' = x1 - b, received by party 0
    z[0].values[i] = ring.reduce(xb[0].values[i] - 2 * (xp * xpp + xpp * mat[0].mask[i] + mat[0].c[i]));
    z[1].values[i] = ring.reduce(xb[1].values[i] - 2 * (got[1][i] * mat[1].mask[i] + mat[1].c[i]));
  }
  return z;
}

inline Shared b2a(Session& s, const Shared& xb, RingSpec ring) {
  detail::check_bool_arith(xb, ring);
  auto mat = s.acquire_b2a(ring, xb.size());
  if (!mat) return detail::zeros(ring, xb.size());
  return b2a_with_material(s, xb, *mat);
}

/// [b] * x as an arithmetic share, one round, 5n bits:
///   bx - 2 b0 b1 x  with  bx = 2-MULT(b, x),  b0 b1 x = 3-MULT((b0,0), (0,b1), x).
inline Shared bx2a(Session& s, const Shared& b, const Shared& x) {
  const RingSpec ring = x.ring();
  detail::check_bool_arith(b, ring);
  require(b.size() == x.size(), ErrorKind::shape, "bx2a operands differ in batch");
  const Shared ba = lift(b, ring);
  const Shared b0 = detail::held_by(0, b, ring);
  const Shared b1 = detail::held_by(1, b, ring);
  auto [sx, tx] = s.parallel([&] { return mult(s, {ba, x}); },
                             [&] { return mult(s, {b0, b1, x}); });
  return sub(sx, mul_const(tx, 2));
}

namespace detail {

/// Shared core of BC2A / BCX2A: with x present every product gains one factor.
///   bc - 2 b0b1 - 2 c0c1 + 2 b0 ~c0 b1 ~c1 + 2 ~b0 c0 ~b1 c1
inline Shared bc_core(Session& s, const Shared& b, const Shared& c, RingSpec ring,
                      const Shared* x) {
  check_bool_arith(b, ring);
  check_bool_arith(c, ring);
  require(b.size() == c.size(), ErrorKind::shape, "operands differ in batch");
  const Shared ba = lift(b, ring), ca = lift(c, ring);
  const Shared b0 = held_by(0, b, ring), b1 = held_by(1, b, ring);
  const Shared c0 = held_by(0, c, ring), c1 = held_by(1, c, ring);
  const Shared nb0 = held_by(0, b, ring, true), nb1 = held_by(1, b, ring, true);
  const Shared nc0 = held_by(0, c, ring, true), nc1 = held_by(1, c, ring, true);

  std::vector<std::vector<Shared>> small{{ba, ca}, {b0, b1}, {c0, c1}};
  std::vector<std::vector<Shared>> large{{b0, nc0, b1, nc1}, {nb0, c0, nb1, c1}};
  if (x) {
    require(x->size() == b.size(), ErrorKind::shape, "operands differ in batch");
    for (auto& g : small) g.push_back(*x);
    for (auto& g : large) g.push_back(*x);
  }
  auto [g, h] = s.parallel([&] { return mult_bank(s, small); },
                           [&] { return mult_bank(s, large); });
  Shared z = sub(sub(g[0], mul_const(g[1], 2)), mul_const(g[2], 2));
  return add(z, mul_const(add(h[0], h[1]), 2));
}

}  // namespace detail

/// [b] * [c] as an arithmetic 0/1 share, one round, 14n bits.
inline Shared bc2a(Session& s, const Shared& b, const Shared& c, RingSpec ring) {
  return detail::bc_core(s, b, c, ring, nullptr);
}

/// [b] * [c] * x, one round, 19n bits.
inline Shared bcx2a(Session& s, const Shared& b, const Shared& c, const Shared& x) {
  return detail::bc_core(s, b, c, x.ring(), &x);
}

}  // namespace bte
