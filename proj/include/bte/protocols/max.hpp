#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "bte/gates.hpp"
#include "bte/protocols/b2a.hpp"
#include "bte/protocols/comparison.hpp"
#include "bte/ring.hpp"

namespace bte {

enum class Extremum { max, min };

namespace detail {

inline void check_elems(std::span<const Shared> xs) {
  require(!xs.empty(), ErrorKind::shape, "no elements");
  for (const auto& x : xs) {
    require(!x.ring().boolean(), ErrorKind::domain, "elements must be arithmetic shares");
    require(x.ring() == xs[0].ring() && x.size() == xs[0].size(), ErrorKind::shape,
            "elements differ in ring or batch");
  }
}

/// All pairwise comparisons as one batched call. c[a][b] (a < b) is [x_a < x_b]
/// for max and [x_b < x_a] for min.
/// With `sign_only`, [x < y] is read off as msb(x - y): exact on the
/// comparison domain [0, 2^(n-1)) and one round shorter.
inline std::vector<std::vector<Shared>> pairwise(Session& s, std::span<const Shared> xs,
                                                 Extremum e, bool sign_only = false) {
  const std::size_t n = xs.size();
  std::vector<Shared> lhs, rhs;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      lhs.push_back(e == Extremum::max ? xs[a] : xs[b]);
      rhs.push_back(e == Extremum::max ? xs[b] : xs[a]);
    }
  const Shared l = concat(lhs), r = concat(rhs);
  Shared less;
  if (sign_only) {
    const Shared d = sub(l, r);
    less = msb_from_overflow(overflow_2r(s, d, d.ring().width() - 1), d);
  } else {
    less = comparison(s, l, r);
  }
  const std::vector<Shared> flat = split(less, lhs.size());
  std::vector<std::vector<Shared>> c(n, std::vector<Shared>(n));
  std::size_t k = 0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) c[a][b] = flat[k++];
  return c;
}

/// Selector inputs for element i: it beats every earlier element strictly and
/// every later one weakly, so ties go to the lowest index.
inline std::vector<Shared> selector_terms(const std::vector<std::vector<Shared>>& c,
                                          std::size_t i) {
  std::vector<Shared> terms;
  for (std::size_t j = 0; j < c.size(); ++j) {
    if (j < i) terms.push_back(c[j][i]);
    if (j > i) terms.push_back(bnot(c[i][j]));
  }
  return terms;
}

/// Three comparisons, then BCX2A per element (4 rounds). The arg variants use
/// BC2A and take the comparisons as sign bits, which fits them in 3 rounds.
inline Shared extremum3(Session& s, const std::array<Shared, 3>& xs, Extremum e, bool arg) {
  detail::check_elems(xs);
  const RingSpec ring = xs[0].ring();
  const auto c = pairwise(s, xs, e, arg);
  std::vector<Shared> b, cc;
  for (std::size_t i = 0; i < 3; ++i) {
    auto t = selector_terms(c, i);
    b.push_back(std::move(t[0]));
    cc.push_back(std::move(t[1]));
  }
  const Shared bs = concat(b), cs = concat(cc);
  const std::vector<Shared> t =
      arg ? split(bc2a(s, bs, cs, ring), 3) : split(bcx2a(s, bs, cs, concat(xs)), 3);
  if (arg) return add(t[1], mul_const(t[2], 2));
  return add(add(t[0], t[1]), t[2]);
}

}  // namespace detail

inline Shared max3(Session& s, const std::array<Shared, 3>& xs) {
  return detail::extremum3(s, xs, Extremum::max, false);
}
inline Shared min3(Session& s, const std::array<Shared, 3>& xs) {
  return detail::extremum3(s, xs, Extremum::min, false);
}
/// Index of the maximum (lowest index on ties) as an arithmetic share.
/// Inputs must lie in [0, 2^(n-1)); outside it the result is undefined.
inline Shared argmax3(Session& s, const std::array<Shared, 3>& xs) {
  return detail::extremum3(s, xs, Extremum::max, true);
}
inline Shared argmin3(Session& s, const std::array<Shared, 3>& xs) {
  return detail::extremum3(s, xs, Extremum::min, true);
}

inline constexpr std::size_t kDefaultMaxnCap = 8;

struct MaxnOptions {
  std::size_t max_elements = kDefaultMaxnCap;
  Extremum kind = Extremum::max;
};

/// N-element max/min: N(N-1)/2 comparisons in parallel, an (N-1)-input AND tree
/// per selector, then BX2A and a local sum.
inline Shared maxn(Session& s, std::span<const Shared> xs, MaxnOptions opt = {}) {
  detail::check_elems(xs);
  const std::size_t n = xs.size();
  require(n >= 2, ErrorKind::shape, "maxn needs at least two elements");
  require(n <= opt.max_elements, ErrorKind::capability,
          std::to_string(n) + " elements exceed the maxn cap of " +
              std::to_string(opt.max_elements));
  const auto c = detail::pairwise(s, xs, opt.kind);

  // The selectors' AND trees have identical shape, so they run as one batch.
  std::vector<std::vector<Shared>> terms(n);
  for (std::size_t i = 0; i < n; ++i) terms[i] = detail::selector_terms(c, i);
  std::vector<Shared> wires;
  for (std::size_t w = 0; w + 1 < n; ++w) {
    std::vector<Shared> col;
    for (std::size_t i = 0; i < n; ++i) col.push_back(terms[i][w]);
    wires.push_back(concat(col));
  }
  const Shared sel = wires.size() == 1 ? wires[0] : and_tree(s, wires, s.fanin_cap());
  const std::vector<Shared> picked = split(bx2a(s, sel, concat(xs)), n);
  Shared z = picked[0];
  for (std::size_t i = 1; i < n; ++i) z = add(z, picked[i]);
  return z;
}

inline Shared minn(Session& s, std::span<const Shared> xs, MaxnOptions opt = {}) {
  opt.kind = Extremum::min;
  return maxn(s, xs, opt);
}

}  // namespace bte
