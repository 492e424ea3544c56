#pragma once

#include <vector>

#include "bte/gates.hpp"
#include "bte/protocols/layout.hpp"
#include "bte/ring.hpp"

namespace bte {

/// z = [x == y]. Each party forms its half of t (x0 - y0, y1 - x1); the halves
/// agree exactly when x = y, so the XOR of the two bit strings is all-zero iff
/// the secrets are equal. Two OR layers over the block groups, then NOT.
inline Shared equality(Session& s, const Shared& x, const Shared& y) {
  require(!x.ring().boolean(), ErrorKind::domain, "equality over a boolean ring");
  require(x.ring() == y.ring() && x.size() == y.size(), ErrorKind::shape,
          "equality operands differ in ring or batch");
  const BlockLayout lay = block_layout(x.ring());
  const std::vector<Shared> bits = bit_decompose(asym_sub(x, y));

  std::vector<std::vector<Shared>> groups;
  for (std::size_t b = 0; b < lay.blocks(); ++b)
    groups.emplace_back(bits.begin() + lay.bottom(b), bits.begin() + lay.top(b) + 1);
  std::vector<Shared> any = or_layer(s, std::move(groups));
  std::vector<std::vector<Shared>> root{std::move(any)};
  return bnot(or_layer(s, std::move(root))[0]);
}

}  // namespace bte
