#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "bte/error.hpp"
#include "bte/ring.hpp"

namespace bte {

/// Block split of an n-bit string, most significant block first. Used as the
/// OR groups of Equality and as the prefix blocks of MSNZB / Overflow. Larger
/// blocks sit on top because the second layer's fan-in grows with depth below
/// the top (block b needs 2 + b inputs in Overflow).
struct BlockLayout {
  unsigned width = 0;
  std::vector<unsigned> sizes;  // top block first

  std::size_t blocks() const { return sizes.size(); }

  /// Highest bit position of block b.
  unsigned top(std::size_t b) const {
    unsigned t = width - 1;
    for (std::size_t i = 0; i < b; ++i) t -= sizes[i];
    return t;
  }
  unsigned bottom(std::size_t b) const { return top(b) + 1 - sizes[b]; }

  std::size_t block_of(unsigned pos) const {
    for (std::size_t b = 0; b < sizes.size(); ++b)
      if (pos >= bottom(b)) return b;
    return sizes.size() - 1;
  }
};

inline BlockLayout block_layout(unsigned width) {
  switch (width) {
    case 8: return {8, {3, 3, 2}};
    case 16: return {16, {4, 4, 4, 4}};
    case 32: return {32, {6, 6, 5, 5, 5, 5}};
    case 64: return {64, {8, 8, 8, 8, 8, 8, 8, 8}};
    default: break;
  }
  throw Error(ErrorKind::capability,
              "no block layout for width " + std::to_string(width) + " (have 8/16/32/64)");
}

inline BlockLayout block_layout(RingSpec ring) {
  require(!ring.boolean(), ErrorKind::domain, "block layout needs an arithmetic ring");
  return block_layout(ring.width());
}

}  // namespace bte
