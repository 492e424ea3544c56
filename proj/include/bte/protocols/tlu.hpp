#pragma once

#include <vector>

#include "bte/protocols/b2a.hpp"
#include "bte/protocols/equality.hpp"

namespace bte {

/// Shared keys and values; position j of each batch belongs to entry j.
/// Keys are expected to be distinct.
struct LookupTable {
  std::vector<Shared> keys;
  std::vector<Shared> values;
};

/// Value whose key equals id. All equalities run as one batch (2 rounds), then
/// one BX2A round and a local sum. If id matches no key the result is 0; with
/// several matches it is the sum of their values.
inline Shared tlu(Session& s, const LookupTable& table, const Shared& id) {
  require(!table.keys.empty(), ErrorKind::shape, "empty lookup table");
  require(table.keys.size() == table.values.size(), ErrorKind::shape,
          "lookup table key/value count mismatch");
  const std::size_t len = table.keys.size();
  std::vector<Shared> ids(len, id);
  const Shared eq = equality(s, concat(ids), concat(table.keys));
  const std::vector<Shared> picked = split(bx2a(s, eq, concat(table.values)), len);
  Shared z = picked[0];
  for (std::size_t j = 1; j < len; ++j) z = add(z, picked[j]);
  return z;
}

}  // namespace bte
