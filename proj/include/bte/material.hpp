#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "bte/error.hpp"
#include "bte/ring.hpp"

namespace bte {

inline constexpr unsigned kDefaultFaninCap = 9;
/// Absolute ceiling for the configurable cap; tables have 2^N - 1 entries.
inline constexpr unsigned kHardFaninLimit = 16;
/// Per-party words a single table may hold (512 MiB of 64-bit words).
inline constexpr std::size_t kMaxTableWords = std::size_t{1} << 26;

/// One party's half of an N-fan-in Beaver triple extension: a share of
/// a_I = prod_{l in I} a_{l} for every nonempty I, indexed by bitmask
/// (bit l-1 set iff l in I). Storage is entry-major, ascending mask.
struct BteTable {
  unsigned party = 0;
  unsigned fan_in = 0;
  RingSpec ring;
  std::size_t batch = 0;
  std::vector<Word> entries;
  bool consumed = false;

  std::size_t entry_count() const { return (std::size_t{1} << fan_in) - 1; }

  std::span<const Word> entry(unsigned mask) const {
    return {entries.data() + (mask - 1) * batch, batch};
  }
  std::span<Word> entry(unsigned mask) {
    return {entries.data() + (mask - 1) * batch, batch};
  }
};

/// One party's B2A blinding material. Party 0 holds (a, c0), party 1 (b, c1),
/// with c0 + c1 = a*b.
struct B2aMaterial {
  unsigned party = 0;
  RingSpec ring;
  std::vector<Word> mask;  // a for party 0, b for party 1
  std::vector<Word> c;
  bool consumed = false;

  std::size_t batch() const { return mask.size(); }
};

struct MaterialRequest {
  enum class Kind : std::uint8_t { bte = 0, b2a = 1 };
  Kind kind = Kind::bte;
  unsigned fan_in = 0;  // 0 for b2a
  RingSpec ring;
  std::size_t batch = 0;

  friend bool operator==(const MaterialRequest&, const MaterialRequest&) = default;

  std::string describe() const {
    if (kind == Kind::b2a)
      return "b2a(Z_2^" + std::to_string(ring.width()) + ", batch " +
             std::to_string(batch) + ")";
    return std::to_string(fan_in) + "-BTE(Z_2^" + std::to_string(ring.width()) +
           ", batch " + std::to_string(batch) + ")";
  }

  /// Dealer-to-party payload for this item, in bits.
  std::uint64_t offline_bits() const {
    const std::uint64_t per = kind == Kind::b2a ? 2 : ((std::uint64_t{1} << fan_in) - 1);
    return per * batch * ring.width();
  }
};

using Manifest = std::vector<MaterialRequest>;

using MaterialItem = std::variant<BteTable, B2aMaterial>;

inline MaterialRequest describe(const MaterialItem& item) {
  if (const auto* t = std::get_if<BteTable>(&item))
    return {MaterialRequest::Kind::bte, t->fan_in, t->ring, t->batch};
  const auto& m = std::get<B2aMaterial>(item);
  return {MaterialRequest::Kind::b2a, 0, m.ring, m.batch()};
}

/// Ordered queue of one party's pre-provisioned material.
class MaterialStore {
 public:
  explicit MaterialStore(unsigned party = 0) : party_(party) {}

  unsigned party() const { return party_; }
  bool empty() const { return items_.empty(); }
  std::size_t size() const { return items_.size(); }
  const std::deque<MaterialItem>& items() const { return items_; }

  void push(MaterialItem item) { items_.push_back(std::move(item)); }

  MaterialItem pop(const MaterialRequest& want) {
    require(!items_.empty(), ErrorKind::material,
            "no provisioned material left for " + want.describe());
    MaterialItem item = std::move(items_.front());
    items_.pop_front();
    const MaterialRequest got = describe(item);
    require(got == want, ErrorKind::material,
            "material mismatch: protocol wants " + want.describe() +
                ", store holds " + got.describe());
    return item;
  }

 private:
  unsigned party_;
  std::deque<MaterialItem> items_;
};

inline void check_fan_in(unsigned fan_in, unsigned cap) {
  require(cap >= 2 && cap <= kHardFaninLimit, ErrorKind::capability,
          "fan-in cap must lie in [2, " + std::to_string(kHardFaninLimit) + "]");
  require(fan_in >= 2 && fan_in <= cap, ErrorKind::capability,
          "fan-in " + std::to_string(fan_in) + " outside [2, " + std::to_string(cap) +
              "]: BTE memory and local work grow as 2^N");
}

namespace detail {

/// Fill a_I for |I| >= 2 given both parties' singleton shares already in place.
/// Composite entries are split as (random, a_I - random), mask-major.
inline void expand_bte(BteTable& t0, BteTable& t1, Rng& rng) {
  const RingSpec ring = t0.ring;
  const std::size_t batch = t0.batch;
  const unsigned full = (1u << t0.fan_in) - 1;
  std::vector<std::vector<Word>> single(t0.fan_in, std::vector<Word>(batch));
  for (unsigned l = 0; l < t0.fan_in; ++l) {
    const auto e0 = t0.entry(1u << l);
    const auto e1 = t1.entry(1u << l);
    for (std::size_t i = 0; i < batch; ++i) single[l][i] = e0[i] + e1[i];
  }
  // Plain products into t1 first, ascending masks so a_{I minus lowest} is ready.
  for (unsigned m = 1; m <= full; ++m) {
    if (std::popcount(m) < 2) continue;
    const Word* low = single[static_cast<unsigned>(std::countr_zero(m))].data();
    const unsigned rest = m & (m - 1);
    const Word* prev = std::popcount(rest) == 1
                           ? single[static_cast<unsigned>(std::countr_zero(rest))].data()
                           : t1.entry(rest).data();
    Word* out = t1.entry(m).data();
    for (std::size_t i = 0; i < batch; ++i) out[i] = prev[i] * low[i];
  }
  for (unsigned m = 1; m <= full; ++m) {
    if (std::popcount(m) < 2) continue;
    auto e0 = t0.entry(m);
    auto e1 = t1.entry(m);
    for (std::size_t i = 0; i < batch; ++i) {
      e0[i] = rng.uniform(ring);
      e1[i] = ring.reduce(e1[i] - e0[i]);
    }
  }
}

inline std::array<BteTable, 2> empty_bte(unsigned fan_in, RingSpec ring,
                                         std::size_t batch) {
  const std::size_t words = ((std::size_t{1} << fan_in) - 1) * batch;
  require(batch == 0 || words / batch == (std::size_t{1} << fan_in) - 1, ErrorKind::capability,
          "BTE size overflow");
  require(words <= kMaxTableWords, ErrorKind::capability,
          std::to_string(fan_in) + "-BTE with batch " + std::to_string(batch) +
              " needs " + std::to_string(words) +
              " words per party; exceeds the table memory cap");
  return {BteTable{0, fan_in, ring, batch, std::vector<Word>(words), false},
          BteTable{1, fan_in, ring, batch, std::vector<Word>(words), false}};
}

}  // namespace detail

/// N-BTE whose singleton masks a_{l} are given in plaintext (one vector per l).
/// Used to pin down examples; `Dealer::gen_bte` draws the masks itself.
inline std::array<BteTable, 2> bte_from_masks(
    RingSpec ring, std::span<const std::vector<Word>> masks, Rng& rng,
    unsigned fanin_cap = kDefaultFaninCap) {
  const auto fan_in = static_cast<unsigned>(masks.size());
  check_fan_in(fan_in, fanin_cap);
  const std::size_t batch = masks[0].size();
  auto tables = detail::empty_bte(fan_in, ring, batch);
  for (unsigned l = 0; l < fan_in; ++l) {
    require(masks[l].size() == batch, ErrorKind::shape, "mask batch mismatch");
    auto e0 = tables[0].entry(1u << l);
    auto e1 = tables[1].entry(1u << l);
    for (std::size_t i = 0; i < batch; ++i) {
      e0[i] = rng.uniform(ring);
      e1[i] = ring.reduce(masks[l][i] - e0[i]);
    }
  }
  detail::expand_bte(tables[0], tables[1], rng);
  return tables;
}

/// The trusted client. Generates every piece of correlated randomness offline
/// from a single seeded stream, so a fixed seed yields byte-identical output.
class Dealer {
 public:
  explicit Dealer(std::uint64_t seed, unsigned fanin_cap = kDefaultFaninCap)
      : seed_(seed), rng_(seed), fanin_cap_(fanin_cap) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t draws() const { return rng_.draws(); }
  unsigned fanin_cap() const { return fanin_cap_; }

  std::array<BteTable, 2> gen_bte(unsigned fan_in, RingSpec ring, std::size_t batch) {
    check_fan_in(fan_in, fanin_cap_);
    auto tables = detail::empty_bte(fan_in, ring, batch);
    // Singletons: both halves independently uniform.
    for (unsigned l = 0; l < fan_in; ++l) {
      auto e0 = tables[0].entry(1u << l);
      auto e1 = tables[1].entry(1u << l);
      for (std::size_t i = 0; i < batch; ++i) {
        e0[i] = rng_.uniform(ring);
        e1[i] = rng_.uniform(ring);
      }
    }
    detail::expand_bte(tables[0], tables[1], rng_);
    return tables;
  }

  /// Three draws per instance: a, b, r; then c0 = r, c1 = ab - r.
  std::array<B2aMaterial, 2> gen_b2a_material(RingSpec ring, std::size_t batch) {
    require(!ring.boolean(), ErrorKind::domain, "B2A material needs an arithmetic ring");
    B2aMaterial m0{0, ring, std::vector<Word>(batch), std::vector<Word>(batch), false};
    B2aMaterial m1{1, ring, std::vector<Word>(batch), std::vector<Word>(batch), false};
    for (std::size_t i = 0; i < batch; ++i) {
      const Word a = rng_.uniform(ring);
      const Word b = rng_.uniform(ring);
      const Word r = rng_.uniform(ring);
      m0.mask[i] = a;
      m1.mask[i] = b;
      m0.c[i] = r;
      m1.c[i] = ring.reduce(a * b - r);
    }
    return {std::move(m0), std::move(m1)};
  }

  std::array<MaterialStore, 2> provision(const Manifest& manifest) {
    std::array<MaterialStore, 2> stores{MaterialStore(0), MaterialStore(1)};
    for (const auto& req : manifest) {
      if (req.kind == MaterialRequest::Kind::bte) {
        auto t = gen_bte(req.fan_in, req.ring, req.batch);
        stores[0].push(std::move(t[0]));
        stores[1].push(std::move(t[1]));
      } else {
        auto m = gen_b2a_material(req.ring, req.batch);
        stores[0].push(std::move(m[0]));
        stores[1].push(std::move(m[1]));
      }
    }
    return stores;
  }

 private:
  std::uint64_t seed_;
  Rng rng_;
  unsigned fanin_cap_;
};

inline std::uint64_t offline_bits_per_party(const Manifest& manifest) {
  std::uint64_t bits = 0;
  for (const auto& r : manifest) bits += r.offline_bits();
  return bits;
}

}  // namespace bte
