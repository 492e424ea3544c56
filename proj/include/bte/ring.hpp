#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bte/error.hpp"

namespace bte {

using Word = std::uint64_t;

/// The ring Z_2^n. Width 1 is the boolean domain, where + and - collapse to XOR
/// and * to AND; everything below relies on that and shares one code path.
class RingSpec {
 public:
  constexpr RingSpec() = default;
  constexpr explicit RingSpec(unsigned width_bits) : width_(width_bits) {
    if (!valid(width_bits)) {
      throw Error(ErrorKind::domain,
                  "ring width must be one of 1, 8, 16, 32, 64 (got " +
                      std::to_string(width_bits) + ")");
    }
  }

  static constexpr bool valid(unsigned w) {
    return w == 1 || w == 8 || w == 16 || w == 32 || w == 64;
  }

  constexpr unsigned width() const { return width_; }
  constexpr bool boolean() const { return width_ == 1; }
  constexpr Word mask() const {
    return width_ == 64 ? ~Word{0} : (Word{1} << width_) - 1;
  }
  constexpr Word reduce(Word v) const { return v & mask(); }
  constexpr bool contains(Word v) const { return (v & ~mask()) == 0; }

  /// Bytes per element in the little-endian dump format.
  constexpr unsigned storage_bytes() const {
    return width_ <= 8 ? 1 : width_ / 8;
  }

  friend constexpr bool operator==(RingSpec, RingSpec) = default;

 private:
  unsigned width_ = 64;
};

inline constexpr RingSpec kBool{1};

/// Seedable generator with a draw counter. Raw 64-bit outputs are masked to the
/// ring, so streams are reproducible across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  Word next() {
    ++draws_;
    return engine_();
  }
  /// Narrow rings are served from a pooled 64-bit output, `width` bits at a
  /// time; every supported width divides 64, so no bits are dropped.
  Word uniform(RingSpec ring) {
    const unsigned w = ring.width();
    if (w == 64) return next();
    ++draws_;
    if (pool_bits_ < w) {
      pool_ = engine_();
      pool_bits_ = 64;
    }
    const Word v = pool_ & ring.mask();
    pool_ >>= w;
    pool_bits_ -= w;
    return v;
  }
  /// Number of values handed out (raw words or ring elements).
  std::uint64_t draws() const { return draws_; }

 private:
  std::mt19937_64 engine_;
  std::uint64_t draws_ = 0;
  Word pool_ = 0;
  unsigned pool_bits_ = 0;
};

/// splitmix64 finalizer; derives independent per-role seeds from one user seed.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t role) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (role + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// One party's additive (or XOR, for width 1) share of a batch of secrets.
struct Share {
  unsigned party = 0;
  RingSpec ring;
  std::vector<Word> values;

  std::size_t size() const { return values.size(); }
};

/// Both parties' shares of one batch. In the in-process fabric the two halves
/// live side by side, but protocol code only ever combines them through the
/// engine's round barrier.
class Shared {
 public:
  Shared() = default;
  Shared(Share s0, Share s1) : parts_{std::move(s0), std::move(s1)} {
    require(parts_[0].party == 0 && parts_[1].party == 1, ErrorKind::shape,
            "shared pair must hold party 0 then party 1");
    require(parts_[0].ring == parts_[1].ring, ErrorKind::shape,
            "shared pair ring mismatch");
    require(parts_[0].size() == parts_[1].size(), ErrorKind::shape,
            "shared pair length mismatch");
  }

  Share& operator[](unsigned party) { return parts_[party]; }
  const Share& operator[](unsigned party) const { return parts_[party]; }

  RingSpec ring() const { return parts_[0].ring; }
  std::size_t size() const { return parts_[0].size(); }

 private:
  std::array<Share, 2> parts_{Share{0, {}, {}}, Share{1, {}, {}}};
};

// ---------------------------------------------------------------------------
// Share / Reconst

inline Shared share(std::span<const Word> plain, RingSpec ring, Rng& rng) {
  Share s0{0, ring, std::vector<Word>(plain.size())};
  Share s1{1, ring, std::vector<Word>(plain.size())};
  for (std::size_t i = 0; i < plain.size(); ++i) {
    require(ring.contains(plain[i]), ErrorKind::domain,
            "plaintext value " + std::to_string(plain[i]) + " outside Z_2^" +
                std::to_string(ring.width()));
    const Word r = rng.uniform(ring);
    s0.values[i] = r;
    s1.values[i] = ring.reduce(plain[i] - r);
  }
  return Shared(std::move(s0), std::move(s1));
}

inline std::vector<Word> reconst(const Share& s0, const Share& s1) {
  require(s0.party == 0 && s1.party == 1, ErrorKind::shape,
          "reconst needs party 0 and party 1 shares");
  require(s0.ring == s1.ring, ErrorKind::shape, "reconst ring mismatch");
  require(s0.size() == s1.size(), ErrorKind::shape, "reconst length mismatch");
  std::vector<Word> out(s0.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = s0.ring.reduce(s0.values[i] + s1.values[i]);
  return out;
}

inline std::vector<Word> reconst(const Shared& s) { return reconst(s[0], s[1]); }

/// Shares in which `holder` owns the value outright and the peer holds zero.
inline Shared trivial_share(unsigned holder, std::span<const Word> plain,
                            RingSpec ring) {
  require(holder < 2, ErrorKind::shape, "holder must be party 0 or 1");
  Share own{holder, ring, {}};
  own.values.reserve(plain.size());
  for (Word v : plain) {
    require(ring.contains(v), ErrorKind::domain, "trivial share outside ring");
    own.values.push_back(v);
  }
  Share zero{1 - holder, ring, std::vector<Word>(plain.size(), 0)};
  return holder == 0 ? Shared(std::move(own), std::move(zero))
                     : Shared(std::move(zero), std::move(own));
}

/// Public constant as a sharing: (c, 0).
inline Shared public_constant(Word c, std::size_t n, RingSpec ring) {
  std::vector<Word> v(n, ring.reduce(c));
  return trivial_share(0, v, ring);
}

// ---------------------------------------------------------------------------
// Local (communication-free) algebra, one party at a time.

namespace local {

inline void check_pair(const Share& a, const Share& b) {
  require(a.party == b.party, ErrorKind::shape, "operands from different parties");
  require(a.ring == b.ring, ErrorKind::shape, "operand ring mismatch");
  require(a.size() == b.size(), ErrorKind::shape, "operand length mismatch");
}

template <class Op>
Share zip(const Share& a, const Share& b, Op op) {
  check_pair(a, b);
  Share out{a.party, a.ring, std::vector<Word>(a.size())};
  for (std::size_t i = 0; i < a.size(); ++i)
    out.values[i] = a.ring.reduce(op(a.values[i], b.values[i]));
  return out;
}

template <class Op>
Share map(const Share& a, Op op) {
  Share out{a.party, a.ring, std::vector<Word>(a.size())};
  for (std::size_t i = 0; i < a.size(); ++i)
    out.values[i] = a.ring.reduce(op(a.values[i]));
  return out;
}

inline Share add(const Share& a, const Share& b) {
  return zip(a, b, [](Word x, Word y) { return x + y; });
}
inline Share sub(const Share& a, const Share& b) {
  return zip(a, b, [](Word x, Word y) { return x - y; });
}
inline Share neg(const Share& a) {
  return map(a, [](Word x) { return Word{0} - x; });
}
inline Share mul_const(const Share& a, Word c) {
  return map(a, [c](Word x) { return x * c; });
}
/// Party 0 adds the constant, party 1 adds zero.
inline Share add_const(const Share& a, Word c) {
  if (a.party != 0) return a;
  return map(a, [c](Word x) { return x + c; });
}

/// Party 0 keeps x0 - y0, party 1 keeps y1 - x1, so that s0 - s1 = x - y and
/// the two halves coincide exactly when x = y.
inline Share asym_sub(const Share& x, const Share& y) {
  return x.party == 0 ? sub(x, y) : sub(y, x);
}

inline void require_bool(const Share& a) {
  require(a.ring.boolean(), ErrorKind::domain,
          "boolean operation on a width-" + std::to_string(a.ring.width()) +
              " share");
}

inline Share bxor(const Share& a, const Share& b) {
  require_bool(a);
  require_bool(b);
  return zip(a, b, [](Word x, Word y) { return x ^ y; });
}

/// NOT flips party 0's share only.
inline Share bnot(const Share& a) {
  require_bool(a);
  if (a.party != 0) return a;
  return map(a, [](Word x) { return x ^ 1; });
}

/// XOR of several boolean shares. On a weight-at-most-one vector this is OR.
inline Share xor_fold(std::span<const Share> planes) {
  require(!planes.empty(), ErrorKind::shape, "xor_fold of nothing");
  Share acc = planes[0];
  require_bool(acc);
  for (std::size_t j = 1; j < planes.size(); ++j) acc = bxor(acc, planes[j]);
  return acc;
}

/// Reinterpret a boolean share as an element of `ring` (⟨b⟩ᴬᵢ = ⟨b⟩ᴮᵢ).
inline Share lift(const Share& b, RingSpec ring) {
  require_bool(b);
  return Share{b.party, ring, b.values};
}

}  // namespace local

/// LSB-first boolean planes of one party's arithmetic share.
struct BitPlaneShare {
  unsigned source_width = 0;
  std::vector<Share> planes;
};

namespace local {

inline BitPlaneShare bit_decompose(const Share& s) {
  require(!s.ring.boolean(), ErrorKind::domain,
          "bit decomposition needs an arithmetic share");
  BitPlaneShare out{s.ring.width(), {}};
  out.planes.reserve(s.ring.width());
  for (unsigned j = 0; j < s.ring.width(); ++j) {
    Share plane{s.party, kBool, std::vector<Word>(s.size())};
    for (std::size_t i = 0; i < s.size(); ++i) plane.values[i] = (s.values[i] >> j) & 1;
    out.planes.push_back(std::move(plane));
  }
  return out;
}

}  // namespace local

// ---------------------------------------------------------------------------
// Shared-level conveniences: the same local rule applied by each party.

template <class F>
Shared per_party(F&& f) {
  return Shared(f(0u), f(1u));
}

inline Shared add(const Shared& a, const Shared& b) {
  return per_party([&](unsigned p) { return local::add(a[p], b[p]); });
}
inline Shared sub(const Shared& a, const Shared& b) {
  return per_party([&](unsigned p) { return local::sub(a[p], b[p]); });
}
inline Shared mul_const(const Shared& a, Word c) {
  return per_party([&](unsigned p) { return local::mul_const(a[p], c); });
}
inline Shared add_const(const Shared& a, Word c) {
  return per_party([&](unsigned p) { return local::add_const(a[p], c); });
}
inline Shared asym_sub(const Shared& x, const Shared& y) {
  return per_party([&](unsigned p) { return local::asym_sub(x[p], y[p]); });
}
inline Shared bxor(const Shared& a, const Shared& b) {
  return per_party([&](unsigned p) { return local::bxor(a[p], b[p]); });
}
inline Shared bnot(const Shared& a) {
  return per_party([&](unsigned p) { return local::bnot(a[p]); });
}
inline Shared lift(const Shared& b, RingSpec ring) {
  return per_party([&](unsigned p) { return local::lift(b[p], ring); });
}

inline Shared xor_fold(std::span<const Shared> planes) {
  return per_party([&](unsigned p) {
    std::vector<Share> mine;
    mine.reserve(planes.size());
    for (const auto& s : planes) mine.push_back(s[p]);
    return local::xor_fold(mine);
  });
}

/// Boolean planes of each party's own share value (not of the secret).
inline std::vector<Shared> bit_decompose(const Shared& s) {
  auto d0 = local::bit_decompose(s[0]);
  auto d1 = local::bit_decompose(s[1]);
  std::vector<Shared> planes;
  planes.reserve(d0.planes.size());
  for (std::size_t j = 0; j < d0.planes.size(); ++j)
    planes.emplace_back(std::move(d0.planes[j]), std::move(d1.planes[j]));
  return planes;
}

// ---------------------------------------------------------------------------
// Batch reshaping. Concatenating independent instances is how parallel
// instances of the same sub-protocol share one gate call.

inline Shared concat(std::span<const Shared> parts) {
  require(!parts.empty(), ErrorKind::shape, "concat of nothing");
  return per_party([&](unsigned p) {
    Share out{p, parts[0].ring(), {}};
    std::size_t total = 0;
    for (const auto& s : parts) total += s.size();
    out.values.reserve(total);
    for (const auto& s : parts) {
      require(s.ring() == out.ring, ErrorKind::shape, "concat ring mismatch");
      out.values.insert(out.values.end(), s[p].values.begin(), s[p].values.end());
    }
    return out;
  });
}

inline Shared slice(const Shared& s, std::size_t offset, std::size_t len) {
  require(offset + len <= s.size(), ErrorKind::shape, "slice out of range");
  return per_party([&](unsigned p) {
    const auto& v = s[p].values;
    return Share{p, s.ring(),
                 std::vector<Word>(v.begin() + static_cast<std::ptrdiff_t>(offset),
                                   v.begin() + static_cast<std::ptrdiff_t>(offset + len))};
  });
}

inline std::vector<Shared> split(const Shared& s, std::size_t parts) {
  require(parts > 0 && s.size() % parts == 0, ErrorKind::shape,
          "split does not divide the batch");
  const std::size_t len = s.size() / parts;
  std::vector<Shared> out;
  out.reserve(parts);
  for (std::size_t k = 0; k < parts; ++k) out.push_back(slice(s, k * len, len));
  return out;
}

}  // namespace bte
