#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <variant>
#include <vector>

#include "bte/error.hpp"
#include "bte/material.hpp"
#include "bte/ring.hpp"

// Binary dump of dealer output and input shares.
//
//   "BTEDUMP1"  u32 record_count
//   record:     u8 kind (0 bte, 1 b2a, 2 shares)  u8 width  u8 fan_in  u8 reserved
//               u64 batch  u64 seed  u32 entries_per_party
//               party 0 entries, then party 1 entries; each entry is `batch`
//               little-endian values of ceil(width/8) bytes
//
// BTE entries follow subset-mask order; b2a has two entries (mask, c); shares one.

namespace bte {

inline constexpr char kDumpMagic[8] = {'B', 'T', 'E', 'D', 'U', 'M', 'P', '1'};

enum class RecordKind : std::uint8_t { bte = 0, b2a = 1, shares = 2 };

struct DumpRecord {
  RecordKind kind = RecordKind::shares;
  RingSpec ring;
  unsigned fan_in = 0;
  std::uint64_t batch = 0;
  std::uint64_t seed = 0;
  std::array<std::vector<std::vector<Word>>, 2> entries;  // [party][entry][i]
};

namespace detail {

class ByteWriter {
 public:
  explicit ByteWriter(const std::string& path) : out_(path, std::ios::binary) {
    require(static_cast<bool>(out_), ErrorKind::io, "cannot open " + path + " for writing");
  }
  void put(std::uint64_t v, unsigned bytes) {
    char buf[8];
    for (unsigned b = 0; b < bytes; ++b) buf[b] = static_cast<char>((v >> (8 * b)) & 0xff);
    out_.write(buf, bytes);
  }
  void raw(const char* p, std::size_t n) { out_.write(p, static_cast<std::streamsize>(n)); }
  void finish(const std::string& path) {
    out_.flush();
    require(static_cast<bool>(out_), ErrorKind::io, "write to " + path + " failed");
  }

 private:
  std::ofstream out_;
};

class ByteReader {
 public:
  explicit ByteReader(const std::string& path) : path_(path), in_(path, std::ios::binary) {
    require(static_cast<bool>(in_), ErrorKind::io, "cannot open " + path);
  }
  std::uint64_t get(unsigned bytes) {
    unsigned char buf[8] = {};
    in_.read(reinterpret_cast<char*>(buf), bytes);
    require(in_.gcount() == static_cast<std::streamsize>(bytes), ErrorKind::io,
            path_ + ": truncated dump");
    std::uint64_t v = 0;
    for (unsigned b = 0; b < bytes; ++b) v |= std::uint64_t{buf[b]} << (8 * b);
    return v;
  }
  void raw(char* p, std::size_t n) {
    in_.read(p, static_cast<std::streamsize>(n));
    require(in_.gcount() == static_cast<std::streamsize>(n), ErrorKind::io,
            path_ + ": truncated dump");
  }
  bool at_end() { return in_.peek() == std::char_traits<char>::eof(); }

 private:
  std::string path_;
  std::ifstream in_;
};

}  // namespace detail

inline void write_dump(const std::string& path, const std::vector<DumpRecord>& records) {
  detail::ByteWriter w(path);
  w.raw(kDumpMagic, sizeof kDumpMagic);
  w.put(records.size(), 4);
  for (const auto& r : records) {
    const unsigned bytes = r.ring.storage_bytes();
    w.put(static_cast<std::uint8_t>(r.kind), 1);
    w.put(r.ring.width(), 1);
    w.put(r.fan_in, 1);
    w.put(0, 1);
    w.put(r.batch, 8);
    w.put(r.seed, 8);
    w.put(r.entries[0].size(), 4);
    for (unsigned p = 0; p < 2; ++p)
      for (const auto& e : r.entries[p]) {
        require(e.size() == r.batch, ErrorKind::shape, "dump entry length differs from batch");
        for (Word v : e) w.put(v, bytes);
      }
  }
  w.finish(path);
}

inline std::vector<DumpRecord> read_dump(const std::string& path) {
  detail::ByteReader r(path);
  char magic[8];
  r.raw(magic, sizeof magic);
  require(std::memcmp(magic, kDumpMagic, sizeof magic) == 0, ErrorKind::io,
          path + ": not a BTE dump (bad magic)");
  const auto count = r.get(4);
  std::vector<DumpRecord> out;
  for (std::uint64_t k = 0; k < count; ++k) {
    DumpRecord rec;
    const auto kind = r.get(1);
    require(kind <= 2, ErrorKind::io, path + ": unknown record kind");
    rec.kind = static_cast<RecordKind>(kind);
    const auto width = static_cast<unsigned>(r.get(1));
    require(RingSpec::valid(width), ErrorKind::io, path + ": bad ring width in record");
    rec.ring = RingSpec(width);
    rec.fan_in = static_cast<unsigned>(r.get(1));
    r.get(1);
    rec.batch = r.get(8);
    rec.seed = r.get(8);
    const auto entries = r.get(4);
    require(entries <= (std::uint64_t{1} << kHardFaninLimit), ErrorKind::io,
            path + ": implausible entry count");
    require(rec.batch * entries <= kMaxTableWords, ErrorKind::io,
            path + ": record larger than the table memory cap");
    const unsigned bytes = rec.ring.storage_bytes();
    for (unsigned p = 0; p < 2; ++p) {
      rec.entries[p].resize(entries);
      for (auto& e : rec.entries[p]) {
        e.resize(rec.batch);
        for (auto& v : e) {
          v = r.get(bytes);
          require(rec.ring.contains(v), ErrorKind::io, path + ": value outside its ring");
        }
      }
    }
    out.push_back(std::move(rec));
  }
  require(r.at_end(), ErrorKind::io, path + ": trailing bytes after last record");
  return out;
}

// ---- material ----------------------------------------------------------------

inline std::vector<DumpRecord> material_records(const std::array<MaterialStore, 2>& stores,
                                                std::uint64_t seed) {
  require(stores[0].size() == stores[1].size(), ErrorKind::material,
          "material stores disagree in length");
  std::vector<DumpRecord> out;
  for (std::size_t k = 0; k < stores[0].size(); ++k) {
    const MaterialItem& i0 = stores[0].items()[k];
    const MaterialItem& i1 = stores[1].items()[k];
    const MaterialRequest d = describe(i0);
    require(d == describe(i1), ErrorKind::material, "material stores out of step");
    DumpRecord rec;
    rec.ring = d.ring;
    rec.batch = d.batch;
    rec.seed = seed;
    if (d.kind == MaterialRequest::Kind::bte) {
      rec.kind = RecordKind::bte;
      rec.fan_in = d.fan_in;
      for (unsigned p = 0; p < 2; ++p) {
        const auto& t = std::get<BteTable>(p == 0 ? i0 : i1);
        for (unsigned m = 1; m <= t.entry_count(); ++m) {
          const auto e = t.entry(m);
          rec.entries[p].emplace_back(e.begin(), e.end());
        }
      }
    } else {
      rec.kind = RecordKind::b2a;
      for (unsigned p = 0; p < 2; ++p) {
        const auto& m = std::get<B2aMaterial>(p == 0 ? i0 : i1);
        rec.entries[p] = {m.mask, m.c};
      }
    }
    out.push_back(std::move(rec));
  }
  return out;
}

inline void save_material(const std::string& path, const std::array<MaterialStore, 2>& stores,
                          std::uint64_t seed) {
  write_dump(path, material_records(stores, seed));
}

inline std::array<MaterialStore, 2> load_material(const std::string& path) {
  std::array<MaterialStore, 2> stores{MaterialStore(0), MaterialStore(1)};
  for (auto& rec : read_dump(path)) {
    if (rec.kind == RecordKind::shares) continue;
    if (rec.kind == RecordKind::bte) {
      require(rec.fan_in >= 2 && rec.fan_in <= kHardFaninLimit, ErrorKind::io,
              path + ": bad fan-in in BTE record");
      require(rec.entries[0].size() == (std::size_t{1} << rec.fan_in) - 1, ErrorKind::io,
              path + ": BTE record entry count does not match its fan-in");
      for (unsigned p = 0; p < 2; ++p) {
        BteTable t{p, rec.fan_in, rec.ring, rec.batch, {}, false};
        t.entries.reserve(t.entry_count() * rec.batch);
        for (const auto& e : rec.entries[p]) t.entries.insert(t.entries.end(), e.begin(), e.end());
        stores[p].push(std::move(t));
      }
    } else {
      require(rec.entries[0].size() == 2 && !rec.ring.boolean(), ErrorKind::io,
              path + ": malformed B2A record");
      for (unsigned p = 0; p < 2; ++p)
        stores[p].push(B2aMaterial{p, rec.ring, rec.entries[p][0], rec.entries[p][1], false});
    }
  }
  return stores;
}

// ---- shares -------------------------------------------------------------------

inline void save_shares(const std::string& path, const std::vector<Shared>& inputs,
                        std::uint64_t seed) {
  std::vector<DumpRecord> recs;
  for (const auto& s : inputs) {
    DumpRecord rec;
    rec.kind = RecordKind::shares;
    rec.ring = s.ring();
    rec.batch = s.size();
    rec.seed = seed;
    for (unsigned p = 0; p < 2; ++p) rec.entries[p] = {s[p].values};
    recs.push_back(std::move(rec));
  }
  write_dump(path, recs);
}

inline std::vector<Shared> load_shares(const std::string& path) {
  std::vector<Shared> out;
  for (auto& rec : read_dump(path)) {
    if (rec.kind != RecordKind::shares) continue;
    require(rec.entries[0].size() == 1, ErrorKind::io, path + ": malformed share record");
    out.emplace_back(Share{0, rec.ring, std::move(rec.entries[0][0])},
                     Share{1, rec.ring, std::move(rec.entries[1][0])});
  }
  return out;
}

}  // namespace bte
