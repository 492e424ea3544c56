#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <tuple>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "bte/error.hpp"
#include "bte/material.hpp"
#include "bte/ring.hpp"

namespace bte {

/// Outbound traffic of one barrier, per party, bit-packed LSB-first.
struct RoundRecord {
  std::array<std::uint64_t, 2> bits{};
  std::array<std::vector<std::uint8_t>, 2> payload;
};

class Transcript {
 public:
  const std::vector<RoundRecord>& rounds() const { return rounds_; }

  /// Ordered (round u32, party u8, payload-length-in-bits u64, payload) records,
  /// little-endian.
  std::vector<std::uint8_t> dump() const {
    std::vector<std::uint8_t> out;
    auto put = [&out](std::uint64_t v, int bytes) {
      for (int b = 0; b < bytes; ++b) out.push_back(static_cast<std::uint8_t>(v >> (8 * b)));
    };
    for (std::size_t r = 0; r < rounds_.size(); ++r) {
      for (unsigned p = 0; p < 2; ++p) {
        put(r, 4);
        put(p, 1);
        put(rounds_[r].bits[p], 8);
        out.insert(out.end(), rounds_[r].payload[p].begin(), rounds_[r].payload[p].end());
      }
    }
    return out;
  }

  /// FNV-1a over the dump; enough to compare two runs byte for byte.
  std::uint64_t digest() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::uint8_t b : dump()) {
      h ^= b;
      h *= 0x100000001b3ULL;
    }
    return h;
  }

 private:
  friend class Session;
  std::vector<RoundRecord> rounds_;
};

/// WAN model: data-transfer time = outbound bits / bandwidth, latency = rounds * RTT.
struct CostModel {
  double bandwidth_bits_per_ms = 80000.0;
  double rtt_ms = 40.0;
};

struct CostReport {
  std::size_t rounds = 0;
  std::uint64_t bits_per_party = 0;  // max over the two parties
  std::array<std::uint64_t, 2> bits{};
  double dtt_ms = 0;
  double cl_ms = 0;
  double compute_ms = 0;
  double online_total_ms = 0;
};

struct SessionOptions {
  unsigned fanin_cap = kDefaultFaninCap;
  bool record_transcript = true;
};

class ParallelScope;

/// Round-synchronous two-party fabric. Every exchange is a barrier that needs
/// both parties' payloads; rounds are counted by depth, so sub-protocols
/// launched inside one parallel scope share rounds instead of adding them.
class Session {
 public:
  using Payloads = std::array<std::vector<Word>, 2>;
  using Observer = std::function<void(RingSpec, const Payloads&)>;

  enum class Phase { planning, online };

  explicit Session(SessionOptions opts = {}) : opts_(opts) {
    require(opts_.fanin_cap >= 2 && opts_.fanin_cap <= kHardFaninLimit,
            ErrorKind::capability, "fan-in cap out of range");
  }

  Phase phase() const { return phase_; }
  bool planning() const { return phase_ == Phase::planning; }
  unsigned fanin_cap() const { return opts_.fanin_cap; }

  // ---- offline / online boundary ------------------------------------------

  void begin_planning() {
    require(open_scopes_ == 0, ErrorKind::desync, "planning started inside a scope");
    phase_ = Phase::planning;
    manifest_.clear();
  }

  Manifest end_planning() {
    require(planning(), ErrorKind::desync, "end_planning outside planning");
    phase_ = Phase::online;
    return std::move(manifest_);
  }

  void begin_online(std::array<MaterialStore, 2> stores) {
    require(!planning(), ErrorKind::desync, "online phase started while planning");
    require(stores[0].party() == 0 && stores[1].party() == 1, ErrorKind::material,
            "material stores out of party order");
    require(stores[0].size() == stores[1].size(), ErrorKind::material,
            "material stores disagree in length");
    stores_ = std::move(stores);
  }

  /// Every provisioned item must have been consumed by the online run.
  void end_online() {
    require(stores_[0].empty() && stores_[1].empty(), ErrorKind::material,
            std::to_string(stores_[0].size()) + " provisioned items never consumed");
  }

  std::optional<std::array<BteTable, 2>> acquire_bte(unsigned fan_in, RingSpec ring,
                                                     std::size_t batch) {
    check_fan_in(fan_in, opts_.fanin_cap);
    const MaterialRequest req{MaterialRequest::Kind::bte, fan_in, ring, batch};
    if (planning()) {
      manifest_.push_back(req);
      return std::nullopt;
    }
    return std::array<BteTable, 2>{std::get<BteTable>(stores_[0].pop(req)),
                                   std::get<BteTable>(stores_[1].pop(req))};
  }

  std::optional<std::array<B2aMaterial, 2>> acquire_b2a(RingSpec ring, std::size_t batch) {
    require(!ring.boolean(), ErrorKind::domain, "B2A material needs an arithmetic ring");
    const MaterialRequest req{MaterialRequest::Kind::b2a, 0, ring, batch};
    if (planning()) {
      manifest_.push_back(req);
      return std::nullopt;
    }
    return std::array<B2aMaterial, 2>{std::get<B2aMaterial>(stores_[0].pop(req)),
                                      std::get<B2aMaterial>(stores_[1].pop(req))};
  }

  // ---- the barrier ---------------------------------------------------------

  /// Both parties send simultaneously; returns what each one receives
  /// (result[k] is the peer's payload delivered to party k).
  Payloads exchange(RingSpec ring, Payloads out) {
    const bool e0 = out[0].empty();
    const bool e1 = out[1].empty();
    require(e0 == e1, ErrorKind::desync,
            "one-sided send at a round barrier (party " + std::string(e0 ? "1" : "0") +
                " sent alone)");
    if (e0) return {};
    if (planning()) return {std::vector<Word>(out[1].size()), std::vector<Word>(out[0].size())};

    if (cursor_ == transcript_.rounds_.size()) transcript_.rounds_.emplace_back();
    RoundRecord& rec = transcript_.rounds_[cursor_];
    ++cursor_;
    for (unsigned p = 0; p < 2; ++p) {
      for (Word& v : out[p]) v = ring.reduce(v);
      if (opts_.record_transcript) append_bits(rec.payload[p], rec.bits[p], out[p], ring.width());
      rec.bits[p] += static_cast<std::uint64_t>(out[p].size()) * ring.width();
      bits_[p] += static_cast<std::uint64_t>(out[p].size()) * ring.width();
    }
    if (observer_) observer_(ring, out);
    return {std::move(out[1]), std::move(out[0])};
  }

  /// Exchange masked shares and return the opened sum (XOR at width 1), which
  /// both parties now hold.
  std::vector<Word> open(RingSpec ring, Payloads masked) {
    require(masked[0].size() == masked[1].size(), ErrorKind::shape,
            "open needs equal-length payloads");
    auto got = exchange(ring, std::move(masked));
    if (got[0].empty()) return {};
    // Party 0 adds what it received to what it sent (= got[1]); symmetric for party 1.
    std::vector<Word> opened(got[0].size());
    for (std::size_t i = 0; i < opened.size(); ++i)
      opened[i] = ring.reduce(got[0][i] + got[1][i]);
    return opened;
  }

  // ---- parallel composition -------------------------------------------------

  ParallelScope parallel_scope();

  /// Run each callable as an independent sub-protocol starting at the current
  /// depth; returns their results as a tuple.
  template <class... F>
  auto parallel(F&&... launches);

  /// parallel() over an index range.
  template <class F>
  auto parallel_for(std::size_t count, F&& launch)
      -> std::vector<std::invoke_result_t<F&, std::size_t>>;

  // ---- accounting ------------------------------------------------------------

  std::size_t rounds() const { return transcript_.rounds_.size(); }
  std::array<std::uint64_t, 2> bits() const { return bits_; }
  const Transcript& transcript() const { return transcript_; }
  bool in_scope() const { return open_scopes_ != 0; }

  void set_observer(Observer obs) { observer_ = std::move(obs); }

 private:
  friend class ParallelScope;

  static void append_bits(std::vector<std::uint8_t>& buf, std::uint64_t bit_pos,
                          const std::vector<Word>& vals, unsigned width) {
    buf.resize((bit_pos + vals.size() * width + 7) / 8, 0);
    if (width % 8 == 0 && bit_pos % 8 == 0) {
      std::size_t at = bit_pos / 8;
      for (Word v : vals)
        for (unsigned b = 0; b < width; b += 8) buf[at++] = static_cast<std::uint8_t>(v >> b);
      return;
    }
    for (Word v : vals) {
      for (unsigned b = 0; b < width; ++b, ++bit_pos)
        if ((v >> b) & 1) buf[bit_pos / 8] |= static_cast<std::uint8_t>(1u << (bit_pos % 8));
    }
  }

  SessionOptions opts_;
  Phase phase_ = Phase::online;
  Manifest manifest_;
  std::array<MaterialStore, 2> stores_{MaterialStore(0), MaterialStore(1)};
  Transcript transcript_;
  std::array<std::uint64_t, 2> bits_{};
  std::size_t cursor_ = 0;
  int open_scopes_ = 0;
  Observer observer_;
};

/// Explicit coalescing of independent sub-protocols. Each launch restarts at
/// the scope's base depth; join() leaves the session at the deepest launch.
class ParallelScope {
 public:
  explicit ParallelScope(Session& s) : s_(s), base_(s.cursor_), left_(s.cursor_), deepest_(s.cursor_) {
    ++s_.open_scopes_;
  }
  ParallelScope(const ParallelScope&) = delete;
  ParallelScope& operator=(const ParallelScope&) = delete;

  ~ParallelScope() {
    if (!joined_) {
      s_.cursor_ = std::max(deepest_, s_.cursor_);
      --s_.open_scopes_;
    }
  }

  template <class F>
  decltype(auto) launch(F&& f) {
    require(!joined_, ErrorKind::desync, "launch on a joined scope");
    require(s_.cursor_ == left_, ErrorKind::desync,
            "exchange issued inside a parallel scope outside any launch");
    s_.cursor_ = base_;
    if constexpr (std::is_void_v<std::invoke_result_t<F&>>) {
      f();
      finish_launch();
    } else {
      decltype(auto) r = f();
      finish_launch();
      return r;
    }
  }

  void join() {
    require(!joined_, ErrorKind::desync, "scope joined twice");
    require(s_.cursor_ == left_, ErrorKind::desync,
            "exchange issued inside a parallel scope outside any launch");
    s_.cursor_ = deepest_;
    joined_ = true;
    --s_.open_scopes_;
  }

 private:
  void finish_launch() {
    deepest_ = std::max(deepest_, s_.cursor_);
    left_ = s_.cursor_;
  }

  Session& s_;
  std::size_t base_;
  std::size_t left_;
  std::size_t deepest_;
  bool joined_ = false;
};

inline ParallelScope Session::parallel_scope() { return ParallelScope(*this); }

template <class... F>
auto Session::parallel(F&&... launches) {
  ParallelScope scope(*this);
  auto results = std::tuple{scope.launch(std::forward<F>(launches))...};
  scope.join();
  return results;
}

template <class F>
auto Session::parallel_for(std::size_t count, F&& launch)
    -> std::vector<std::invoke_result_t<F&, std::size_t>> {
  ParallelScope scope(*this);
  std::vector<std::invoke_result_t<F&, std::size_t>> results;
  results.reserve(count);
  for (std::size_t i = 0; i < count; ++i)
    results.push_back(scope.launch([&] { return launch(i); }));
  scope.join();
  return results;
}

inline CostReport cost_report(const Session& s, const CostModel& model,
                              double compute_ms = 0.0) {
  require(!s.in_scope(), ErrorKind::desync, "cost report requested inside an open scope");
  require(model.bandwidth_bits_per_ms > 0 && model.rtt_ms >= 0, ErrorKind::domain,
          "cost model needs positive bandwidth and non-negative RTT");
  CostReport r;
  r.rounds = s.rounds();
  r.bits = s.bits();
  r.bits_per_party = std::max(r.bits[0], r.bits[1]);
  r.dtt_ms = static_cast<double>(r.bits_per_party) / model.bandwidth_bits_per_ms;
  r.cl_ms = static_cast<double>(r.rounds) * model.rtt_ms;
  r.compute_ms = compute_ms;
  r.online_total_ms = compute_ms + r.dtt_ms + r.cl_ms;
  return r;
}

struct PhaseTimings {
  double precomp_ms = 0;
  double online_compute_ms = 0;
  std::uint64_t offline_bits_per_party = 0;
  std::size_t material_items = 0;
};

namespace detail {
inline double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since)
      .count();
}
}  // namespace detail

/// Plan -> provision -> online. `f` is run twice: once in planning mode to
/// collect the material manifest (gates return zeros there), then for real.
/// Valid because every protocol here is oblivious: the request sequence does
/// not depend on share values.
template <class F>
auto run_protocol(Session& s, Dealer& dealer, F&& f, PhaseTimings* timings = nullptr) {
  s.begin_planning();
  f();
  const Manifest manifest = s.end_planning();

  const auto t0 = std::chrono::steady_clock::now();
  auto stores = dealer.provision(manifest);
  const double precomp = detail::elapsed_ms(t0);

  s.begin_online(std::move(stores));
  const auto t1 = std::chrono::steady_clock::now();
  auto finish = [&] {
    s.end_online();
    if (timings) {
      timings->precomp_ms += precomp;
      timings->online_compute_ms += detail::elapsed_ms(t1);
      timings->offline_bits_per_party += offline_bits_per_party(manifest);
      timings->material_items += manifest.size();
    }
  };
  if constexpr (std::is_void_v<std::invoke_result_t<F&>>) {
    f();
    finish();
  } else {
    auto result = f();
    finish();
    return result;
  }
}

/// Collect the manifest of `f` without running it online.
template <class F>
Manifest plan_protocol(Session& s, F&& f) {
  s.begin_planning();
  f();
  return s.end_planning();
}

}  // namespace bte
