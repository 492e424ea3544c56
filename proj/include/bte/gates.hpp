#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "bte/engine.hpp"
#include "bte/error.hpp"
#include "bte/material.hpp"
#include "bte/ring.hpp"

namespace bte {

namespace detail {

inline void check_gate_inputs(std::span<const Shared> xs) {
  require(!xs.empty(), ErrorKind::shape, "gate with no inputs");
  for (const auto& x : xs) {
    require(x.ring() == xs[0].ring(), ErrorKind::shape, "gate inputs over different rings");
    require(x.size() == xs[0].size(), ErrorKind::shape, "gate inputs of different batch");
  }
}

inline Shared zeros(RingSpec ring, std::size_t n) {
  return Shared(Share{0, ring, std::vector<Word>(n)}, Share{1, ring, std::vector<Word>(n)});
}

}  // namespace detail

/// N-fan-in multiplication with caller-supplied tables. One round, N*n bits
/// per party: each party opens x'_l = x_l - a_l, then
///   <y>_k = [k=0] prod x'_l + sum_{I != {}} (prod_{l not in I} x'_l) <a_I>_k.
/// At width 1 the same code is an N-AND.
inline Shared mult_with_table(Session& s, std::span<const Shared> xs,
                              std::array<BteTable, 2>& tables) {
  detail::check_gate_inputs(xs);
  const auto n_in = static_cast<unsigned>(xs.size());
  check_fan_in(n_in, s.fanin_cap());
  const RingSpec ring = xs[0].ring();
  const std::size_t batch = xs[0].size();
  for (unsigned p = 0; p < 2; ++p) {
    const BteTable& t = tables[p];
    require(t.party == p, ErrorKind::shape, "BTE tables out of party order");
    require(t.fan_in == n_in, ErrorKind::shape,
            std::to_string(t.fan_in) + "-BTE given to a " + std::to_string(n_in) + "-fan-in gate");
    require(t.ring == ring, ErrorKind::shape, "BTE ring does not match the inputs");
    require(t.batch == batch, ErrorKind::shape, "BTE batch does not match the inputs");
    require(!t.consumed, ErrorKind::reuse, "BTE table already consumed");
  }
  tables[0].consumed = tables[1].consumed = true;

  Session::Payloads masked;
  for (unsigned p = 0; p < 2; ++p) {
    masked[p].resize(std::size_t{n_in} * batch);
    for (unsigned l = 0; l < n_in; ++l) {
      const auto a = tables[p].entry(1u << l);
      const auto& x = xs[l][p].values;
      for (std::size_t i = 0; i < batch; ++i)
        masked[p][l * batch + i] = ring.reduce(x[i] - a[i]);
    }
  }
  const std::vector<Word> opened = s.open(ring, std::move(masked));
  if (opened.empty()) return detail::zeros(ring, batch);

  const unsigned full = (1u << n_in) - 1;
  Shared y = detail::zeros(ring, batch);
  std::vector<Word> prod(std::size_t{full} + 1);
  for (std::size_t i = 0; i < batch; ++i) {
    prod[0] = 1;
    for (unsigned m = 1; m <= full; ++m)
      prod[m] = prod[m & (m - 1)] * opened[std::countr_zero(m) * batch + i];
    for (unsigned p = 0; p < 2; ++p) {
      const Word* a = tables[p].entries.data();
      Word acc = p == 0 ? prod[full] : 0;
      for (unsigned m = 1; m <= full; ++m) acc += prod[full ^ m] * a[(m - 1) * batch + i];
      y[p].values[i] = ring.reduce(acc);
    }
  }
  return y;
}

/// N-fan-in multiplication drawing its BTE from the session's material.
inline Shared mult(Session& s, std::span<const Shared> xs) {
  detail::check_gate_inputs(xs);
  auto tables = s.acquire_bte(static_cast<unsigned>(xs.size()), xs[0].ring(), xs[0].size());
  if (!tables) return detail::zeros(xs[0].ring(), xs[0].size());
  return mult_with_table(s, xs, *tables);
}

inline Shared mult(Session& s, std::initializer_list<Shared> xs) {
  return mult(s, std::span<const Shared>(xs.begin(), xs.size()));
}

inline Shared and_n(Session& s, std::span<const Shared> xs) {
  detail::check_gate_inputs(xs);
  local::require_bool(xs[0][0]);
  return mult(s, xs);
}

inline Shared and_n(Session& s, std::initializer_list<Shared> xs) {
  return and_n(s, std::span<const Shared>(xs.begin(), xs.size()));
}

/// De Morgan around and_n; NOT is local.
inline Shared or_n(Session& s, std::span<const Shared> xs) {
  detail::check_gate_inputs(xs);
  local::require_bool(xs[0][0]);
  std::vector<Shared> neg;
  neg.reserve(xs.size());
  for (const auto& x : xs) neg.push_back(bnot(x));
  return bnot(mult(s, neg));
}

inline Shared or_n(Session& s, std::initializer_list<Shared> xs) {
  return or_n(s, std::span<const Shared>(xs.begin(), xs.size()));
}

/// Many gates of one fan-in as a single batched gate: input l of every gate is
/// concatenated, one BTE covers the lot.
inline std::vector<Shared> mult_bank(Session& s, std::span<const std::vector<Shared>> gates) {
  require(!gates.empty(), ErrorKind::shape, "empty gate bank");
  const std::size_t n_in = gates[0].size();
  std::vector<std::size_t> lens;
  for (const auto& g : gates) {
    require(g.size() == n_in, ErrorKind::shape, "gate bank with mixed fan-in");
    lens.push_back(g.front().size());
  }
  std::vector<Shared> wires;
  wires.reserve(n_in);
  for (std::size_t l = 0; l < n_in; ++l) {
    std::vector<Shared> col;
    col.reserve(gates.size());
    for (const auto& g : gates) col.push_back(g[l]);
    wires.push_back(concat(col));
  }
  const Shared y = mult(s, wires);
  std::vector<Shared> out;
  out.reserve(gates.size());
  std::size_t off = 0;
  for (std::size_t len : lens) {
    out.push_back(slice(y, off, len));
    off += len;
  }
  return out;
}

/// One layer of gates with mixed fan-in: one bank per distinct fan-in, all in a
/// single round. Groups of size one pass through untouched.
inline std::vector<Shared> mult_layer(Session& s, const std::vector<std::vector<Shared>>& groups) {
  std::vector<Shared> out(groups.size());
  std::map<std::size_t, std::vector<std::size_t>> by_fan_in;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    require(!groups[g].empty(), ErrorKind::shape, "empty gate group");
    if (groups[g].size() == 1)
      out[g] = groups[g][0];
    else
      by_fan_in[groups[g].size()].push_back(g);
  }
  ParallelScope scope(s);
  for (const auto& [fan_in, idx] : by_fan_in) {
    std::vector<std::vector<Shared>> bank;
    bank.reserve(idx.size());
    for (std::size_t g : idx) bank.push_back(groups[g]);
    auto ys = scope.launch([&] { return mult_bank(s, bank); });
    for (std::size_t j = 0; j < idx.size(); ++j) out[idx[j]] = std::move(ys[j]);
  }
  scope.join();
  return out;
}

inline std::vector<Shared> and_layer(Session& s, const std::vector<std::vector<Shared>>& groups) {
  return mult_layer(s, groups);
}

inline std::vector<Shared> or_layer(Session& s, std::vector<std::vector<Shared>> groups) {
  for (auto& g : groups)
    if (g.size() > 1)
      for (auto& x : g) x = bnot(x);
  auto ys = mult_layer(s, groups);
  for (std::size_t g = 0; g < groups.size(); ++g)
    if (groups[g].size() > 1) ys[g] = bnot(ys[g]);
  return ys;
}

/// Layered reduction plan: layers[d] lists the fan-in of each gate in layer d,
/// left to right (1 = wire passed through).
struct FaninPlan {
  std::vector<std::vector<unsigned>> layers;

  std::size_t depth() const { return layers.size(); }
  std::size_t gate_count() const {
    std::size_t c = 0;
    for (const auto& l : layers)
      for (unsigned f : l) c += f > 1;
    return c;
  }
  /// Bits per party for boolean inputs: the sum of fan-ins over real gates.
  std::uint64_t bits(unsigned width = 1) const {
    std::uint64_t b = 0;
    for (const auto& l : layers)
      for (unsigned f : l)
        if (f > 1) b += std::uint64_t{f} * width;
    return b;
  }
};

/// Greedy widest-first: each layer packs gates of fan-in L, the remainder goes
/// into one smaller gate (or passes through when it is a single wire).
inline FaninPlan fanin_schedule(std::size_t total_inputs, unsigned max_fanin) {
  require(total_inputs >= 1, ErrorKind::shape, "schedule needs at least one input");
  require(max_fanin >= 2, ErrorKind::capability, "max fan-in below 2");
  FaninPlan plan;
  std::size_t wires = total_inputs;
  while (wires > 1) {
    std::vector<unsigned> layer(wires / max_fanin, max_fanin);
    if (const auto rem = static_cast<unsigned>(wires % max_fanin)) layer.push_back(rem);
    wires = layer.size();
    plan.layers.push_back(std::move(layer));
  }
  return plan;
}

namespace detail {

template <class Layer>
Shared reduce_tree(Session& s, std::vector<Shared> wires, unsigned max_fanin, Layer layer) {
  require(!wires.empty(), ErrorKind::shape, "tree with no inputs");
  require(max_fanin >= 2 && max_fanin <= s.fanin_cap(), ErrorKind::capability,
          "tree fan-in " + std::to_string(max_fanin) + " above the session cap");
  const FaninPlan plan = fanin_schedule(wires.size(), max_fanin);
  for (const auto& l : plan.layers) {
    std::vector<std::vector<Shared>> groups;
    std::size_t at = 0;
    for (unsigned f : l) {
      groups.emplace_back(wires.begin() + static_cast<std::ptrdiff_t>(at),
                          wires.begin() + static_cast<std::ptrdiff_t>(at + f));
      at += f;
    }
    wires = layer(s, std::move(groups));
  }
  return wires[0];
}

}  // namespace detail

/// N-input AND as a tree of gates of fan-in at most `max_fanin`.
inline Shared and_tree(Session& s, std::vector<Shared> xs, unsigned max_fanin) {
  return detail::reduce_tree(s, std::move(xs), max_fanin,
                             [](Session& ss, std::vector<std::vector<Shared>> g) {
                               return and_layer(ss, g);
                             });
}

inline Shared or_tree(Session& s, std::vector<Shared> xs, unsigned max_fanin) {
  return detail::reduce_tree(s, std::move(xs), max_fanin,
                             [](Session& ss, std::vector<std::vector<Shared>> g) {
                               return or_layer(ss, std::move(g));
                             });
}

}  // namespace bte
