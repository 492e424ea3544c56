#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bte/dump.hpp"
#include "bte/editdist.hpp"
#include "bte/engine.hpp"
#include "bte/gates.hpp"
#include "bte/protocols/b2a.hpp"
#include "bte/protocols/baseline.hpp"
#include "bte/protocols/comparison.hpp"
#include "bte/protocols/equality.hpp"
#include "bte/protocols/max.hpp"
#include "bte/protocols/overflow.hpp"
#include "bte/protocols/tlu.hpp"

namespace bte {

struct BenchSpec {
  std::string target = "protocol";  // gate | protocol | editdist
  std::string name = "equality";
  unsigned ring = 32;
  std::vector<std::size_t> batches{1};
  unsigned fan_in = 0;  // gates: N when the name carries none; maxn: N; tlu: table size
  unsigned fanin_cap = kDefaultFaninCap;
  CostModel model;
  std::uint64_t seed = 1;
  bool baseline = false;
  std::size_t length = 4;  // editdist string length
  std::string s0, s1;      // editdist explicit strings
  bool timings = false;
  std::string dump_material, load_material;
  std::string dump_shares, load_shares;
};

struct BenchRow {
  std::string target, name;
  unsigned ring = 0;
  std::size_t batch = 0;
  unsigned fan_in = 0;
  bool baseline = false;
  CostReport cost;
  std::uint64_t offline_bits_per_party = 0;
  std::uint64_t transcript_digest = 0;
  bool verified = false;
  std::optional<PhaseTimings> timings;
  std::vector<Word> result;  // reconstructed output (editdist distances)
};

namespace bench_detail {

using Plain = std::vector<std::vector<Word>>;
using Runner = std::function<std::vector<Shared>(Session&, const std::vector<Shared>&)>;
using Checker = std::function<bool(const Plain& in, const Plain& out)>;
using Generator = std::function<std::vector<std::vector<Word>>(Rng&, std::size_t batch)>;

struct Case {
  std::vector<RingSpec> input_rings;
  Generator gen;
  Runner run;
  Checker check;
  unsigned fan_in = 0;
};

inline std::vector<Word> draw(Rng& rng, std::size_t n, Word bound_mask) {
  std::vector<Word> v(n);
  for (auto& x : v) x = rng.next() & bound_mask;
  return v;
}

inline Word top_bit(Word v) {
  Word t = 0;
  for (unsigned j = 0; j < 64; ++j)
    if ((v >> j) & 1) t = Word{1} << j;
  return t;
}

inline bool all_of_index(std::size_t n, const std::function<bool(std::size_t)>& f) {
  for (std::size_t i = 0; i < n; ++i)
    if (!f(i)) return false;
  return true;
}

/// "3-and" -> 3; returns 0 when the name has no numeric prefix.
inline unsigned fan_in_prefix(const std::string& name, std::string& base) {
  const auto dash = name.find('-');
  if (dash == std::string::npos) {
    base = name;
    return 0;
  }
  base = name.substr(dash + 1);
  try {
    return static_cast<unsigned>(std::stoul(name.substr(0, dash)));
  } catch (const std::exception&) {
    throw Error(ErrorKind::domain, "cannot parse fan-in in gate name '" + name + "'");
  }
}

inline Case gate_case(const BenchSpec& spec, RingSpec ring) {
  std::string base;
  unsigned n = fan_in_prefix(spec.name, base);
  if (n == 0) n = spec.fan_in ? spec.fan_in : 2;
  check_fan_in(n, spec.fanin_cap);
  Case c;
  c.fan_in = n;
  if (base == "and" || base == "or") {
    const bool is_or = base == "or";
    c.input_rings.assign(n, kBool);
    c.gen = [n](Rng& rng, std::size_t b) {
      Plain in;
      for (unsigned l = 0; l < n; ++l) in.push_back(draw(rng, b, 1));
      return in;
    };
    c.run = [is_or](Session& s, const std::vector<Shared>& xs) {
      return std::vector<Shared>{is_or ? or_n(s, xs) : and_n(s, xs)};
    };
    c.check = [is_or](const Plain& in, const Plain& out) {
      return all_of_index(out[0].size(), [&](std::size_t i) {
        Word acc = is_or ? 0 : 1;
        for (const auto& x : in) acc = is_or ? (acc | x[i]) : (acc & x[i]);
        return acc == out[0][i];
      });
    };
  } else if (base == "mult") {
    c.input_rings.assign(n, ring);
    c.gen = [n, ring](Rng& rng, std::size_t b) {
      Plain in;
      for (unsigned l = 0; l < n; ++l) in.push_back(draw(rng, b, ring.mask()));
      return in;
    };
    c.run = [](Session& s, const std::vector<Shared>& xs) {
      return std::vector<Shared>{mult(s, xs)};
    };
    c.check = [ring](const Plain& in, const Plain& out) {
      return all_of_index(out[0].size(), [&](std::size_t i) {
        Word acc = 1;
        for (const auto& x : in) acc *= x[i];
        return ring.reduce(acc) == out[0][i];
      });
    };
  } else {
    throw Error(ErrorKind::domain, "unknown gate '" + spec.name + "' (use N-and, N-or, N-mult)");
  }
  return c;
}

inline Case protocol_case(const BenchSpec& spec, RingSpec ring) {
  const std::string& nm = spec.name;
  const bool bl = spec.baseline;
  static const std::vector<std::string> with_baseline{"equality", "comparison", "max3",
                                                      "overflow", "b2a"};
  require(!bl || std::find(with_baseline.begin(), with_baseline.end(), nm) != with_baseline.end(),
          ErrorKind::capability, "protocol '" + nm + "' has no baseline variant");
  const Word half = ring.mask() >> 1;  // comparison domain [0, 2^(n-1))
  Case c;
  auto arith = [&](std::size_t k) { c.input_rings.assign(k, ring); };
  auto gen_uniform = [](std::size_t k, Word mask) {
    return [k, mask](Rng& rng, std::size_t b) {
      Plain in;
      for (std::size_t l = 0; l < k; ++l) in.push_back(draw(rng, b, mask));
      return in;
    };
  };
  auto one = [](Shared s) { return std::vector<Shared>{std::move(s)}; };

  if (nm == "equality") {
    arith(2);
    c.gen = [ring](Rng& rng, std::size_t b) {
      Plain in{draw(rng, b, ring.mask()), draw(rng, b, ring.mask())};
      for (std::size_t i = 0; i < b; ++i)
        if (rng.next() & 1) in[1][i] = in[0][i];
      return in;
    };
    c.run = [bl, one](Session& s, const std::vector<Shared>& x) {
      return one(bl ? baseline::equality(s, x[0], x[1]) : equality(s, x[0], x[1]));
    };
    c.check = [](const Plain& in, const Plain& out) {
      return all_of_index(out[0].size(),
                          [&](std::size_t i) { return out[0][i] == (in[0][i] == in[1][i]); });
    };
  } else if (nm == "comparison") {
    arith(2);
    c.gen = gen_uniform(2, half);
    c.run = [bl, one](Session& s, const std::vector<Shared>& x) {
      return one(bl ? baseline::comparison(s, x[0], x[1]) : comparison(s, x[0], x[1]));
    };
    c.check = [](const Plain& in, const Plain& out) {
      return all_of_index(out[0].size(),
                          [&](std::size_t i) { return out[0][i] == (in[0][i] < in[1][i]); });
    };
  } else if (nm == "max3" || nm == "min3" || nm == "argmax3" || nm == "argmin3") {
    arith(3);
    c.gen = gen_uniform(3, half);
    const bool is_min = nm.find("min") != std::string::npos;
    const bool is_arg = nm.rfind("arg", 0) == 0;
    c.run = [=](Session& s, const std::vector<Shared>& x) {
      const std::array<Shared, 3> xs{x[0], x[1], x[2]};
      if (bl) return one(baseline::max3(s, xs));
      if (is_arg) return one(is_min ? argmin3(s, xs) : argmax3(s, xs));
      return one(is_min ? min3(s, xs) : max3(s, xs));
    };
    c.check = [=](const Plain& in, const Plain& out) {
      return all_of_index(out[0].size(), [&](std::size_t i) {
        std::size_t best = 0;
        for (std::size_t j = 1; j < 3; ++j)
          if (is_min ? in[j][i] < in[best][i] : in[j][i] > in[best][i]) best = j;
        return out[0][i] == (is_arg ? best : in[best][i]);
      });
    };
  } else if (nm == "maxn" || nm == "minn") {
    const unsigned n = spec.fan_in ? spec.fan_in : 4;
    arith(n);
    c.fan_in = n;
    c.gen = gen_uniform(n, half);
    const bool is_min = nm == "minn";
    c.run = [=](Session& s, const std::vector<Shared>& x) {
      return one(is_min ? minn(s, x) : maxn(s, x));
    };
    c.check = [=](const Plain& in, const Plain& out) {
      return all_of_index(out[0].size(), [&](std::size_t i) {
        Word best = in[0][i];
        for (const auto& v : in) best = is_min ? std::min(best, v[i]) : std::max(best, v[i]);
        return out[0][i] == best;
      });
    };
  } else if (nm == "tlu") {
    const unsigned len = spec.fan_in ? spec.fan_in : 4;
    c.fan_in = len;
    arith(2 * len + 1);  // keys, values, id
    c.gen = [len, ring](Rng& rng, std::size_t b) {
      Plain in(2 * len + 1, std::vector<Word>(b));
      for (std::size_t i = 0; i < b; ++i) {
        const Word base = rng.next() & ring.mask();
        for (unsigned j = 0; j < len; ++j) {
          in[j][i] = ring.reduce(base + j);  // distinct keys
          in[len + j][i] = rng.next() & ring.mask();
        }
        in[2 * len][i] = in[rng.next() % len][i];
      }
      return in;
    };
    c.run = [len, one](Session& s, const std::vector<Shared>& x) {
      LookupTable t{{x.begin(), x.begin() + len}, {x.begin() + len, x.begin() + 2 * len}};
      return one(tlu(s, t, x[2 * len]));
    };
    c.check = [len](const Plain& in, const Plain& out) {
      return all_of_index(out[0].size(), [&](std::size_t i) {
        for (unsigned j = 0; j < len; ++j)
          if (in[j][i] == in[2 * len][i]) return out[0][i] == in[len + j][i];
        return false;
      });
    };
  } else if (nm == "overflow" || nm == "overflow1r") {
    c.input_rings.assign(2, ring);  // the two shares, supplied as party-0-held values
    c.gen = gen_uniform(2, ring.mask());
    const bool one_round = nm == "overflow1r";
    c.run = [=](Session& s, const std::vector<Shared>& x) {
      // Reinterpret: the secret's shares are (x[0] opened, x[1] opened); build
      // them locally as the parties' halves.
      const Shared v(Share{0, ring, reconst(x[0])}, Share{1, ring, reconst(x[1])});
      if (one_round) return one(overflow_1r(s, v));
      return one(bl ? baseline::overflow(s, v, ring.width()) : overflow_2r(s, v, ring.width()));
    };
    c.check = [ring](const Plain& in, const Plain& out) {
      return all_of_index(out[0].size(), [&](std::size_t i) {
        const bool of = ring.width() == 64 ? in[0][i] + in[1][i] < in[0][i]
                                           : in[0][i] + in[1][i] > ring.mask();
        return out[0][i] == static_cast<Word>(of);
      });
    };
  } else if (nm == "msnzb") {
    c.input_rings.assign(1, ring);
    c.gen = gen_uniform(1, ring.mask());
    c.run = [ring](Session& s, const std::vector<Shared>& x) {
      // Boolean planes of the secret, shared per plane.
      std::vector<Shared> planes;
      const auto plain = reconst(x[0]);
      for (unsigned j = 0; j < ring.width(); ++j) {
        std::vector<Word> bits(plain.size());
        for (std::size_t i = 0; i < plain.size(); ++i) bits[i] = (plain[i] >> j) & 1;
        // XOR split with party 0's plane drawn from x[0]'s own share bits.
        Share s0{0, kBool, std::vector<Word>(plain.size())};
        Share s1{1, kBool, std::vector<Word>(plain.size())};
        for (std::size_t i = 0; i < plain.size(); ++i) {
          s0.values[i] = (x[0][0].values[i] >> j) & 1;
          s1.values[i] = s0.values[i] ^ bits[i];
        }
        planes.emplace_back(std::move(s0), std::move(s1));
      }
      return msnzb(s, planes);
    };
    c.check = [](const Plain& in, const Plain& out) {
      return all_of_index(in[0].size(), [&](std::size_t i) {
        for (std::size_t j = 0; j < out.size(); ++j)
          if (out[j][i] != ((top_bit(in[0][i]) >> j) & 1)) return false;
        return true;
      });
    };
  } else if (nm == "b2a") {
    c.input_rings.assign(1, kBool);
    c.gen = gen_uniform(1, 1);
    c.run = [=](Session& s, const std::vector<Shared>& x) {
      return one(bl ? baseline::b2a(s, x[0], ring) : b2a(s, x[0], ring));
    };
    c.check = [](const Plain& in, const Plain& out) { return in[0] == out[0]; };
  } else if (nm == "bx2a") {
    c.input_rings = {kBool, ring};
    c.gen = [ring](Rng& rng, std::size_t b) { return Plain{draw(rng, b, 1), draw(rng, b, ring.mask())}; };
    c.run = [one](Session& s, const std::vector<Shared>& x) { return one(bx2a(s, x[0], x[1])); };
    c.check = [](const Plain& in, const Plain& out) {
      return all_of_index(out[0].size(),
                          [&](std::size_t i) { return out[0][i] == in[0][i] * in[1][i]; });
    };
  } else if (nm == "bc2a") {
    c.input_rings = {kBool, kBool};
    c.gen = gen_uniform(2, 1);
    c.run = [=](Session& s, const std::vector<Shared>& x) { return one(bc2a(s, x[0], x[1], ring)); };
    c.check = [](const Plain& in, const Plain& out) {
      return all_of_index(out[0].size(),
                          [&](std::size_t i) { return out[0][i] == (in[0][i] & in[1][i]); });
    };
  } else if (nm == "bcx2a") {
    c.input_rings = {kBool, kBool, ring};
    c.gen = [ring](Rng& rng, std::size_t b) {
      return Plain{draw(rng, b, 1), draw(rng, b, 1), draw(rng, b, ring.mask())};
    };
    c.run = [one](Session& s, const std::vector<Shared>& x) { return one(bcx2a(s, x[0], x[1], x[2])); };
    c.check = [](const Plain& in, const Plain& out) {
      return all_of_index(out[0].size(), [&](std::size_t i) {
        return out[0][i] == in[0][i] * in[1][i] * in[2][i];
      });
    };
  } else {
    throw Error(ErrorKind::domain, "unknown protocol '" + nm + "'");
  }
  return c;
}

inline Case editdist_case(const BenchSpec& spec, std::size_t batch) {
  const std::size_t len = spec.s0.empty() ? spec.length : spec.s0.size();
  require(len >= 1, ErrorKind::shape, "edit distance needs length >= 1");
  require(spec.s0.size() == spec.s1.size(), ErrorKind::shape,
          "edit distance strings must have equal length");
  Case c;
  c.input_rings.assign(2 * batch, kGenomeRing);
  c.gen = [&spec, len](Rng& rng, std::size_t b) {
    Plain in;
    for (std::size_t p = 0; p < b; ++p)
      for (int side = 0; side < 2; ++side) {
        if (!spec.s0.empty()) {
          in.push_back(encode_genome(side == 0 ? spec.s0 : spec.s1));
        } else {
          in.push_back(draw(rng, len, 3));
        }
      }
    return in;
  };
  c.run = [](Session& s, const std::vector<Shared>& x) {
    std::vector<Shared> a, b;
    for (std::size_t p = 0; p + 1 < x.size(); p += 2) {
      a.push_back(x[p]);
      b.push_back(x[p + 1]);
    }
    return std::vector<Shared>{edit_distances(s, a, b)};
  };
  c.check = [](const Plain& in, const Plain& out) {
    for (std::size_t p = 0; p < out[0].size(); ++p) {
      const auto& a = in[2 * p];
      const auto& b = in[2 * p + 1];
      std::vector<Word> prev(b.size() + 1), cur(b.size() + 1);
      std::iota(prev.begin(), prev.end(), Word{0});
      for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j)
          cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a[i - 1] != b[j - 1])});
        std::swap(prev, cur);
      }
      if (prev[b.size()] != out[0][p]) return false;
    }
    return true;
  };
  return c;
}

}  // namespace bench_detail

/// Runs one configuration per requested batch size. Inputs are drawn from a
/// stream derived from the seed; the dealer uses the seed itself.
inline std::vector<BenchRow> run_bench(const BenchSpec& spec) {
  using namespace bench_detail;
  require(spec.target == "gate" || spec.target == "protocol" || spec.target == "editdist",
          ErrorKind::domain, "unknown target '" + spec.target + "' (gate|protocol|editdist)");
  require(RingSpec::valid(spec.ring) && spec.ring > 1, ErrorKind::domain,
          "ring width must be 8, 16, 32 or 64");
  require(!spec.batches.empty(), ErrorKind::shape, "no batch sizes given");
  const bool single = spec.batches.size() == 1;
  require(single || (spec.dump_material.empty() && spec.load_material.empty() &&
                     spec.dump_shares.empty() && spec.load_shares.empty()),
          ErrorKind::shape, "dump/load options need a single batch size");
  const RingSpec ring(spec.target == "editdist" ? 16 : spec.ring);

  std::vector<BenchRow> rows;
  for (std::size_t batch : spec.batches) {
    require(batch >= 1, ErrorKind::shape, "batch must be positive");
    Case c = spec.target == "gate"       ? gate_case(spec, ring)
             : spec.target == "protocol" ? protocol_case(spec, ring)
                                         : editdist_case(spec, batch);

    std::vector<Shared> inputs;
    if (!spec.load_shares.empty()) {
      inputs = load_shares(spec.load_shares);
      require(inputs.size() == c.input_rings.size(), ErrorKind::io,
              "share file holds " + std::to_string(inputs.size()) + " inputs, expected " +
                  std::to_string(c.input_rings.size()));
      for (std::size_t k = 0; k < inputs.size(); ++k)
        require(inputs[k].ring() == c.input_rings[k], ErrorKind::io,
                "share file input ring mismatch");
    } else {
      Rng rng(derive_seed(spec.seed, 1));
      const Plain plain = c.gen(rng, batch);
      for (std::size_t k = 0; k < plain.size(); ++k)
        inputs.push_back(share(plain[k], c.input_rings[k], rng));
    }
    if (!spec.dump_shares.empty()) save_shares(spec.dump_shares, inputs, spec.seed);

    Session session(SessionOptions{spec.fanin_cap, true});
    Dealer dealer(spec.seed, spec.fanin_cap);
    PhaseTimings tm;
    const Manifest manifest = plan_protocol(session, [&] { c.run(session, inputs); });
    std::array<MaterialStore, 2> stores{MaterialStore(0), MaterialStore(1)};
    const auto t0 = std::chrono::steady_clock::now();
    if (!spec.load_material.empty())
      stores = load_material(spec.load_material);
    else
      stores = dealer.provision(manifest);
    tm.precomp_ms = detail::elapsed_ms(t0);
    tm.offline_bits_per_party = offline_bits_per_party(manifest);
    tm.material_items = manifest.size();
    if (!spec.dump_material.empty()) save_material(spec.dump_material, stores, spec.seed);

    session.begin_online(std::move(stores));
    const auto t1 = std::chrono::steady_clock::now();
    const std::vector<Shared> out = c.run(session, inputs);
    tm.online_compute_ms = detail::elapsed_ms(t1);
    session.end_online();

    Plain in_plain, out_plain;
    for (const auto& x : inputs) in_plain.push_back(reconst(x));
    for (const auto& y : out) out_plain.push_back(reconst(y));

    BenchRow row;
    row.target = spec.target;
    row.name = spec.target == "editdist" ? "editdist" : spec.name;
    row.ring = ring.width();
    row.batch = batch;
    row.fan_in = c.fan_in;
    row.baseline = spec.baseline;
    row.cost = cost_report(session, spec.model, spec.timings ? tm.online_compute_ms : 0.0);
    row.offline_bits_per_party = tm.offline_bits_per_party;
    row.transcript_digest = session.transcript().digest();
    row.verified = c.check(in_plain, out_plain);
    if (spec.timings) row.timings = tm;
    if (spec.target == "editdist") row.result = out_plain[0];
    rows.push_back(std::move(row));
  }
  return rows;
}

// ---- output ----------------------------------------------------------------------

namespace bench_detail {

inline std::string fixed(double v, int prec = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", prec, v);
  return buf;
}

inline std::string hex64(std::uint64_t v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

inline std::vector<std::string> columns(bool timings) {
  std::vector<std::string> cols{"target",   "name",   "ring",           "batch",
                                "fan_in",   "baseline", "rounds",       "bits_per_party",
                                "offline_bits_per_party", "dtt_ms",     "cl_ms",
                                "online_total_ms", "transcript_digest", "verified"};
  if (timings) {
    cols.push_back("precomp_ms");
    cols.push_back("online_compute_ms");
  }
  return cols;
}

inline std::vector<std::string> cells(const BenchRow& r) {
  std::vector<std::string> v{r.target,
                             r.name,
                             std::to_string(r.ring),
                             std::to_string(r.batch),
                             std::to_string(r.fan_in),
                             r.baseline ? "1" : "0",
                             std::to_string(r.cost.rounds),
                             std::to_string(r.cost.bits_per_party),
                             std::to_string(r.offline_bits_per_party),
                             fixed(r.cost.dtt_ms),
                             fixed(r.cost.cl_ms, 3),
                             fixed(r.cost.online_total_ms),
                             hex64(r.transcript_digest),
                             r.verified ? "1" : "0"};
  if (r.timings) {
    v.push_back(fixed(r.timings->precomp_ms, 3));
    v.push_back(fixed(r.timings->online_compute_ms, 3));
  }
  return v;
}

}  // namespace bench_detail

inline nlohmann::ordered_json to_json(const BenchRow& r) {
  nlohmann::ordered_json j;
  j["target"] = r.target;
  j["name"] = r.name;
  j["ring"] = r.ring;
  j["batch"] = r.batch;
  j["fan_in"] = r.fan_in;
  j["baseline"] = r.baseline;
  j["rounds"] = r.cost.rounds;
  j["bits_per_party"] = r.cost.bits_per_party;
  j["offline_bits_per_party"] = r.offline_bits_per_party;
  j["dtt_ms"] = r.cost.dtt_ms;
  j["cl_ms"] = r.cost.cl_ms;
  j["online_total_ms"] = r.cost.online_total_ms;
  j["transcript_digest"] = bench_detail::hex64(r.transcript_digest);
  j["verified"] = r.verified;
  if (r.timings) {
    j["precomp_ms"] = r.timings->precomp_ms;
    j["online_compute_ms"] = r.timings->online_compute_ms;
  }
  if (!r.result.empty()) j["result"] = r.result;
  return j;
}

/// The cost object alone, with the fixed key set.
inline nlohmann::ordered_json to_json(const CostReport& c) {
  nlohmann::ordered_json j;
  j["rounds"] = c.rounds;
  j["bits_per_party"] = c.bits_per_party;
  j["dtt_ms"] = c.dtt_ms;
  j["cl_ms"] = c.cl_ms;
  j["online_total_ms"] = c.online_total_ms;
  return j;
}

inline void write_rows(std::ostream& os, const std::vector<BenchRow>& rows,
                       const std::string& format) {
  using namespace bench_detail;
  const bool timings = !rows.empty() && rows[0].timings.has_value();
  const auto cols = columns(timings);
  if (format == "csv") {
    for (std::size_t k = 0; k < cols.size(); ++k) os << (k ? "," : "") << cols[k];
    os << '\n';
    for (const auto& r : rows) {
      const auto v = cells(r);
      for (std::size_t k = 0; k < v.size(); ++k) os << (k ? "," : "") << v[k];
      os << '\n';
    }
  } else if (format == "json") {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : rows) arr.push_back(to_json(r));
    os << arr.dump(2) << '\n';
  } else if (format == "table") {
    std::vector<std::vector<std::string>> grid{cols};
    for (const auto& r : rows) grid.push_back(cells(r));
    std::vector<std::size_t> w(cols.size(), 0);
    for (const auto& line : grid)
      for (std::size_t k = 0; k < line.size(); ++k) w[k] = std::max(w[k], line[k].size());
    for (const auto& line : grid) {
      for (std::size_t k = 0; k < line.size(); ++k) {
        os << (k ? "  " : "") << line[k];
        if (k + 1 < line.size()) os << std::string(w[k] - line[k].size(), ' ');
      }
      os << '\n';
    }
  } else {
    throw Error(ErrorKind::domain, "unknown format '" + format + "' (table|csv|json)");
  }
}

}  // namespace bte
