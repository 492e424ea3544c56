// Acceptance run: one PASS/FAIL line per criterion. Pass criterion numbers as
// arguments to run a subset.

#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "bte/bench.hpp"
#include "support.hpp"

using namespace bte;
using testing_support::Harness;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    pass = false;
    detail += (detail.empty() ? "" : "; ") + why;
  }
  void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

std::string str(double v, int prec = 3) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(prec);
  os << v;
  return os.str();
}

Shared share_vec(const std::vector<Word>& v, RingSpec ring, Rng& rng) { return share(v, ring, rng); }

// ---- 1, 2: rounds and bits at n = 32 ------------------------------------------------

struct Measured {
  std::size_t rounds = 0;
  std::uint64_t bits = 0;
  bool correct = true;
};

Measured measure(const std::string& name, bool base, std::size_t batch, std::uint64_t seed) {
  Rng rng(seed);
  const RingSpec ring(32);
  std::array<std::vector<Word>, 3> v;
  std::array<Shared, 3> xs;
  for (int e = 0; e < 3; ++e) {
    v[e] = testing_support::random_values(rng, batch, ring.mask());
    if (e == 1)
      for (std::size_t i = 0; i < batch; i += 3) v[1][i] = v[0][i];
    xs[e] = share_vec(v[e], ring, rng);
  }
  Harness h(seed);
  Measured m;
  std::vector<Word> out;
  if (name == "equality") {
    out = reconst(h.run([&] {
      return base ? baseline::equality(h.session, xs[0], xs[1]) : equality(h.session, xs[0], xs[1]);
    }));
    for (std::size_t i = 0; i < batch; ++i) m.correct &= out[i] == (v[0][i] == v[1][i] ? 1u : 0u);
  } else if (name == "comparison") {
    out = reconst(h.run([&] {
      return base ? baseline::comparison(h.session, xs[0], xs[1])
                  : comparison(h.session, xs[0], xs[1]);
    }));
    for (std::size_t i = 0; i < batch; ++i) m.correct &= out[i] == (v[0][i] < v[1][i] ? 1u : 0u);
  } else {
    out = reconst(h.run([&] { return base ? baseline::max3(h.session, xs) : max3(h.session, xs); }));
    for (std::size_t i = 0; i < batch; ++i)
      m.correct &= out[i] == std::max({v[0][i], v[1][i], v[2][i]});
  }
  m.rounds = h.session.rounds();
  m.bits = h.session.bits()[0];
  return m;
}

Outcome criterion_rounds() {
  Outcome o;
  const std::tuple<const char*, bool, std::size_t> want[] = {
      {"equality", false, 2},  {"comparison", false, 3}, {"max3", false, 4},
      {"equality", true, 5},   {"comparison", true, 7},  {"max3", true, 18}};
  for (const auto& [name, base, rounds] : want) {
    const Measured m = measure(name, base, 1, 11);
    const std::string label = std::string(base ? "baseline " : "") + name;
    o.note(label + "=" + std::to_string(m.rounds));
    if (m.rounds != rounds) o.fail(label + " expected " + std::to_string(rounds));
    if (!m.correct) o.fail(label + " output wrong");
  }
  return o;
}

Outcome criterion_bits() {
  Outcome o;
  const std::pair<const char*, std::uint64_t> want[] = {
      {"equality", 38}, {"comparison", 712}, {"max3", 3960}};
  for (const auto& [name, bits] : want) {
    for (std::size_t batch : {std::size_t{1}, std::size_t{1000}}) {
      const Measured m = measure(name, false, batch, 12 + batch);
      if (batch == 1) o.note(std::string(name) + "=" + std::to_string(m.bits));
      if (m.bits != bits * batch)
        o.fail(std::string(name) + " batch " + std::to_string(batch) + ": measured " +
               std::to_string(m.bits) + ", expected " + std::to_string(bits * batch));
      if (!m.correct) o.fail(std::string(name) + " output wrong");
    }
  }
  return o;
}

// ---- 3: gate budget -------------------------------------------------------------------

Outcome criterion_gates() {
  Outcome o;
  Rng rng(3);
  for (unsigned n = 2; n <= 9; ++n) {
    const std::size_t batch = 1000;
    std::vector<std::vector<Word>> cols(n);
    std::vector<Shared> xs;
    for (auto& c : cols) {
      c = testing_support::random_values(rng, batch, 1);
      xs.push_back(share_vec(c, kBool, rng));
    }
    Harness h(n);
    const auto y = reconst(h.run([&] { return and_n(h.session, xs); }));
    for (std::size_t i = 0; i < batch; ++i) {
      Word all = 1;
      for (const auto& c : cols) all &= c[i];
      if (y[i] != all) {
        o.fail(std::to_string(n) + "-AND wrong output");
        break;
      }
    }
    if (h.session.rounds() != 1) o.fail(std::to_string(n) + "-AND rounds " + std::to_string(h.session.rounds()));
    if (h.session.bits()[0] != std::uint64_t{n} * batch)
      o.fail(std::to_string(n) + "-AND bits " + std::to_string(h.session.bits()[0]));
  }
  o.note("N-AND 1 round, N bits/gate for N=2..9");

  BenchSpec spec;
  spec.target = "gate";
  spec.name = "2-and";
  spec.batches = {1000000};
  const BenchRow row = run_bench(spec)[0];
  o.note("2-AND batch 1e6 DTT=" + str(row.cost.dtt_ms) + " ms");
  if (std::abs(row.cost.dtt_ms - 25.0) > 1e-9) o.fail("DTT expected 25.0 ms");
  if (!row.verified) o.fail("2-AND batch output wrong");
  return o;
}

// ---- 4: correctness oracles -------------------------------------------------------------

std::pair<std::vector<Word>, std::vector<Word>> all_pairs8() {
  std::vector<Word> a, b;
  for (Word i = 0; i < 256; ++i)
    for (Word j = 0; j < 256; ++j) a.push_back(i), b.push_back(j);
  return {a, b};
}

Outcome criterion_oracles() {
  Outcome o;
  std::size_t bad = 0;
  Rng rng(4);

  {  // MSNZB over every 16-bit input.
    std::vector<Shared> planes;
    for (unsigned j = 0; j < 16; ++j) {
      std::vector<Word> bits(65536);
      for (Word v = 0; v < 65536; ++v) bits[v] = (v >> j) & 1;
      planes.push_back(share_vec(bits, kBool, rng));
    }
    Harness h(40);
    const auto z = h.run([&] { return msnzb(h.session, planes); });
    std::size_t miss = 0;
    for (unsigned j = 0; j < 16; ++j) {
      const auto zj = reconst(z[j]);
      for (Word v = 0; v < 65536; ++v)
        miss += zj[v] != (testing_support::highest_set_bit(v) == static_cast<int>(j) ? 1u : 0u);
    }
    o.note("msnzb 2^16 mismatches=" + std::to_string(miss));
    bad += miss;
  }

  const auto [a8, b8] = all_pairs8();
  const Shared x8 = testing_support::from_halves(a8, b8, RingSpec(8));
  {
    std::size_t miss = 0;
    for (unsigned k = 1; k <= 8; ++k) {
      Harness h(41 + k);
      const auto z = reconst(h.run([&] { return overflow_2r(h.session, x8, k); }));
      for (std::size_t i = 0; i < z.size(); ++i)
        miss += z[i] != testing_support::overflow_oracle(a8[i], b8[i], k);
    }
    o.note("overflow_2r n=8 k=1..8 mismatches=" + std::to_string(miss));
    bad += miss;
  }
  {
    Harness h(50);
    const auto z = reconst(h.run([&] { return overflow_1r(h.session, x8, OverflowParams{8, 4, 4}); }));
    std::size_t miss = 0;
    for (std::size_t i = 0; i < z.size(); ++i)
      miss += z[i] != testing_support::overflow_oracle(a8[i], b8[i], 8);
    o.note("overflow_1r (4,4) mismatches=" + std::to_string(miss));
    bad += miss;
  }
  {
    std::size_t miss = 0;
    for (unsigned n = 2; n <= 6; ++n) {
      const std::size_t patterns = std::size_t{1} << n;
      std::vector<std::vector<Word>> cols(n);
      for (int rep = 0; rep < 64; ++rep)
        for (std::size_t v = 0; v < patterns; ++v)
          for (unsigned l = 0; l < n; ++l) cols[l].push_back((v >> l) & 1);
      std::vector<Shared> xs;
      for (const auto& c : cols) xs.push_back(share_vec(c, kBool, rng));
      Harness h(60 + n);
      const auto [ya, yo] = h.run([&] {
        return h.session.parallel([&] { return and_n(h.session, xs); },
                                  [&] { return or_n(h.session, xs); });
      });
      const auto ra = reconst(ya), ro = reconst(yo);
      for (std::size_t i = 0; i < ra.size(); ++i) {
        const std::size_t v = i % patterns;
        miss += ra[i] != (v == patterns - 1 ? 1u : 0u);
        miss += ro[i] != (v != 0 ? 1u : 0u);
      }
    }
    o.note("and/or truth tables N<=6 mismatches=" + std::to_string(miss));
    bad += miss;
  }
  {
    // 1e5 randomized trials each at n = 32, in chunks to bound dealer memory.
    const RingSpec ring(32);
    const std::size_t total = 100000, chunk = 10000;
    std::size_t miss_eq = 0, miss_lt = 0;
    for (std::size_t done = 0; done < total; done += chunk) {
      auto a = testing_support::random_values(rng, chunk, ring.mask());
      auto b = testing_support::random_values(rng, chunk, ring.mask());
      for (std::size_t i = 0; i < chunk; i += 4) b[i] = a[i];
      for (std::size_t i = 1; i < chunk; i += 8) b[i] = ring.reduce(a[i] + 1);
      for (std::size_t i = 3; i < chunk; i += 8) a[i] &= ring.mask() >> 1, b[i] &= ring.mask() >> 1;
      const Shared sa = share_vec(a, ring, rng), sb = share_vec(b, ring, rng);
      Harness h(70 + done);
      const auto [eq, lt] = h.run([&] {
        return h.session.parallel([&] { return equality(h.session, sa, sb); },
                                  [&] { return comparison(h.session, sa, sb); });
      });
      const auto re = reconst(eq), rl = reconst(lt);
      for (std::size_t i = 0; i < chunk; ++i) {
        miss_eq += re[i] != (a[i] == b[i] ? 1u : 0u);
        miss_lt += rl[i] != (a[i] < b[i] ? 1u : 0u);
      }
    }
    o.note("equality 1e5 mismatches=" + std::to_string(miss_eq) +
           ", comparison 1e5 mismatches=" + std::to_string(miss_lt));
    bad += miss_eq + miss_lt;
  }
  if (bad) o.fail(std::to_string(bad) + " oracle mismatches");
  return o;
}

// ---- 5: B2A family ----------------------------------------------------------------------

Outcome criterion_b2a() {
  Outcome o;
  Rng rng(5);
  std::size_t miss = 0;
  const std::size_t reps = 1000;
  for (unsigned w : {8u, 16u, 32u, 64u}) {
    const RingSpec ring(w);
    // Every (b0, b1, c0, c1) share pattern, each with reps fresh material draws.
    std::vector<Word> b0, b1, c0, c1;
    for (Word p = 0; p < 16; ++p)
      for (std::size_t r = 0; r < reps; ++r) {
        b0.push_back(p & 1), b1.push_back((p >> 1) & 1);
        c0.push_back((p >> 2) & 1), c1.push_back((p >> 3) & 1);
      }
    const auto xv = testing_support::random_values(rng, b0.size(), ring.mask());
    const Shared b = testing_support::bool_from_halves(b0, b1);
    const Shared c = testing_support::bool_from_halves(c0, c1);
    const Shared x = share_vec(xv, ring, rng);

    Harness hb(100 + w);
    const auto zb = reconst(hb.run([&] { return b2a(hb.session, b, ring); }));
    if (hb.session.rounds() != 1 || hb.session.bits()[0] != std::uint64_t{w} * b0.size())
      o.fail("B2A n=" + std::to_string(w) + " cost " + std::to_string(hb.session.bits()[0]) +
             " bits over " + std::to_string(hb.session.rounds()) + " rounds");

    Harness h(200 + w);
    const auto [bx, bc, bcx] = h.run([&] {
      return h.session.parallel([&] { return bx2a(h.session, b, x); },
                                [&] { return bc2a(h.session, b, c, ring); },
                                [&] { return bcx2a(h.session, b, c, x); });
    });
    const auto rbx = reconst(bx), rbc = reconst(bc), rbcx = reconst(bcx);
    for (std::size_t i = 0; i < b0.size(); ++i) {
      const Word bi = b0[i] ^ b1[i], ci = c0[i] ^ c1[i];
      miss += zb[i] != bi;
      miss += rbx[i] != ring.reduce(bi * xv[i]);
      miss += rbc[i] != (bi & ci);
      miss += rbcx[i] != ring.reduce((bi & ci) * xv[i]);
    }
  }
  o.note("16 share patterns x " + std::to_string(reps) + " draws x n=8/16/32/64; mismatches=" +
         std::to_string(miss) + "; B2A = n bits/party, 1 round");
  if (miss) o.fail("B2A family mismatches");
  return o;
}

// ---- 6: edit distance ----------------------------------------------------------------------

class EditRunner {
 public:
  /// Runs a batch of pairs in one session and returns the distances. Same-shape
  /// batches reuse the planned manifest.
  std::vector<Word> run(const std::vector<std::string>& sa, const std::vector<std::string>& sb,
                        std::size_t& rounds) {
    std::vector<Shared> a, b;
    for (std::size_t p = 0; p < sa.size(); ++p) {
      a.push_back(share_genome(sa[p], rng_));
      b.push_back(share_genome(sb[p], rng_));
    }
    const auto key = std::make_pair(sa.size(), sa[0].size());
    Session s;
    auto it = plans_.find(key);
    if (it == plans_.end())
      it = plans_.emplace(key, plan_protocol(s, [&] { return edit_distances(s, a, b); })).first;
    s.begin_online(dealer_.provision(it->second));
    const Shared d = edit_distances(s, a, b);
    s.end_online();
    rounds = s.rounds();
    return reconst(d);
  }

 private:
  Rng rng_{6};
  Dealer dealer_{6};
  std::map<std::pair<std::size_t, std::size_t>, Manifest> plans_;
};

std::string random_dna(Rng& rng, std::size_t len) {
  std::string s;
  for (std::size_t i = 0; i < len; ++i) s += "ATGC"[rng.next() & 3];
  return s;
}

Outcome criterion_editdist() {
  Outcome o;
  EditRunner runner;
  std::size_t miss = 0;
  auto check = [&](const std::vector<std::string>& sa, const std::vector<std::string>& sb) {
    std::size_t rounds = 0;
    const auto d = runner.run(sa, sb, rounds);
    for (std::size_t p = 0; p < sa.size(); ++p)
      miss += d[p] != testing_support::levenshtein(sa[p], sb[p]);
    if (rounds != edit_distance_rounds(sa[0].size()))
      o.fail("L=" + std::to_string(sa[0].size()) + " took " + std::to_string(rounds) + " rounds");
  };

  // Exhaustive over binary strings (alphabet {A, T}) for L = 1..6.
  std::size_t exhaustive = 0;
  for (std::size_t len = 1; len <= 6; ++len) {
    std::vector<std::string> all;
    for (std::size_t v = 0; v < (std::size_t{1} << len); ++v) {
      std::string s;
      for (std::size_t i = 0; i < len; ++i) s += (v >> i) & 1 ? 'T' : 'A';
      all.push_back(s);
    }
    std::vector<std::string> sa, sb;
    for (const auto& x : all)
      for (const auto& y : all) {
        sa.push_back(x), sb.push_back(y);
        if (sa.size() == 512) check(sa, sb), exhaustive += 512, sa.clear(), sb.clear();
      }
    if (!sa.empty()) check(sa, sb), exhaustive += sa.size();
  }
  o.note("binary L<=6 exhaustive pairs=" + std::to_string(exhaustive));

  // 1e3 random DNA pairs per length; chunk sizes keep dealer material near 1 GB.
  Rng rng(66);
  for (auto [len, chunk] : {std::pair<std::size_t, std::size_t>{16, 50}, {32, 20}, {64, 5}}) {
    for (std::size_t done = 0; done < 1000; done += chunk) {
      std::vector<std::string> sa, sb;
      for (std::size_t p = 0; p < chunk; ++p) {
        sa.push_back(random_dna(rng, len));
        sb.push_back(p % 10 == 0 ? sa.back() : random_dna(rng, len));
      }
      check(sa, sb);
    }
  }
  o.note("random DNA 1000 pairs at L=16/32/64; mismatches=" + std::to_string(miss));
  if (miss) o.fail(std::to_string(miss) + " distance mismatches");

  // L = 128: communication latency at the default model.
  {
    std::size_t rounds = 0;
    const std::vector<std::string> sa{random_dna(rng, 128)}, sb{random_dna(rng, 128)};
    Session s;
    Dealer dealer(128);
    Rng r(128);
    const Shared a = share_genome(sa[0], r), b = share_genome(sb[0], r);
    const Shared d = run_protocol(s, dealer, [&] { return edit_distance(s, a, b); });
    rounds = s.rounds();
    const CostReport c = cost_report(s, CostModel{});
    o.note("L=128 rounds=" + std::to_string(rounds) + " CL=" + str(c.cl_ms / 1000.0, 3) + " s");
    if (reconst(d)[0] != testing_support::levenshtein(sa[0], sb[0])) o.fail("L=128 distance wrong");
    if (rounds != edit_distance_rounds(128)) o.fail("L=128 rounds");
    if (std::abs(c.cl_ms - 40900.0) > 50.0) o.fail("L=128 CL outside 40.9 s +/- 0.05 s");
  }
  return o;
}

// ---- 7: statistical smoke test --------------------------------------------------------------

/// Histogram per (exchange index, party) of everything a party sends.
struct StreamStats {
  std::map<std::pair<std::size_t, unsigned>, std::vector<std::uint64_t>> hist;

  void attach(Session& s) {
    auto call = std::make_shared<std::size_t>(0);
    s.set_observer([this, call](RingSpec ring, const Session::Payloads& p) {
      const std::size_t idx = (*call)++;
      for (unsigned q = 0; q < 2; ++q) {
        auto& h = hist[{idx, q}];
        if (h.empty()) h.assign(std::size_t{1} << ring.width(), 0);
        for (Word v : p[q]) ++h[v];
      }
    });
  }
};

using Protocol = std::function<void(Session&, const std::vector<Shared>&)>;

StreamStats collect(const Protocol& f, const std::vector<std::pair<RingSpec, Word>>& secret,
                    std::uint64_t seed) {
  // 10 sessions x 1e4 instances of the same secret: 1e5 samples per slot.
  StreamStats st;
  Rng rng(seed);
  for (std::size_t rep = 0; rep < 10; ++rep) {
    std::vector<Shared> in;
    for (const auto& [ring, v] : secret) in.push_back(share_vec(std::vector<Word>(10000, v), ring, rng));
    Session s;
    Dealer d(seed * 100 + rep);
    st.attach(s);
    run_protocol(s, d, [&] { f(s, in); return 0; });
  }
  return st;
}

Outcome criterion_statistics() {
  Outcome o;
  const RingSpec r8(8);
  struct Case {
    const char* name;
    Protocol f;
    std::vector<std::pair<RingSpec, Word>> s1, s2;
  };
  const std::vector<Case> cases{
      {"3-mult", [](Session& s, const std::vector<Shared>& x) { mult(s, {x[0], x[1], x[2]}); },
       {{r8, 0}, {r8, 0}, {r8, 0}}, {{r8, 255}, {r8, 3}, {r8, 77}}},
      {"b2a", [r8](Session& s, const std::vector<Shared>& x) { b2a(s, x[0], r8); },
       {{kBool, 0}}, {{kBool, 1}}},
      {"bx2a", [](Session& s, const std::vector<Shared>& x) { bx2a(s, x[0], x[1]); },
       {{kBool, 0}, {r8, 0}}, {{kBool, 1}, {r8, 200}}},
      {"equality", [](Session& s, const std::vector<Shared>& x) { equality(s, x[0], x[1]); },
       {{r8, 9}, {r8, 9}}, {{r8, 0}, {r8, 255}}},
      {"comparison", [](Session& s, const std::vector<Shared>& x) { comparison(s, x[0], x[1]); },
       {{r8, 3}, {r8, 7}}, {{r8, 200}, {r8, 1}}},
  };
  double min_uniform = 1, min_homog = 1;
  std::size_t tests = 0, streams = 0;
  std::uint64_t min_samples = ~std::uint64_t{0};
  for (std::size_t k = 0; k < cases.size(); ++k) {
    const auto& c = cases[k];
    const StreamStats a = collect(c.f, c.s1, 700 + k), b = collect(c.f, c.s2, 800 + k);
    if (a.hist.size() != b.hist.size()) {
      o.fail(std::string(c.name) + ": stream layout depends on the secret");
      continue;
    }
    for (const auto& [key, ha] : a.hist) {
      const auto& hb = b.hist.at(key);
      std::uint64_t n = 0;
      for (auto v : ha) n += v;
      min_samples = std::min(min_samples, n);
      const double pa = testing_support::uniform_p_value(ha);
      const double pb = testing_support::uniform_p_value(hb);
      const double ph = testing_support::homogeneity_p_value(ha, hb);
      min_uniform = std::min({min_uniform, pa, pb});
      min_homog = std::min(min_homog, ph);
      tests += 3;
      ++streams;
      if (pa <= 0.001 || pb <= 0.001 || ph <= 0.001)
        o.fail(std::string(c.name) + " exchange " + std::to_string(key.first) + " party " +
               std::to_string(key.second) + ": p=" + str(pa, 5) + "/" + str(pb, 5) + "/" + str(ph, 5));
    }
  }
  o.note(std::to_string(streams) + " streams, " + std::to_string(tests) + " tests, >= " +
         std::to_string(min_samples) + " samples each; min uniformity p=" + str(min_uniform, 4) +
         ", min homogeneity p=" + str(min_homog, 4));
  if (min_samples < 100000) o.fail("fewer than 1e5 samples in some stream");
  return o;
}

// ---- 8: determinism -----------------------------------------------------------------------

Outcome criterion_determinism() {
  Outcome o;
  auto transcript = [](std::uint64_t seed) {
    Rng rng(seed);
    const RingSpec ring(32);
    std::array<Shared, 3> xs;
    for (auto& x : xs) x = share_vec(testing_support::random_values(rng, 50, 0x7fffffff), ring, rng);
    Harness h(seed);
    h.run([&] {
      return h.session.parallel([&] { return max3(h.session, xs); },
                                [&] { return argmax3(h.session, xs); });
    });
    return h.session.transcript().dump();
  };
  const auto t1 = transcript(8), t2 = transcript(8), t3 = transcript(9);
  if (t1 != t2) o.fail("transcripts differ for equal seeds");
  if (t1 == t3) o.fail("transcripts equal for different seeds");
  o.note("transcript " + std::to_string(t1.size()) + " bytes identical across runs");

  auto csv = [] {
    std::ostringstream os;
    for (const char* name : {"equality", "comparison", "max3", "argmax3", "tlu"}) {
      BenchSpec spec;
      spec.name = name;
      spec.batches = {1, 100};
      write_rows(os, run_bench(spec), "csv");
    }
    BenchSpec ed;
    ed.target = "editdist";
    ed.batches = {3};
    write_rows(os, run_bench(ed), "csv");
    return os.str();
  };
  const std::string c1 = csv(), c2 = csv();
  if (c1 != c2) o.fail("benchmark CSV differs between runs");
  o.note("benchmark CSV " + std::to_string(c1.size()) + " bytes identical across runs");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"round counts over Z_2^32", criterion_rounds},
      {"per-party bits over Z_2^32", criterion_bits},
      {"N-AND gate budget and DTT", criterion_gates},
      {"correctness oracles", criterion_oracles},
      {"B2A family", criterion_b2a},
      {"edit distance", criterion_editdist},
      {"statistical smoke test", criterion_statistics},
      {"determinism", criterion_determinism},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

  bool all = true;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int id = static_cast<int>(k + 1);
    if (!only.empty() && !only.count(id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    all &= o.pass;
    std::printf("%s [%d] %s (%.1f s): %s\n", o.pass ? "PASS" : "FAIL", id, criteria[k].first.c_str(),
                detail::elapsed_ms(t0) / 1000.0, o.detail.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
