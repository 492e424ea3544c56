// Secret-share two values, compare them, and print what it cost on a WAN.

#include <cstdio>
#include <vector>

#include "bte/bte.hpp"

int main() {
  const bte::RingSpec ring(32);
  bte::Rng rng(7);
  const std::vector<bte::Word> xs{3, 40, 12}, ys{7, 40, 5};
  const bte::Shared x = bte::share(xs, ring, rng);
  const bte::Shared y = bte::share(ys, ring, rng);

  bte::Session session;
  bte::Dealer dealer(2024);
  const auto less = bte::run_protocol(session, dealer, [&] { return bte::comparison(session, x, y); });
  const auto eq = bte::run_protocol(session, dealer, [&] { return bte::equality(session, x, y); });

  const auto lt = bte::reconst(less);
  const auto e = bte::reconst(eq);
  for (std::size_t i = 0; i < xs.size(); ++i)
    std::printf("x=%llu y=%llu  x<y:%llu  x==y:%llu\n", (unsigned long long)xs[i],
                (unsigned long long)ys[i], (unsigned long long)lt[i], (unsigned long long)e[i]);

  const auto cost = bte::cost_report(session, bte::CostModel{});
  std::printf("rounds %zu, bits per party %llu, DTT %.4f ms, CL %.1f ms\n", cost.rounds,
              (unsigned long long)cost.bits_per_party, cost.dtt_ms, cost.cl_ms);
}
