// Cooperation vs isolation on a small clique, then the ttl variant on a barbell.
#include <cstdio>

#include "coopbandits/coopbandits.hpp"

using namespace coopbandits;

int main() {
  ExperimentSpec spec;
  spec.graph = "clique:6";
  spec.num_actions = 6;
  spec.horizon = 5000;
  spec.seed_count = 5;
  spec.adversary = "shift:4:0.35:0.65";

  for (int d : {0, 1}) {
    spec.delay = d;
    const auto o = run_experiment_spec(spec);
    std::printf("coop d=%d  gamma=%.6g  regret %.1f +- %.1f  bound %.1f  messages/run %lld\n", d, o.config.gamma,
                o.summary.mean, o.summary.standard_error, o.summary.bound.value_or(0.0),
                o.summary.messages_sent / spec.seed_count);
  }

  ExperimentSpec ttl = spec;
  ttl.graph = "barbell:5:4";
  ttl.algorithm = Algorithm::coop2;
  ttl.delays = {2, 2, 2, 2, 2, 3, 3, 4, 4};
  ttl.ttls = {1, 1, 1, 1, 2, 3, 3, 4, 4};
  ttl.gamma = "doubling";
  const auto o = run_experiment_spec(ttl);
  std::printf("coop2 barbell doubling  regret %.1f +- %.1f  restarts %lld  alpha(G_P) %d\n", o.summary.mean,
              o.summary.standard_error, o.summary.restarts, o.summary.alpha.value_or(-1));
}
