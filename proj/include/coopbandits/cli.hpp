#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "coopbandits/bounds.hpp"
#include "coopbandits/graph.hpp"
#include "coopbandits/graph_io.hpp"
#include "coopbandits/harness.hpp"
#include "coopbandits/independence.hpp"
#include "coopbandits/verify.hpp"

namespace coopbandits {

using Json = nlohmann::ordered_json;

namespace cli {

template <typename T>
Json optional_json(const std::optional<T>& x) {
  return x ? Json(*x) : Json(nullptr);
}

inline Json config_json(const ExperimentSpec& spec) {
  Json c;
  c["graph"] = spec.graph;
  c["algo"] = to_string(spec.algorithm);
  c["K"] = spec.num_actions;
  c["T"] = spec.horizon;
  if (spec.algorithm == Algorithm::coop2) {
    c["delays"] = spec.delays;
    c["ttls"] = spec.ttls;
    c["delta"] = optional_json(spec.delta);
  } else {
    c["d"] = spec.delay;
  }
  c["gamma"] = spec.gamma;
  c["eta"] = optional_json(spec.eta);
  c["adversary"] = spec.adversary;
  c["adversary_seed"] = spec.adversary_seed;
  c["seed_count"] = spec.seed_count;
  c["seed_base"] = spec.seed_base;
  c["delivery"] = spec.delivery == DeliveryMode::logical ? "logical" : "flooding";
  c["check_drift"] = spec.check_drift;
  c["alpha_cap"] = spec.exact_alpha_cap;
  return c;
}

inline Json report_json(const ExperimentSpec& spec, const ExperimentOutcome& out) {
  const RegretReport& r = out.summary;
  Json j;
  j["schema"] = 1;
  j["config"] = config_json(spec);
  j["seeds"] = r.seeds;
  Json rate;
  rate["mode"] = spec.gamma_mode();
  if (out.config.rate_mode == RateMode::fixed) rate["gamma"] = out.config.gamma;
  if (out.gamma_choice) rate["gamma_exponent"] = out.gamma_choice->exponent;
  if (out.config.eta) rate["eta"] = *out.config.eta;
  if (out.config.algorithm == Algorithm::coop2) rate["delta"] = out.config.delta;
  j["rate"] = rate;
  Json res;
  res["mean_regret"] = r.mean;
  res["standard_error"] = r.standard_error;
  std::vector<double> per_seed;
  for (const auto& run : out.runs) per_seed.push_back(run.avg_welfare_regret);
  res["per_seed_regret"] = per_seed;
  res["per_agent_regret"] = r.per_agent_regret;
  res["bound"] = optional_json(r.bound);
  if (r.bound) res["bound_respected"] = r.mean <= *r.bound + 3.0 * r.standard_error;
  if (out.reduction_shape) res["reduction_shape"] = *out.reduction_shape;
  res["restarts"] = r.restarts;
  Json msg;
  msg["sent"] = r.messages_sent;
  msg["forwarded"] = r.messages_forwarded;
  msg["dropped"] = r.messages_dropped;
  msg["delivered"] = r.messages_delivered;
  res["messages"] = msg;
  if (spec.check_drift) {
    Json drift;
    drift["steps"] = r.drift.steps;
    drift["additive_violations"] = r.drift.additive_violations;
    drift["multiplicative_violations"] = r.drift.multiplicative_violations;
    res["drift"] = drift;
  }
  if (!r.instance_updates.empty()) {
    std::vector<long long> per_instance(r.instance_updates.size(), 0);
    for (const auto& run : out.runs)
      for (std::size_t i = 0; i < run.instance_updates.size(); ++i) per_instance[i] += run.instance_updates[i];
    res["instance_updates"] = per_instance;
  }
  j["results"] = res;
  Json g;
  g["n"] = out.graph.n;
  g["edges"] = out.graph.edges;
  g["connected"] = out.graph.connected;
  g["diameter"] = optional_json(out.graph.diameter);
  g["alpha_graph"] = optional_json(out.graph.alpha);
  g["alpha"] = optional_json(r.alpha);
  g["mean_delay"] = r.mean_delay;
  j["graph"] = g;
  return j;
}

inline std::vector<int> parse_int_list(const std::string& text, const std::string& what) {
  std::vector<int> out;
  for (const auto& part : detail::split(text, ',')) out.push_back(static_cast<int>(detail::parse_int(part, what)));
  return out;
}

inline DeliveryMode parse_delivery(const std::string& s) {
  if (s == "logical") return DeliveryMode::logical;
  if (s == "flooding") return DeliveryMode::flooding;
  throw std::invalid_argument("--delivery must be logical or flooding");
}

/// Options shared by simulate and sweep.
struct CommonOptions {
  int k = 10;
  int horizon = 1000;
  std::string adversary = "shift:4:0.35:0.65";
  std::uint64_t adversary_seed = 0;
  int seeds = 1;
  std::uint64_t seed_base = 1;
  int alpha_cap = kDefaultExactAlphaCap;

  void attach(CLI::App* app) {
    app->add_option("--K", k, "number of actions")->check(CLI::Range(2, 1 << 20));
    app->add_option("--T", horizon, "horizon")->check(CLI::PositiveNumber);
    app->add_option("--adversary", adversary, "const:K:best:lo:hi[:jitter] | shift:phases:lo:hi[:jitter] | file:path");
    app->add_option("--adversary-seed", adversary_seed, "seed of the loss generator");
    app->add_option("--seeds", seeds, "number of seeds")->check(CLI::PositiveNumber);
    app->add_option("--seed-base", seed_base, "first seed; seeds are consecutive");
    app->add_option("--alpha-cap", alpha_cap, "largest n for the exact independence solver");
  }

  void apply(ExperimentSpec& spec) const {
    spec.num_actions = k;
    spec.horizon = horizon;
    spec.adversary = adversary;
    spec.adversary_seed = adversary_seed;
    spec.seed_count = seeds;
    spec.seed_base = seed_base;
    spec.exact_alpha_cap = alpha_cap;
  }
};

inline void write_file(const std::string& path, const std::string& body) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
  f << body;
}

inline std::string csv_number(const std::optional<double>& x) {
  if (!x) return "";
  std::ostringstream s;
  s << std::setprecision(12) << *x;
  return s.str();
}

}  // namespace cli

/// Command-line entry point; `args` excludes the program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cooperative delayed-feedback bandits on graphs: simulation, bounds and checks", "coopbandits"};
  app.require_subcommand(1);

  // simulate
  auto* sim = app.add_subcommand("simulate", "run one configuration over several seeds, print a JSON report");
  cli::CommonOptions sim_common;
  sim_common.attach(sim);
  std::string graph = "clique:10", algo = "coop", gamma = "auto", delivery = "logical";
  std::string delays, ttls, out_path, curve_path, trace_path;
  int d = 1;
  std::optional<double> eta, delta;
  bool check_drift = false;
  sim->add_option("--graph", graph, "graph spec (path:N, cycle:N, clique:N, star:N, grid:RxC, er:N:p:seed, barbell:A:B, edgeless:N, file:path)");
  sim->add_option("--algo", algo, "coop | coop2 | single-delayed | baseline-repeat | baseline-parallel");
  sim->add_option("--d", d, "shared delay")->check(CLI::NonNegativeNumber);
  sim->add_option("--delays", delays, "coop2 per-agent delays, one value or a comma list");
  sim->add_option("--ttls", ttls, "coop2 per-agent time-to-live, one value or a comma list");
  sim->add_option("--gamma", gamma, "auto | doubling | value in (0, 1]");
  sim->add_option("--eta", eta, "explicit common learning rate");
  sim->add_option("--delta", delta, "coop2 truncation parameter (default 1/T)");
  sim->add_option("--delivery", delivery, "logical | flooding");
  sim->add_flag("--check-drift", check_drift, "count drift inequality violations along the run");
  sim->add_option("--out", out_path, "write the JSON report here instead of stdout");
  sim->add_option("--curve", curve_path, "write the seed-averaged regret curve CSV here");
  sim->add_option("--trace", trace_path, "write a JSONL delivery trace of the first seed here");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "cartesian grid over graphs, algorithms, delays and gammas; CSV table");
  cli::CommonOptions sweep_common;
  sweep_common.attach(sweep);
  std::string graphs = "clique:10", algos = "coop", ds = "0,1", gammas = "auto", sweep_out;
  sweep->add_option("--graphs", graphs, "comma list of graph specs");
  sweep->add_option("--algos", algos, "comma list of algorithms");
  sweep->add_option("--ds", ds, "comma list of delays (coop2 uses d for every delay and ttl)");
  sweep->add_option("--gammas", gammas, "comma list of auto | doubling | value");
  sweep->add_option("--out", sweep_out, "write the CSV here instead of stdout");

  // graph-stats
  auto* stats = app.add_subcommand("graph-stats", "independence numbers, diameter and graph-power sizes");
  std::string stats_graph = "path:6";
  std::optional<int> stats_d;
  int stats_cap = kDefaultExactAlphaCap;
  stats->add_option("--graph", stats_graph, "graph spec");
  stats->add_option("--d", stats_d, "delay of interest")->check(CLI::NonNegativeNumber);
  stats->add_option("--alpha-cap", stats_cap, "largest n for the exact independence solver");

  // bound
  auto* bound = app.add_subcommand("bound", "evaluate the explicit regret bounds");
  std::string theorem = "1", bound_gamma = "auto";
  int bd = 0, bk = 2, bn = 1;
  double balpha = 1.0, bt = 1000.0, bdbar = 0.0;
  std::optional<double> beta;
  bound->add_option("--theorem", theorem, "1 (fixed gamma), 3 (truncated variant) or single (one agent)");
  bound->add_option("--d", bd, "delay");
  bound->add_option("--K", bk, "number of actions");
  bound->add_option("--gamma", bound_gamma, "value in (0, 1] or auto");
  bound->add_option("--N", bn, "number of agents");
  bound->add_option("--alpha", balpha, "independence number");
  bound->add_option("--T", bt, "horizon");
  bound->add_option("--dbar", bdbar, "mean delay (theorem 3)");
  bound->add_option("--eta", beta, "learning rate (theorem 3)");

  // verify
  auto* ver = app.add_subcommand("verify", "run a property suite");
  std::string suite = "all";
  std::optional<long long> trials;
  std::uint64_t verify_seed = 1;
  ver->add_option("--suite", suite, "lemmas | unbiasedness | qsum | equivalence | all");
  ver->add_option("--trials", trials, "steps, histories, graphs per kind or seeds, by suite");
  ver->add_option("--seed", verify_seed, "suite seed");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*sim) {
      ExperimentSpec spec;
      sim_common.apply(spec);
      spec.graph = graph;
      spec.algorithm = parse_algorithm(algo);
      spec.delay = d;
      if (!delays.empty()) spec.delays = cli::parse_int_list(delays, "--delays");
      if (!ttls.empty()) spec.ttls = cli::parse_int_list(ttls, "--ttls");
      spec.gamma = gamma;
      spec.eta = eta;
      spec.delta = delta;
      spec.delivery = cli::parse_delivery(delivery);
      spec.check_drift = check_drift;
      spec.want_curve = !curve_path.empty();

      std::ofstream trace;
      SimHooks hooks;
      if (!trace_path.empty()) {
        trace.open(trace_path);
        if (!trace) throw std::runtime_error("cannot write '" + trace_path + "'");
        hooks.on_delivery = [&trace](const DeliveryRecord& r) {
          Json line;
          line["t"] = r.t;
          line["origin"] = r.origin;
          line["hop"] = r.hop;
          line["recipient"] = r.recipient;
          line["action"] = r.action;
          line["loss"] = r.loss;
          trace << line.dump() << '\n';
        };
      }
      const auto outcome = run_experiment_spec(spec, hooks);
      const std::string body = cli::report_json(spec, outcome).dump(2) + "\n";
      if (out_path.empty())
        out << body;
      else
        cli::write_file(out_path, body);
      if (!curve_path.empty()) {
        std::ostringstream csv;
        csv << std::setprecision(12) << "round,avg_cum_regret\n";
        for (const auto& p : outcome.curve) csv << p.round << ',' << p.avg_cum_regret << '\n';
        cli::write_file(curve_path, csv.str());
      }
      return 0;
    }

    if (*sweep) {
      std::ostringstream csv;
      csv << std::setprecision(12) << "graph,algo,d,K,T,gamma_mode,seed_count,mean_regret,se,bound,alpha,messages\n";
      for (const auto& g : detail::split(graphs, ','))
        for (const auto& a : detail::split(algos, ','))
          for (int dv : cli::parse_int_list(ds, "--ds"))
            for (const auto& gm : detail::split(gammas, ',')) {
              ExperimentSpec spec;
              sweep_common.apply(spec);
              spec.graph = g;
              spec.algorithm = parse_algorithm(a);
              spec.gamma = gm;
              if (spec.algorithm == Algorithm::coop2) {
                spec.delays = {dv};
                spec.ttls = {dv};
              } else {
                spec.delay = dv;
              }
              const auto o = run_experiment_spec(spec);
              const auto& r = o.summary;
              const double messages = static_cast<double>(r.messages_sent) / spec.seed_count;
              csv << g << ',' << a << ',' << dv << ',' << spec.num_actions << ',' << spec.horizon << ','
                  << spec.gamma_mode() << ',' << spec.seed_count << ',' << r.mean << ',' << r.standard_error << ','
                  << cli::csv_number(r.bound) << ',' << (r.alpha ? std::to_string(*r.alpha) : "") << ','
                  << messages << '\n';
            }
      if (sweep_out.empty())
        out << csv.str();
      else
        cli::write_file(sweep_out, csv.str());
      return 0;
    }

    if (*stats) {
      const Graph g = make_graph(stats_graph);
      const auto dist = bfs_distances(g);
      const auto summary = summarize_graph(g, stats_cap);
      Json j;
      j["graph"] = stats_graph;
      j["n"] = summary.n;
      j["edges"] = summary.edges;
      j["connected"] = summary.connected;
      j["diameter"] = cli::optional_json(summary.diameter);
      j["alpha"] = cli::optional_json(summary.alpha);
      j["greedy_alpha"] = summary.greedy_alpha;
      int top = summary.diameter.value_or(0);
      if (stats_d) top = std::max(top, *stats_d);
      Json powers = Json::array();
      for (int p = 0; p <= top; ++p) {
        const Graph gp = power_graph(g, dist, p);
        Json row;
        row["d"] = p;
        row["edges"] = gp.num_edges();
        row["alpha"] = g.num_vertices() <= stats_cap ? Json(independence_number(gp, AlphaMode::exact, stats_cap))
                                                     : Json(nullptr);
        row["greedy_alpha"] = greedy_independent_set_size(gp);
        row["alpha_bound"] = alpha_upper_bound_connected(g.num_vertices(), p);
        powers.push_back(row);
      }
      j["powers"] = powers;
      if (stats_d) {
        j["d"] = *stats_d;
        j["alpha_power"] = powers[*stats_d]["alpha"];
        j["alpha_bound"] = alpha_upper_bound_connected(g.num_vertices(), *stats_d);
      }
      out << j.dump(2) << "\n";
      return 0;
    }

    if (*bound) {
      Json j;
      j["theorem"] = theorem;
      if (theorem == "1" || theorem == "single") {
        const bool single = theorem == "single";
        const int n = single ? 1 : bn;
        const double alpha = single ? 1.0 : balpha;
        double g = 0.0;
        if (bound_gamma == "auto") {
          const auto choice = auto_gamma(bd, bk, n, alpha, bt);
          g = choice.gamma;
          j["gamma_exponent"] = choice.exponent;
        } else {
          g = detail::parse_double(bound_gamma, "--gamma");
        }
        j["gamma"] = g;
        if (single) {
          const auto b = evaluate_bound_single_delayed(bd, bk, bt, g);
          j["value"] = b.bound;
          j["reduction_shape"] = b.reduction;
        } else {
          j["value"] = evaluate_bound_thm1(bd, bk, g, bn, balpha, bt);
        }
      } else if (theorem == "3") {
        if (!beta) throw std::invalid_argument("theorem 3 needs --eta");
        j["eta"] = *beta;
        j["value"] = evaluate_bound_thm3(bdbar, bk, *beta, bn, balpha, bt);
      } else {
        throw std::invalid_argument("--theorem must be 1, 3 or single");
      }
      out << j.dump(2) << "\n";
      return 0;
    }

    if (*ver) {
      const std::vector<std::string> names = suite == "all" ? suite_names() : std::vector<std::string>{suite};
      bool ok = true;
      for (const auto& name : names) {
        const auto r = run_verify_suite(name, trials.value_or(default_trials(name)), verify_seed);
        out << std::left << std::setw(13) << name << " checks=" << r.checks << " violations=" << r.violations
            << " max_error=" << r.max_error << (r.passed() ? "  PASS" : "  FAIL") << "\n";
        if (r.counterexample) out << "  first counterexample: " << *r.counterexample << "\n";
        ok = ok && r.passed();
      }
      return ok ? 0 : 1;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

inline int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args, out, err);
}

}  // namespace coopbandits
