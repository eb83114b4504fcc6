// episource command-line tool: generate, simulate, estimate, oracle, bench, replay.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "episource/bench.hpp"
#include "episource/centrality.hpp"
#include "episource/edge_list.hpp"
#include "episource/errors.hpp"
#include "episource/estimators.hpp"
#include "episource/generators.hpp"
#include "episource/likelihood.hpp"
#include "episource/random.hpp"
#include "episource/spread.hpp"

using namespace episource;
using nlohmann::json;

namespace {

enum Exit { ok = 0, failure = 1, usage = 2, topology = 3, cap = 4 };

struct Common {
  std::string format = "json";
  std::optional<std::uint64_t> seed;
  std::size_t threads = 0;
};

class usage_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t resolve_seed(const Common& c) {
  if (c.seed) return *c.seed;
  std::uint64_t s = (std::uint64_t(std::random_device{}()) << 32) ^ std::random_device{}();
  std::cerr << "seed: " << s << "\n";
  return s;
}

vertex_t find_vertex(const Graph& g, const std::string& label) {
  auto v = g.find_label(label);
  if (!v) throw usage_error("no vertex labeled '" + label + "'");
  return *v;
}

std::vector<vertex_t> find_vertices(const Graph& g, const std::vector<std::string>& labels) {
  std::vector<vertex_t> out;
  for (const auto& l : labels) out.push_back(find_vertex(g, l));
  return out;
}

std::vector<std::string> expand_estimators(const std::vector<std::string>& ids) {
  std::vector<std::string> out;
  for (const auto& id : ids) {
    if (id == "all") {
      for (const auto& k : known_estimators())
        if (std::find(out.begin(), out.end(), k) == out.end()) out.push_back(k);
    } else if (std::find(out.begin(), out.end(), id) == out.end()) {
      out.push_back(id);
    }
  }
  return out;
}

void write_graph(const Graph& g, const std::string& path) {
  if (path.empty() || path == "-") {
    write_edge_list(std::cout, g);
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_edge_list(out, g);
}

// ---- subcommands ------------------------------------------------------------

struct GenerateArgs {
  std::string spec, out;
};

int cmd_generate(const GenerateArgs& a, const Common& c) {
  GeneratorSpec spec;
  try {
    spec = parse_generator_spec(a.spec);
  } catch (const std::invalid_argument& e) {
    throw usage_error(e.what());
  }
  write_graph(generate(spec, resolve_seed(c)), a.out);
  return ok;
}

struct SimulateArgs {
  std::string graph, generator, source, gn_out;
  std::size_t n = 0;
  std::uint32_t cap_k = 0;
  std::optional<std::size_t> regular;
};

int cmd_simulate(const SimulateArgs& a, const Common& c) {
  const std::uint64_t seed = resolve_seed(c);
  Graph g;
  if (!a.graph.empty()) g = read_edge_list_file(a.graph);
  else if (!a.generator.empty()) g = generate(parse_generator_spec(a.generator), derive_seed(seed, 0));
  else throw usage_error("simulate needs --graph or --generator");
  if (g.vertex_count() == 0) throw usage_error("empty graph");

  SplitMix64 rng(derive_seed(seed, 1));
  vertex_t source = a.source.empty() ? vertex_t(std::uniform_int_distribution<std::size_t>(0, g.vertex_count() - 1)(rng))
                                     : find_vertex(g, a.source);
  SimulationOptions opts;
  opts.n = a.n;
  opts.cap_k = a.cap_k;
  opts.regular_degree = a.regular;
  opts.record_frontier = false;
  InfectionSnapshot snap;
  try {
    snap = simulate(g, source, opts, rng());
  } catch (const std::domain_error& e) {
    throw usage_error(e.what());
  }
  if (!a.gn_out.empty()) write_graph(snap.infected_subgraph(), a.gn_out);

  if (c.format == "csv") {
    std::cout << "position,vertex\n";
    for (std::size_t i = 0; i < snap.order.size(); ++i) std::cout << i + 1 << ',' << g.label(snap.order[i]) << '\n';
  } else {
    json params{{"n", a.n}, {"cap_k", a.cap_k}};
    if (!a.generator.empty()) params["generator"] = a.generator;
    std::cout << snapshot_to_json(snap, params).dump() << '\n';
  }
  return ok;
}

struct EstimateArgs {
  std::string graph;
  std::vector<std::string> estimators{"sct"};
  std::vector<std::string> irregular;
  bool per_component = false;
  bool no_pairing = false;
};

EstimateOptions estimate_options(const Graph& g, const std::vector<std::string>& est,
                                 const std::vector<std::string>& irregular, bool per_component, bool no_pairing) {
  EstimateOptions eo;
  eo.estimators = expand_estimators(est);
  for (const auto& id : eo.estimators)
    if (std::find(known_estimators().begin(), known_estimators().end(), id) == known_estimators().end())
      throw usage_error("unknown estimator '" + id + "'");
  if (!irregular.empty()) eo.irregular = find_vertices(g, irregular);
  eo.per_component = per_component;
  eo.pair_with_algo1 = !no_pairing;
  return eo;
}

void report_components(const Graph& g) {
  auto comps = connected_components(g);
  std::cerr << "graph has " << comps.size() << " connected components:\n";
  for (const auto& comp : comps) {
    std::cerr << "  size " << comp.size() << ":";
    for (std::size_t i = 0; i < std::min<std::size_t>(comp.size(), 8); ++i) std::cerr << ' ' << g.label(comp[i]);
    if (comp.size() > 8) std::cerr << " ...";
    std::cerr << '\n';
  }
  std::cerr << "rerun with --per-component to estimate each component\n";
}

int cmd_estimate(const EstimateArgs& a, const Common& c) {
  Graph g = read_edge_list_file(a.graph);
  if (g.vertex_count() == 0) throw usage_error("empty graph");
  if (!g.is_connected() && !a.per_component) {
    report_components(g);
    return topology;
  }
  auto eo = estimate_options(g, a.estimators, a.irregular, a.per_component, a.no_pairing);
  auto outcomes = run_estimators(g, eo);
  if (c.format == "csv") std::cout << "estimator,vertex,score,is_candidate\n";
  for (const auto& o : outcomes) {
    if (o.skipped) {
      std::cerr << o.estimator << ": skipped (" << o.skip_reason << ")\n";
      if (c.format == "json") std::cout << json{{"estimator", o.estimator}, {"skipped", o.skip_reason}}.dump() << '\n';
      continue;
    }
    for (const auto& w : o.result.warnings) std::cerr << o.estimator << ": " << w << '\n';
    if (c.format == "csv") {
      std::vector<char> cand(g.vertex_count(), 0);
      for (vertex_t v : o.result.candidates) cand[v] = 1;
      for (vertex_t v = 0; v < g.vertex_count(); ++v)
        std::cout << o.estimator << ',' << g.label(v) << ','
                  << (o.result.scores.empty() ? std::string() : to_display(o.result.scores[v])) << ','
                  << int(cand[v]) << '\n';
    } else {
      std::cout << o.result.to_json(g).dump() << '\n';
    }
  }
  return ok;
}

struct OracleArgs {
  std::string graph;
  std::vector<std::string> infected;
  std::optional<std::size_t> regular;
  std::vector<std::string> overrides;
  std::size_t max_n = 10;
};

int cmd_oracle(const OracleArgs& a, const Common& c) {
  Graph file = read_edge_list_file(a.graph);
  Graph gn;
  std::vector<std::size_t> degrees;
  if (!a.infected.empty()) {
    auto ids = find_vertices(file, a.infected);
    gn = file.induced_subgraph(ids);
    for (vertex_t v : ids) degrees.push_back(file.degree(v));
  } else {
    gn = file;
    for (vertex_t v = 0; v < gn.vertex_count(); ++v) degrees.push_back(a.regular ? *a.regular : gn.degree(v));
  }
  for (const auto& o : a.overrides) {
    auto eq = o.find('=');
    if (eq == std::string::npos) throw usage_error("--degree-override expects label=degree, got '" + o + "'");
    std::size_t used = 0;
    std::size_t d = 0;
    try {
      d = std::stoul(o.substr(eq + 1), &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || eq + 1 + used != o.size()) throw usage_error("bad degree in '" + o + "'");
    degrees[find_vertex(gn, o.substr(0, eq))] = d;
  }
  if (a.max_n > 20) throw usage_error("--max-n is at most 20");
  if (gn.vertex_count() == 0) throw usage_error("empty infected set");

  OracleOptions opts;
  opts.cap = a.max_n;
  auto prof = oracle_profile(gn, degrees, opts);
  std::vector<std::size_t> rows(prof.likelihood.size());
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  std::stable_sort(rows.begin(), rows.end(), [&](auto x, auto y) { return prof.likelihood[x] > prof.likelihood[y]; });

  if (c.format == "csv") {
    std::cout << "vertex,likelihood,numerator,denominator\n";
    for (auto r : rows)
      std::cout << prof.vertices[r] << ',' << to_decimal(prof.likelihood[r]) << ',' << prof.likelihood[r].get_num() << ','
                << prof.likelihood[r].get_den() << '\n';
  } else {
    json full = prof.to_json();
    json sorted = json::array();
    for (auto r : rows) sorted.push_back(full["vertices"][r]);
    full["vertices"] = std::move(sorted);
    std::cout << full.dump() << '\n';
  }
  return ok;
}

struct BenchArgs {
  std::string config, generator, out;
  std::optional<std::size_t> n, trials;
  std::vector<std::string> estimators;
  std::optional<std::uint32_t> cap_k;
  std::string irregular;
  bool timing = false;
  bool regenerate = false;
};

int cmd_bench(const BenchArgs& a, const Common& c) {
  ExperimentConfig cfg;
  if (!a.config.empty()) {
    std::ifstream in(a.config);
    if (!in) throw usage_error("cannot read " + a.config);
    cfg = parse_experiment_config(in);
  }
  if (!a.generator.empty()) cfg.generator = a.generator;
  if (a.n) cfg.n_infected = *a.n;
  if (a.trials) cfg.trials = *a.trials;
  if (!a.estimators.empty()) cfg.estimators = expand_estimators(a.estimators);
  if (a.cap_k) cfg.cap_k = *a.cap_k;
  if (!a.irregular.empty()) apply_config_line(cfg, "irregular", a.irregular);
  if (!a.out.empty()) cfg.output = a.out;
  if (a.timing) cfg.timing = true;
  if (a.regenerate) cfg.regenerate_graph = true;
  if (c.threads) cfg.threads = c.threads;
  if (c.seed) cfg.seed = *c.seed;
  else if (a.config.empty()) cfg.seed = resolve_seed(c);
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw usage_error(e.what());
  }

  auto res = run_experiment(cfg);
  if (c.format == "csv") {
    write_trials_csv(std::cout, res.trials);
  } else {
    json j{{"config", cfg.to_json()}, {"summary", res.summary.to_json()}};
    std::cout << j.dump(2) << '\n';
  }
  return ok;
}

struct ReplayArgs {
  std::string graph, source;
  std::vector<std::string> estimators{"all"};
  std::vector<std::string> irregular;
  bool no_pairing = false;
};

int cmd_replay(const ReplayArgs& a, const Common&) {
  Graph g = read_edge_list_file(a.graph);
  auto eo = estimate_options(g, a.estimators, a.irregular, true, a.no_pairing);
  auto rep = replay(g, find_vertex(g, a.source), eo);
  for (const auto& o : rep.outcomes)
    if (o.skipped) std::cerr << o.estimator << ": skipped (" << o.skip_reason << ")\n";
  std::cout << rep.to_json(g).dump(2) << '\n';
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Epidemic source detection under the SI model"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", common.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--seed", common.seed, "Random seed (logged to stderr when omitted)");
    sub->add_option("--threads", common.threads, "Worker threads (0: all cores)");
  };

  GenerateArgs gen_a;
  auto* gen = app.add_subcommand("generate", "Write an edge list for a generator spec");
  gen->add_option("spec", gen_a.spec, "e.g. grid:100x100, circulant:6000:d=6, rbt:dmax=5:n=1000")->required();
  gen->add_option("-o,--out", gen_a.out, "Output file (default stdout)");
  add_common(gen);

  SimulateArgs sim_a;
  auto* sim = app.add_subcommand("simulate", "Run the SI process and print the infection snapshot");
  auto* sim_graph = sim->add_option("--graph", sim_a.graph, "Underlying graph edge list");
  sim->add_option("--generator", sim_a.generator, "Generator spec instead of a file")->excludes(sim_graph);
  sim->add_option("--source", sim_a.source, "Source label (default: uniform)");
  sim->add_option("-n,--n", sim_a.n, "Number of infected vertices")->required();
  sim->add_option("--cap-k", sim_a.cap_k, "Stop after ceil(n/k) irregular infections");
  sim->add_option("--regular", sim_a.regular, "Regular degree for the cap (default: modal degree)");
  sim->add_option("--gn-out", sim_a.gn_out, "Also write G_n as an edge list");
  add_common(sim);

  EstimateArgs est_a;
  auto* est = app.add_subcommand("estimate", "Source estimates for an observed infection graph");
  est->add_option("graph", est_a.graph, "G_n edge list")->required();
  est->add_option("--est", est_a.estimators, "algo1, sct, rc, bfs-rc, jordan, distance or all")->delimiter(',');
  est->add_option("--irregular", est_a.irregular, "Irregular vertex labels for algo1 (default: leaves)")->delimiter(',');
  est->add_flag("--per-component", est_a.per_component, "Estimate each connected component");
  est->add_flag("--no-pairing", est_a.no_pairing, "Baselines return their best tie group, not top-|kappa|");
  add_common(est);

  OracleArgs ora_a;
  auto* ora = app.add_subcommand("oracle", "Exact likelihood of every vertex by enumerating spreading orders");
  ora->add_option("graph", ora_a.graph, "G_n edge list, or G with --infected")->required();
  ora->add_option("--infected", ora_a.infected, "Infected labels; the file is then the underlying graph")->delimiter(',');
  ora->add_option("--regular", ora_a.regular, "Underlying degree of every G_n vertex");
  ora->add_option("--degree-override", ora_a.overrides, "label=degree, repeatable");
  ora->add_option("--max-n", ora_a.max_n, "Largest G_n to enumerate (<= 20)");
  add_common(ora);

  BenchArgs bench_a;
  auto* bench = app.add_subcommand("bench", "Monte-Carlo comparison of estimators");
  bench->add_option("--config", bench_a.config, "key=value experiment file");
  bench->add_option("--generator", bench_a.generator, "Generator spec");
  bench->add_option("-n,--n", bench_a.n, "Infected vertices per trial");
  bench->add_option("--trials", bench_a.trials, "Number of trials");
  bench->add_option("--est", bench_a.estimators, "Estimators")->delimiter(',');
  bench->add_option("--cap-k", bench_a.cap_k, "Irregular-vertex cap");
  bench->add_option("--irregular", bench_a.irregular, "g-leaves or gn-leaves");
  bench->add_option("--out", bench_a.out, "Per-trial CSV file");
  bench->add_flag("--timing", bench_a.timing, "Record per-estimator wall time");
  bench->add_flag("--regenerate", bench_a.regenerate, "Fresh underlying graph per trial");
  add_common(bench);

  ReplayArgs rep_a;
  auto* rep = app.add_subcommand("replay", "Run estimators on an observed graph with a known first case");
  rep->add_option("graph", rep_a.graph, "Observed graph edge list")->required();
  rep->add_option("--source", rep_a.source, "Label of the true source")->required();
  rep->add_option("--est", rep_a.estimators, "Estimators (default all)")->delimiter(',');
  rep->add_option("--irregular", rep_a.irregular, "Irregular vertex labels for algo1")->delimiter(',');
  rep->add_flag("--no-pairing", rep_a.no_pairing, "Baselines return their best tie group");
  add_common(rep);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? ok : usage;
  }

  try {
    if (*gen) return cmd_generate(gen_a, common);
    if (*sim) return cmd_simulate(sim_a, common);
    if (*est) return cmd_estimate(est_a, common);
    if (*ora) return cmd_oracle(ora_a, common);
    if (*bench) return cmd_bench(bench_a, common);
    if (*rep) return cmd_replay(rep_a, common);
  } catch (const usage_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return usage;
  } catch (const topology_error& e) {
    std::cerr << "topology error: " << e.what() << '\n';
    return topology;
  } catch (const cap_exceeded_error& e) {
    std::cerr << "cap exceeded: " << e.what() << '\n';
    return cap;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return failure;
  }
  return usage;
}
