#include "episource/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <istream>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "episource/centrality.hpp"
#include "episource/errors.hpp"
#include "episource/generators.hpp"
#include "episource/random.hpp"
#include "episource/spread.hpp"

namespace episource {

const std::vector<std::string>& known_estimators() {
  static const std::vector<std::string> ids{"algo1", "sct", "rc", "bfs-rc", "jordan", "distance"};
  return ids;
}

namespace {

bool is_known(const std::string& id) {
  const auto& k = known_estimators();
  return std::find(k.begin(), k.end(), id) != k.end();
}

CentralityScores baseline_scores(const Graph& g, const std::string& id) {
  if (id == "rc") return g.is_tree() ? epidemic_centrality_tree(g) : epidemic_centrality_unicyclic(g);
  if (id == "bfs-rc") return bfs_rumor_centrality(g);
  if (id == "jordan") return jordan_centrality(g);
  return distance_centrality(g);
}

// Why `id` cannot run on g, or empty.
std::string inapplicable(const Graph& g, const std::string& id, bool per_component) {
  if (id == "algo1" && !g.is_tree()) return "needs a tree";
  if (id == "rc" && !g.is_tree() && !g.is_unicyclic()) return "needs a tree or a unicyclic graph";
  if (id == "sct") return (g.is_connected() || per_component) ? "" : "disconnected";
  if (!g.is_connected()) return "disconnected";
  return "";
}

}  // namespace

std::vector<EstimatorOutcome> run_estimators(const Graph& g, const EstimateOptions& opts) {
  for (const auto& id : opts.estimators)
    if (!is_known(id)) throw std::invalid_argument("unknown estimator '" + id + "'");

  std::vector<EstimatorOutcome> out(opts.estimators.size());
  std::optional<std::size_t> kappa;
  auto timed = [&](EstimatorOutcome& o, auto&& fn) {
    auto t0 = std::chrono::steady_clock::now();
    o.result = fn();
    if (opts.timing)
      o.micros = std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - t0).count();
  };

  // algo1 first so the baselines know |kappa|
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto& id = opts.estimators[i];
    out[i].estimator = id;
    if (id != "algo1") continue;
    if (auto why = inapplicable(g, id, opts.per_component); !why.empty()) {
      out[i].skipped = true;
      out[i].skip_reason = why;
      continue;
    }
    auto irregular = opts.irregular ? *opts.irregular : leaf_vertices(g);
    timed(out[i], [&] { return algo1_kappa(g, irregular); });
    kappa = out[i].result.candidates.size();
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto& id = opts.estimators[i];
    if (id == "algo1") continue;
    if (auto why = inapplicable(g, id, opts.per_component); !why.empty()) {
      out[i].skipped = true;
      out[i].skip_reason = why;
      continue;
    }
    if (id == "sct") {
      timed(out[i], [&] { return sct(g, opts.per_component); });
    } else {
      timed(out[i], [&] {
        auto scores = baseline_scores(g, id);
        return (opts.pair_with_algo1 && kappa) ? topk_wrapper(scores, *kappa, id) : argbest_result(scores, id);
      });
    }
  }
  return out;
}

// ---- config ---------------------------------------------------------------

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  unsigned long long x = 0;
  try {
    x = std::stoull(v, &used, 10);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size() || v.empty() || v[0] == '-') throw std::invalid_argument(key + ": expected an unsigned integer, got '" + v + "'");
  return x;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "1" || v == "true" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "no") return false;
  throw std::invalid_argument(key + ": expected a boolean, got '" + v + "'");
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ','))
    if (auto t = trim(item); !t.empty()) out.push_back(t);
  return out;
}

}  // namespace

void apply_config_line(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "generator") cfg.generator = value;
  else if (key == "n") cfg.n_infected = to_u64(key, value);
  else if (key == "trials") cfg.trials = to_u64(key, value);
  else if (key == "estimators") cfg.estimators = split_list(value);
  else if (key == "seed") cfg.seed = to_u64(key, value);
  else if (key == "cap_k") cfg.cap_k = std::uint32_t(to_u64(key, value));
  else if (key == "irregular") {
    if (value == "g-leaves") cfg.irregular = IrregularRule::underlying_leaves;
    else if (value == "gn-leaves") cfg.irregular = IrregularRule::infected_leaves;
    else throw std::invalid_argument("irregular: expected g-leaves or gn-leaves, got '" + value + "'");
  } else if (key == "regenerate") cfg.regenerate_graph = to_bool(key, value);
  else if (key == "timing") cfg.timing = to_bool(key, value);
  else if (key == "threads") cfg.threads = to_u64(key, value);
  else if (key == "output") cfg.output = value;
  else throw std::invalid_argument("unknown config key '" + key + "'");
}

ExperimentConfig parse_experiment_config(std::istream& in) {
  ExperimentConfig cfg;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("line " + std::to_string(lineno) + ": expected key=value");
    try {
      apply_config_line(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return cfg;
}

void ExperimentConfig::validate() const {
  if (generator.empty()) throw std::invalid_argument("generator is required");
  parse_generator_spec(generator);
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  if (n_infected < 1) throw std::invalid_argument("n must be at least 1");
  if (estimators.empty()) throw std::invalid_argument("estimator list is empty");
  for (const auto& id : estimators)
    if (!is_known(id)) throw std::invalid_argument("unknown estimator '" + id + "'");
  if (std::set<std::string>(estimators.begin(), estimators.end()).size() != estimators.size())
    throw std::invalid_argument("estimator listed twice");
}

nlohmann::json ExperimentConfig::to_json() const {
  return {{"generator", generator},
          {"n", n_infected},
          {"trials", trials},
          {"estimators", estimators},
          {"seed", seed},
          {"cap_k", cap_k},
          {"irregular", irregular == IrregularRule::underlying_leaves ? "g-leaves" : "gn-leaves"},
          {"regenerate", regenerate_graph}};
}

// ---- experiment -----------------------------------------------------------

namespace {

TrialRecord run_trial(const ExperimentConfig& cfg, const Graph& shared, const GeneratorSpec& spec, std::size_t index) {
  TrialRecord rec;
  rec.trial = index;
  rec.seed = derive_seed(cfg.seed, index);
  SplitMix64 rng(rec.seed);

  Graph fresh;
  if (cfg.regenerate_graph) fresh = generate(spec, rng());
  const Graph& g = cfg.regenerate_graph ? fresh : shared;
  if (cfg.n_infected > g.vertex_count())
    throw std::invalid_argument("n exceeds |G| = " + std::to_string(g.vertex_count()));

  rec.source = vertex_t(std::uniform_int_distribution<std::size_t>(0, g.vertex_count() - 1)(rng));
  rec.source_label = g.label(rec.source);

  SimulationOptions sim;
  sim.n = cfg.n_infected;
  sim.cap_k = cfg.cap_k;
  sim.record_frontier = false;
  auto snap = simulate(g, rec.source, sim, rng());
  rec.infected = snap.size();
  Graph gn = snap.infected_subgraph();

  EstimateOptions eo;
  eo.estimators = cfg.estimators;
  eo.timing = cfg.timing;
  if (cfg.irregular == IrregularRule::underlying_leaves) {
    std::vector<vertex_t> irr;
    for (vertex_t i = 0; i < snap.order.size(); ++i)
      if (g.degree(snap.order[i]) == 1) irr.push_back(i);
    eo.irregular = std::move(irr);
  }

  for (auto& o : run_estimators(gn, eo)) {
    TrialEstimate te;
    te.estimator = o.estimator;
    te.skipped = o.skipped;
    te.micros = o.micros;
    if (!o.skipped) {
      te.error = hop_error(gn, o.result.candidates, 0);
      for (vertex_t c : o.result.candidates) te.candidates.push_back(snap.order[c]);
    }
    rec.estimates.push_back(std::move(te));
  }
  return rec;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentResult res;
  res.config = cfg;
  auto spec = parse_generator_spec(cfg.generator);
  Graph shared;
  if (!cfg.regenerate_graph) shared = generate(spec, derive_seed(cfg.seed, ~std::uint64_t{0}));

  res.trials.resize(cfg.trials);
  std::size_t workers = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, cfg.trials);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < cfg.trials;) {
      try {
        res.trials[i] = run_trial(cfg, shared, spec, i);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = cfg.trials;
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  res.summary = summarize(res.trials);
  if (!cfg.output.empty()) {
    std::ofstream out(cfg.output);
    if (!out) throw std::runtime_error("cannot write " + cfg.output);
    write_trials_csv(out, res.trials);
  }
  return res;
}

ExperimentSummary summarize(const std::vector<TrialRecord>& records) {
  if (records.empty()) throw std::invalid_argument("no trial records");
  ExperimentSummary sum;
  std::vector<std::string> ids;
  for (const auto& e : records.front().estimates) ids.push_back(e.estimator);

  // error column per estimator, -1 when skipped
  std::map<std::string, std::vector<long>> errors;
  for (const auto& id : ids) {
    EstimatorSummary s;
    s.estimator = id;
    std::uint64_t total = 0, total_k = 0, zeros = 0;
    auto& col = errors[id];
    for (const auto& rec : records) {
      auto it = std::find_if(rec.estimates.begin(), rec.estimates.end(), [&](const auto& e) { return e.estimator == id; });
      if (it == rec.estimates.end() || it->skipped) {
        ++s.skipped;
        col.push_back(-1);
        continue;
      }
      ++s.runs;
      total += it->error;
      total_k += it->candidates.size();
      zeros += it->error == 0;
      if (s.histogram.size() <= it->error) s.histogram.resize(it->error + 1, 0);
      ++s.histogram[it->error];
      col.push_back(long(it->error));
    }
    if (s.runs > 0) {
      const double n = double(s.runs);
      s.mean_error = double(total) / n;
      s.mean_candidates = double(total_k) / n;
      s.zero_error_rate = double(zeros) / n;
      double ss = 0;
      for (long e : col)
        if (e >= 0) ss += (double(e) - s.mean_error) * (double(e) - s.mean_error);
      double se = s.runs > 1 ? std::sqrt(ss / (n - 1) / n) : 0.0;
      s.ci95_low = s.mean_error - 1.96 * se;
      s.ci95_high = s.mean_error + 1.96 * se;
    }
    sum.estimators.push_back(std::move(s));
  }

  for (std::size_t i = 0; i < ids.size(); ++i)
    for (std::size_t j = 0; j < ids.size(); ++j) {
      if (i == j) continue;
      PairedComparison pc;
      pc.a = ids[i];
      pc.b = ids[j];
      const auto& ea = errors[ids[i]];
      const auto& eb = errors[ids[j]];
      std::vector<double> diff;
      for (std::size_t t = 0; t < ea.size(); ++t)
        if (ea[t] >= 0 && eb[t] >= 0) diff.push_back(double(ea[t] - eb[t]));
      pc.pairs = diff.size();
      if (diff.size() >= 2) {
        double mean = 0;
        for (double d : diff) mean += d;
        mean /= double(diff.size());
        double ss = 0;
        for (double d : diff) ss += (d - mean) * (d - mean);
        double se = std::sqrt(ss / double(diff.size() - 1) / double(diff.size()));
        pc.mean_difference = mean;
        if (se > 0) {
          pc.z = mean / se;
          pc.p_value = 0.5 * std::erfc(-pc.z / std::sqrt(2.0));
        } else {
          pc.p_value = mean < 0 ? 0.0 : 1.0;
        }
      }
      sum.comparisons.push_back(pc);
    }
  return sum;
}

const EstimatorSummary& ExperimentSummary::at(const std::string& id) const {
  for (const auto& s : estimators)
    if (s.estimator == id) return s;
  throw std::out_of_range("no summary for '" + id + "'");
}

const PairedComparison& ExperimentSummary::compare(const std::string& a, const std::string& b) const {
  for (const auto& c : comparisons)
    if (c.a == a && c.b == b) return c;
  throw std::out_of_range("no comparison " + a + " vs " + b);
}

nlohmann::json ExperimentSummary::to_json() const {
  nlohmann::json j;
  auto& es = j["estimators"] = nlohmann::json::array();
  for (const auto& s : estimators)
    es.push_back({{"estimator", s.estimator},
                  {"runs", s.runs},
                  {"skipped", s.skipped},
                  {"mean_error", s.mean_error},
                  {"ci95", {s.ci95_low, s.ci95_high}},
                  {"mean_candidates", s.mean_candidates},
                  {"zero_error_rate", s.zero_error_rate},
                  {"histogram", s.histogram}});
  auto& cs = j["comparisons"] = nlohmann::json::array();
  for (const auto& c : comparisons)
    cs.push_back({{"a", c.a}, {"b", c.b}, {"pairs", c.pairs}, {"mean_difference", c.mean_difference}, {"z", c.z},
                  {"p_value", c.p_value}});
  return j;
}

void write_trials_csv(std::ostream& out, const std::vector<TrialRecord>& records) {
  out << "trial,seed,source,estimator,k,error,micros\n";
  for (const auto& r : records)
    for (const auto& e : r.estimates) {
      out << r.trial << ',' << r.seed << ',' << r.source_label << ',' << e.estimator << ',';
      if (e.skipped) out << "0,,";
      else out << e.candidates.size() << ',' << e.error << ',';
      out << e.micros << '\n';
    }
}

// ---- replay ---------------------------------------------------------------

ReplayReport replay(const Graph& g, vertex_t true_source, const EstimateOptions& opts) {
  if (!g.contains(true_source)) throw std::invalid_argument("true source outside the graph");
  ReplayReport rep;
  rep.source_label = g.label(true_source);
  rep.outcomes = run_estimators(g, opts);
  for (const auto& o : rep.outcomes) {
    if (o.skipped) {
      rep.errors.emplace_back();
      continue;
    }
    try {
      rep.errors.emplace_back(hop_error(g, o.result.candidates, true_source));
    } catch (const topology_error&) {
      rep.errors.emplace_back();  // no candidate in the source's component
    }
  }
  return rep;
}

nlohmann::json ReplayReport::to_json(const Graph& g) const {
  nlohmann::json j;
  j["source"] = source_label;
  auto& arr = j["estimators"] = nlohmann::json::array();
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const auto& o = outcomes[i];
    nlohmann::json e;
    if (o.skipped) {
      e = {{"estimator", o.estimator}, {"skipped", o.skip_reason}};
    } else {
      e = o.result.to_json(g);
      e.erase("scores");
      e["error"] = errors[i] ? nlohmann::json(*errors[i]) : nlohmann::json(nullptr);
    }
    arr.push_back(std::move(e));
  }
  return j;
}

}  // namespace episource
