#include "episource/spread.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <random>
#include <stdexcept>

#include "episource/random.hpp"

namespace episource {

void NodeRates::validate(std::size_t vertex_count) const {
  for (const auto* rates : {&infect, &spread}) {
    if (rates->empty()) continue;
    if (rates->size() != vertex_count) throw std::invalid_argument("rate vector size does not match graph");
    for (double r : *rates)
      if (!(r > 0.0) || !std::isfinite(r)) throw std::invalid_argument("rates must be positive and finite");
  }
}

Graph InfectionSnapshot::infected_subgraph() const { return underlying->induced_subgraph(order); }

namespace {

// Susceptible boundary with O(1) insert/remove and per-vertex weights.
class Boundary {
 public:
  explicit Boundary(std::size_t n) : slot_(n, absent), weight_(n, 0.0) {}

  void add_weight(vertex_t v, double w) {
    if (slot_[v] == absent) {
      slot_[v] = members_.size();
      members_.push_back(v);
    }
    weight_[v] += w;
    total_ += w;
  }
  void remove(vertex_t v) {
    std::size_t i = slot_[v];
    total_ -= weight_[v];
    weight_[v] = 0.0;
    slot_[members_.back()] = i;
    members_[i] = members_.back();
    members_.pop_back();
    slot_[v] = absent;
  }
  bool empty() const { return members_.empty(); }
  double total() const { return total_; }
  double weight(vertex_t v) const { return weight_[v]; }

  // Inverse transform: the member whose cumulative weight first exceeds u.
  vertex_t pick(double u) const {
    double acc = 0.0;
    for (vertex_t v : members_) {
      acc += weight_[v];
      if (u < acc) return v;
    }
    return members_.back();
  }
  // Integer variant used under unit rates, where every weight is a count.
  vertex_t pick(std::uint64_t u) const {
    std::uint64_t acc = 0;
    for (vertex_t v : members_) {
      acc += static_cast<std::uint64_t>(weight_[v]);
      if (u < acc) return v;
    }
    return members_.back();
  }

 private:
  static constexpr std::size_t absent = static_cast<std::size_t>(-1);
  std::vector<std::size_t> slot_;
  std::vector<double> weight_;
  std::vector<vertex_t> members_;
  double total_ = 0.0;
};

}  // namespace

InfectionSnapshot simulate(const Graph& g, vertex_t source, const SimulationOptions& opts, std::uint64_t seed) {
  if (!g.contains(source)) throw std::domain_error("source vertex not in graph");
  if (opts.n == 0 || opts.n > g.vertex_count()) throw std::domain_error("n must lie in [1, |G|]");
  opts.rates.validate(g.vertex_count());

  const bool unit = opts.rates.unit();
  const std::size_t regular = opts.regular_degree ? *opts.regular_degree : modal_degree(g);
  const std::size_t irregular_cap =
      opts.cap_k == 0 ? 0 : (opts.n + opts.cap_k - 1) / opts.cap_k;

  SplitMix64 rng(seed);
  InfectionSnapshot snap;
  snap.underlying = &g;
  snap.source = source;
  snap.seed = seed;
  snap.order.reserve(opts.n);

  std::vector<char> infected(g.vertex_count(), 0);
  Boundary boundary(g.vertex_count());
  std::size_t irregular = 0;

  auto infect = [&](vertex_t v) {
    infected[v] = 1;
    snap.order.push_back(v);
    if (g.degree(v) != regular) ++irregular;
    const double rs = opts.rates.spread_rate(v);
    for (vertex_t w : g.neighbors(v))
      if (!infected[w]) boundary.add_weight(w, opts.rates.infect_rate(w) * rs);
  };

  infect(source);
  while (snap.order.size() < opts.n) {
    if (irregular_cap && irregular >= irregular_cap) {
      snap.capped = true;
      break;
    }
    if (boundary.empty()) {
      snap.exhausted = true;
      break;
    }
    vertex_t next;
    double total;
    if (unit) {
      // Weights are small integer counts here, so the double total is exact.
      auto t = static_cast<std::uint64_t>(boundary.total());
      next = boundary.pick(std::uniform_int_distribution<std::uint64_t>(0, t - 1)(rng));
      total = static_cast<double>(t);
    } else {
      total = boundary.total();
      next = boundary.pick(std::uniform_real_distribution<double>(0.0, total)(rng));
    }
    if (opts.record_frontier) snap.frontier_history.push_back({boundary.weight(next), total});
    boundary.remove(next);
    infect(next);
  }
  return snap;
}

Rational realized_order_probability(const Graph& g, std::span<const vertex_t> order) {
  if (order.empty()) throw std::invalid_argument("empty infection order");
  std::vector<char> infected(g.vertex_count(), 0);
  std::vector<std::uint32_t> infected_neighbors(g.vertex_count(), 0);
  std::uint64_t boundary_edges = 0;  // edges from the infected set to the rest
  BigInt num = 1, den = 1;
  for (std::size_t i = 0; i < order.size(); ++i) {
    vertex_t v = order[i];
    if (!g.contains(v) || infected[v]) throw std::invalid_argument("infection order repeats or leaves the graph");
    if (i > 0) {
      if (infected_neighbors[v] == 0)
        throw std::invalid_argument("vertex " + g.label(v) + " has no infected neighbor when infected");
      num *= infected_neighbors[v];
      den *= static_cast<unsigned long>(boundary_edges);
    }
    infected[v] = 1;
    boundary_edges -= infected_neighbors[v];
    for (vertex_t w : g.neighbors(v)) {
      if (infected[w]) continue;
      ++infected_neighbors[w];
      ++boundary_edges;
    }
  }
  Rational p(num, den);
  p.canonicalize();
  return p;
}

Rational realized_order_probability(const InfectionSnapshot& snapshot) {
  return realized_order_probability(*snapshot.underlying, snapshot.order);
}

nlohmann::json snapshot_to_json(const InfectionSnapshot& snapshot, nlohmann::json params) {
  const Graph& g = *snapshot.underlying;
  nlohmann::json order = nlohmann::json::array();
  for (vertex_t v : snapshot.order) order.push_back(g.label(v));
  params["n_infected"] = snapshot.order.size();
  return {{"source", g.label(snapshot.source)},
          {"order", std::move(order)},
          {"seed", snapshot.seed},
          {"exhausted", snapshot.exhausted},
          {"capped", snapshot.capped},
          {"params", std::move(params)}};
}

InfectionSnapshot snapshot_from_json(const nlohmann::json& j, const Graph& g) {
  auto resolve = [&](const std::string& label) {
    auto v = g.find_label(label);
    if (!v) throw std::invalid_argument("snapshot names unknown vertex '" + label + "'");
    return *v;
  };
  InfectionSnapshot snap;
  snap.underlying = &g;
  for (const auto& item : j.at("order")) snap.order.push_back(resolve(item.get<std::string>()));
  snap.source = resolve(j.at("source").get<std::string>());
  snap.seed = j.value("seed", std::uint64_t{0});
  snap.exhausted = j.value("exhausted", false);
  snap.capped = j.value("capped", false);
  if (snap.order.empty() || snap.order.front() != snap.source)
    throw std::invalid_argument("snapshot order must start at the source");
  realized_order_probability(g, snap.order);  // validates connectivity
  return snap;
}

}  // namespace episource
