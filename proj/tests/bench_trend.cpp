// Grid experiments: mean hop error grows with the number of infected vertices.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "episource/bench.hpp"

using namespace episource;

TEST_CASE("grid mean error increases with n") {
  const std::size_t sizes[] = {150, 300, 500, 800};
  std::vector<double> sct, bfs;
  for (std::size_t n : sizes) {
    ExperimentConfig cfg;
    cfg.generator = "grid:100x100";
    cfg.n_infected = n;
    cfg.trials = 500;
    cfg.estimators = {"sct", "bfs-rc"};
    cfg.seed = 3;
    auto res = run_experiment(cfg);
    sct.push_back(res.summary.at("sct").mean_error);
    bfs.push_back(res.summary.at("bfs-rc").mean_error);
    MESSAGE("n=" << n << " sct " << sct.back() << " bfs-rc " << bfs.back());
  }
  for (std::size_t i = 1; i < sct.size(); ++i) {
    CHECK(sct[i] > sct[i - 1]);
    CHECK(bfs[i] > bfs[i - 1]);
  }
}
