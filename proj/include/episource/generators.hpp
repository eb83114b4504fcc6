#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "episource/graph.hpp"

namespace episource {

namespace gen {

struct RegularTree {  // every internal vertex has degree d
  std::uint32_t degree;
  std::uint32_t depth;
};
struct BranchingTree {  // random branching process, degree <= max_degree
  std::uint32_t max_degree;
  std::uint32_t vertices;
};
struct Grid {
  std::uint32_t width;
  std::uint32_t height;
};
struct Circulant {
  std::uint32_t vertices;
  std::vector<std::uint32_t> jumps;  // explicit S; empty means draw `random_jumps` of them
  std::uint32_t random_jumps = 0;
};
struct RandomRegular {
  std::uint32_t vertices;
  std::uint32_t degree;
};
struct PreferentialAttachment {
  std::uint32_t vertices;
  std::uint32_t edges_per_vertex;
};
struct Path {
  std::uint32_t vertices;
};
struct Star {
  std::uint32_t leaves;
};
struct Cycle {
  std::uint32_t vertices;
};
struct Broom {  // path v_1..v_{2t} with `leaves` pendant vertices on v_{2t}
  std::uint32_t half_length;
  std::uint32_t leaves;
};

}  // namespace gen

using GeneratorSpec = std::variant<gen::RegularTree, gen::BranchingTree, gen::Grid, gen::Circulant,
                                   gen::RandomRegular, gen::PreferentialAttachment, gen::Path, gen::Star,
                                   gen::Cycle, gen::Broom>;

/// Parses strings such as `grid:100x100`, `circulant:6000:s=3`,
/// `circulant:12:jumps=1,5`, `circulant:6000:d=6`, `rbt:dmax=5:n=1000`,
/// `tree:d=3:depth=4`, `rr:n=5000:d=3`, `ba:n=5000:m=3`, `path:5`,
/// `star:4`, `cycle:6`, `broom:t=2:k=3`. Throws std::invalid_argument.
GeneratorSpec parse_generator_spec(std::string_view text);
std::string to_string(const GeneratorSpec& spec);

/// Deterministic for a fixed seed. Throws std::invalid_argument on
/// infeasible parameters (odd n*d for random regular graphs, circulant jump
/// sets that do not generate Z_N, ...).
Graph generate(const GeneratorSpec& spec, std::uint64_t seed);

bool jumps_generate_group(std::uint32_t n, const std::vector<std::uint32_t>& jumps);

}  // namespace episource
