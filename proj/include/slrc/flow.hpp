#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "slrc/rational.hpp"

namespace slrc {

class FlowGraph {
 public:
  static constexpr std::int64_t kInfinity = std::int64_t{1} << 60;

  std::size_t add_node(std::string label = {});
  void add_edge(std::size_t from, std::size_t to, std::int64_t capacity);
  std::size_t node_count() const { return labels_.size(); }
  const std::string& label(std::size_t v) const { return labels_.at(v); }
  std::size_t edge_count() const { return edges_.size() / 2; }

  // Dinic's algorithm; leaves the residual graph in place.
  std::int64_t max_flow(std::size_t source, std::size_t sink);

 private:
  struct Edge {
    std::size_t to;
    std::int64_t cap;
  };
  bool bfs(std::size_t s, std::size_t t);
  std::int64_t push(std::size_t v, std::size_t t, std::int64_t f);

  std::vector<std::string> labels_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> adj_;
  std::vector<int> level_;
  std::vector<std::size_t> iter_;
};

// Newcomer replacing storage node `failed`; helpers are storage-node ids.
// Ids below n are original nodes, id n + i is the i-th newcomer.
struct RepairStep {
  std::size_t failed = 0;
  std::vector<std::size_t> helpers;
};

struct FlowScenario {
  std::size_t n = 0;
  std::vector<std::size_t> group_of;  // per original node; newcomers inherit
  bool gates = true;                  // add Γin -> Γout edges of capacity rα
  std::size_t r = 1;
  Rational alpha{1}, beta{1};
  std::vector<RepairStep> repairs;
  std::vector<std::size_t> collector;
};

// Exact max flow from the source to a data collector attached to
// `collector`; rational capacities are scaled to integers.
Rational flow_mincut(const FlowScenario& scenario);

// Collector on μ full groups plus h nodes of the next one, with either
// sequential in-group repairs or no repairs; groups of width r + δ - 1.
std::vector<FlowScenario> canonical_scenarios(std::size_t n, std::size_t r, std::size_t delta, Rational alpha,
                                              Rational beta, std::size_t d, std::size_t dmin);
Rational canonical_mincut(std::size_t n, std::size_t r, std::size_t delta, Rational alpha, Rational beta,
                          std::size_t d, std::size_t dmin);

// Plain regenerating system: k newcomers in a chain, each downloading from
// all previous newcomers (up to d) and the rest from originals.
FlowScenario regenerating_scenario(std::size_t n, std::size_t k, std::size_t d, Rational alpha, Rational beta);

}  // namespace slrc
