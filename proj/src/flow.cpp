#include "slrc/flow.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <optional>
#include <queue>

#include "slrc/bounds.hpp"
#include "slrc/errors.hpp"

namespace slrc {

std::size_t FlowGraph::add_node(std::string label) {
  labels_.push_back(std::move(label));
  adj_.emplace_back();
  return labels_.size() - 1;
}

void FlowGraph::add_edge(std::size_t from, std::size_t to, std::int64_t capacity) {
  if (capacity < 0) throw Error(ErrorKind::InvalidArgument, "negative capacity");
  if (from >= adj_.size() || to >= adj_.size()) throw Error(ErrorKind::InvalidArgument, "edge endpoint out of range");
  adj_[from].push_back(edges_.size());
  edges_.push_back({to, capacity});
  adj_[to].push_back(edges_.size());
  edges_.push_back({from, 0});
}

bool FlowGraph::bfs(std::size_t s, std::size_t t) {
  level_.assign(adj_.size(), -1);
  std::queue<std::size_t> q;
  level_[s] = 0;
  q.push(s);
  while (!q.empty()) {
    const std::size_t v = q.front();
    q.pop();
    for (std::size_t id : adj_[v]) {
      const Edge& e = edges_[id];
      if (e.cap > 0 && level_[e.to] < 0) {
        level_[e.to] = level_[v] + 1;
        q.push(e.to);
      }
    }
  }
  return level_[t] >= 0;
}

std::int64_t FlowGraph::push(std::size_t v, std::size_t t, std::int64_t f) {
  if (v == t) return f;
  for (std::size_t& i = iter_[v]; i < adj_[v].size(); ++i) {
    const std::size_t id = adj_[v][i];
    Edge& e = edges_[id];
    if (e.cap <= 0 || level_[e.to] != level_[v] + 1) continue;
    const std::int64_t got = push(e.to, t, std::min(f, e.cap));
    if (got > 0) {
      e.cap -= got;
      edges_[id ^ 1].cap += got;
      return got;
    }
  }
  return 0;
}

std::int64_t FlowGraph::max_flow(std::size_t source, std::size_t sink) {
  std::int64_t total = 0;
  while (bfs(source, sink)) {
    iter_.assign(adj_.size(), 0);
    while (std::int64_t f = push(source, sink, kInfinity)) {
      total += f;
      if (total >= kInfinity) return kInfinity;
    }
  }
  return total;
}

Rational flow_mincut(const FlowScenario& sc) {
  if (sc.group_of.size() != sc.n) throw Error(ErrorKind::ShapeMismatch, "group_of must cover every original node");
  const std::int64_t scale = std::lcm(sc.alpha.den(), sc.beta.den());
  const std::int64_t a = (sc.alpha * Rational(scale)).num();
  const std::int64_t b = (sc.beta * Rational(scale)).num();
  const std::int64_t gate = static_cast<std::int64_t>(sc.r) * a;

  FlowGraph g;
  const std::size_t source = g.add_node("S");
  const std::size_t groups = sc.group_of.empty() ? 0 : *std::max_element(sc.group_of.begin(), sc.group_of.end()) + 1;
  std::vector<std::size_t> gate_out(groups, source);
  if (sc.gates) {
    for (std::size_t i = 0; i < groups; ++i) {
      const std::size_t in = g.add_node("Gin" + std::to_string(i));
      gate_out[i] = g.add_node("Gout" + std::to_string(i));
      g.add_edge(source, in, FlowGraph::kInfinity);
      g.add_edge(in, gate_out[i], gate);
    }
  }
  const std::size_t total = sc.n + sc.repairs.size();
  std::vector<std::size_t> x_in(total), x_out(total);
  auto add_storage = [&](std::size_t id) {
    x_in[id] = g.add_node("xin" + std::to_string(id));
    x_out[id] = g.add_node("xout" + std::to_string(id));
    g.add_edge(x_in[id], x_out[id], a);
  };
  for (std::size_t i = 0; i < sc.n; ++i) {
    add_storage(i);
    g.add_edge(gate_out[sc.group_of[i]], x_in[i], FlowGraph::kInfinity);
  }
  for (std::size_t j = 0; j < sc.repairs.size(); ++j) {
    const std::size_t id = sc.n + j;
    add_storage(id);
    for (std::size_t h : sc.repairs[j].helpers) {
      if (h >= id) throw Error(ErrorKind::InvalidArgument, "helper must exist before the newcomer");
      g.add_edge(x_out[h], x_in[id], b);
    }
  }
  const std::size_t dc = g.add_node("DC");
  for (std::size_t c : sc.collector) {
    if (c >= total) throw Error(ErrorKind::InvalidArgument, "collector node out of range");
    g.add_edge(x_out[c], dc, FlowGraph::kInfinity);
  }
  return Rational(g.max_flow(source, dc), scale);
}

namespace {

// Group membership for groups of width w; the last group may be short.
std::vector<std::size_t> grouping(std::size_t n, std::size_t w) {
  std::vector<std::size_t> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = i / w;
  return out;
}

}  // namespace

std::vector<FlowScenario> canonical_scenarios(std::size_t n, std::size_t r, std::size_t delta, Rational alpha,
                                              Rational beta, std::size_t d, std::size_t dmin) {
  if (r == 0 || delta < 2 || dmin == 0 || dmin > n) throw Error(ErrorKind::InvalidArgument, "invalid LRC parameters");
  if (d < r || d > r + delta - 2) throw Error(ErrorKind::InvalidArgument, "repair degree must satisfy r <= d <= r+delta-2");
  const std::size_t w = r + delta - 1;
  const GroupSplit split = group_split(n, r, delta, dmin);
  const std::size_t used = split.mu + (split.h > 0 ? 1 : 0);

  FlowScenario base;
  base.n = n;
  base.group_of = grouping(n, w);
  base.r = r;
  base.alpha = alpha;
  base.beta = beta;

  FlowScenario stored = base;
  FlowScenario chained = base;
  for (std::size_t gi = 0; gi < used; ++gi) {
    const std::size_t first = gi * w;
    if (first >= n) throw Error(ErrorKind::InvalidArgument, "collector does not fit in the available groups");
    const std::size_t width = std::min(w, n - first);
    const std::size_t count = gi < split.mu ? w : split.h;
    if (count > width) throw Error(ErrorKind::InvalidArgument, "group too small for the collector pattern");
    for (std::size_t c = 0; c < count; ++c) stored.collector.push_back(first + c);

    // Nodes first..first+count-1 fail in order; each newcomer uses all
    // earlier newcomers of the group, then originals that never fail,
    // then originals still waiting for their turn.
    std::vector<std::size_t> newcomers;
    for (std::size_t c = 0; c < count; ++c) {
      RepairStep step;
      step.failed = first + c;
      const std::size_t from_new = std::min(newcomers.size(), d);
      for (std::size_t t = newcomers.size() - from_new; t < newcomers.size(); ++t) step.helpers.push_back(newcomers[t]);
      std::size_t need = d - from_new;
      for (std::size_t o = first + count; o < first + width && need > 0; ++o, --need) step.helpers.push_back(o);
      for (std::size_t o = first + c + 1; o < first + count && need > 0; ++o, --need) step.helpers.push_back(o);
      if (need > 0) throw Error(ErrorKind::InvalidArgument, "group cannot supply d helpers");
      chained.repairs.push_back(step);
      const std::size_t id = n + chained.repairs.size() - 1;
      newcomers.push_back(id);
      chained.collector.push_back(id);
    }
  }
  return {stored, chained};
}

Rational canonical_mincut(std::size_t n, std::size_t r, std::size_t delta, Rational alpha, Rational beta,
                          std::size_t d, std::size_t dmin) {
  std::optional<Rational> best;
  for (const FlowScenario& sc : canonical_scenarios(n, r, delta, alpha, beta, d, dmin)) {
    const Rational v = flow_mincut(sc);
    if (!best || v < *best) best = v;
  }
  return *best;
}

FlowScenario regenerating_scenario(std::size_t n, std::size_t k, std::size_t d, Rational alpha, Rational beta) {
  if (k == 0 || k > n || d == 0 || d >= n) throw Error(ErrorKind::InvalidArgument, "need 1 <= k <= n and 1 <= d < n");
  FlowScenario sc;
  sc.n = n;
  sc.group_of.assign(n, 0);
  sc.gates = false;
  sc.alpha = alpha;
  sc.beta = beta;
  for (std::size_t i = 0; i < k; ++i) {
    RepairStep step;
    step.failed = i;
    const std::size_t from_new = std::min(i, d);
    for (std::size_t t = i - from_new; t < i; ++t) step.helpers.push_back(n + t);
    std::size_t need = d - from_new;
    for (std::size_t o = k; o < n && need > 0; ++o, --need) step.helpers.push_back(o);
    for (std::size_t o = i + 1; o < k && need > 0; ++o, --need) step.helpers.push_back(o);
    if (need > 0) throw Error(ErrorKind::InvalidArgument, "not enough live nodes for d helpers");
    sc.repairs.push_back(step);
    sc.collector.push_back(n + i);
  }
  return sc;
}

}  // namespace slrc
