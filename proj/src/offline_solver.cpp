#include "omatch/offline_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "omatch/config.hpp"

namespace omatch {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct FlowEdge {
  int to;
  int cap;
  double cost;
  int rev;
};

class MinCostFlow {
 public:
  explicit MinCostFlow(int n) : graph_(n) {}

  void add_edge(int from, int to, int cap, double cost) {
    graph_[from].push_back({to, cap, cost, static_cast<int>(graph_[to].size())});
    graph_[to].push_back({from, 0, -cost, static_cast<int>(graph_[from].size()) - 1});
  }

  // Sends up to `flow` units from s to t; arc costs must be nonnegative.
  // Returns (units sent, total cost).
  std::pair<int, double> run(int s, int t, int flow) {
    const int n = static_cast<int>(graph_.size());
    std::vector<double> potential(n, 0.0);
    int sent = 0;
    double total = 0.0;
    while (sent < flow) {
      std::vector<double> dist(n, kInf);
      std::vector<int> prev_node(n, -1), prev_edge(n, -1);
      std::vector<char> done(n, 0);
      dist[s] = 0.0;
      for (;;) {
        int u = -1;
        double best = kInf;
        for (int v = 0; v < n; ++v) {
          if (!done[v] && dist[v] < best) {
            best = dist[v];
            u = v;
          }
        }
        if (u < 0) break;
        done[u] = 1;
        for (int e = 0; e < static_cast<int>(graph_[u].size()); ++e) {
          const FlowEdge& edge = graph_[u][e];
          if (edge.cap <= 0) continue;
          const double reduced = edge.cost + potential[u] - potential[edge.to];
          if (dist[u] + reduced < dist[edge.to] - kSolverTolerance) {
            dist[edge.to] = dist[u] + reduced;
            prev_node[edge.to] = u;
            prev_edge[edge.to] = e;
          }
        }
      }
      if (dist[t] == kInf) break;
      for (int v = 0; v < n; ++v) {
        if (dist[v] < kInf) potential[v] += dist[v];
      }
      int bottleneck = flow - sent;
      for (int v = t; v != s; v = prev_node[v]) {
        bottleneck = std::min(bottleneck, graph_[prev_node[v]][prev_edge[v]].cap);
      }
      for (int v = t; v != s; v = prev_node[v]) {
        FlowEdge& edge = graph_[prev_node[v]][prev_edge[v]];
        edge.cap -= bottleneck;
        graph_[v][edge.rev].cap += bottleneck;
        total += edge.cost * bottleneck;
      }
      sent += bottleneck;
    }
    return {sent, total};
  }

 private:
  std::vector<std::vector<FlowEdge>> graph_;
};

// Minimum cost of assigning requests[first..n) given remaining capacities,
// or +inf if infeasible.
double completion_cost(const Instance& inst, const RequestSequence& seq,
                       int first, const std::vector<int>& caps) {
  const int n = static_cast<int>(seq.size());
  const int k = static_cast<int>(inst.servers.size());
  const int m = n - first;
  if (m == 0) return 0.0;
  int total = 0;
  for (int c : caps) total += c;
  if (total < m) return kInf;

  // Nodes: 0 source, 1..m requests, m+1..m+k servers, m+k+1 sink.
  MinCostFlow mcf(m + k + 2);
  const int sink = m + k + 1;
  for (int i = 0; i < m; ++i) {
    mcf.add_edge(0, 1 + i, 1, 0.0);
    for (int j = 0; j < k; ++j) {
      if (caps[j] <= 0) continue;
      mcf.add_edge(1 + i, m + 1 + j,
                   1, distance(inst, seq.requests[first + i], inst.servers[j].pos));
    }
  }
  for (int j = 0; j < k; ++j) {
    if (caps[j] > 0) mcf.add_edge(m + 1 + j, sink, caps[j], 0.0);
  }
  auto [sent, cost] = mcf.run(0, sink, m);
  if (sent < m) return kInf;
  return cost;
}

}  // namespace

AssignmentPlan optimal_assignment(const Instance& inst,
                                  const RequestSequence& seq) {
  check_feasible(inst, seq);
  const int n = static_cast<int>(seq.size());
  const int k = static_cast<int>(inst.servers.size());
  const double tol = tolerance();

  std::vector<int> caps(k);
  for (int j = 0; j < k; ++j) caps[j] = inst.servers[j].capacity;

  AssignmentPlan plan;
  double fixed = 0.0;
  for (int i = 0; i < n; ++i) {
    // Optimal cost of completing the remaining requests from this state;
    // fixing the lowest-index server that keeps it attainable yields the
    // lexicographically smallest optimal pair list.
    const double target = completion_cost(inst, seq, i, caps);
    int chosen = -1;
    double chosen_cost = 0.0;
    for (int j = 0; j < k; ++j) {
      if (caps[j] <= 0) continue;
      const double c = distance(inst, seq.requests[i], inst.servers[j].pos);
      caps[j] -= 1;
      const double rest = completion_cost(inst, seq, i + 1, caps);
      caps[j] += 1;
      if (c + rest <= target + tol) {
        chosen = j;
        chosen_cost = c;
        break;
      }
    }
    if (chosen < 0) {
      throw CapacityExceededError("no feasible assignment for request");
    }
    caps[chosen] -= 1;
    fixed += chosen_cost;
    plan.pairs.emplace_back(i, chosen);
  }
  plan.total_cost = fixed;
  return plan;
}

AssignmentPlan brute_force_assignment(const Instance& inst,
                                      const RequestSequence& seq) {
  check_feasible(inst, seq);
  const int n = static_cast<int>(seq.size());
  if (n > 10) {
    throw OracleSizeError("brute-force oracle limited to 10 requests");
  }
  const int k = static_cast<int>(inst.servers.size());
  const double tol = tolerance();

  std::vector<int> caps(k);
  for (int j = 0; j < k; ++j) caps[j] = inst.servers[j].capacity;

  std::vector<int> current(n, -1);
  std::vector<int> best;
  double best_cost = kInf;

  auto dfs = [&](auto&& self, int i, double cost) -> void {
    if (cost > best_cost + tol) return;
    if (i == n) {
      const bool better =
          cost < best_cost - tol ||
          (std::abs(cost - best_cost) <= tol &&
           (best.empty() || std::lexicographical_compare(
                                current.begin(), current.end(),
                                best.begin(), best.end())));
      if (better) {
        best = current;
        best_cost = std::min(best_cost, cost);
      }
      return;
    }
    for (int j = 0; j < k; ++j) {
      if (caps[j] <= 0) continue;
      caps[j] -= 1;
      current[i] = j;
      self(self, i + 1,
           cost + distance(inst, seq.requests[i], inst.servers[j].pos));
      current[i] = -1;
      caps[j] += 1;
    }
  };
  dfs(dfs, 0, 0.0);

  AssignmentPlan plan;
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    plan.pairs.emplace_back(i, best[i]);
    total += distance(inst, seq.requests[i], inst.servers[best[i]].pos);
  }
  plan.total_cost = total;
  return plan;
}

double assignment_cost(const Instance& inst, const RequestSequence& seq,
                       const AssignmentPlan& plan) {
  const int n = static_cast<int>(seq.size());
  const int k = static_cast<int>(inst.servers.size());
  double total = 0.0;
  for (const auto& [ri, si] : plan.pairs) {
    if (ri < 0 || ri >= n || si < 0 || si >= k) {
      throw InvalidPlanError("plan references an out-of-range index");
    }
    total += distance(inst, seq.requests[ri], inst.servers[si].pos);
  }
  return total;
}

}  // namespace omatch
