#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

#include "submod/objectives.hpp"
#include "submod/plan_types.hpp"
#include "submod/rng.hpp"

namespace submod {

// Undirected geometric communication graph: edges between agents within
// radius r_c of each other.
struct CommGraph {
  std::vector<Point2> positions;
  double r_c = std::numeric_limits<double>::infinity();
  std::vector<std::vector<int>> adjacency;

  int n_agents() const { return static_cast<int>(positions.size()); }

  static CommGraph from_positions(std::vector<Point2> positions, double r_c) {
    CommGraph g;
    g.positions = std::move(positions);
    g.r_c = r_c;
    g.adjacency.assign(g.positions.size(), {});
    for (int i = 0; i < g.n_agents(); ++i)
      for (int j = i + 1; j < g.n_agents(); ++j)
        if (distance(g.positions[i], g.positions[j]) <= r_c) {
          g.adjacency[i].push_back(j);
          g.adjacency[j].push_back(i);
        }
    return g;
  }

  // Breadth-first hop counts from one source; -1 for unreachable nodes.
  // Neighbor expansion in ascending node id, so tied paths resolve to the
  // lowest-id route.
  std::vector<int> hop_distances(int source) const {
    std::vector<int> dist(n_agents(), -1);
    std::queue<int> frontier;
    dist[source] = 0;
    frontier.push(source);
    while (!frontier.empty()) {
      const int u = frontier.front();
      frontier.pop();
      std::vector<int> nbrs = adjacency[u];
      std::sort(nbrs.begin(), nbrs.end());
      for (int v : nbrs) {
        if (dist[v] < 0) {
          dist[v] = dist[u] + 1;
          frontier.push(v);
        }
      }
    }
    return dist;
  }

  bool connected() const {
    if (n_agents() == 0) return true;
    const auto dist = hop_distances(0);
    for (int d : dist)
      if (d < 0) return false;
    return true;
  }

  int n_edges() const {
    int m = 0;
    for (const auto& nbrs : adjacency) m += static_cast<int>(nbrs.size());
    return m / 2;
  }
};

// Connected-by-construction positions: the first agent lands uniformly in
// the unit square; each later agent lands within r_c of a uniformly chosen
// existing agent, rejection-sampled inside the square.
inline std::vector<Point2> gen_connected_positions(int n, double r_c, Rng& rng) {
  if (n < 1) throw std::invalid_argument("gen_connected_positions: n must be >= 1");
  if (r_c <= 0.0) throw std::invalid_argument("gen_connected_positions: r_c must be positive");
  std::vector<Point2> pts;
  pts.push_back({rng.uniform(), rng.uniform()});
  while (static_cast<int>(pts.size()) < n) {
    const Point2& anchor = pts[rng.uniform_int(0, static_cast<int>(pts.size()) - 1)];
    const double dx = rng.uniform(-r_c, r_c);
    const double dy = rng.uniform(-r_c, r_c);
    if (dx * dx + dy * dy > r_c * r_c) continue;
    const Point2 p{anchor.x + dx, anchor.y + dy};
    if (p.x < 0.0 || p.x > 1.0 || p.y < 0.0 || p.y > 1.0) continue;
    pts.push_back(p);
  }
  return pts;
}

struct MessageStats {
  long long messages = 0;  // hop-counted transmissions
  long long volume = 0;    // decisions carried x hops
  long long span = 0;      // longest chain of sequential transmissions
};

// Communication cost of one solver run on a comm graph.
//
// Sequential planners consolidate all decisions so far into one message
// routed hop-by-hop between consecutive planners. RSP/RRSP agents send
// their single decision directly to each in-range neighbor in a strictly
// later round (final-round decisions are consumed by no one, so the span
// is structurally n_rounds - 1). Auctions exchange full assignment lists
// across every edge in both directions each round.
inline MessageStats account_solver_messages(const MessageTrace& trace, const CommGraph& graph) {
  MessageStats stats;
  const int n = graph.n_agents();

  switch (trace.family) {
    case SolverFamily::Sequential:
    case SolverFamily::General:
    case SolverFamily::Dsga: {
      if (static_cast<int>(trace.order.size()) != n)
        throw std::invalid_argument("account_solver_messages: order does not cover the graph");
      for (int k = 1; k < n; ++k) {
        const auto dist = graph.hop_distances(trace.order[k - 1]);
        const int hops = dist[trace.order[k]];
        if (hops < 0)
          throw std::invalid_argument("account_solver_messages: graph is disconnected");
        stats.messages += hops;
        stats.volume += static_cast<long long>(k) * hops;
        stats.span += hops;
      }
      break;
    }
    case SolverFamily::Rsp:
    case SolverFamily::Rrsp: {
      if (static_cast<int>(trace.round_of_agent.size()) != n)
        throw std::invalid_argument("account_solver_messages: missing round assignment");
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          if (j == i) continue;
          if (trace.round_of_agent[j] <= trace.round_of_agent[i]) continue;
          if (trace.family == SolverFamily::Rrsp &&
              distance(graph.positions[i], graph.positions[j]) > trace.comm_range)
            continue;
          stats.messages += 1;
          stats.volume += 1;
        }
      }
      stats.span = std::max(0, trace.n_rounds - 1);
      break;
    }
    case SolverFamily::AuctionGlobal:
    case SolverFamily::AuctionLocal: {
      for (const auto& lengths : trace.auction_list_lengths) {
        if (static_cast<int>(lengths.size()) != n)
          throw std::invalid_argument("account_solver_messages: bad auction trace");
        for (int i = 0; i < n; ++i)
          for (int j : graph.adjacency[i]) {
            (void)j;
            stats.messages += 1;              // i -> j list message
            stats.volume += lengths[i];
          }
      }
      stats.span = trace.auction_rounds;
      break;
    }
    case SolverFamily::Random:
    case SolverFamily::Myopic:
      break;  // no coordination, no messages
    default:
      throw std::invalid_argument("account_solver_messages: unknown solver family");
  }
  return stats;
}

struct LatencyModel {
  int fixed_delay_rounds = 0;  // zero-latency default
};

struct AcceptanceStats {
  long long events = 0;
  long long accepted = 0;
  double rate() const { return events == 0 ? 0.0 : static_cast<double>(accepted) / events; }
};

// Synchronous-epoch emulation: each epoch every agent draws a planning
// round uniformly from {1..n_d} and broadcasts its decision at the end of
// that round; a receiver accepts iff the message arrives before its own
// round within the same epoch. The nominal acceptance rate is
// (1/2)(1 - 1/n_d).
inline AcceptanceStats sync_epoch_sim(int n, int n_d, int epochs, const LatencyModel& latency,
                                      Rng& rng) {
  if (n < 2) throw std::invalid_argument("sync_epoch_sim: need at least 2 agents");
  if (n_d < 1) throw std::invalid_argument("sync_epoch_sim: n_d must be >= 1");
  if (epochs < 1) throw std::invalid_argument("sync_epoch_sim: epochs must be >= 1");

  AcceptanceStats stats;
  std::vector<int> round(n);
  for (int e = 0; e < epochs; ++e) {
    for (int i = 0; i < n; ++i) round[i] = rng.uniform_int(1, n_d);
    for (int s = 0; s < n; ++s) {
      for (int r = 0; r < n; ++r) {
        if (r == s) continue;
        ++stats.events;
        if (round[s] + latency.fixed_delay_rounds < round[r]) ++stats.accepted;
      }
    }
  }
  return stats;
}

inline double nominal_acceptance_rate(int n_d) { return 0.5 * (1.0 - 1.0 / n_d); }

}  // namespace submod
