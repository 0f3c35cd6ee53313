#pragma once

#include <algorithm>
#include <queue>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "stackamb/errors.hpp"
#include "stackamb/game.hpp"
#include "stackamb/rational.hpp"
#include "stackamb/responses.hpp"
#include "stackamb/solvers.hpp"

namespace stackamb {

struct GraphComponent;

// Simple undirected graph with 1-based vertices, no self-loops.
struct Graph {
  std::size_t vertex_count = 0;
  std::set<std::pair<std::size_t, std::size_t>> edges;  // (u, v) with u < v

  void add_edge(std::size_t u, std::size_t v) {
    if (u == v) throw PreconditionViolated("self-loops are not allowed");
    if (u < 1 || v < 1 || u > vertex_count || v > vertex_count)
      throw PreconditionViolated("edge endpoint out of range");
    edges.insert({std::min(u, v), std::max(u, v)});
  }

  std::vector<std::vector<std::size_t>> adjacency() const {
    std::vector<std::vector<std::size_t>> adj(vertex_count + 1);
    for (const auto& [u, v] : edges) {
      adj[u].push_back(v);
      adj[v].push_back(u);
    }
    return adj;
  }

  bool connected() const {
    if (vertex_count == 0) return false;
    auto adj = adjacency();
    std::vector<bool> seen(vertex_count + 1, false);
    std::queue<std::size_t> queue;
    queue.push(1);
    seen[1] = true;
    std::size_t reached = 1;
    while (!queue.empty()) {
      std::size_t u = queue.front();
      queue.pop();
      for (std::size_t v : adj[u]) {
        if (!seen[v]) {
          seen[v] = true;
          ++reached;
          queue.push(v);
        }
      }
    }
    return reached == vertex_count;
  }

  std::vector<GraphComponent> components() const;
};

// A connected component as its own graph, with the map back to the original
// 1-based vertex labels.
struct GraphComponent {
  Graph graph;
  std::vector<std::size_t> original_vertex;
};

inline std::vector<GraphComponent> Graph::components() const {
  auto adj = adjacency();
  std::vector<std::size_t> comp(vertex_count + 1, 0);
  std::size_t ncomp = 0;
  for (std::size_t s = 1; s <= vertex_count; ++s) {
    if (comp[s]) continue;
    ++ncomp;
    std::queue<std::size_t> queue;
    queue.push(s);
    comp[s] = ncomp;
    while (!queue.empty()) {
      std::size_t u = queue.front();
      queue.pop();
      for (std::size_t v : adj[u])
        if (!comp[v]) {
          comp[v] = ncomp;
          queue.push(v);
        }
    }
  }
  std::vector<GraphComponent> out(ncomp);
  std::vector<std::size_t> local(vertex_count + 1, 0);
  for (std::size_t v = 1; v <= vertex_count; ++v) {
    auto& c = out[comp[v] - 1];
    c.original_vertex.push_back(v);
    local[v] = c.original_vertex.size();
    c.graph.vertex_count = c.original_vertex.size();
  }
  for (const auto& [u, v] : edges) out[comp[u] - 1].graph.add_edge(local[u], local[v]);
  return out;
}

// Plain-text graph format: a header line "n_v = <int>", then one "u v" edge
// per line (1-based).  Blank lines are ignored.
inline Graph parse_graph(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  Graph g;
  bool have_header = false;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;  // blank
    if (!have_header) {
      std::string eq, value;
      if (first != "n_v" || !(ls >> eq >> value) || eq != "=")
        throw SyntaxError("expected header 'n_v = <int>'", lineno, 1);
      try {
        g.vertex_count = std::stoul(value);
      } catch (...) {
        throw SyntaxError("bad vertex count '" + value + "'", lineno, 1);
      }
      if (g.vertex_count < 1) throw SyntaxError("vertex count must be positive", lineno, 1);
      have_header = true;
      continue;
    }
    std::size_t v = 0;
    std::size_t u = 0;
    try {
      u = std::stoul(first);
      std::string second;
      if (!(ls >> second)) throw SyntaxError("expected 'u v' edge", lineno, 1);
      v = std::stoul(second);
    } catch (const SyntaxError&) {
      throw;
    } catch (...) {
      throw SyntaxError("bad edge line", lineno, 1);
    }
    try {
      g.add_edge(u, v);
    } catch (const PreconditionViolated& e) {
      throw SyntaxError(e.what(), lineno, 1);
    }
  }
  if (!have_header) throw SyntaxError("missing 'n_v = <int>' header", 1, 1);
  return g;
}

inline std::string serialize_graph(const Graph& g) {
  std::string out = "n_v = " + std::to_string(g.vertex_count) + "\n";
  for (const auto& [u, v] : g.edges)
    out += std::to_string(u) + " " + std::to_string(v) + "\n";
  return out;
}

enum class ReductionVariant { Full, Pure };

namespace detail {

inline Matrix constant_columns(std::size_t rows, const Rat& col_a, const Rat& col_b) {
  Matrix m(rows, 2);
  for (std::size_t r = 0; r < rows; ++r) {
    m.at(r, 0) = col_a;
    m.at(r, 1) = col_b;
  }
  return m;
}

}  // namespace detail

// Games encoding min vertex cover.  Columns are ordered so that the first
// column is the one a lexicographic-first tie-break selects on full ties.
//
//   include game i:  row i (1,1), others (1,2); leader earns n^2 on column a.
//   exclude game i:  row i (0,1), others (1,1); leader earns n^2 on column a.
//   cover game u-v:  one per edge; rows u and v are (0,-1), others (0,1);
//                    leader earns n/|E| on column a.
//   minimization:    identity matrix for both players.
//
// The full variant emits include + exclude + cover + minimization; the pure
// variant emits cover + minimization only.  A cover follower plays a exactly
// when the commitment set touches its edge, so every cover follower plays a
// iff the set is a vertex cover; covering all edges earns the leader exactly
// n and dominates any saving from a smaller non-cover, and among covers the
// minimization game's 1/|S| prefers the smallest.
inline CoupledGame reduce_to_game(const Graph& g, ReductionVariant variant) {
  if (!g.connected())
    throw DisconnectedGraph("the reduction needs a connected graph");
  if (g.edges.empty())
    throw DisconnectedGraph("the reduction needs at least one edge");
  const std::size_t n = g.vertex_count;

  CoupledGame game;
  game.leader_action_count = n;
  const Rat big(static_cast<long>(n) * static_cast<long>(n));

  if (variant == ReductionVariant::Full) {
    for (std::size_t i = 1; i <= n; ++i) {
      FollowerGame f;
      f.name = "I" + std::to_string(i);
      f.follower_payoff = Matrix(n, 2);
      for (std::size_t r = 0; r < n; ++r) {
        f.follower_payoff.at(r, 0) = 1;
        f.follower_payoff.at(r, 1) = (r + 1 == i) ? Rat(1) : Rat(2);
      }
      f.leader_payoff = detail::constant_columns(n, big, Rat(0));
      game.followers.push_back(std::move(f));
    }
    for (std::size_t i = 1; i <= n; ++i) {
      FollowerGame f;
      f.name = "E" + std::to_string(i);
      f.follower_payoff = Matrix(n, 2);
      for (std::size_t r = 0; r < n; ++r) {
        f.follower_payoff.at(r, 0) = (r + 1 == i) ? Rat(0) : Rat(1);
        f.follower_payoff.at(r, 1) = 1;
      }
      f.leader_payoff = detail::constant_columns(n, big, Rat(0));
      game.followers.push_back(std::move(f));
    }
  }
  const Rat edge_weight(n, g.edges.size());
  for (const auto& [u, v] : g.edges) {
    FollowerGame f;
    f.name = "C" + std::to_string(u) + "_" + std::to_string(v);
    f.follower_payoff = Matrix(n, 2);
    for (std::size_t r = 0; r < n; ++r) {
      f.follower_payoff.at(r, 0) = 0;
      f.follower_payoff.at(r, 1) = (r + 1 == u || r + 1 == v) ? Rat(-1) : Rat(1);
    }
    f.leader_payoff = detail::constant_columns(n, edge_weight, Rat(0));
    game.followers.push_back(std::move(f));
  }
  {
    FollowerGame f;
    f.name = "M";
    f.follower_payoff = Matrix(n, n);
    for (std::size_t r = 0; r < n; ++r) f.follower_payoff.at(r, r) = 1;
    f.leader_payoff = f.follower_payoff;
    game.followers.push_back(std::move(f));
  }
  return game;
}

inline CoupledGame reduce_full(const Graph& g) {
  return reduce_to_game(g, ReductionVariant::Full);
}
inline CoupledGame reduce_pure(const Graph& g) {
  return reduce_to_game(g, ReductionVariant::Pure);
}

// Smallest vertex set covering every edge; ties resolved lexicographically.
// Independent oracle for the reductions: plain subset enumeration by size.
inline std::vector<std::size_t> brute_force_min_vc(const Graph& g, long budget = 26) {
  const std::size_t n = g.vertex_count;
  if (n > static_cast<std::size_t>(budget))
    throw BudgetExceeded("graph too large for subset enumeration");
  std::vector<std::pair<std::size_t, std::size_t>> edges(g.edges.begin(), g.edges.end());

  std::vector<std::size_t> best;
  bool found = false;
  for (std::size_t size = 0; size <= n && !found; ++size) {
    // Lexicographic enumeration of all subsets of the given size.
    std::vector<std::size_t> pick(size);
    for (std::size_t i = 0; i < size; ++i) pick[i] = i + 1;
    for (;;) {
      std::vector<bool> in(n + 1, false);
      for (std::size_t v : pick) in[v] = true;
      bool covers = true;
      for (const auto& [u, v] : edges)
        if (!in[u] && !in[v]) {
          covers = false;
          break;
        }
      if (covers) {
        best = pick;
        found = true;
        break;
      }
      if (size == 0) break;
      // next combination
      std::size_t i = size;
      while (i > 0 && pick[i - 1] == n - size + i) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return best;
}

struct VertexCoverSolution {
  std::vector<std::size_t> cover;  // 1-based vertices
  Rat leader_value;
  SolveReport report;
};

// Solves min vertex cover by brute-forcing pure commitment sets on the
// reduction under lexicographic-first tie-breaking.  For a cover S the value
// is n + 1/|S| in the pure variant and n^3 + n + 1/|S| in the full variant.
inline VertexCoverSolution solve_vc_via_game(const Graph& g, ReductionVariant variant,
                                             long budget = kDefaultBudget) {
  CoupledGame game = reduce_to_game(g, variant);
  SolveReport report =
      pure_subset_bruteforce(game, TieBreak::LexicographicFirst, budget);
  VertexCoverSolution out{
      {}, report.value, std::move(report)};
  for (std::size_t a : out.report.commitment.pure_actions()) out.cover.push_back(a + 1);
  return out;
}

}  // namespace stackamb
