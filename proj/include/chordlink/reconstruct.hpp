#pragma once

// Reconstruction of chord diagrams from tree intersection graphs. Two-strand
// trees render directly from a trunk; n-strand trees split along directed
// edges into two-strand pieces that are stacked in arrow order.

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "chordlink/diagram.hpp"
#include "chordlink/graph.hpp"

namespace chordlink {

namespace detail {

// Rooted code of a subtree hanging off `parent`, used to order siblings.
inline std::string subtree_code(const IntersectionGraph& g,
                                const std::vector<std::vector<int>>& adj, int v,
                                int parent) {
  std::vector<std::string> kids;
  for (int u : adj[v])
    if (u != parent) kids.push_back(subtree_code(g, adj, u, v));
  std::sort(kids.begin(), kids.end());
  std::string out = "(" + label_text(g.labels[v]) + "|";
  for (const auto& k : kids) out += k;
  out += ")";
  return out;
}

// Children of x (excluding parent), smallest subtree code first.
inline std::vector<int> sorted_children(const IntersectionGraph& g,
                                        const std::vector<std::vector<int>>& adj, int x,
                                        int parent) {
  std::vector<int> kids;
  for (int u : adj[x])
    if (u != parent) kids.push_back(u);
  std::sort(kids.begin(), kids.end(), [&](int a, int b) {
    std::string ca = subtree_code(g, adj, a, x), cb = subtree_code(g, adj, b, x);
    return ca != cb ? ca < cb : a < b;
  });
  return kids;
}

// An unmarked subtree renders as two blocks around its parent anchor: the A
// block holds the root's first endpoint with every descendant fully nested
// inside, the B block is the root's second endpoint alone.
inline void unmarked_blocks(const IntersectionGraph& g,
                            const std::vector<std::vector<int>>& adj, int x, int parent,
                            std::vector<int>& a_block, std::vector<int>& b_block) {
  auto kids = sorted_children(g, adj, x, parent);
  std::vector<std::vector<int>> ka(kids.size()), kb(kids.size());
  for (size_t i = 0; i < kids.size(); ++i)
    unmarked_blocks(g, adj, kids[i], x, ka[i], kb[i]);
  a_block.clear();
  for (size_t i = kids.size(); i-- > 0;)
    a_block.insert(a_block.end(), ka[i].begin(), ka[i].end());
  a_block.push_back(x);
  for (size_t i = 0; i < kids.size(); ++i)
    a_block.insert(a_block.end(), kb[i].begin(), kb[i].end());
  b_block = {x};
}

// A marked vertex y with its light bough renders per strand as a nest of its
// same-color children around y's endpoint on that strand.
inline std::vector<int> marked_nest(const IntersectionGraph& g,
                                    const std::vector<std::vector<int>>& adj, int y,
                                    int parent, int color) {
  std::vector<int> kids;
  for (int u : sorted_children(g, adj, y, parent))
    if (g.labels[u] == std::pair{color, color}) kids.push_back(u);
  std::vector<std::vector<int>> ka(kids.size()), kb(kids.size());
  for (size_t i = 0; i < kids.size(); ++i)
    unmarked_blocks(g, adj, kids[i], y, ka[i], kb[i]);
  std::vector<int> out;
  for (size_t i = kids.size(); i-- > 0;) out.insert(out.end(), ka[i].begin(), ka[i].end());
  out.push_back(y);
  for (size_t i = 0; i < kids.size(); ++i) out.insert(out.end(), kb[i].begin(), kb[i].end());
  return out;
}

}  // namespace detail

// Render a two-strand tree as a chord diagram whose chord ids are the tree's
// vertex indices. Requires an undirected tree on colors {1,2} whose edges
// share colors, with at least one marked vertex and a trunk.
inline ChordDiagram reconstruct_2strand(const IntersectionGraph& t) {
  if (!is_tree(t)) throw std::invalid_argument("reconstruct: graph is not a tree");
  if (!t.directed.empty())
    throw std::invalid_argument("reconstruct: two-strand trees have no directed edges");
  bool any_marked = false;
  for (int v = 0; v < t.size(); ++v) {
    auto [i, j] = t.labels[v];
    if (j > 2) throw std::invalid_argument("reconstruct: colors must be 1 or 2");
    if (t.marked(v)) any_marked = true;
  }
  if (!any_marked)
    throw std::invalid_argument("reconstruct: tree has no marked vertex");
  for (const auto& [u, v] : t.undirected) {
    auto a = t.labels[u], b = t.labels[v];
    if (a.first != b.first && a.first != b.second && a.second != b.first &&
        a.second != b.second)
      throw std::invalid_argument("reconstruct: adjacent vertices share no color");
  }
  auto trunk = preferred_trunk(t);
  if (!trunk)
    throw std::invalid_argument("reconstruct: tree has no trunk (a heavy bough blocks every vertex)");
  int v = *trunk;
  auto adj = undirected_adjacency(t);

  // Split the trunk's neighbors by their role.
  std::vector<int> nest1, nest2, marked_heads;
  for (int u : detail::sorted_children(t, adj, v, -1)) {
    if (t.marked(u))
      marked_heads.push_back(u);
    else if (t.labels[u].first == 1)
      nest1.push_back(u);
    else
      nest2.push_back(u);
  }

  ChordDiagram d;
  d.strand_count = 2;
  d.strands.resize(2);
  auto append = [](std::vector<int>& strand, const std::vector<int>& block) {
    strand.insert(strand.end(), block.begin(), block.end());
  };
  std::vector<std::vector<int>> a1(nest1.size()), b1(nest1.size());
  for (size_t i = 0; i < nest1.size(); ++i)
    detail::unmarked_blocks(t, adj, nest1[i], v, a1[i], b1[i]);
  std::vector<std::vector<int>> a2(nest2.size()), b2(nest2.size());
  for (size_t i = 0; i < nest2.size(); ++i)
    detail::unmarked_blocks(t, adj, nest2[i], v, a2[i], b2[i]);

  if (t.marked(v)) {
    // Marked trunk: each strand nests that strand's unmarked boughs around
    // the trunk endpoint; marked boughs sit beyond them, after the trunk on
    // strand 1 and before it on strand 2.
    for (size_t i = nest1.size(); i-- > 0;) append(d.strands[0], a1[i]);
    d.strands[0].push_back(v);
    for (size_t i = 0; i < nest1.size(); ++i) append(d.strands[0], b1[i]);
    for (int y : marked_heads) append(d.strands[0], detail::marked_nest(t, adj, y, v, 1));
    for (int y : marked_heads) append(d.strands[1], detail::marked_nest(t, adj, y, v, 2));
    for (size_t i = nest2.size(); i-- > 0;) append(d.strands[1], a2[i]);
    d.strands[1].push_back(v);
    for (size_t i = 0; i < nest2.size(); ++i) append(d.strands[1], b2[i]);
  } else {
    // Unmarked trunk on strand s: unmarked boughs nest around the trunk's
    // first endpoint, the marked boughs sit between its endpoints, and the
    // other strand carries only the marked boughs' far nests.
    int s = t.labels[v].first == 1 ? 0 : 1;
    const auto& nests = s == 0 ? nest1 : nest2;
    const auto& na = s == 0 ? a1 : a2;
    const auto& nb = s == 0 ? b1 : b2;
    for (size_t i = nests.size(); i-- > 0;) append(d.strands[s], na[i]);
    d.strands[s].push_back(v);
    for (size_t i = 0; i < nests.size(); ++i) append(d.strands[s], nb[i]);
    for (int y : marked_heads)
      append(d.strands[s], detail::marked_nest(t, adj, y, v, s + 1));
    d.strands[s].push_back(v);
    for (int y : marked_heads)
      append(d.strands[1 - s], detail::marked_nest(t, adj, y, v, 2 - s));
  }
  return d;
}

struct ReconstructionResult {
  ChordDiagram diagram;
  std::vector<int> relabeling;  // colors of the input tree -> colors realized
};

// Realize a tree on n strands. The tree is first relabeled by the color
// permutation found by check_realizable; the directed edges then split it
// into two-strand components, one marked vertex each, which are rendered
// separately and stacked so every arrow points upward.
inline ReconstructionResult reconstruct_nstrand(const IntersectionGraph& t, int n) {
  if (n < 2) throw std::invalid_argument("reconstruct: need at least 2 strands");
  std::vector<int> identity(n + 1);
  for (int i = 0; i <= n; ++i) identity[i] = i;
  if (n == 2) return {reconstruct_2strand(t), identity};

  auto rep = check_realizable(t, n);
  if (!rep.accepted) {
    std::string why = "reconstruct: tree is not realizable on " + std::to_string(n) +
                      " strands";
    for (const auto& v : rep.violations) why += "; " + v;
    throw std::invalid_argument(why);
  }
  IntersectionGraph s = relabel_colors(t, rep.relabeling);

  // Components of the tree minus its directed edges.
  int m = s.size();
  std::vector<std::vector<int>> adj(m);
  for (const auto& [u, v] : s.undirected) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<int> comp(m, -1);
  int parts = 0;
  for (int v = 0; v < m; ++v) {
    if (comp[v] >= 0) continue;
    comp[v] = parts;
    std::vector<int> stack{v};
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int w : adj[u])
        if (comp[w] < 0) {
          comp[w] = parts;
          stack.push_back(w);
        }
    }
    ++parts;
  }
  struct Piece {
    std::vector<int> vertices;
    int marked_vertex = -1;
    int low_color = 0;  // the marked label {i,i+1}
    std::string code;
  };
  std::vector<Piece> pieces(parts);
  for (int v = 0; v < m; ++v) {
    pieces[comp[v]].vertices.push_back(v);
    if (s.marked(v)) {
      if (pieces[comp[v]].marked_vertex >= 0)
        throw std::logic_error("reconstruct: two marked vertices in one component");
      pieces[comp[v]].marked_vertex = v;
      pieces[comp[v]].low_color = s.labels[v].first;
    }
  }
  for (const auto& p : pieces)
    if (p.marked_vertex < 0)
      throw std::logic_error("reconstruct: component without a marked vertex");

  // Render each piece as a two-strand diagram on colors {i, i+1} -> {1, 2}.
  std::vector<ChordDiagram> rendered(parts);
  for (int c = 0; c < parts; ++c) {
    IntersectionGraph sub;
    sub.strand_count = 2;
    std::map<int, int> local;  // global vertex -> local index
    for (int v : pieces[c].vertices) {
      local[v] = sub.size();
      auto [i, j] = s.labels[v];
      int lo = pieces[c].low_color;
      auto shift = [&](int color) {
        if (color != lo && color != lo + 1)
          throw std::logic_error("reconstruct: component color outside its pair");
        return color - lo + 1;
      };
      sub.labels.push_back({shift(i), shift(j)});
      sub.names.push_back(s.names[v]);
    }
    for (const auto& [u, v] : s.undirected)
      if (comp[u] == c)
        sub.undirected.insert({std::min(local[u], local[v]), std::max(local[u], local[v])});
    ChordDiagram local_d = reconstruct_2strand(sub);
    // Lift chord ids back to global vertex indices.
    ChordDiagram lifted = local_d;
    for (auto& strand : lifted.strands)
      for (int& id : strand) id = pieces[c].vertices[id];
    rendered[c] = std::move(lifted);
    pieces[c].code = detail::subtree_code(s, adj, pieces[c].marked_vertex, -1);
  }

  // Stack pieces bottom to top so each arrow points up, ties broken by
  // (marked pair index, component code, smallest vertex).
  std::vector<std::vector<int>> dag(parts);
  std::vector<int> indegree(parts, 0);
  for (const auto& [u, v] : s.directed) {
    dag[comp[u]].push_back(comp[v]);
    ++indegree[comp[v]];
  }
  auto key = [&](int c) {
    return std::tuple(pieces[c].low_color, pieces[c].code, pieces[c].vertices.front());
  };
  std::vector<int> order;
  std::set<int> ready;
  for (int c = 0; c < parts; ++c)
    if (indegree[c] == 0) ready.insert(c);
  while (!ready.empty()) {
    int best = *ready.begin();
    for (int c : ready)
      if (key(c) < key(best)) best = c;
    ready.erase(best);
    order.push_back(best);
    for (int c : dag[best])
      if (--indegree[c] == 0) ready.insert(c);
  }
  if (static_cast<int>(order.size()) != parts)
    throw std::logic_error("reconstruct: arrow constraints form a cycle");

  ChordDiagram out;
  out.strand_count = n;
  out.strands.resize(n);
  for (int c : order) {
    int lo = pieces[c].low_color;
    for (int piece_strand = 0; piece_strand < 2; ++piece_strand) {
      auto& global = out.strands[lo - 1 + piece_strand];
      const auto& src = rendered[c].strands[piece_strand];
      global.insert(global.end(), src.begin(), src.end());
    }
  }
  return {out, rep.relabeling};
}

struct RoundTripReport {
  bool ok = false;
  ReconstructionResult result;
  std::string diagram_code;
};

// Reconstruct and confirm the diagram's intersection graph matches the
// (relabeled) input tree.
inline RoundTripReport round_trip_check(const IntersectionGraph& t, int n) {
  RoundTripReport rep;
  rep.result = reconstruct_nstrand(t, n);
  rep.diagram_code = serialize(rep.result.diagram);
  IntersectionGraph realized = intersection_graph(rep.result.diagram);
  rep.ok = graphs_isomorphic(realized, relabel_colors(t, rep.result.relabeling));
  return rep;
}

}  // namespace chordlink
