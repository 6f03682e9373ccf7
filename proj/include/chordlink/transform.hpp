#pragma once

#include "chordlink/graph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace chordlink {

// One connected component of the tree minus a chosen chord, together with the
// flags the transformation rules consult.
struct BoughInfo {
  int head = -1;
  std::vector<int> chords;  // sorted, includes head
  int marked_count = 0;
  bool light = false;
  int strand = 0;  // 1-based strand of an unmarked head; 0 when the head is marked
};

struct BoughDecomposition {
  int chord = -1;                  // in canonical ids of the canonicalized diagram
  std::vector<BoughInfo> boughs;   // in crossing order along the chord
};

namespace detail {

// Endpoints of every chord in scan order (strand, slot), strand 0-based.
inline std::vector<std::array<std::pair<int, int>, 2>> chord_endpoints(const ChordDiagram& d) {
  std::vector<std::array<std::pair<int, int>, 2>> eps(d.degree());
  std::vector<int> cnt(d.degree(), 0);
  for (int s = 0; s < d.strand_count; ++s)
    for (int t = 0; t < static_cast<int>(d.strands[s].size()); ++t) {
      int c = d.strands[s][t];
      if (c < 0 || c >= d.degree() || cnt[c] > 1)
        throw std::invalid_argument("transform: malformed diagram");
      eps[c][cnt[c]++] = {s, t};
    }
  return eps;
}

// The combinatorial data a diagram carries beyond its intersection tree.
// Every neighbor of an unmarked chord either contains its low endpoint or its
// high endpoint; each side forms a family of nested intervals, so the whole
// neighborhood is an anchor-ordered chain split by lo_count (the parent sits
// somewhere in the chain and deeper members may wrap around it entirely).
// Marked chords carry their strand-1 chain, the adjacent marked chords, and
// their strand-2 chain.  Rendering this data back is the canonical placement
// used after every move.
struct Arrangement {
  ChordDiagram diagram;  // canonicalized; chord id == tree vertex
  IntersectionGraph graph;
  std::vector<std::vector<int>> adj;
  std::vector<int> parent;  // toward root, -1 at root
  int root = -1;
  bool reflected = false;  // marked root only: marked boughs sit on the mirror side
  // Unmarked chord: nesting chain in anchor order plus the low/high boundary,
  // and the marked neighbors anchored between the two sides.
  std::vector<std::vector<int>> chain;
  std::vector<int> lo_count;
  std::vector<std::vector<int>> marked_at;
  // Marked chord: the two per-strand chains and the marked block.
  std::vector<std::vector<int>> g1, gm, g2;
};

inline int unmarked_strand(const std::array<std::pair<int, int>, 2>& e) {
  return e[0].first;  // both endpoints share it
}

inline Arrangement extract_arrangement(const ChordDiagram& d0) {
  ChordDiagram d = canonicalized(d0);
  if (d.strand_count > 2)
    throw std::invalid_argument("transform: only 1- and 2-strand diagrams are supported");
  Arrangement a;
  a.diagram = d;
  a.graph = intersection_graph(d);
  if (!is_tree(a.graph))
    throw std::invalid_argument("transform: intersection graph is not a tree");
  auto trunk = preferred_trunk(a.graph);
  if (!trunk)
    throw std::invalid_argument("transform: tree is not trimmed (every vertex has a heavy bough)");
  a.root = *trunk;
  int n = d.degree();
  a.adj = undirected_adjacency(a.graph);
  a.parent.assign(n, -1);
  std::deque<int> bfs{a.root};
  std::vector<char> seen(n, 0);
  seen[a.root] = 1;
  while (!bfs.empty()) {
    int v = bfs.front();
    bfs.pop_front();
    for (int u : a.adj[v])
      if (!seen[u]) {
        seen[u] = 1;
        a.parent[u] = v;
        bfs.push_back(u);
      }
  }
  auto eps = chord_endpoints(d);
  a.chain.resize(n);
  a.lo_count.assign(n, 0);
  a.marked_at.resize(n);
  a.g1.resize(n);
  a.gm.resize(n);
  a.g2.resize(n);
  for (int w = 0; w < n; ++w) {
    if (!a.graph.marked(w)) {
      int s = unmarked_strand(eps[w]);
      int lo = eps[w][0].second, hi = eps[w][1].second;
      std::vector<std::pair<int, int>> plain, marked;  // (anchor slot, neighbor)
      for (int x : a.adj[w]) {
        int slot = -1;
        for (auto& [xs, xt] : eps[x])
          if (xs == s && lo < xt && xt < hi) {
            if (slot != -1) throw std::logic_error("transform: neighbor crosses twice");
            slot = xt;
          }
        if (slot == -1) throw std::logic_error("transform: neighbor does not cross");
        (a.graph.marked(x) ? marked : plain).push_back({slot, x});
      }
      std::sort(plain.begin(), plain.end());
      std::sort(marked.begin(), marked.end());
      auto contains_lo = [&](int x) {
        return eps[x][0].second < lo && lo < eps[x][1].second;
      };
      // Low-side members anchor before every marked chord, which anchors
      // before every high-side member; anything else would force a crossing.
      int phase = 0;
      for (auto& [slot, x] : plain) {
        int want = contains_lo(x) ? 0 : 2;
        if (want < phase) throw std::logic_error("transform: unexpected chain layout");
        phase = want;
        if (want == 0) ++a.lo_count[w];
        a.chain[w].push_back(x);
        if (!marked.empty() && want == 0 && slot > marked.front().first)
          throw std::logic_error("transform: unexpected chain layout");
        if (!marked.empty() && want == 2 && slot < marked.back().first)
          throw std::logic_error("transform: unexpected chain layout");
      }
      for (auto& [slot, x] : marked) a.marked_at[w].push_back(x);
    } else {
      int p = -1, q = -1;  // slots on strands 1 and 2
      for (auto& [xs, xt] : eps[w]) (xs == 0 ? p : q) = xt;
      std::vector<std::pair<long long, int>> k1, km, k2;
      for (int x : a.adj[w]) {
        if (a.graph.marked(x)) {
          km.push_back({eps[x][0].first == 0 ? eps[x][0].second : eps[x][1].second, x});
        } else if (unmarked_strand(eps[x]) == 0) {
          k1.push_back({eps[x][1].second, x});  // innermost first around p
        } else {
          k2.push_back({-static_cast<long long>(eps[x][0].second), x});  // innermost first around q
        }
      }
      std::sort(k1.begin(), k1.end());
      std::sort(k2.begin(), k2.end());
      std::sort(km.begin(), km.end());  // strand-1 position, either side of p
      bool mirror = !km.empty() && km.front().first < p;
      for (auto& [slot, x] : km)
        if ((slot < p) != mirror)
          throw std::logic_error("transform: marked neighbors on both sides of a chord");
      for (auto& [key, x] : k1) a.g1[w].push_back(x);
      for (auto& [key, x] : km) a.gm[w].push_back(x);
      for (auto& [key, x] : k2) a.g2[w].push_back(x);
      if (w == a.root) a.reflected = mirror;
    }
  }
  return a;
}

using Tokens = std::vector<int>;

inline void append(Tokens& dst, const Tokens& src) { dst.insert(dst.end(), src.begin(), src.end()); }

// A rendered subtree: the token blocks around the chord's two endpoints plus
// any blocks that must wrap around everything on the strand (chain members
// lying beyond the parent swallow the entire ambient context).
struct Rendered {
  Tokens lo, hi;
  std::vector<std::pair<Tokens, Tokens>> wraps;  // (left, right), innermost first
};

inline Rendered render_unmarked_subtree(const Arrangement& a, int x) {
  const auto& chain = a.chain[x];
  int lc = a.lo_count[x];
  int size = static_cast<int>(chain.size());
  int pi = -1;  // parent's chain position when the parent is unmarked
  for (int i = 0; i < size; ++i)
    if (chain[i] == a.parent[x]) pi = i;
  Rendered out;
  Tokens interior_lo, interior_hi, left_nest, right_nest;
  Tokens* interior = &interior_lo;
  for (int i = 0; i < size; ++i) {
    if (pi < 0 && i == lc) interior = &interior_hi;  // split at the marked parent
    if (i == pi) {
      interior = &interior_hi;  // the parent's own crossing splits the span
      continue;
    }
    bool low_side = i < lc;
    Rendered r = render_unmarked_subtree(a, chain[i]);
    append(*interior, low_side ? r.hi : r.lo);
    bool beyond = pi >= 0 && (low_side ? (pi < lc && i > pi) : (pi >= lc && i < pi));
    if (beyond) {
      // This member contains the parent's whole interval; its far part must
      // wrap around everything the ancestors build.
      if (low_side)
        out.wraps.push_back({r.lo, {}});
      else
        out.wraps.push_back({{}, r.hi});
    } else if (low_side) {
      Tokens next = r.lo;
      append(next, left_nest);
      left_nest = std::move(next);
    } else {
      Tokens next = r.hi;
      append(next, right_nest);
      right_nest = std::move(next);
    }
    for (auto& w : r.wraps) out.wraps.push_back(std::move(w));
  }
  out.lo = std::move(left_nest);
  out.lo.push_back(x);
  append(out.lo, interior_lo);
  out.hi = std::move(interior_hi);
  out.hi.push_back(x);
  append(out.hi, right_nest);
  return out;
}

// Nest of a marked chord's same-strand chain around its endpoint there.
// Chain members beyond the parent wrap around the whole ambient context and
// are returned separately.
struct MarkedNest {
  Tokens block;
  std::vector<std::pair<Tokens, Tokens>> wraps;  // innermost first
};

inline MarkedNest render_marked_nest(const Arrangement& a, int y, const std::vector<int>& group) {
  MarkedNest out;
  Tokens left, right;
  bool past_parent = false;
  for (int c : group) {
    if (c == a.parent[y]) {
      past_parent = true;
      continue;
    }
    Rendered r = render_unmarked_subtree(a, c);
    if (past_parent) {
      out.wraps.push_back({r.lo, r.hi});
    } else {
      Tokens next = std::move(r.lo);
      append(next, left);
      left = std::move(next);
      append(right, r.hi);
    }
    for (auto& w : r.wraps) out.wraps.push_back(std::move(w));
  }
  out.block = std::move(left);
  out.block.push_back(y);
  append(out.block, right);
  return out;
}

inline ChordDiagram render_arrangement(const Arrangement& a) {
  int n = a.diagram.degree();
  ChordDiagram out;
  out.strand_count = a.diagram.strand_count;
  out.strands.assign(out.strand_count, {});
  int root = a.root;
  auto apply_wraps = [](Tokens& core, const std::vector<std::pair<Tokens, Tokens>>& wraps) {
    for (const auto& [wl, wr] : wraps) {
      Tokens next = wl;
      append(next, core);
      append(next, wr);
      core = std::move(next);
    }
  };
  if (a.graph.marked(root)) {
    // Marked trunk: the two chains nest around its endpoints and the marked
    // boughs form a block crossing it, mirrored when reflected.
    Tokens l1, r1, l2, r2;
    std::vector<std::pair<Tokens, Tokens>> wraps1, wraps2;
    for (int u : a.g1[root]) {
      Rendered r = render_unmarked_subtree(a, u);
      Tokens next = std::move(r.lo);
      append(next, l1);
      l1 = std::move(next);
      append(r1, r.hi);
      for (auto& w : r.wraps) wraps1.push_back(std::move(w));
    }
    for (int u : a.g2[root]) {
      Rendered r = render_unmarked_subtree(a, u);
      Tokens next = std::move(r.lo);
      append(next, l2);
      l2 = std::move(next);
      append(r2, r.hi);
      for (auto& w : r.wraps) wraps2.push_back(std::move(w));
    }
    std::vector<Tokens> blocks1, blocks2;
    for (int y : a.gm[root]) {
      MarkedNest n1 = render_marked_nest(a, y, a.g1[y]);
      MarkedNest n2 = render_marked_nest(a, y, a.g2[y]);
      blocks1.push_back(std::move(n1.block));
      blocks2.push_back(std::move(n2.block));
      for (auto& w : n1.wraps) wraps1.push_back(std::move(w));
      for (auto& w : n2.wraps) wraps2.push_back(std::move(w));
    }
    Tokens& s1 = out.strands[0];
    Tokens& s2 = out.strands[1];
    if (!a.reflected) {
      append(s1, l1);
      s1.push_back(root);
      append(s1, r1);
      for (auto& b : blocks1) append(s1, b);
      for (auto& b : blocks2) append(s2, b);
      append(s2, l2);
      s2.push_back(root);
      append(s2, r2);
    } else {
      for (auto& b : blocks1) append(s1, b);
      append(s1, l1);
      s1.push_back(root);
      append(s1, r1);
      append(s2, l2);
      s2.push_back(root);
      append(s2, r2);
      for (auto& b : blocks2) append(s2, b);
    }
    apply_wraps(s1, wraps1);
    apply_wraps(s2, wraps2);
  } else {
    // Unmarked trunk: low-side boughs, marked blocks inside its span,
    // high-side boughs; marked boughs put their far nest on the other strand.
    auto eps = chord_endpoints(a.diagram);
    int s = unmarked_strand(eps[root]);
    int lc = a.lo_count[root];
    Tokens left, inner_lo, mid, inner_hi, right, other;
    std::vector<std::pair<Tokens, Tokens>> wraps;
    for (int i = 0; i < static_cast<int>(a.chain[root].size()); ++i) {
      Rendered r = render_unmarked_subtree(a, a.chain[root][i]);
      if (i < lc) {
        Tokens next = std::move(r.lo);
        append(next, left);
        left = std::move(next);
        append(inner_lo, r.hi);
      } else {
        append(inner_hi, r.lo);
        Tokens next = std::move(r.hi);
        append(next, right);
        right = std::move(next);
      }
      for (auto& w : r.wraps) wraps.push_back(std::move(w));
    }
    for (int y : a.marked_at[root]) {
      MarkedNest near = render_marked_nest(a, y, s == 0 ? a.g1[y] : a.g2[y]);
      MarkedNest far = render_marked_nest(a, y, s == 0 ? a.g2[y] : a.g1[y]);
      append(mid, near.block);
      append(other, far.block);
      for (auto& w : near.wraps) wraps.push_back(std::move(w));
      for (auto& w : far.wraps) wraps.push_back(std::move(w));
    }
    Tokens core = std::move(left);
    core.push_back(root);
    append(core, inner_lo);
    append(core, mid);
    append(core, inner_hi);
    core.push_back(root);
    append(core, right);
    apply_wraps(core, wraps);
    out.strands[s] = std::move(core);
    if (out.strand_count == 2) out.strands[1 - s] = std::move(other);
  }
  std::vector<int> count(n, 0);
  for (const auto& strand : out.strands)
    for (int c : strand) ++count[c];
  for (int c = 0; c < n; ++c)
    if (count[c] != 2) throw std::logic_error("transform: rendering lost a chord");
  return out;
}

// Crossing order of the bough heads along a chord, local to that chord (no
// trunk needed, any strand count).
inline std::vector<int> local_crossing_order(const ChordDiagram& d, const IntersectionGraph& g,
                                             int w) {
  auto eps = chord_endpoints(d);
  std::vector<int> heads;
  for (int x = 0; x < g.size(); ++x)
    if (x != w && g.adjacent(x, w)) heads.push_back(x);
  if (!g.marked(w)) {
    int s = unmarked_strand(eps[w]);
    int lo = eps[w][0].second, hi = eps[w][1].second;
    std::vector<std::pair<int, int>> keyed;
    for (int x : heads) {
      int slot = -1;
      for (auto& [xs, xt] : eps[x])
        if (xs == s && lo < xt && xt < hi) slot = xt;
      keyed.push_back({slot, x});
    }
    std::sort(keyed.begin(), keyed.end());
    heads.clear();
    for (auto& [slot, x] : keyed) heads.push_back(x);
    return heads;
  }
  std::vector<std::pair<long long, int>> k1, km, k2;
  int lo_strand = eps[w][0].first, lo_slot = eps[w][0].second;
  for (int x : heads) {
    if (g.marked(x)) {
      long long key = 0;
      for (auto& [xs, xt] : eps[x])
        if (xs == lo_strand) key = xt;
      km.push_back({key, x});
    } else if (unmarked_strand(eps[x]) == lo_strand &&
               eps[x][0].second < lo_slot && lo_slot < eps[x][1].second) {
      k1.push_back({eps[x][1].second, x});
    } else {
      k2.push_back({-static_cast<long long>(eps[x][0].second), x});
    }
  }
  std::sort(k1.begin(), k1.end());
  std::sort(km.begin(), km.end());
  std::sort(k2.begin(), k2.end());
  heads.clear();
  for (auto& [key, x] : k1) heads.push_back(x);
  for (auto& [key, x] : km) heads.push_back(x);
  for (auto& [key, x] : k2) heads.push_back(x);
  return heads;
}

inline int require_known_chord(const ChordDiagram& original, int w) {
  std::map<int, int> rename;
  for (const auto& strand : original.strands)
    for (int id : strand)
      if (!rename.count(id)) {
        int next = static_cast<int>(rename.size());
        rename[id] = next;
      }
  auto it = rename.find(w);
  if (it == rename.end()) throw std::invalid_argument("transform: unknown chord id");
  return it->second;
}

// Bough heads along a chord in the order the arrangement stores them.
inline std::vector<int> arranged_heads(const Arrangement& a, int w) {
  std::vector<int> heads;
  if (a.graph.marked(w)) {
    heads = a.g1[w];
    heads.insert(heads.end(), a.gm[w].begin(), a.gm[w].end());
    heads.insert(heads.end(), a.g2[w].begin(), a.g2[w].end());
  } else {
    heads.assign(a.chain[w].begin(), a.chain[w].begin() + a.lo_count[w]);
    heads.insert(heads.end(), a.marked_at[w].begin(), a.marked_at[w].end());
    heads.insert(heads.end(), a.chain[w].begin() + a.lo_count[w], a.chain[w].end());
  }
  return heads;
}

// Renders a modified arrangement and checks the move preserved the graph.
// Returns an empty diagram when it did not (the re-embedding is impossible).
inline bool try_render(const Arrangement& a, ChordDiagram& out) {
  out = canonicalized(render_arrangement(a));
  return graphs_isomorphic(intersection_graph(out), a.graph);
}

}  // namespace detail

inline BoughDecomposition decompose(const ChordDiagram& d0, int w) {
  int vtx = detail::require_known_chord(d0, w);
  ChordDiagram d = canonicalized(d0);
  IntersectionGraph g = intersection_graph(d);
  if (!is_tree(g)) throw std::invalid_argument("decompose: intersection graph is not a tree");
  auto all = boughs(g, vtx);
  auto eps = detail::chord_endpoints(d);
  BoughDecomposition out;
  out.chord = vtx;
  for (int head : detail::local_crossing_order(d, g, vtx)) {
    for (const auto& b : all)
      if (b.head == head) {
        BoughInfo info;
        info.head = head;
        info.chords = b.vertices;
        info.marked_count = b.marked_count;
        info.light = b.light;
        info.strand = g.marked(head) ? 0 : detail::unmarked_strand(eps[head]) + 1;
        out.boughs.push_back(std::move(info));
      }
  }
  return out;
}

// Reorders the boughs along a chord.  new_order[i] names the bough (by its
// index in decompose()'s crossing order) that moves into position i.  An
// unmarked bough may not change strands, the marked block stays contiguous,
// heavy boughs keep their relative order, and the re-embedding must keep the
// intersection graph intact.
inline ChordDiagram permute_boughs(const ChordDiagram& d0, int w, const std::vector<int>& new_order) {
  detail::Arrangement a = detail::extract_arrangement(d0);
  int vtx = detail::require_known_chord(d0, w);
  std::vector<int> heads = detail::arranged_heads(a, vtx);
  int m = static_cast<int>(heads.size());
  if (static_cast<int>(new_order.size()) != m)
    throw std::invalid_argument("permute_boughs: order has the wrong length");
  std::vector<char> used(m, 0);
  for (int i : new_order) {
    if (i < 0 || i >= m || used[i]) throw std::invalid_argument("permute_boughs: not a permutation");
    used[i] = 1;
  }
  std::vector<int> new_heads(m);
  for (int i = 0; i < m; ++i) new_heads[i] = heads[new_order[i]];

  if (a.graph.marked(vtx)) {
    auto group_of = [&](int x) {
      if (a.graph.marked(x)) return 1;
      for (int u : a.g1[vtx])
        if (u == x) return 0;
      return 2;
    };
    for (int i = 0; i < m; ++i)
      if (group_of(new_heads[i]) != group_of(heads[i]))
        throw std::invalid_argument(
            "permute_boughs: a bough cannot move to the other strand or into the marked block");
    int n1 = static_cast<int>(a.g1[vtx].size());
    int nm = static_cast<int>(a.gm[vtx].size());
    a.g1[vtx].assign(new_heads.begin(), new_heads.begin() + n1);
    a.gm[vtx].assign(new_heads.begin() + n1, new_heads.begin() + n1 + nm);
    a.g2[vtx].assign(new_heads.begin() + n1 + nm, new_heads.end());
  } else {
    int first = -1, last = -1;
    for (int i = 0; i < m; ++i)
      if (a.graph.marked(new_heads[i])) {
        if (first < 0) first = i;
        last = i;
      }
    int marked_total = static_cast<int>(a.marked_at[vtx].size());
    if (first >= 0 && last - first + 1 != marked_total)
      throw std::invalid_argument("permute_boughs: the marked boughs must stay adjacent");
    std::vector<int> old_heavy, new_heavy;
    auto all = boughs(a.graph, vtx);
    auto heavy = [&](int head) {
      for (const auto& b : all)
        if (b.head == head) return !b.light;
      return false;
    };
    for (int x : heads)
      if (heavy(x)) old_heavy.push_back(x);
    for (int x : new_heads)
      if (heavy(x)) new_heavy.push_back(x);
    if (old_heavy != new_heavy)
      throw std::invalid_argument("permute_boughs: heavy boughs cannot pass each other");
    std::vector<int> plain, marked;
    for (int x : new_heads) (a.graph.marked(x) ? marked : plain).push_back(x);
    a.chain[vtx] = plain;
    a.marked_at[vtx] = marked;
    if (first >= 0) a.lo_count[vtx] = first;
  }
  ChordDiagram out;
  if (!detail::try_render(a, out))
    throw std::invalid_argument("permute_boughs: the order is not realizable for this tree");
  return out;
}

inline ChordDiagram reflect_marked(const ChordDiagram& d0) {
  detail::Arrangement a = detail::extract_arrangement(d0);
  if (!a.graph.marked(a.root))
    throw std::invalid_argument("reflect_marked: the trunk chord is unmarked");
  a.reflected = !a.reflected;
  ChordDiagram out;
  if (!detail::try_render(a, out))
    throw std::logic_error("reflect_marked: reflection changed the intersection graph");
  return out;
}

struct OrbitOptions {
  std::size_t cap = 100000;
  std::vector<std::string>* trace = nullptr;  // one line per discovered code
};

// Closure of the diagram under all legal bough permutations and reflections.
inline std::set<std::string> orbit(const ChordDiagram& d0, const OrbitOptions& opt = {}) {
  detail::Arrangement seed = detail::extract_arrangement(d0);
  std::set<std::string> out{serialize(seed.diagram)};
  std::deque<std::string> queue{*out.begin()};
  while (!queue.empty()) {
    std::string code = queue.front();
    queue.pop_front();
    ChordDiagram d = parse_diagram(code);
    detail::Arrangement a = detail::extract_arrangement(d);
    std::vector<std::pair<std::string, std::string>> found;  // (code, move)
    auto try_move = [&](detail::Arrangement& cand, const std::string& what) {
      ChordDiagram moved;
      if (detail::try_render(cand, moved)) found.push_back({serialize(moved), what});
    };
    int n = a.diagram.degree();
    for (int w = 0; w < n; ++w) {
      std::string at = " at " + chord_name(w);
      if (a.graph.marked(w)) {
        for (auto grp : {&detail::Arrangement::g1, &detail::Arrangement::gm,
                         &detail::Arrangement::g2}) {
          for (std::size_t i = 0; i + 1 < (a.*grp)[w].size(); ++i) {
            detail::Arrangement cand = a;
            std::swap((cand.*grp)[w][i], (cand.*grp)[w][i + 1]);
            try_move(cand, "swap" + at);
          }
        }
      } else {
        for (std::size_t i = 0; i + 1 < a.chain[w].size(); ++i) {
          detail::Arrangement cand = a;
          std::swap(cand.chain[w][i], cand.chain[w][i + 1]);
          try_move(cand, "swap" + at);
        }
        for (std::size_t i = 0; i + 1 < a.marked_at[w].size(); ++i) {
          detail::Arrangement cand = a;
          std::swap(cand.marked_at[w][i], cand.marked_at[w][i + 1]);
          try_move(cand, "swap" + at);
        }
        for (int delta : {-1, 1}) {
          int next = a.lo_count[w] + delta;
          if (next < 0 || next > static_cast<int>(a.chain[w].size())) continue;
          detail::Arrangement cand = a;
          cand.lo_count[w] = next;
          try_move(cand, "shift" + at);
        }
      }
    }
    if (a.graph.marked(a.root)) {
      detail::Arrangement cand = a;
      cand.reflected = !cand.reflected;
      try_move(cand, "reflect");
    }
    for (auto& [next_code, what] : found) {
      if (out.insert(next_code).second) {
        if (opt.trace) opt.trace->push_back(code + " --" + what + "--> " + next_code);
        if (out.size() > opt.cap) throw std::runtime_error("orbit: node cap exceeded");
        queue.push_back(next_code);
      }
    }
  }
  return out;
}

}  // namespace chordlink
