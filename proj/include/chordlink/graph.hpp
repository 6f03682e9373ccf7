#pragma once

// Intersection graphs of chord diagrams, and graph-side tooling: tree file
// parsing, DOT export, bough/trunk analysis, and realizability checks for
// tree intersection graphs.

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "chordlink/diagram.hpp"

namespace chordlink {

struct IntersectionGraph {
  int strand_count = 0;                       // colors are 1..strand_count
  std::vector<std::pair<int, int>> labels;    // per-vertex {i,j}, i <= j, 1-based
  std::vector<std::string> names;             // display names, same length as labels
  std::set<std::pair<int, int>> directed;     // (u, v) means an arrow u -> v
  std::set<std::pair<int, int>> undirected;   // stored with u < v

  int size() const { return static_cast<int>(labels.size()); }
  bool marked(int v) const { return labels[v].first != labels[v].second; }
  bool adjacent(int u, int v) const {
    if (u > v ? undirected.count({v, u}) : undirected.count({u, v})) return true;
    return directed.count({u, v}) || directed.count({v, u});
  }
};

// For each ordered pair of chords, count same-strand endpoint pairs with the
// first chord's endpoint below the second's. The parities (a(u,v), a(v,u))
// decide the edge: (1,1) undirected, (1,0) arrow u -> v, (0,1) arrow v -> u,
// (0,0) none.
inline IntersectionGraph intersection_graph(const ChordDiagram& d0) {
  ChordDiagram d = canonicalized(d0);
  int n = d.degree();
  IntersectionGraph g;
  g.strand_count = d.strand_count;
  g.labels.resize(n);
  g.names.resize(n);
  std::vector<std::vector<std::pair<int, int>>> eps(n);  // (strand, slot)
  for (int s = 0; s < d.strand_count; ++s)
    for (int t = 0; t < static_cast<int>(d.strands[s].size()); ++t)
      eps[d.strands[s][t]].push_back({s + 1, t});
  for (int v = 0; v < n; ++v) {
    int i = eps[v][0].first, j = eps[v][1].first;
    g.labels[v] = {std::min(i, j), std::max(i, j)};
    g.names[v] = chord_name(v);
  }
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      int below_uv = 0, below_vu = 0;
      for (const auto& [su, tu] : eps[u])
        for (const auto& [sv, tv] : eps[v]) {
          if (su != sv) continue;
          (tu < tv ? below_uv : below_vu) += 1;
        }
      bool uv = below_uv & 1, vu = below_vu & 1;
      if (uv && vu) g.undirected.insert({u, v});
      else if (uv) g.directed.insert({u, v});
      else if (vu) g.directed.insert({v, u});
    }
  return g;
}

// A graph is semisymmetric when every unmarked vertex has only undirected
// incidences. Intersection graphs of diagrams satisfy this automatically;
// for externally supplied graphs it is a real condition.
inline bool is_semisymmetric(const IntersectionGraph& g) {
  for (const auto& [u, v] : g.directed)
    if (!g.marked(u) || !g.marked(v)) return false;
  return true;
}

enum class Connectivity { PostCancellation, PreCancellation };

// Connectivity of a diagram: every strand carries at least one endpoint and
// the chord adjacency graph is connected. PostCancellation adjacency is the
// intersection graph (either edge kind); PreCancellation counts chords as
// adjacent whenever they share a strand.
inline bool is_connected(const ChordDiagram& d0,
                         Connectivity mode = Connectivity::PostCancellation) {
  ChordDiagram d = canonicalized(d0);
  for (const auto& s : d.strands)
    if (s.empty()) return false;
  int n = d.degree();
  if (n == 0) return false;
  std::vector<std::vector<int>> adj(n);
  if (mode == Connectivity::PostCancellation) {
    IntersectionGraph g = intersection_graph(d);
    for (const auto& [u, v] : g.undirected) {
      adj[u].push_back(v);
      adj[v].push_back(u);
    }
    for (const auto& [u, v] : g.directed) {
      adj[u].push_back(v);
      adj[v].push_back(u);
    }
  } else {
    std::vector<std::set<int>> strands_of(n);
    for (int s = 0; s < d.strand_count; ++s)
      for (int id : d.strands[s]) strands_of[id].insert(s);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) {
        bool share = false;
        for (int s : strands_of[u])
          if (strands_of[v].count(s)) share = true;
        if (share) {
          adj[u].push_back(v);
          adj[v].push_back(u);
        }
      }
  }
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int v : adj[u])
      if (!seen[v]) {
        seen[v] = 1;
        ++reached;
        stack.push_back(v);
      }
  }
  return reached == n;
}

inline std::vector<std::vector<int>> undirected_adjacency(const IntersectionGraph& g) {
  std::vector<std::vector<int>> adj(g.size());
  auto add = [&](int u, int v) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  };
  for (const auto& [u, v] : g.undirected) add(u, v);
  for (const auto& [u, v] : g.directed) add(u, v);
  for (auto& row : adj) std::sort(row.begin(), row.end());
  return adj;
}

inline bool is_tree(const IntersectionGraph& g) {
  int n = g.size();
  if (n == 0) return false;
  size_t edges = g.directed.size() + g.undirected.size();
  if (edges != static_cast<size_t>(n) - 1) return false;
  auto adj = undirected_adjacency(g);
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int v : adj[u])
      if (!seen[v]) {
        seen[v] = 1;
        ++reached;
        stack.push_back(v);
      }
  }
  return reached == n;
}

// --- tree file format ------------------------------------------------------
//
//   v <id> <i> <j>       vertex with label {i,j}
//   e <id1> -> <id2>     directed edge
//   e <id1> -- <id2>     undirected edge
//
// Blank lines and lines starting with '#' are ignored.
inline IntersectionGraph parse_tree_file(const std::string& text) {
  IntersectionGraph g;
  std::map<std::string, int> index;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  auto fail = [&](const std::string& why) -> std::invalid_argument {
    return std::invalid_argument("tree file line " + std::to_string(line_no) + ": " + why);
  };
  std::set<std::pair<int, int>> used_pairs;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string kind;
    if (!(ls >> kind)) continue;
    if (kind[0] == '#') continue;
    if (kind == "v") {
      std::string id;
      int i = 0, j = 0;
      if (!(ls >> id >> i >> j)) throw fail("expected 'v <id> <i> <j>'");
      std::string rest;
      if (ls >> rest) throw fail("trailing tokens");
      if (i < 1 || j < 1) throw fail("colors must be >= 1");
      if (index.count(id)) throw fail("duplicate vertex id '" + id + "'");
      index[id] = g.size();
      g.labels.push_back({std::min(i, j), std::max(i, j)});
      g.names.push_back(id);
      g.strand_count = std::max({g.strand_count, i, j});
    } else if (kind == "e") {
      std::string a, op, b;
      if (!(ls >> a >> op >> b)) throw fail("expected 'e <id1> (->|--) <id2>'");
      std::string rest;
      if (ls >> rest) throw fail("trailing tokens");
      if (!index.count(a)) throw fail("unknown vertex id '" + a + "'");
      if (!index.count(b)) throw fail("unknown vertex id '" + b + "'");
      int u = index[a], v = index[b];
      if (u == v) throw fail("self-loop on '" + a + "'");
      auto key = std::minmax(u, v);
      if (!used_pairs.insert({key.first, key.second}).second)
        throw fail("duplicate edge between '" + a + "' and '" + b + "'");
      if (op == "->") g.directed.insert({u, v});
      else if (op == "--") g.undirected.insert({std::min(u, v), std::max(u, v)});
      else throw fail("edge operator must be '->' or '--'");
    } else {
      throw fail("unknown record '" + kind + "'");
    }
  }
  return g;
}

inline std::string label_text(std::pair<int, int> label) {
  return "{" + std::to_string(label.first) + "," + std::to_string(label.second) + "}";
}

// Graphviz export. Marked vertices get a double border; undirected edges are
// rendered with dir=none.
inline std::string to_dot(const IntersectionGraph& g) {
  std::string out = "digraph intersection_graph {\n  node [shape=circle];\n";
  for (int v = 0; v < g.size(); ++v) {
    out += "  \"" + g.names[v] + "\" [label=\"" + g.names[v] + " " + label_text(g.labels[v]) + "\"";
    if (g.marked(v)) out += ", peripheries=2";
    out += "];\n";
  }
  for (const auto& [u, v] : g.undirected)
    out += "  \"" + g.names[u] + "\" -> \"" + g.names[v] + "\" [dir=none];\n";
  for (const auto& [u, v] : g.directed)
    out += "  \"" + g.names[u] + "\" -> \"" + g.names[v] + "\";\n";
  out += "}\n";
  return out;
}

// Canonical code of a labelled graph under vertex renumbering: the minimum,
// over all vertex orders, of a flat text encoding. Intended for small graphs.
inline std::string canonical_graph_code(const IntersectionGraph& g) {
  int n = g.size();
  if (n > 8) throw std::invalid_argument("canonical_graph_code: too many vertices");
  std::vector<int> perm(n);  // perm[new] = old
  std::iota(perm.begin(), perm.end(), 0);
  std::string best;
  std::vector<int> inv(n);
  do {
    for (int t = 0; t < n; ++t) inv[perm[t]] = t;
    std::string code;
    for (int t = 0; t < n; ++t) code += label_text(g.labels[perm[t]]) + ";";
    std::set<std::string> edges;
    for (const auto& [u, v] : g.undirected) {
      int a = inv[u], b = inv[v];
      edges.insert(std::to_string(std::min(a, b)) + "--" + std::to_string(std::max(a, b)));
    }
    for (const auto& [u, v] : g.directed)
      edges.insert(std::to_string(inv[u]) + "->" + std::to_string(inv[v]));
    for (const auto& e : edges) code += e + ";";
    if (best.empty() || code < best) best = code;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// Label-preserving isomorphism, directions included.
inline bool graphs_isomorphic(const IntersectionGraph& a, const IntersectionGraph& b) {
  if (a.size() != b.size()) return false;
  if (a.directed.size() != b.directed.size()) return false;
  if (a.undirected.size() != b.undirected.size()) return false;
  auto sorted_labels = [](const IntersectionGraph& g) {
    auto ls = g.labels;
    std::sort(ls.begin(), ls.end());
    return ls;
  };
  if (sorted_labels(a) != sorted_labels(b)) return false;
  return canonical_graph_code(a) == canonical_graph_code(b);
}

// --- boughs and trunks -----------------------------------------------------

// For a tree and a vertex v, each neighbor u of v heads a bough: the
// component of the tree minus v containing u. A bough is light when it holds
// at most one marked vertex and that vertex, if present, is the head (the
// only bough vertex adjacent to v).
struct Bough {
  int head = -1;
  std::vector<int> vertices;  // sorted, includes head
  int marked_count = 0;
  bool light = false;
};

inline std::vector<Bough> boughs(const IntersectionGraph& g, int v) {
  if (!is_tree(g)) throw std::invalid_argument("boughs: graph is not a tree");
  if (v < 0 || v >= g.size()) throw std::invalid_argument("boughs: vertex out of range");
  auto adj = undirected_adjacency(g);
  std::vector<Bough> out;
  for (int head : adj[v]) {
    Bough b;
    b.head = head;
    std::vector<char> seen(g.size(), 0);
    seen[v] = 1;
    seen[head] = 1;
    std::vector<int> stack{head};
    b.vertices.push_back(head);
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int w : adj[u])
        if (!seen[w]) {
          seen[w] = 1;
          b.vertices.push_back(w);
          stack.push_back(w);
        }
    }
    std::sort(b.vertices.begin(), b.vertices.end());
    for (int u : b.vertices)
      if (g.marked(u)) ++b.marked_count;
    b.light = b.marked_count == 0 || (b.marked_count == 1 && g.marked(head));
    out.push_back(std::move(b));
  }
  return out;
}

inline std::vector<int> trunks(const IntersectionGraph& g) {
  std::vector<int> out;
  for (int v = 0; v < g.size(); ++v) {
    auto bs = boughs(g, v);
    if (std::all_of(bs.begin(), bs.end(), [](const Bough& b) { return b.light; }))
      out.push_back(v);
  }
  return out;
}

// Canonical code of the tree rooted at `root`: labels plus recursively sorted
// child codes.
inline std::string rooted_code(const IntersectionGraph& g, int root) {
  if (!is_tree(g)) throw std::invalid_argument("rooted_code: graph is not a tree");
  auto adj = undirected_adjacency(g);
  auto rec = [&](auto&& self, int v, int parent) -> std::string {
    std::vector<std::string> kids;
    for (int u : adj[v])
      if (u != parent) kids.push_back(self(self, u, v));
    std::sort(kids.begin(), kids.end());
    std::string out = "(" + label_text(g.labels[v]) + "|";
    for (const auto& k : kids) out += k;
    out += ")";
    return out;
  };
  return rec(rec, root, -1);
}

// Preferred trunk: among all trunks, the one whose rooted code is smallest,
// ties broken by vertex index.
inline std::optional<int> preferred_trunk(const IntersectionGraph& g) {
  auto ts = trunks(g);
  if (ts.empty()) return std::nullopt;
  int best = ts[0];
  std::string best_code = rooted_code(g, best);
  for (size_t i = 1; i < ts.size(); ++i) {
    std::string code = rooted_code(g, ts[i]);
    if (code < best_code) {
      best = ts[i];
      best_code = code;
    }
  }
  return best;
}

// --- realizability ---------------------------------------------------------

struct RealizabilityReport {
  bool accepted = false;
  std::vector<int> relabeling;  // relabeling[c] = new color of c; index 0 unused
  std::vector<std::string> violations;
  std::string witness_code;  // a realizing diagram, when one was constructed
  std::string method;        // "conditions" or "brute_force"
};

inline IntersectionGraph relabel_colors(const IntersectionGraph& g,
                                        const std::vector<int>& sigma) {
  IntersectionGraph out = g;
  for (auto& [i, j] : out.labels) {
    int a = sigma[i], b = sigma[j];
    i = std::min(a, b);
    j = std::max(a, b);
  }
  return out;
}

namespace detail {

// The acceptance conditions for a candidate tree with colors already fixed.
inline std::vector<std::string> tree_condition_violations(const IntersectionGraph& g, int n) {
  std::vector<std::string> bad;
  for (const auto& [i, j] : g.labels)
    if (j > n) bad.push_back("label " + label_text({i, j}) + " uses a color above " +
                             std::to_string(n));
  auto share = [](std::pair<int, int> a, std::pair<int, int> b) {
    return a.first == b.first || a.first == b.second || a.second == b.first ||
           a.second == b.second;
  };
  auto edge_name = [&](int u, int v) { return g.names[u] + "," + g.names[v]; };
  for (const auto& [u, v] : g.undirected)
    if (!share(g.labels[u], g.labels[v]))
      bad.push_back("adjacent vertices " + edge_name(u, v) + " share no color");
  for (const auto& [u, v] : g.directed)
    if (!share(g.labels[u], g.labels[v]))
      bad.push_back("adjacent vertices " + edge_name(u, v) + " share no color");
  if (!is_semisymmetric(g))
    bad.push_back("directed edge touches an unmarked vertex");
  // Marked pairs sharing exactly one color need exactly one arrow between
  // them, and arrows appear nowhere else.
  for (int u = 0; u < g.size(); ++u)
    for (int v = u + 1; v < g.size(); ++v) {
      if (!g.marked(u) || !g.marked(v)) continue;
      auto [a, b] = g.labels[u];
      auto [c, d] = g.labels[v];
      std::set<int> common;
      for (int x : {a, b})
        if (x == c || x == d) common.insert(x);
      if (common.size() != 1) continue;
      int arrows = static_cast<int>(g.directed.count({u, v}) + g.directed.count({v, u}));
      if (arrows != 1)
        bad.push_back("marked pair " + edge_name(u, v) +
                      " sharing one color needs exactly one arrow, has " +
                      std::to_string(arrows));
      if (g.undirected.count({u, v}))
        bad.push_back("marked pair " + edge_name(u, v) +
                      " sharing one color cannot be joined undirected");
    }
  for (const auto& [u, v] : g.directed) {
    if (!g.marked(u) || !g.marked(v)) continue;  // reported above
    if (g.labels[u] == g.labels[v])
      bad.push_back("arrow between same-label marked vertices " + edge_name(u, v));
  }
  for (int v = 0; v < g.size(); ++v)
    if (g.marked(v) && g.labels[v].second != g.labels[v].first + 1)
      bad.push_back("marked label " + label_text(g.labels[v]) +
                    " is not of the form {i,i+1}");
  std::map<int, int> marked_count;  // i -> count of {i,i+1}
  for (int v = 0; v < g.size(); ++v)
    if (g.marked(v) && g.labels[v].second == g.labels[v].first + 1)
      ++marked_count[g.labels[v].first];
  if (marked_count[1] < 1) bad.push_back("no vertex labeled {1,2}");
  if (n >= 3 && marked_count[n - 1] < 1)
    bad.push_back("no vertex labeled " + label_text({n - 1, n}));
  for (int i = 2; i <= n - 2; ++i)
    if (marked_count[i] != 1)
      bad.push_back("need exactly one vertex labeled " + label_text({i, i + 1}) +
                    ", have " + std::to_string(marked_count[i]));
  // No undirected path may join two marked vertices.
  {
    int m = g.size();
    std::vector<int> comp(m, -1);
    int parts = 0;
    std::vector<std::vector<int>> adj(m);
    for (const auto& [u, v] : g.undirected) {
      adj[u].push_back(v);
      adj[v].push_back(u);
    }
    for (int s = 0; s < m; ++s) {
      if (comp[s] >= 0) continue;
      comp[s] = parts;
      std::vector<int> stack{s};
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
    std::map<int, int> marked_in_comp;
    for (int v = 0; v < m; ++v)
      if (g.marked(v)) ++marked_in_comp[comp[v]];
    for (const auto& [c, count] : marked_in_comp)
      if (count > 1) {
        bad.push_back("an undirected path joins two marked vertices");
        break;
      }
  }
  return bad;
}

inline std::vector<std::vector<int>> color_permutations(int n) {
  std::vector<int> ident(n + 1);
  std::iota(ident.begin(), ident.end(), 0);
  std::vector<std::vector<int>> out;
  std::vector<int> tail(ident.begin() + 1, ident.end());
  std::sort(tail.begin(), tail.end());
  do {
    std::vector<int> sigma(n + 1);
    sigma[0] = 0;
    for (int i = 1; i <= n; ++i) sigma[i] = tail[i - 1];
    out.push_back(std::move(sigma));
  } while (std::next_permutation(tail.begin(), tail.end()));
  return out;
}

}  // namespace detail

// Exhaustive search: enumerate all connected diagrams with as many chords as
// the tree has vertices, and look for one whose intersection graph matches
// the tree up to a color permutation (labels compared exactly after
// relabeling).
inline RealizabilityReport brute_force_realizable(const IntersectionGraph& t, int n,
                                                  Int cap = 1'000'000) {
  RealizabilityReport rep;
  rep.method = "brute_force";
  int m = t.size();
  if (m == 0) {
    rep.violations.push_back("empty graph");
    return rep;
  }
  auto sigmas = detail::color_permutations(n);
  auto all = enumerate_diagrams(m, n, {.cap = cap});
  for (const auto& d : all) {
    if (!is_connected(d)) continue;
    IntersectionGraph gd = intersection_graph(d);
    for (const auto& sigma : sigmas) {
      if (graphs_isomorphic(gd, relabel_colors(t, sigma))) {
        rep.accepted = true;
        rep.relabeling = sigma;
        rep.witness_code = serialize(d);
        return rep;
      }
    }
  }
  rep.violations.push_back("no connected diagram on " + std::to_string(n) +
                           " strands realizes the graph");
  return rep;
}

// Decide whether a tree is the intersection graph of a connected diagram on n
// strands, up to renaming colors. For n >= 3 this checks structural
// conditions over all color permutations; below that the search space is
// small and the decision is made by exhaustive search.
inline RealizabilityReport check_realizable(const IntersectionGraph& t, int n) {
  if (n < 1) throw std::invalid_argument("check_realizable: need n >= 1");
  RealizabilityReport rep;
  if (!is_tree(t)) {
    rep.method = "conditions";
    rep.violations.push_back("graph is not a tree");
    return rep;
  }
  if (n < 3) return brute_force_realizable(t, n);
  rep.method = "conditions";
  for (const auto& sigma : detail::color_permutations(n)) {
    auto bad = detail::tree_condition_violations(relabel_colors(t, sigma), n);
    if (bad.empty()) {
      rep.accepted = true;
      rep.relabeling = sigma;
      return rep;
    }
  }
  rep.violations = detail::tree_condition_violations(t, n);
  rep.violations.push_back("no color permutation satisfies the conditions");
  return rep;
}

}  // namespace chordlink
