#pragma once

// Exhaustive desk-scale sweeps over enumerated diagrams: class collapse
// modulo relations, the light-bough/share duality, orbit coverage of graph
// classes, share-slide combinations against the four-term basis, centrality
// of the star diagrams, and a torsion probe. Each sweep returns a report
// with per-case lines so failures stay auditable.

#include <memory>
#include <sstream>

#include "chordlink/relations.hpp"
#include "chordlink/transform.hpp"

namespace chordlink {

struct VerifyReport {
  std::string title;
  bool pass = true;
  long long checks = 0;
  std::vector<std::string> lines;
  std::vector<std::string> failures;

  void note(std::string line) { lines.push_back(std::move(line)); }
  void fail(std::string what) {
    pass = false;
    failures.push_back(std::move(what));
  }
  std::string summary() const {
    std::ostringstream ss;
    ss << title << ": " << (pass ? "PASS" : "FAIL") << " (" << checks << " checks";
    if (!failures.empty()) ss << ", " << failures.size() << " failures";
    ss << ")";
    return ss.str();
  }
};

namespace detail {

// Connected diagrams whose intersection graph is a tree, grouped by graph
// isomorphism class; members keep enumeration (canonical code) order.
inline std::map<std::string, std::vector<std::string>> tree_classes(int n, int k) {
  std::map<std::string, std::vector<std::string>> out;
  for (const auto& d : enumerate_diagrams(n, k)) {
    if (!is_connected(d)) continue;
    IntersectionGraph g = intersection_graph(d);
    if (!is_tree(g)) continue;
    out[canonical_graph_code(g)].push_back(serialize(d));
  }
  return out;
}

}  // namespace detail

// Every graph class of connected tree diagrams collapses to one point modulo
// the one- and four-term relations over the rationals. On two strands the
// claim covers the classes whose tree is trimmed unless all_classes widens it
// to every tree class; on three or more strands it covers every class.
inline VerifyReport verify_tree_class_collapse(int max_degree, int strands,
                                               const std::string& cache_dir = "",
                                               bool all_classes = false) {
  VerifyReport r;
  bool trimmed_only = strands == 2 && !all_classes;
  r.title = trimmed_only
                ? "trimmed tree classes collapse mod 1t+4t (2 strands)"
                : "tree classes collapse mod 1t+4t (" + std::to_string(strands) + " strands)";
  for (int n = 1; n <= max_degree; ++n) {
    RelationBasis basis(n, strands, {.one_term = true, .four_term = true}, Ring::Rationals,
                        {.cache_dir = cache_dir});
    long long classes = 0, members = 0;
    for (const auto& [gcode, codes] : detail::tree_classes(n, strands)) {
      if (trimmed_only) {
        IntersectionGraph g = intersection_graph(parse_diagram(codes.front()));
        if (!preferred_trunk(g)) continue;
      }
      ++classes;
      members += static_cast<long long>(codes.size());
      LinearCombination<Rat> rep;
      rep.add_code(codes.front(), 1);
      for (std::size_t i = 1; i < codes.size(); ++i) {
        LinearCombination<Rat> member;
        member.add_code(codes[i], 1);
        ++r.checks;
        if (!basis.equal_mod(member, rep)) {
          LinearCombination<Rat> diff = member;
          diff.add_code(codes.front(), -1);
          r.fail("n=" + std::to_string(n) + ": " + codes[i] + " != " + codes.front() +
                 "; reduced difference " + to_text(basis.reduce(diff)));
        }
      }
    }
    r.note("n=" + std::to_string(n) + ": " + std::to_string(classes) + " classes, " +
           std::to_string(members) + " diagrams");
  }
  return r;
}

// Scope of the light-bough/share duality sweep. The full equivalence "light
// iff share" holds at marked vertices; quantified over every vertex it fails
// (smallest counterexample: k=2 [a b c b a][c], vertex b, bough {a, c} is
// light but occupies four separated runs). The directions that do survive at
// every vertex: a share is always light, and a light bough containing no
// marked chord is always a share.
enum class DualityScope { marked_vertices, every_vertex };

inline VerifyReport verify_share_duality(int max_degree,
                                         DualityScope scope = DualityScope::marked_vertices) {
  VerifyReport r;
  r.title = scope == DualityScope::marked_vertices
                ? "light boughs are exactly shares at marked vertices (2 strands)"
                : "light boughs are exactly shares at every vertex (2 strands)";
  for (int n = 1; n <= max_degree; ++n) {
    long long diagrams = 0;
    for (const auto& d : enumerate_diagrams(n, 2)) {
      if (!is_connected(d)) continue;
      IntersectionGraph g = intersection_graph(d);
      if (!is_tree(g)) continue;
      bool any_marked = false;
      for (int v = 0; v < g.size(); ++v)
        if (g.marked(v)) any_marked = true;
      if (!any_marked) continue;
      ++diagrams;
      for (int v = 0; v < g.size(); ++v)
        for (const auto& b : boughs(g, v)) {
          std::set<int> chords(b.vertices.begin(), b.vertices.end());
          bool share = is_share(d, chords).has_value();
          ++r.checks;
          std::string where = "n=" + std::to_string(n) + " " + serialize(d) + " vertex " +
                              chord_name(v) + " bough at " + chord_name(b.head);
          if (share && !b.light) r.fail(where + ": a share but not light");
          bool must_be_share = scope == DualityScope::every_vertex ||
                               g.marked(v) || b.marked_count == 0;
          if (b.light && !share && must_be_share)
            r.fail(where + ": light but not a share");
        }
    }
    r.note("n=" + std::to_string(n) + ": " + std::to_string(diagrams) + " tree diagrams");
  }
  return r;
}

// orbit() reaches the whole graph class from every member when the tree is
// trimmed, and rejects untrimmed trees.
inline VerifyReport verify_orbit_classes(int max_degree) {
  VerifyReport r;
  r.title = "orbits cover graph classes (2 strands, trimmed)";
  for (int n = 1; n <= max_degree; ++n) {
    long long trimmed = 0, untrimmed = 0;
    for (const auto& [gcode, codes] : detail::tree_classes(n, 2)) {
      IntersectionGraph g = intersection_graph(parse_diagram(codes.front()));
      if (preferred_trunk(g)) {
        ++trimmed;
        std::set<std::string> expected(codes.begin(), codes.end());
        for (const auto& code : codes) {
          ++r.checks;
          std::set<std::string> got = orbit(parse_diagram(code));
          if (got != expected)
            r.fail("n=" + std::to_string(n) + " " + code + ": orbit size " +
                   std::to_string(got.size()) + " != class size " +
                   std::to_string(expected.size()));
        }
      } else {
        ++untrimmed;
        ++r.checks;
        bool rejected = false;
        try {
          orbit(parse_diagram(codes.front()));
        } catch (const std::invalid_argument&) {
          rejected = true;
        }
        if (!rejected)
          r.fail("n=" + std::to_string(n) + " " + codes.front() + ": untrimmed class accepted");
      }
    }
    r.note("n=" + std::to_string(n) + ": " + std::to_string(trimmed) + " trimmed and " +
           std::to_string(untrimmed) + " untrimmed classes");
  }
  return r;
}

// Sliding a chord endpoint across a whole share: the signed sum of the
// placements flanking the share's arcs lies in the span of the plain
// four-term relations. When isolated chords wipe out some placements, the
// surviving ones must still cancel modulo the one- and four-term relations.
inline VerifyReport verify_generalized_four_term(int max_degree = 4, int max_share_size = 2,
                                                 const std::string& cache_dir = "") {
  VerifyReport r;
  r.title = "share slides vanish against the 4t basis (2 strands)";
  for (int total = 2; total <= max_degree; ++total) {
    int m = total - 1;  // chords besides the one being slid
    RelationBasis four(total, 2, {.one_term = false, .four_term = true}, Ring::Rationals,
                       {.cache_dir = cache_dir});
    RelationBasis full(total, 2, {.one_term = true, .four_term = true}, Ring::Rationals,
                       {.cache_dir = cache_dir});
    long long slides = 0, reductions = 0;
    for (const auto& base : enumerate_diagrams(m, 2)) {
      for (int mask = 1; mask < (1 << m); ++mask) {
        if (__builtin_popcount(static_cast<unsigned>(mask)) > max_share_size) continue;
        std::set<int> chords;
        for (int c = 0; c < m; ++c)
          if (mask & (1 << c)) chords.insert(c);
        auto share = is_share(base, chords);
        if (!share) continue;
        for (int fs = 0; fs < 2; ++fs) {
          int len = static_cast<int>(base.strands[fs].size());
          for (int fp = 0; fp <= len; ++fp) {
            // Drop the far endpoint of a fresh chord, keeping the share's
            // arcs intact (a placement inside an arc would break it up).
            bool split = false;
            std::vector<Arc> arcs = share->arcs;
            for (auto& arc : arcs) {
              if (arc.strand != fs) continue;
              if (fp <= arc.lo) {
                ++arc.lo;
                ++arc.hi;
              } else if (fp <= arc.hi) {
                split = true;
              }
            }
            if (split) continue;
            ChordDiagram ctx = detail::insert_endpoint(base, m, fs, fp);
            LinearCombination<Rat> x;
            for (const auto& arc : arcs) {
              x.add(detail::insert_endpoint(ctx, m, arc.strand, arc.lo), 1);
              x.add(detail::insert_endpoint(ctx, m, arc.strand, arc.hi + 1), -1);
            }
            ++slides;
            ++r.checks;
            if (!four.is_zero(x))
              r.fail("slide of a new chord (far endpoint strand " + std::to_string(fs + 1) +
                     " slot " + std::to_string(fp) + ") across " + serialize(base));
            LinearCombination<Rat> survivors;
            bool dropped = false;
            for (const auto& [code, coeff] : x.terms) {
              if (has_isolated_chord(parse_diagram(code)))
                dropped = true;
              else
                survivors.add_code(code, coeff);
            }
            if (dropped && !survivors.empty()) {
              ++reductions;
              ++r.checks;
              if (!full.is_zero(survivors))
                r.fail("isolated-chord reduction left " + to_text(survivors));
            }
          }
        }
      }
    }
    r.note("degree " + std::to_string(total) + ": " + std::to_string(slides) + " slides, " +
           std::to_string(reductions) + " isolated-chord reductions");
  }
  return r;
}

// The star diagrams commute with everything modulo the one- and four-term
// relations, at any combined degree the caller budgets for.
inline VerifyReport verify_star_centrality(int max_petals = 2, int max_partner_degree = 2,
                                           int max_combined_degree = 4,
                                           const std::string& cache_dir = "") {
  VerifyReport r;
  r.title = "star diagrams are central mod 1t+4t (2 strands)";
  std::map<int, std::unique_ptr<RelationBasis>> bases;
  auto basis_for = [&](int n) -> RelationBasis& {
    auto& slot = bases[n];
    if (!slot)
      slot = std::make_unique<RelationBasis>(
          n, 2, RelationFlags{.one_term = true, .four_term = true}, Ring::Rationals,
          BasisOptions{.cache_dir = cache_dir});
    return *slot;
  };
  for (int p = 0; p <= max_petals; ++p)
    for (int q = 0; p + q <= max_petals; ++q) {
      ChordDiagram star = build_star(p, q);
      for (int nd = 1; nd <= max_partner_degree; ++nd) {
        if (star.degree() + nd > max_combined_degree) continue;
        RelationBasis& basis = basis_for(star.degree() + nd);
        long long products = 0;
        for (const auto& d : enumerate_diagrams(nd, 2)) {
          LinearCombination<Rat> diff;
          diff.add(product(star, d), 1);
          diff.add(product(d, star), -1);
          ++r.checks;
          ++products;
          if (!basis.is_zero(diff))
            r.fail("star(" + std::to_string(p) + "," + std::to_string(q) +
                   ") does not commute with " + serialize(d));
        }
        r.note("star(" + std::to_string(p) + "," + std::to_string(q) + ") x degree " +
               std::to_string(nd) + ": " + std::to_string(products) + " products");
      }
    }
  return r;
}

// Integral torsion of the quotient plus a search for tree-class pairs that
// agree over the rationals but not over the integers.
struct TorsionProbeReport {
  std::string title;
  std::vector<Int> factors;  // invariant factors above 1
  struct Pair {
    std::string rep, member;
    Int order;  // smallest multiplier landing in the lattice; 0 if above 64
  };
  std::vector<Pair> pairs;
  long long classes = 0;
  long long members = 0;
  std::vector<std::string> lines;
};

inline TorsionProbeReport torsion_probe(int degree, int strands,
                                        const std::string& cache_dir = "") {
  TorsionProbeReport r;
  r.title = "torsion probe n=" + std::to_string(degree) + " k=" + std::to_string(strands);
  RelationBasis zbasis(degree, strands, {.one_term = true, .four_term = true}, Ring::Integers,
                       {.cache_dir = cache_dir});
  RelationBasis qbasis(degree, strands, {.one_term = true, .four_term = true}, Ring::Rationals,
                       {.cache_dir = cache_dir});
  r.factors = zbasis.torsion();
  {
    std::string f = "invariant factors:";
    if (r.factors.empty()) f += " none";
    for (const auto& x : r.factors) f += " " + x.str();
    r.lines.push_back(std::move(f));
  }
  for (const auto& [gcode, codes] : detail::tree_classes(degree, strands)) {
    ++r.classes;
    r.members += static_cast<long long>(codes.size());
    for (std::size_t i = 1; i < codes.size(); ++i) {
      LinearCombination<Rat> diff;
      diff.add_code(codes[i], 1);
      diff.add_code(codes.front(), -1);
      if (!qbasis.is_zero(diff) || zbasis.is_zero(diff)) continue;
      LinearCombination<Int> idiff;
      idiff.terms[codes[i]] = 1;
      idiff.terms[codes.front()] = -1;
      TorsionProbeReport::Pair p{codes.front(), codes[i],
                                 zbasis.element_torsion_order(idiff, 64)};
      r.lines.push_back(p.member + " - " + p.rep + " has order " + p.order.str());
      r.pairs.push_back(std::move(p));
    }
  }
  r.lines.push_back(std::to_string(r.classes) + " tree classes, " +
                    std::to_string(r.members) + " members, " +
                    std::to_string(r.pairs.size()) + " rational/integral splits");
  return r;
}

}  // namespace chordlink
