// Acceptance harness. Each numbered criterion prints one PASS/FAIL line with
// its wall-clock time against a pinned budget; detail lines follow indented.
// Default runs criteria 1-11; --stretch runs the heavy degree-5 tier instead.
// Exit is nonzero when any executed criterion fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "chordlink/reconstruct.hpp"
#include "chordlink/verify.hpp"

using namespace chordlink;

namespace {

struct Outcome {
  bool ok = true;
  std::vector<std::string> details;
  void note(std::string line) { details.push_back(std::move(line)); }
  void fail(std::string line) {
    ok = false;
    details.push_back("FAIL " + std::move(line));
  }
};

bool g_all_ok = true;

void run_criterion(const std::string& id, const std::string& what, double budget_s,
                   const std::function<void(Outcome&)>& body) {
  Outcome out;
  auto start = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.fail(std::string("exception: ") + e.what());
  }
  double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  bool in_budget = elapsed <= budget_s;
  bool pass = out.ok && in_budget;
  g_all_ok = g_all_ok && pass;
  std::printf("criterion %s: %s (%.1f s, budget %.0f s) - %s\n", id.c_str(),
              pass ? "PASS" : "FAIL", elapsed, budget_s, what.c_str());
  if (!in_budget) std::printf("  | over budget\n");
  for (const auto& line : out.details) std::printf("  | %s\n", line.c_str());
  std::fflush(stdout);
}

Int odd_double_factorial(int n) {  // (2n-1)!!
  Int out = 1;
  for (int i = 3; i <= 2 * n - 1; i += 2) out *= i;
  return out;
}

Int binom(int a, int b) {
  if (b < 0 || b > a) return 0;
  Int out = 1;
  for (int i = 1; i <= b; ++i) out = out * (a - b + i) / i;
  return out;
}

const std::string kCacheDir = "acceptance_cache";

// --- criteria 1..4 ----------------------------------------------------------

void criterion_counts(Outcome& out) {
  long long total = 0;
  for (int n = 1; n <= 5; ++n)
    for (int k = 1; k <= 3; ++k) {
      Int expected = odd_double_factorial(n) * binom(2 * n + k - 1, k - 1);
      auto all = enumerate_diagrams(n, k);
      total += static_cast<long long>(all.size());
      if (Int(all.size()) != expected)
        out.fail("(" + std::to_string(n) + "," + std::to_string(k) + "): enumerated " +
                 std::to_string(all.size()) + ", formula says " + expected.str());
      if (n == 5 && k == 2 && all.size() != 10395)
        out.fail("(5,2) must be 10395, got " + std::to_string(all.size()));
    }
  out.note(std::to_string(total) + " diagrams across n<=5, k<=3; (5,2)=10395 confirmed");
}

void criterion_dimensions(Outcome& out) {
  const int dims_4t[] = {1, 2, 3, 6};
  const int dims_1t4t[] = {0, 1, 1, 3};
  for (int n = 1; n <= 4; ++n) {
    Int d4 = RelationBasis(n, 1, {.one_term = false, .four_term = true}, Ring::Rationals)
                 .quotient_dimension();
    Int d14 = RelationBasis(n, 1, {.one_term = true, .four_term = true}, Ring::Rationals)
                  .quotient_dimension();
    if (d4 != dims_4t[n - 1])
      out.fail("n=" + std::to_string(n) + " mod 4t: got " + d4.str() + ", want " +
               std::to_string(dims_4t[n - 1]));
    if (d14 != dims_1t4t[n - 1])
      out.fail("n=" + std::to_string(n) + " mod 1t+4t: got " + d14.str() + ", want " +
               std::to_string(dims_1t4t[n - 1]));
  }
  out.note("mod 4t: 1,2,3,6; mod 1t+4t: 0,1,1,3 (knot-type diagrams, n=1..4)");
}

std::vector<std::pair<std::string, std::string>> tensor_terms(
    const std::vector<std::pair<ChordDiagram, ChordDiagram>>& split) {
  std::vector<std::pair<std::string, std::string>> out;
  out.reserve(split.size());
  for (const auto& [l, r] : split) out.emplace_back(serialize(l), serialize(r));
  std::sort(out.begin(), out.end());
  return out;
}

void criterion_hopf(Outcome& out) {
  long long pairs = 0;
  for (int k = 1; k <= 2; ++k) {
    std::vector<ChordDiagram> pool;
    for (int n = 1; n <= 2; ++n)
      for (const auto& d : enumerate_diagrams(n, k)) pool.push_back(d);
    for (const auto& d1 : pool)
      for (const auto& d2 : pool) {
        ++pairs;
        auto lhs = tensor_terms(coproduct(product(d1, d2)));
        std::vector<std::pair<ChordDiagram, ChordDiagram>> rhs_split;
        for (const auto& [l1, r1] : coproduct(d1))
          for (const auto& [l2, r2] : coproduct(d2))
            rhs_split.emplace_back(product(l1, l2), product(r1, r2));
        auto rhs = tensor_terms(rhs_split);
        if (lhs != rhs)
          out.fail("coproduct(product) mismatch for " + serialize(d1) + " and " + serialize(d2));
      }
  }
  out.note(std::to_string(pairs) + " products expanded on both sides, k<=2, degrees<=2");
}

void criterion_action(Outcome& out) {
  ChordDiagram knot = parse_diagram("k=1 [a a]");
  long long checks = 0;
  for (int m = 1; m <= 2; ++m) {
    RelationBasis basis(m + 1, 2, {.one_term = false, .four_term = true}, Ring::Rationals,
                        {.cache_dir = kCacheDir});
    for (const auto& d : enumerate_diagrams(m, 2))
      for (int strand = 0; strand < 2; ++strand) {
        int slots = static_cast<int>(d.strands[strand].size()) + 1;
        for (int s = 0; s < slots; ++s)
          for (int t = s + 1; t < slots; ++t) {
            LinearCombination<Rat> diff;
            diff.add_code(serialize(connect_sum(d, knot, strand, s)), 1);
            diff.add_code(serialize(connect_sum(d, knot, strand, t)), -1);
            ++checks;
            if (!basis.is_zero(diff))
              out.fail(serialize(d) + " strand " + std::to_string(strand + 1) + " slots " +
                       std::to_string(s) + "," + std::to_string(t) +
                       ": insertion difference not in the 4t span");
          }
      }
  }
  out.note(std::to_string(checks) + " same-strand insertion differences, all in the 4t span");
}

// --- criterion 5 (expected red: the literal claim is misquantified) ---------

void criterion_share(Outcome& out) {
  VerifyReport literal = verify_share_duality(4, DualityScope::every_vertex);
  VerifyReport restricted = verify_share_duality(4);
  out.note(literal.summary());
  for (std::size_t i = 0; i < literal.failures.size() && i < 3; ++i)
    out.note("  " + literal.failures[i]);
  if (literal.failures.size() > 3)
    out.note("  ... " + std::to_string(literal.failures.size() - 3) + " more");
  out.note(restricted.summary());
  if (!restricted.pass) out.fail("restricted duality regressed; the toolkit is at fault");
  if (!literal.pass)
    out.fail(
        "the every-vertex quantification is false on concrete diagrams; smallest "
        "counterexample k=2 [a b c b a][c]: the bough {a, c} of b is light yet spans four "
        "separated runs. The criterion pins the literal statement, so this line stays red. "
        "The duality does hold at marked vertices and in the share-to-light direction "
        "everywhere (see README).");
}

// --- criteria 6..8, 10, 11 come straight from the sweep module --------------

void from_report(Outcome& out, const VerifyReport& r) {
  for (const auto& line : r.lines) out.note(line);
  for (std::size_t i = 0; i < r.failures.size() && i < 5; ++i) out.note("  " + r.failures[i]);
  out.note(r.summary());
  if (!r.pass) out.fail("sweep reported failures");
}

// --- criterion 9: realizability against brute force -------------------------

const std::array<std::pair<int, int>, 6> kLabels3 = {
    {{1, 1}, {2, 2}, {3, 3}, {1, 2}, {1, 3}, {2, 3}}};

std::vector<std::pair<int, int>> prufer_decode(const std::vector<int>& seq, int m) {
  std::vector<int> degree(m, 1);
  for (int v : seq) ++degree[v];
  std::vector<std::pair<int, int>> edges;
  std::set<int> leaves;
  for (int v = 0; v < m; ++v)
    if (degree[v] == 1) leaves.insert(v);
  std::vector<int> rest = seq;
  for (int v : rest) {
    int leaf = *leaves.begin();
    leaves.erase(leaves.begin());
    edges.push_back({std::min(leaf, v), std::max(leaf, v)});
    if (--degree[v] == 1) leaves.insert(v);
  }
  int a = *leaves.begin(), b = *std::prev(leaves.end());
  edges.push_back({a, b});
  return edges;
}

std::vector<std::vector<std::pair<int, int>>> tree_topologies(int m) {
  if (m == 1) return {{}};
  if (m == 2) return {{{0, 1}}};
  std::vector<std::vector<std::pair<int, int>>> out;
  std::vector<int> seq(m - 2, 0);
  while (true) {
    out.push_back(prufer_decode(seq, m));
    std::size_t i = 0;
    while (i < seq.size() && ++seq[i] == m) seq[i++] = 0;
    if (i == seq.size()) break;
  }
  return out;
}

IntersectionGraph make_tree(int m, const std::vector<std::pair<int, int>>& edges,
                            const std::vector<int>& label_ix, const std::vector<int>& states) {
  IntersectionGraph t;
  t.strand_count = 3;
  for (int v = 0; v < m; ++v) {
    t.labels.push_back(kLabels3[label_ix[v]]);
    t.names.push_back(chord_name(v));
  }
  for (std::size_t e = 0; e < edges.size(); ++e) {
    auto [u, v] = edges[e];
    if (states[e] == 0)
      t.undirected.insert({u, v});
    else if (states[e] == 1)
      t.directed.insert({u, v});
    else
      t.directed.insert({v, u});
  }
  return t;
}

// Walk every (labels, edge states) assignment of every topology.
void for_each_tree(int m, const std::function<void(const IntersectionGraph&)>& fn) {
  for (const auto& edges : tree_topologies(m)) {
    std::vector<int> label_ix(m, 0);
    while (true) {
      std::vector<int> states(edges.size(), 0);
      while (true) {
        fn(make_tree(m, edges, label_ix, states));
        std::size_t i = 0;
        while (i < states.size() && ++states[i] == 3) states[i++] = 0;
        if (i == states.size()) break;
      }
      std::size_t i = 0;
      while (i < label_ix.size() && ++label_ix[i] == 6) label_ix[i++] = 0;
      if (i == label_ix.size()) break;
    }
  }
}

// Canonical intersection-graph codes of all connected diagrams, the same
// ground truth brute_force_realizable scans.
std::set<std::string> realized_codes(int m, int n) {
  std::set<std::string> out;
  for (const auto& d : enumerate_diagrams(m, n))
    if (is_connected(d)) out.insert(canonical_graph_code(intersection_graph(d)));
  return out;
}

std::string tree_text(const IntersectionGraph& t) {
  std::string s;
  for (int v = 0; v < t.size(); ++v) s += t.names[v] + label_text(t.labels[v]) + " ";
  for (const auto& [u, v] : t.undirected) s += t.names[u] + "--" + t.names[v] + " ";
  for (const auto& [u, v] : t.directed) s += t.names[u] + "->" + t.names[v] + " ";
  return s;
}

void criterion_realizable(Outcome& out) {
  auto sigmas = detail::color_permutations(3);
  long long trees = 0, mismatches = 0, anchors = 0;
  std::vector<std::pair<IntersectionGraph, bool>> classes;  // canonical reps, accepted
  std::set<std::string> seen;
  for (int m = 1; m <= 4; ++m) {
    std::set<std::string> realized = realized_codes(m, 3);
    for_each_tree(m, [&](const IntersectionGraph& t) {
      ++trees;
      bool expected = false;
      for (const auto& sigma : sigmas)
        if (realized.count(canonical_graph_code(relabel_colors(t, sigma)))) {
          expected = true;
          break;
        }
      bool got = check_realizable(t, 3).accepted;
      if (got != expected && ++mismatches <= 5)
        out.fail(tree_text(t) + ": check_realizable says " + (got ? "yes" : "no") +
                 ", brute force says " + (expected ? "yes" : "no"));
      if (seen.insert(canonical_graph_code(t)).second) classes.push_back({t, expected});
    });
  }
  if (mismatches > 5) out.fail(std::to_string(mismatches - 5) + " more disagreements");
  out.note(std::to_string(trees) + " labeled directed trees with <=4 vertices, " +
           std::to_string(classes.size()) + " classes, " + std::to_string(mismatches) +
           " disagreements");

  // Anchor the mirrored ground truth to the named function: every class up to
  // 3 vertices, every accepted 4-vertex class, every 200th rejected one.
  long long rejected_stride = 0;
  for (const auto& [t, expected] : classes) {
    bool anchor = t.size() <= 3 || expected || (++rejected_stride % 200 == 0);
    if (!anchor) continue;
    ++anchors;
    if (brute_force_realizable(t, 3).accepted != expected)
      out.fail(tree_text(t) + ": brute_force_realizable disagrees with the realized-code set");
  }
  out.note(std::to_string(anchors) + " classes re-checked by brute_force_realizable directly");

  // Round trips: every accepted class up to 4 vertices, then all 5-vertex
  // trees (three unlabeled shapes cover every tree on 5 vertices).
  long long accepted_small = 0;
  for (const auto& [t, expected] : classes)
    if (expected) {
      ++accepted_small;
      if (!round_trip_check(t, 3).ok) out.fail(tree_text(t) + ": round trip failed");
    }
  const std::vector<std::vector<std::pair<int, int>>> shapes5 = {
      {{0, 1}, {1, 2}, {2, 3}, {3, 4}},
      {{0, 1}, {0, 2}, {0, 3}, {0, 4}},
      {{0, 1}, {1, 2}, {0, 3}, {0, 4}},
  };
  long long accepted5 = 0, candidates5 = 0;
  std::set<std::string> seen5;
  for (const auto& edges : shapes5) {
    std::vector<int> label_ix(5, 0);
    while (true) {
      std::vector<int> states(4, 0);
      while (true) {
        IntersectionGraph t = make_tree(5, edges, label_ix, states);
        ++candidates5;
        if (check_realizable(t, 3).accepted && seen5.insert(canonical_graph_code(t)).second) {
          ++accepted5;
          if (!round_trip_check(t, 3).ok) out.fail(tree_text(t) + ": round trip failed");
        }
        std::size_t i = 0;
        while (i < states.size() && ++states[i] == 3) states[i++] = 0;
        if (i == states.size()) break;
      }
      std::size_t i = 0;
      while (i < label_ix.size() && ++label_ix[i] == 6) label_ix[i++] = 0;
      if (i == label_ix.size()) break;
    }
  }
  out.note(std::to_string(accepted_small) + " accepted classes with <=4 vertices and " +
           std::to_string(accepted5) + " with 5 vertices (of " + std::to_string(candidates5) +
           " candidates) round-trip through reconstruction");
}

// --- stretch tier ------------------------------------------------------------

void criterion_stretch_collapse(Outcome& out) {
  VerifyReport all = verify_tree_class_collapse(5, 2, kCacheDir, /*all_classes=*/true);
  VerifyReport trimmed = verify_tree_class_collapse(5, 2, kCacheDir);
  for (const auto& line : all.lines) out.note(line);
  for (std::size_t i = 0; i < all.failures.size() && i < 3; ++i) out.note("  " + all.failures[i]);
  if (all.failures.size() > 3)
    out.note("  ... " + std::to_string(all.failures.size() - 3) + " more");
  out.note(all.summary());
  out.note(trimmed.summary() + " (the criterion 7 stretch target)");
  if (!trimmed.pass) out.fail("trimmed classes regressed; the toolkit is at fault");
  if (!all.pass)
    out.fail(
        "untrimmed tree classes genuinely split over the rationals, starting at degree 4 "
        "(k=2 [a b c d][c a d b] vs [b d a c]), so graph ambiguity is not all torsion and "
        "this line stays red. The trimmed subset collapses at degree 5 as required.");
}

void criterion_stretch_torsion(Outcome& out) {
  TorsionProbeReport r = torsion_probe(5, 2, kCacheDir);
  for (const auto& line : r.lines) out.note(line);
  bool factor_two = false;
  for (const auto& f : r.factors) factor_two = factor_two || f == 2;
  bool pair_two = false;
  for (const auto& p : r.pairs) pair_two = pair_two || p.order == 2;
  if (factor_two && pair_two)
    out.note("invariant factor 2 present and an order-2 class pair found");
  else
    out.note("order-2 evidence not found within budget (reported, non-fatal per the criterion)");
}

}  // namespace

int main(int argc, char** argv) {
  bool stretch = false;
  for (int i = 1; i < argc; ++i)
    if (std::string(argv[i]) == "--stretch") stretch = true;
  std::filesystem::create_directories(kCacheDir);

  if (stretch) {
    run_criterion("12a", "degree-5 tree classes (trimmed or not) collapse over the rationals",
                  7200, criterion_stretch_collapse);
    run_criterion("12b", "degree-5 integral torsion: factor 2 and an order-2 class pair", 7200,
                  criterion_stretch_torsion);
    return g_all_ok ? 0 : 1;
  }

  run_criterion("1", "enumeration counts match (2n-1)!! * C(2n+k-1, k-1)", 10, criterion_counts);
  run_criterion("2", "knot-type dimensions mod 4t and mod 1t+4t", 30, criterion_dimensions);
  run_criterion("3", "coproduct of a product equals the product of coproducts", 5,
                criterion_hopf);
  run_criterion("4", "strand insertion is well-defined modulo the 4-term relation", 60,
                criterion_action);
  run_criterion("5", "light bough iff share, quantified over every vertex", 300,
                criterion_share);
  run_criterion("6", "orbits equal intersection-graph classes at degree <= 4", 300,
                [](Outcome& out) { from_report(out, verify_orbit_classes(4)); });
  run_criterion("7", "trimmed tree classes collapse mod 1t+4t at degree <= 4 (2 strands)", 600,
                [](Outcome& out) { from_report(out, verify_tree_class_collapse(4, 2, kCacheDir)); });
  run_criterion("8", "tree classes collapse mod 1t+4t at degree <= 4 (3 strands)", 1800,
                [](Outcome& out) { from_report(out, verify_tree_class_collapse(4, 3, kCacheDir)); });
  run_criterion("9", "realizability matches brute force; accepted trees round-trip", 1800,
                criterion_realizable);
  run_criterion("10", "share slides reduce to zero against the plain 4t basis", 300,
                [](Outcome& out) { from_report(out, verify_generalized_four_term(4, 2, kCacheDir)); });
  run_criterion("11", "stars with p+q <= 2 are central mod 1t+4t at combined degree <= 4", 600,
                [](Outcome& out) { from_report(out, verify_star_centrality(2, 2, 4, kCacheDir)); });
  return g_all_ok ? 0 : 1;
}
