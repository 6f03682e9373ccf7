// Command-line front-end. Subcommands map onto the library one-to-one:
// enumerate, graph, equal, dim, dim-trees, torsion, realizable, reconstruct,
// orbit, and the verification sweeps under `verify`. All numeric output is
// exact; rationals print as p/q. Exit codes: 0 success (and, for boolean
// queries, a positive answer), 1 negative answer or failed verification,
// 2 usage or runtime error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "chordlink/reconstruct.hpp"
#include "chordlink/verify.hpp"

using json = nlohmann::ordered_json;
using namespace chordlink;

namespace {

struct CommonOpts {
  std::string relations = "1t,4t";
  std::string ring = "q";
  long long cap = 1'000'000;
  std::string cache_dir;
  bool as_json = false;
};

RelationFlags parse_relations(const std::string& text) {
  RelationFlags flags{.one_term = false, .four_term = false, .antisym = false};
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "1t")
      flags.one_term = true;
    else if (item == "4t")
      flags.four_term = true;
    else if (item == "as")
      flags.antisym = true;
    else if (!item.empty())
      throw CLI::ValidationError("--relations", "unknown relation '" + item +
                                                    "' (expected 1t, 4t, as)");
  }
  return flags;
}

Ring parse_ring(const std::string& text) {
  if (text == "q") return Ring::Rationals;
  if (text == "z") return Ring::Integers;
  throw CLI::ValidationError("--ring", "expected q or z, got '" + text + "'");
}

void add_common(CLI::App* sub, CommonOpts& c, bool with_basis_flags = true) {
  if (with_basis_flags) {
    sub->add_option("--relations", c.relations,
                    "comma list of relations: 1t,4t,as (default 1t,4t)");
    sub->add_option("--ring", c.ring, "coefficient ring: q or z (default q)");
    sub->add_option("--cache-dir", c.cache_dir, "directory for the basis cache");
  }
  sub->add_option("--cap", c.cap, "refuse runs touching more diagrams than this");
  sub->add_flag("--json", c.as_json, "machine-readable output, stable key order");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int infer_colors(const IntersectionGraph& g) {
  int colors = 2;
  for (const auto& [i, j] : g.labels) colors = std::max({colors, i, j});
  return colors;
}

json report_json(const VerifyReport& r) {
  return json{{"title", r.title},
              {"pass", r.pass},
              {"checks", r.checks},
              {"notes", r.lines},
              {"failures", r.failures}};
}

int print_report(const VerifyReport& r, bool as_json) {
  if (as_json) {
    std::cout << report_json(r).dump(2) << "\n";
  } else {
    for (const auto& line : r.lines) std::cout << line << "\n";
    for (const auto& f : r.failures) std::cout << "FAIL " << f << "\n";
    std::cout << r.summary() << "\n";
  }
  return r.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"chordlink: exact computations with chord diagrams on string links"};
  app.require_subcommand(1);
  CommonOpts c;
  int exit_code = 0;

  // enumerate
  int en_n = 0, en_k = 0;
  auto* enumerate_cmd = app.add_subcommand("enumerate", "list canonical diagram codes");
  enumerate_cmd->add_option("n", en_n, "degree (number of chords)")->required();
  enumerate_cmd->add_option("k", en_k, "number of strands")->required();
  add_common(enumerate_cmd, c, false);
  enumerate_cmd->callback([&] {
    auto all = enumerate_diagrams(en_n, en_k, {.cap = Int(c.cap)});
    if (c.as_json) {
      json codes = json::array();
      for (const auto& d : all) codes.push_back(serialize(d));
      std::cout << json{{"n", en_n}, {"k", en_k}, {"count", all.size()}, {"codes", codes}}.dump(2)
                << "\n";
    } else {
      for (const auto& d : all) std::cout << serialize(d) << "\n";
    }
  });

  // graph
  std::string gr_code;
  auto* graph_cmd = app.add_subcommand("graph", "intersection graph of a diagram (DOT or JSON)");
  graph_cmd->add_option("diagram", gr_code, "diagram code, e.g. \"k=2 [a b a b][]\"")->required();
  add_common(graph_cmd, c, false);
  graph_cmd->callback([&] {
    IntersectionGraph g = intersection_graph(parse_diagram(gr_code));
    if (!c.as_json) {
      std::cout << to_dot(g);
      return;
    }
    json vertices = json::array();
    for (int v = 0; v < g.size(); ++v)
      vertices.push_back(json{{"name", g.names[v]},
                              {"label", {g.labels[v].first, g.labels[v].second}},
                              {"marked", g.marked(v)}});
    auto edge_list = [&](const std::set<std::pair<int, int>>& edges) {
      json out = json::array();
      for (const auto& [u, v] : edges) out.push_back(json::array({g.names[u], g.names[v]}));
      return out;
    };
    std::cout << json{{"strands", g.strand_count},
                      {"vertices", vertices},
                      {"directed", edge_list(g.directed)},
                      {"undirected", edge_list(g.undirected)}}
                     .dump(2)
              << "\n";
  });

  // equal
  std::string eq_a, eq_b;
  auto* equal_cmd =
      app.add_subcommand("equal", "decide equality of two diagrams modulo relations");
  equal_cmd->add_option("first", eq_a, "diagram code")->required();
  equal_cmd->add_option("second", eq_b, "diagram code")->required();
  add_common(equal_cmd, c);
  equal_cmd->callback([&] {
    ChordDiagram a = parse_diagram(eq_a), b = parse_diagram(eq_b);
    bool equal;
    std::string difference;
    if (a.degree() != b.degree() || a.strand_count != b.strand_count) {
      equal = false;
      difference = "degree or strand count differs";
    } else if (serialize(a) == serialize(b)) {
      equal = true;
    } else {
      RelationBasis basis(a.degree(), a.strand_count, parse_relations(c.relations),
                          parse_ring(c.ring), {.cap = Int(c.cap), .cache_dir = c.cache_dir});
      LinearCombination<Rat> diff;
      diff.add_code(serialize(a), 1);
      diff.add_code(serialize(b), -1);
      equal = basis.is_zero(diff);
      if (!equal) difference = to_text(basis.reduce(diff));
    }
    if (c.as_json)
      std::cout << json{{"equal", equal},
                        {"relations", c.relations},
                        {"ring", c.ring},
                        {"difference", difference}}
                       .dump(2)
                << "\n";
    else if (equal)
      std::cout << "equal\n";
    else
      std::cout << "not equal; reduced difference: " << difference << "\n";
    exit_code = equal ? 0 : 1;
  });

  // dim
  int dim_n = 0, dim_k = 0;
  auto* dim_cmd = app.add_subcommand("dim", "dimension of degree-n diagrams modulo relations");
  dim_cmd->add_option("n", dim_n, "degree")->required();
  dim_cmd->add_option("k", dim_k, "number of strands")->required();
  add_common(dim_cmd, c);
  dim_cmd->callback([&] {
    RelationBasis basis(dim_n, dim_k, parse_relations(c.relations), parse_ring(c.ring),
                        {.cap = Int(c.cap), .cache_dir = c.cache_dir});
    if (c.as_json)
      std::cout << json{{"n", dim_n},
                        {"k", dim_k},
                        {"relations", c.relations},
                        {"ring", c.ring},
                        {"diagrams", static_cast<long long>(basis.index().size())},
                        {"dimension", basis.quotient_dimension().str()}}
                       .dump(2)
                << "\n";
    else
      std::cout << basis.quotient_dimension().str() << "\n";
  });

  // dim-trees
  int dt_n = 0;
  auto* dt_cmd = app.add_subcommand(
      "dim-trees", "dimension spanned by trimmed tree classes (2 strands, rationals)");
  dt_cmd->add_option("n", dt_n, "degree")->required();
  add_common(dt_cmd, c);
  dt_cmd->callback([&] {
    if (parse_ring(c.ring) != Ring::Rationals)
      throw CLI::ValidationError("--ring", "dim-trees is a rational-span computation");
    RelationBasis basis(dt_n, 2, parse_relations(c.relations), Ring::Rationals,
                        {.cap = Int(c.cap), .cache_dir = c.cache_dir});
    std::vector<LinearCombination<Rat>> reps;
    for (const auto& [gcode, codes] : detail::tree_classes(dt_n, 2)) {
      IntersectionGraph g = intersection_graph(parse_diagram(codes.front()));
      if (!preferred_trunk(g)) continue;
      LinearCombination<Rat> rep;
      rep.add_code(codes.front(), 1);
      reps.push_back(std::move(rep));
    }
    int span = basis.subspace_dimension(reps);
    if (c.as_json)
      std::cout << json{{"n", dt_n},
                        {"relations", c.relations},
                        {"trimmed_tree_classes", reps.size()},
                        {"span_dimension", span},
                        {"quotient_dimension", basis.quotient_dimension().str()}}
                       .dump(2)
                << "\n";
    else
      std::cout << reps.size() << " trimmed tree classes span " << span << " of "
                << basis.quotient_dimension().str() << " dimensions\n";
  });

  // torsion
  int to_n = 0, to_k = 0;
  bool to_probe = false, to_heavy = false;
  auto* to_cmd = app.add_subcommand("torsion", "invariant factors of the integral quotient");
  to_cmd->add_option("n", to_n, "degree")->required();
  to_cmd->add_option("k", to_k, "number of strands")->required();
  to_cmd->add_flag("--probe", to_probe,
                   "also search tree classes for rational/integral splits");
  to_cmd->add_flag("--heavy", to_heavy, "opt into degree >= 5 (minutes of runtime)");
  add_common(to_cmd, c);
  to_cmd->callback([&] {
    if (to_n >= 5 && !to_heavy)
      throw CLI::ValidationError("torsion",
                                 "degree >= 5 takes minutes; pass --heavy to confirm");
    if (to_probe) {
      TorsionProbeReport r = torsion_probe(to_n, to_k, c.cache_dir);
      if (c.as_json) {
        json factors = json::array(), pairs = json::array();
        for (const auto& f : r.factors) factors.push_back(f.str());
        for (const auto& p : r.pairs)
          pairs.push_back(json{{"representative", p.rep},
                               {"member", p.member},
                               {"order", p.order.str()}});
        std::cout << json{{"title", r.title},
                          {"factors", factors},
                          {"pairs", pairs},
                          {"classes", r.classes},
                          {"members", r.members}}
                         .dump(2)
                  << "\n";
      } else {
        for (const auto& line : r.lines) std::cout << line << "\n";
      }
      return;
    }
    RelationBasis basis(to_n, to_k, parse_relations(c.relations), Ring::Integers,
                        {.cap = Int(c.cap), .cache_dir = c.cache_dir});
    auto factors = basis.torsion();
    if (c.as_json) {
      json out = json::array();
      for (const auto& f : factors) out.push_back(f.str());
      std::cout << json{{"n", to_n}, {"k", to_k}, {"relations", c.relations}, {"factors", out}}
                       .dump(2)
                << "\n";
    } else if (factors.empty()) {
      std::cout << "no torsion\n";
    } else {
      for (const auto& f : factors) std::cout << f.str() << "\n";
    }
  });

  // realizable
  std::string re_file;
  int re_colors = 0;
  auto* re_cmd = app.add_subcommand("realizable", "test whether a marked tree is realizable");
  re_cmd->add_option("treefile", re_file, "tree description file")->required();
  re_cmd->add_option("-n,--colors", re_colors, "number of strands (default: inferred)");
  add_common(re_cmd, c, false);
  re_cmd->callback([&] {
    IntersectionGraph t = parse_tree_file(read_file(re_file));
    int n = re_colors > 0 ? re_colors : infer_colors(t);
    RealizabilityReport r = check_realizable(t, n);
    if (c.as_json) {
      json relabeling = json::array();
      for (std::size_t i = 1; i < r.relabeling.size(); ++i) relabeling.push_back(r.relabeling[i]);
      std::cout << json{{"accepted", r.accepted},
                        {"method", r.method},
                        {"colors", n},
                        {"violations", r.violations},
                        {"witness", r.witness_code},
                        {"relabeling", relabeling}}
                       .dump(2)
                << "\n";
    } else if (r.accepted) {
      std::cout << "accepted (" << r.method << ")\n";
      if (!r.witness_code.empty()) std::cout << "witness: " << r.witness_code << "\n";
    } else {
      std::cout << "rejected (" << r.method << ")\n";
      for (const auto& v : r.violations) std::cout << "violation: " << v << "\n";
    }
    exit_code = r.accepted ? 0 : 1;
  });

  // reconstruct
  std::string rc_file;
  int rc_colors = 0;
  bool rc_verify = false;
  auto* rc_cmd = app.add_subcommand("reconstruct", "build a diagram realizing a marked tree");
  rc_cmd->add_option("treefile", rc_file, "tree description file")->required();
  rc_cmd->add_option("-n,--colors", rc_colors, "number of strands (default: inferred)");
  rc_cmd->add_flag("--verify", rc_verify, "round-trip the result through its intersection graph");
  add_common(rc_cmd, c, false);
  rc_cmd->callback([&] {
    IntersectionGraph t = parse_tree_file(read_file(rc_file));
    int n = rc_colors > 0 ? rc_colors : infer_colors(t);
    bool round_trip_ok = true;
    std::string code;
    ReconstructionResult result;
    if (rc_verify) {
      RoundTripReport rt = round_trip_check(t, n);
      result = rt.result;
      code = rt.diagram_code;
      round_trip_ok = rt.ok;
    } else {
      result = reconstruct_nstrand(t, n);
      code = serialize(result.diagram);
    }
    if (c.as_json) {
      json relabeling = json::array();
      for (std::size_t i = 1; i < result.relabeling.size(); ++i)
        relabeling.push_back(result.relabeling[i]);
      json out{{"diagram", code}, {"colors", n}, {"relabeling", relabeling}};
      if (rc_verify) out["round_trip"] = round_trip_ok;
      std::cout << out.dump(2) << "\n";
    } else {
      std::cout << code << "\n";
      if (rc_verify) std::cout << "round trip: " << (round_trip_ok ? "ok" : "MISMATCH") << "\n";
    }
    exit_code = round_trip_ok ? 0 : 1;
  });

  // orbit
  std::string or_code;
  bool or_trace = false;
  auto* or_cmd =
      app.add_subcommand("orbit", "all diagrams reachable by elementary transformations");
  or_cmd->add_option("diagram", or_code, "diagram code")->required();
  or_cmd->add_flag("--trace", or_trace, "print the move discovering each code");
  add_common(or_cmd, c, false);
  or_cmd->callback([&] {
    std::vector<std::string> trace;
    OrbitOptions opt{.cap = static_cast<std::size_t>(c.cap),
                     .trace = or_trace || c.as_json ? &trace : nullptr};
    std::set<std::string> codes = orbit(parse_diagram(or_code), opt);
    if (c.as_json) {
      std::cout << json{{"seed", serialize(parse_diagram(or_code))},
                        {"count", codes.size()},
                        {"codes", codes},
                        {"trace", trace}}
                       .dump(2)
                << "\n";
      return;
    }
    for (const auto& code : codes) std::cout << code << "\n";
    if (or_trace)
      for (const auto& line : trace) std::cout << line << "\n";
  });

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "run an exhaustive desk-scale sweep");
  verify_cmd->require_subcommand(1);

  int v_degree = 3, v_strands = 3;
  bool v_literal = false;
  int v_petals = 1, v_partner = 2;
  int v_share_size = 2;

  auto* v2 = verify_cmd->add_subcommand(
      "thm-2comp", "trimmed tree classes collapse mod 1t+4t on 2 strands");
  v2->add_option("--max-degree", v_degree, "sweep degrees 1..N (default 3)");
  add_common(v2, c, false);
  v2->add_option("--cache-dir", c.cache_dir, "directory for the basis cache");
  v2->callback(
      [&] { exit_code = print_report(verify_tree_class_collapse(v_degree, 2, c.cache_dir), c.as_json); });

  auto* vn = verify_cmd->add_subcommand(
      "thm-ncomp", "tree classes collapse mod 1t+4t on 3 or more strands");
  vn->add_option("--max-degree", v_degree, "sweep degrees 1..N (default 3)");
  vn->add_option("--strands", v_strands, "number of strands, at least 3 (default 3)");
  add_common(vn, c, false);
  vn->add_option("--cache-dir", c.cache_dir, "directory for the basis cache");
  vn->callback([&] {
    if (v_strands < 3)
      throw CLI::ValidationError("--strands", "thm-ncomp needs at least 3 strands");
    exit_code =
        print_report(verify_tree_class_collapse(v_degree, v_strands, c.cache_dir), c.as_json);
  });

  auto* vs = verify_cmd->add_subcommand("lemma-share",
                                        "light boughs match shares in tree diagrams");
  vs->add_option("--max-degree", v_degree, "sweep degrees 1..N (default 3)");
  vs->add_flag("--literal", v_literal,
               "quantify over every vertex (known to fail; see README)");
  add_common(vs, c, false);
  vs->callback([&] {
    exit_code = print_report(
        verify_share_duality(
            v_degree, v_literal ? DualityScope::every_vertex : DualityScope::marked_vertices),
        c.as_json);
  });

  auto* vo = verify_cmd->add_subcommand("prop-orbit",
                                        "orbits equal intersection-graph classes");
  vo->add_option("--max-degree", v_degree, "sweep degrees 1..N (default 3)");
  add_common(vo, c, false);
  vo->callback([&] { exit_code = print_report(verify_orbit_classes(v_degree), c.as_json); });

  auto* vc = verify_cmd->add_subcommand("centrality",
                                        "star diagrams commute with everything mod 1t+4t");
  vc->add_option("--max-degree", v_degree, "cap on combined degree (default 3)");
  vc->add_option("--petals", v_petals, "largest star degree p+q (default 1)");
  vc->add_option("--partner-degree", v_partner, "largest partner degree (default 2)");
  add_common(vc, c, false);
  vc->add_option("--cache-dir", c.cache_dir, "directory for the basis cache");
  vc->callback([&] {
    exit_code = print_report(
        verify_star_centrality(v_petals, v_partner, v_degree, c.cache_dir), c.as_json);
  });

  auto* vg = verify_cmd->add_subcommand(
      "gen4t", "share slides land in the plain four-term span");
  vg->add_option("--max-degree", v_degree, "cap on total degree (default 3)");
  vg->add_option("--max-share-size", v_share_size, "largest share to slide (default 2)");
  add_common(vg, c, false);
  vg->add_option("--cache-dir", c.cache_dir, "directory for the basis cache");
  vg->callback([&] {
    exit_code = print_report(
        verify_generalized_four_term(v_degree, v_share_size, c.cache_dir), c.as_json);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
