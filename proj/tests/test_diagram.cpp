#include "chordlink/diagram.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace chordlink;

TEST(ChordNames, BijectiveBase26) {
  EXPECT_EQ(chord_name(0), "a");
  EXPECT_EQ(chord_name(25), "z");
  EXPECT_EQ(chord_name(26), "aa");
  EXPECT_EQ(chord_name(27), "ab");
  EXPECT_EQ(chord_name(51), "az");
  EXPECT_EQ(chord_name(52), "ba");
  for (int i = 0; i < 2000; ++i) EXPECT_EQ(chord_name_index(chord_name(i)), i);
  EXPECT_THROW(chord_name_index(""), std::invalid_argument);
  EXPECT_THROW(chord_name_index("A"), std::invalid_argument);
}

TEST(Parse, RoundTripIsCanonicalization) {
  EXPECT_EQ(serialize(parse_diagram("k=1 [a b a b]")), "k=1 [a b a b]");
  EXPECT_EQ(serialize(parse_diagram("k=1 [b a b a]")), "k=1 [a b a b]");
  EXPECT_EQ(serialize(parse_diagram("k=1 [z c z c]")), "k=1 [a b a b]");
  EXPECT_EQ(serialize(parse_diagram("k=2 [b c a c b][a]")), "k=2 [a b c b a][c]");
  EXPECT_EQ(serialize(parse_diagram("k=2 [][a a]")), "k=2 [][a a]");
  EXPECT_EQ(serialize(parse_diagram("  k=2   [ a  b ] [ a b ]  ")), "k=2 [a b][a b]");
}

TEST(Parse, RejectsMalformedInput) {
  EXPECT_THROW(parse_diagram(""), std::invalid_argument);
  EXPECT_THROW(parse_diagram("k=2 [a a]"), std::invalid_argument);
  EXPECT_THROW(parse_diagram("k=1 [a]"), std::invalid_argument);
  EXPECT_THROW(parse_diagram("k=1 [a a a a]"), std::invalid_argument);
  EXPECT_THROW(parse_diagram("k=1 [a a] junk"), std::invalid_argument);
  EXPECT_THROW(parse_diagram("k=1 [a a"), std::invalid_argument);
  EXPECT_THROW(parse_diagram("k=x [a a]"), std::invalid_argument);
  EXPECT_THROW(parse_diagram("k=0 "), std::invalid_argument);
}

TEST(Counts, ClosedFormValues) {
  EXPECT_EQ(count_diagrams(0, 1), 1);
  EXPECT_EQ(count_diagrams(1, 1), 1);
  EXPECT_EQ(count_diagrams(2, 1), 3);
  EXPECT_EQ(count_diagrams(3, 1), 15);
  EXPECT_EQ(count_diagrams(1, 2), 3);
  EXPECT_EQ(count_diagrams(2, 2), 15);
  EXPECT_EQ(count_diagrams(3, 2), 105);
  EXPECT_EQ(count_diagrams(4, 2), 945);
  EXPECT_EQ(count_diagrams(5, 2), 10395);
  EXPECT_EQ(count_diagrams(4, 3), 4725);
  EXPECT_EQ(count_diagrams(5, 3), 62370);
}

TEST(Enumerate, DegreeTwoOneStrand) {
  auto all = enumerate_diagrams(2, 1);
  ASSERT_EQ(all.size(), 3u);
  EXPECT_EQ(serialize(all[0]), "k=1 [a a b b]");
  EXPECT_EQ(serialize(all[1]), "k=1 [a b a b]");
  EXPECT_EQ(serialize(all[2]), "k=1 [a b b a]");
}

TEST(Enumerate, MatchesCountAndIsCanonicalSorted) {
  for (auto [n, k] : {std::pair{0, 2}, {1, 1}, {1, 3}, {2, 2}, {3, 1}, {3, 2}, {2, 3}}) {
    auto all = enumerate_diagrams(n, k);
    EXPECT_EQ(Int(all.size()), count_diagrams(n, k)) << "n=" << n << " k=" << k;
    std::string prev;
    for (size_t i = 0; i < all.size(); ++i) {
      EXPECT_EQ(all[i].degree(), n);
      EXPECT_EQ(all[i].strand_count, k);
      std::string code = serialize(all[i]);
      EXPECT_EQ(all[i], canonicalized(all[i]));
      EXPECT_EQ(parse_diagram(code), all[i]);
      if (i) EXPECT_LT(prev, code);
      prev = code;
    }
  }
}

TEST(Enumerate, CapGuard) {
  EXPECT_THROW(enumerate_diagrams(5, 3, {.cap = 1000}), std::runtime_error);
}

TEST(Product, StacksSecondOnTop) {
  auto a = parse_diagram("k=1 [a a]");
  EXPECT_EQ(serialize(product(a, a)), "k=1 [a a b b]");
  auto x = parse_diagram("k=2 [a][a]");
  auto y = parse_diagram("k=2 [a b a b][]");
  EXPECT_EQ(serialize(product(x, y)), "k=2 [a b c b c][a]");
  EXPECT_EQ(product(x, y).degree(), 3);
  EXPECT_THROW(product(a, x), std::invalid_argument);
}

TEST(Coproduct, AllOrderedSplittings) {
  auto d = parse_diagram("k=1 [a b a b]");
  auto parts = coproduct(d);
  ASSERT_EQ(parts.size(), 4u);
  EXPECT_EQ(serialize(parts[0].first), "k=1 []");
  EXPECT_EQ(serialize(parts[0].second), "k=1 [a b a b]");
  EXPECT_EQ(serialize(parts[1].first), "k=1 [a a]");
  EXPECT_EQ(serialize(parts[1].second), "k=1 [a a]");
  EXPECT_EQ(serialize(parts[2].first), "k=1 [a a]");
  EXPECT_EQ(serialize(parts[2].second), "k=1 [a a]");
  EXPECT_EQ(serialize(parts[3].first), "k=1 [a b a b]");
  EXPECT_EQ(serialize(parts[3].second), "k=1 []");
  for (const auto& [l, r] : parts)
    EXPECT_EQ(l.degree() + r.degree(), d.degree());
}

TEST(ConnectSum, InsertsAtSlot) {
  auto a = parse_diagram("k=1 [a b a b]");
  auto b = parse_diagram("k=1 [a a]");
  EXPECT_EQ(serialize(connect_sum(a, b, 0, 2)), "k=1 [a b c c a b]");
  EXPECT_EQ(serialize(connect_sum(a, b, 0, 0)), "k=1 [a a b c b c]");
  EXPECT_EQ(serialize(connect_sum(a, b, 0, 4)), "k=1 [a b a b c c]");
  EXPECT_THROW(connect_sum(a, b, 1, 0), std::invalid_argument);
  EXPECT_THROW(connect_sum(a, b, 0, 5), std::invalid_argument);
  auto two = parse_diagram("k=2 [a][a]");
  EXPECT_THROW(connect_sum(a, two, 0, 0), std::invalid_argument);
}

TEST(ReverseComponent, FlipsOneStrand) {
  auto d = parse_diagram("k=2 [a b][a b]");
  EXPECT_EQ(serialize(reverse_component(d, 1)), "k=2 [a b][b a]");
  EXPECT_EQ(serialize(reverse_component(reverse_component(d, 1), 1)), "k=2 [a b][a b]");
  EXPECT_THROW(reverse_component(d, 2), std::invalid_argument);
}

TEST(Shares, RunCounting) {
  auto d = parse_diagram("k=1 [a b a b]");
  auto single = is_share(d, {0});
  ASSERT_TRUE(single.has_value());
  EXPECT_EQ(single->arcs, (std::vector<Arc>{{0, 0, 0}, {0, 2, 2}}));
  auto whole = is_share(d, {0, 1});
  ASSERT_TRUE(whole.has_value());
  EXPECT_EQ(whole->arcs, (std::vector<Arc>{{0, 0, 3}}));
  auto empty = is_share(d, {});
  ASSERT_TRUE(empty.has_value());
  EXPECT_TRUE(empty->arcs.empty());
  EXPECT_FALSE(is_share(d, {7}).has_value());

  auto three = parse_diagram("k=1 [a b c a b c]");
  EXPECT_FALSE(is_share(three, {0, 2}).has_value());
  EXPECT_TRUE(is_share(three, {0, 1, 2}).has_value());

  auto split = parse_diagram("k=2 [a b a][c b c]");
  EXPECT_FALSE(is_share(split, {0, 2}).has_value());
  auto outer = is_share(split, {0, 1});
  ASSERT_TRUE(outer.has_value());
  EXPECT_EQ(outer->arcs, (std::vector<Arc>{{0, 0, 2}, {1, 1, 1}}));
  EXPECT_TRUE(is_share(split, {1}).has_value());
}

TEST(BuildStar, FrozenLayouts) {
  EXPECT_EQ(serialize(build_star(0, 0)), "k=2 [a][a]");
  EXPECT_EQ(serialize(build_star(2, 0)), "k=2 [a b c b a][c]");
  EXPECT_EQ(serialize(build_star(1, 1)), "k=2 [a b a][c b c]");
  EXPECT_EQ(serialize(build_star(0, 2)), "k=2 [a][b c a c b]");
  EXPECT_EQ(build_star(3, 2).degree(), 6);
}

TEST(Validation, EndpointCounts) {
  ChordDiagram d;
  d.strand_count = 1;
  d.strands = {{0, 0, 1}};
  EXPECT_THROW(validate_diagram(d), std::invalid_argument);
  d.strands = {{0, 1, 0, 1}};
  EXPECT_NO_THROW(validate_diagram(d));
  d.strand_count = 2;
  EXPECT_THROW(validate_diagram(d), std::invalid_argument);
}
