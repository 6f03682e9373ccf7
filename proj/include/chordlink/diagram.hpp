#pragma once

// Chord diagrams on string links: k ordered vertical strands, n chords, each
// chord occupying two endpoint slots. A diagram is determined by the
// bottom-to-top sequence of chord ids on each strand.

#include <algorithm>
#include <cctype>
#include <compare>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace chordlink {

using Int = boost::multiprecision::cpp_int;

struct ChordDiagram {
  int strand_count = 0;
  std::vector<std::vector<int>> strands;

  int degree() const {
    int slots = 0;
    for (const auto& s : strands) slots += static_cast<int>(s.size());
    return slots / 2;
  }
  int total_slots() const {
    int slots = 0;
    for (const auto& s : strands) slots += static_cast<int>(s.size());
    return slots;
  }
  bool operator==(const ChordDiagram&) const = default;
  auto operator<=>(const ChordDiagram&) const = default;
};

// Chord names: 0 -> "a", 25 -> "z", 26 -> "aa", ... (bijective base 26).
inline std::string chord_name(int index) {
  if (index < 0) throw std::invalid_argument("chord_name: negative index");
  std::string out;
  long long v = index + 1;
  while (v > 0) {
    long long r = (v - 1) % 26;
    out.push_back(static_cast<char>('a' + r));
    v = (v - 1) / 26;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

inline int chord_name_index(const std::string& name) {
  if (name.empty()) throw std::invalid_argument("chord_name_index: empty name");
  long long v = 0;
  for (char c : name) {
    if (c < 'a' || c > 'z')
      throw std::invalid_argument("chord_name_index: bad character in '" + name + "'");
    v = v * 26 + (c - 'a' + 1);
    if (v > 1'000'000'000) throw std::invalid_argument("chord_name_index: name too long");
  }
  return static_cast<int>(v - 1);
}

inline void validate_diagram(const ChordDiagram& d) {
  if (d.strand_count < 1)
    throw std::invalid_argument("diagram must have at least one strand");
  if (static_cast<int>(d.strands.size()) != d.strand_count)
    throw std::invalid_argument("strand_count does not match strand list");
  std::map<int, int> uses;
  for (const auto& s : d.strands)
    for (int id : s) ++uses[id];
  for (const auto& [id, count] : uses)
    if (count != 2)
      throw std::invalid_argument("chord " + chord_name(id) +
                                  " has " + std::to_string(count) +
                                  " endpoints, expected 2");
}

// Distinct chord ids in ascending order.
inline std::vector<int> chord_ids(const ChordDiagram& d) {
  std::set<int> ids;
  for (const auto& s : d.strands) ids.insert(s.begin(), s.end());
  return {ids.begin(), ids.end()};
}

// Rename chords to 0,1,2,... by first appearance, scanning strand 1 bottom to
// top, then strand 2, and so on.
inline ChordDiagram canonicalized(const ChordDiagram& d) {
  validate_diagram(d);
  std::map<int, int> rename;
  ChordDiagram out;
  out.strand_count = d.strand_count;
  out.strands.resize(d.strands.size());
  for (size_t i = 0; i < d.strands.size(); ++i) {
    out.strands[i].reserve(d.strands[i].size());
    for (int id : d.strands[i]) {
      auto [it, fresh] = rename.try_emplace(id, static_cast<int>(rename.size()));
      (void)fresh;
      out.strands[i].push_back(it->second);
    }
  }
  return out;
}

// Canonical text form: "k=K [a b ...][...]". Always canonicalizes first, so
// serialize(parse(x)) is the canonical code of x.
inline std::string serialize(const ChordDiagram& d) {
  ChordDiagram c = canonicalized(d);
  std::string out = "k=" + std::to_string(c.strand_count) + " ";
  for (const auto& s : c.strands) {
    out.push_back('[');
    for (size_t j = 0; j < s.size(); ++j) {
      if (j) out.push_back(' ');
      out += chord_name(s[j]);
    }
    out.push_back(']');
  }
  return out;
}

inline std::string canonical_code(const ChordDiagram& d) { return serialize(d); }

inline ChordDiagram parse_diagram(const std::string& text) {
  size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto fail = [&](const std::string& why) -> std::invalid_argument {
    return std::invalid_argument("parse_diagram: " + why + " at offset " + std::to_string(pos));
  };
  skip_ws();
  if (text.compare(pos, 2, "k=") != 0) throw fail("expected 'k='");
  pos += 2;
  size_t num_start = pos;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
  if (pos == num_start) throw fail("expected strand count");
  int k = std::stoi(text.substr(num_start, pos - num_start));
  ChordDiagram d;
  d.strand_count = k;
  skip_ws();
  while (pos < text.size() && text[pos] == '[') {
    ++pos;
    std::vector<int> strand;
    for (;;) {
      skip_ws();
      if (pos >= text.size()) throw fail("unterminated strand");
      if (text[pos] == ']') {
        ++pos;
        break;
      }
      size_t name_start = pos;
      while (pos < text.size() && text[pos] >= 'a' && text[pos] <= 'z') ++pos;
      if (pos == name_start) throw fail("expected chord name");
      strand.push_back(chord_name_index(text.substr(name_start, pos - name_start)));
    }
    d.strands.push_back(std::move(strand));
    skip_ws();
  }
  skip_ws();
  if (pos != text.size()) throw fail("trailing input");
  if (static_cast<int>(d.strands.size()) != k)
    throw std::invalid_argument("parse_diagram: k=" + std::to_string(k) + " but found " +
                                std::to_string(d.strands.size()) + " strands");
  validate_diagram(d);
  return d;
}

// Number of diagrams of degree n on k strands:
// (2n-1)!! * C(2n+k-1, k-1).
inline Int count_diagrams(int n, int k) {
  if (n < 0 || k < 1) throw std::invalid_argument("count_diagrams: need n >= 0, k >= 1");
  Int df = 1;
  for (int i = 2 * n - 1; i > 0; i -= 2) df *= i;
  Int binom = 1;
  for (int i = 1; i <= k - 1; ++i) {
    binom *= 2 * n + k - i;
    binom /= i;
  }
  return df * binom;
}

struct EnumOptions {
  Int cap = 1'000'000;
};

// All diagrams of degree n on k strands, deduplicated by canonical code and
// sorted by code. Generation is already canonical; the dedup is asserted to
// be a no-op.
inline std::vector<ChordDiagram> enumerate_diagrams(int n, int k, EnumOptions opts = {}) {
  Int total = count_diagrams(n, k);
  if (total > opts.cap)
    throw std::runtime_error("enumerate_diagrams: " + total.str() +
                             " diagrams exceeds cap " + opts.cap.str());
  std::map<std::string, ChordDiagram> by_code;

  std::vector<int> composition(k, 0);
  // Pair positions 0..2n-1 laid out strand by strand, always matching the
  // smallest unpaired position next; chord ids run in creation order, which
  // is first-appearance order, so each diagram comes out canonical.
  std::vector<int> owner(2 * n, -1);
  auto emit = [&] {
    ChordDiagram d;
    d.strand_count = k;
    int at = 0;
    for (int s = 0; s < k; ++s) {
      d.strands.emplace_back(owner.begin() + at, owner.begin() + at + composition[s]);
      at += composition[s];
    }
    std::string code = serialize(d);
    bool fresh = by_code.emplace(std::move(code), std::move(d)).second;
    if (!fresh) throw std::logic_error("enumerate_diagrams: duplicate canonical code");
  };
  auto match = [&](auto&& self, int next_id) -> void {
    int lo = -1;
    for (int i = 0; i < 2 * n; ++i)
      if (owner[i] < 0) {
        lo = i;
        break;
      }
    if (lo < 0) {
      emit();
      return;
    }
    owner[lo] = next_id;
    for (int j = lo + 1; j < 2 * n; ++j) {
      if (owner[j] >= 0) continue;
      owner[j] = next_id;
      self(self, next_id + 1);
      owner[j] = -1;
    }
    owner[lo] = -1;
  };
  auto compose = [&](auto&& self, int part, int remaining) -> void {
    if (part == k - 1) {
      composition[part] = remaining;
      match(match, 0);
      return;
    }
    for (int take = 0; take <= remaining; ++take) {
      composition[part] = take;
      self(self, part + 1, remaining - take);
    }
  };
  compose(compose, 0, 2 * n);

  std::vector<ChordDiagram> out;
  out.reserve(by_code.size());
  for (auto& [code, d] : by_code) out.push_back(std::move(d));
  return out;
}

// Stack b on top of a, strand by strand.
inline ChordDiagram product(const ChordDiagram& a, const ChordDiagram& b) {
  validate_diagram(a);
  validate_diagram(b);
  if (a.strand_count != b.strand_count)
    throw std::invalid_argument("product: strand counts differ");
  int offset = 0;
  for (int id : chord_ids(a)) offset = std::max(offset, id + 1);
  ChordDiagram out = a;
  for (int s = 0; s < a.strand_count; ++s)
    for (int id : b.strands[s]) out.strands[s].push_back(id + offset);
  return out;
}

// All 2^n ordered splittings of the chord set, in bitmask order over the
// canonicalized ids; bit i set sends chord i to the left factor.
inline std::vector<std::pair<ChordDiagram, ChordDiagram>> coproduct(const ChordDiagram& d) {
  ChordDiagram c = canonicalized(d);
  int n = c.degree();
  if (n > 20) throw std::invalid_argument("coproduct: degree too large");
  std::vector<std::pair<ChordDiagram, ChordDiagram>> out;
  out.reserve(size_t{1} << n);
  for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
    ChordDiagram left, right;
    left.strand_count = right.strand_count = c.strand_count;
    left.strands.resize(c.strands.size());
    right.strands.resize(c.strands.size());
    for (size_t s = 0; s < c.strands.size(); ++s)
      for (int id : c.strands[s])
        ((mask >> id) & 1 ? left : right).strands[s].push_back(id);
    out.emplace_back(std::move(left), std::move(right));
  }
  return out;
}

// Insert a one-strand diagram into strand `strand` of `a`, between slots
// slot-1 and slot (0 <= slot <= strand length).
inline ChordDiagram connect_sum(const ChordDiagram& a, const ChordDiagram& b,
                                int strand, int slot) {
  validate_diagram(a);
  validate_diagram(b);
  if (b.strand_count != 1)
    throw std::invalid_argument("connect_sum: inserted diagram must have one strand");
  if (strand < 0 || strand >= a.strand_count)
    throw std::invalid_argument("connect_sum: strand out of range");
  int len = static_cast<int>(a.strands[strand].size());
  if (slot < 0 || slot > len)
    throw std::invalid_argument("connect_sum: slot out of range");
  int offset = 0;
  for (int id : chord_ids(a)) offset = std::max(offset, id + 1);
  ChordDiagram out = a;
  std::vector<int> inserted;
  inserted.reserve(b.strands[0].size());
  for (int id : b.strands[0]) inserted.push_back(id + offset);
  out.strands[strand].insert(out.strands[strand].begin() + slot,
                             inserted.begin(), inserted.end());
  return out;
}

inline ChordDiagram reverse_component(const ChordDiagram& d, int strand) {
  validate_diagram(d);
  if (strand < 0 || strand >= d.strand_count)
    throw std::invalid_argument("reverse_component: strand out of range");
  ChordDiagram out = d;
  std::reverse(out.strands[strand].begin(), out.strands[strand].end());
  return out;
}

// A contiguous interval of slots on one strand, inclusive on both ends.
struct Arc {
  int strand = 0;
  int lo = 0;
  int hi = 0;
  bool operator==(const Arc&) const = default;
  auto operator<=>(const Arc&) const = default;
};

struct Share {
  std::vector<int> chords;
  std::vector<Arc> arcs;  // the maximal runs of share endpoints, at most two
};

// A set of chords is a share when its endpoints occupy at most two maximal
// contiguous runs of slots across the whole diagram. The runs are returned
// as witness arcs.
inline std::optional<Share> is_share(const ChordDiagram& d, const std::set<int>& chords) {
  validate_diagram(d);
  for (int id : chords) {
    bool found = false;
    for (const auto& s : d.strands)
      if (std::find(s.begin(), s.end(), id) != s.end()) found = true;
    if (!found) return std::nullopt;
  }
  Share share;
  share.chords.assign(chords.begin(), chords.end());
  for (int s = 0; s < d.strand_count; ++s) {
    const auto& strand = d.strands[s];
    int i = 0;
    int len = static_cast<int>(strand.size());
    while (i < len) {
      if (!chords.count(strand[i])) {
        ++i;
        continue;
      }
      int j = i;
      while (j + 1 < len && chords.count(strand[j + 1])) ++j;
      share.arcs.push_back({s, i, j});
      i = j + 1;
    }
  }
  if (share.arcs.size() > 2) return std::nullopt;
  return share;
}

// Star diagram on two strands: one central chord with one endpoint per
// strand, wrapped by p nested chords on strand 1 and q nested chords on
// strand 2.
inline ChordDiagram build_star(int p, int q) {
  if (p < 0 || q < 0) throw std::invalid_argument("build_star: need p, q >= 0");
  ChordDiagram d;
  d.strand_count = 2;
  d.strands.resize(2);
  for (int i = 1; i <= p; ++i) d.strands[0].push_back(i);
  d.strands[0].push_back(0);
  for (int i = p; i >= 1; --i) d.strands[0].push_back(i);
  for (int i = 1; i <= q; ++i) d.strands[1].push_back(p + i);
  d.strands[1].push_back(0);
  for (int i = q; i >= 1; --i) d.strands[1].push_back(p + i);
  return d;
}

}  // namespace chordlink
