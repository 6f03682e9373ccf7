#pragma once

// Relation spaces on the free module spanned by chord diagrams of a fixed
// degree and strand count: one-term relations (isolated chords vanish),
// four-term relations (endpoint slides around a second chord), and optional
// strand-reversal antisymmetry. Quotients can be taken over Q or over Z; the
// integer route also exposes torsion.

#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "chordlink/diagram.hpp"
#include "chordlink/linear.hpp"

namespace chordlink {

struct DiagramIndex {
  int n = 0, k = 0;
  std::vector<std::string> codes;        // sorted canonical codes
  std::map<std::string, int> position;

  static DiagramIndex build(int n, int k, Int cap = 1'000'000) {
    DiagramIndex idx;
    idx.n = n;
    idx.k = k;
    for (const auto& d : enumerate_diagrams(n, k, {.cap = cap})) {
      std::string code = serialize(d);
      idx.position[code] = static_cast<int>(idx.codes.size());
      idx.codes.push_back(std::move(code));
    }
    return idx;
  }

  int size() const { return static_cast<int>(codes.size()); }

  int at(const std::string& code) const {
    auto it = position.find(code);
    if (it == position.end())
      throw std::invalid_argument("DiagramIndex: unknown diagram " + code);
    return it->second;
  }
};

// A finite formal sum of diagrams, keyed by canonical code.
template <typename R = Rat>
struct LinearCombination {
  std::map<std::string, R> terms;

  void add(const ChordDiagram& d, const R& coeff) { add_code(serialize(d), coeff); }
  void add(const std::string& diagram_text, const R& coeff) {
    add_code(serialize(parse_diagram(diagram_text)), coeff);
  }
  void add_code(const std::string& canonical, const R& coeff) {
    auto it = terms.try_emplace(canonical, R(0)).first;
    it->second += coeff;
    if (it->second == 0) terms.erase(it);
  }
  bool empty() const { return terms.empty(); }
};

template <typename R>
SparseVec<R> to_sparse(const LinearCombination<R>& lc, const DiagramIndex& idx) {
  SparseVec<R> out;
  out.reserve(lc.terms.size());
  for (const auto& [code, coeff] : lc.terms)
    out.emplace_back(idx.at(code), coeff);  // map order matches index order
  return out;
}

template <typename R>
LinearCombination<R> from_sparse(const SparseVec<R>& v, const DiagramIndex& idx) {
  LinearCombination<R> lc;
  for (const auto& [col, coeff] : v) lc.terms[idx.codes[col]] = coeff;
  return lc;
}

template <typename R>
std::string to_text(const LinearCombination<R>& lc) {
  if (lc.terms.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [code, coeff] : lc.terms) {
    if (!first) out << " + ";
    first = false;
    out << coeff << "*(" << code << ")";
  }
  return out.str();
}

struct RelationFlags {
  bool one_term = false;
  bool four_term = true;
  bool antisym = false;

  std::string tag() const {
    std::string t;
    if (one_term) t += "1t";
    if (four_term) t += "4t";
    if (antisym) t += "as";
    return t.empty() ? "none" : t;
  }
  bool operator==(const RelationFlags&) const = default;
};

namespace detail {

inline ChordDiagram insert_endpoint(const ChordDiagram& skeleton, int chord_id,
                                    int strand, int slot) {
  ChordDiagram out = skeleton;
  out.strands[strand].insert(out.strands[strand].begin() + slot, chord_id);
  return out;
}

// The four-term generators seeded by one diagram: pick a chord c, detach one
// of its endpoints, and reinsert it in the four slots flanking the endpoints
// of another chord b; signs alternate just-below positive, just-above
// negative at both endpoints of b.
inline void four_term_from(const ChordDiagram& d, const DiagramIndex& idx,
                           std::set<SparseVec<Int>>& out) {
  int n = d.degree();
  std::vector<std::vector<std::pair<int, int>>> eps(n);
  for (int s = 0; s < d.strand_count; ++s)
    for (int t = 0; t < static_cast<int>(d.strands[s].size()); ++t)
      eps[d.strands[s][t]].push_back({s, t});
  for (int c = 0; c < n; ++c) {
    for (const auto& [es, et] : eps[c]) {
      ChordDiagram skeleton = d;
      skeleton.strands[es].erase(skeleton.strands[es].begin() + et);
      for (int b = 0; b < n; ++b) {
        if (b == c) continue;
        std::map<std::string, Int> acc;
        for (int s = 0; s < skeleton.strand_count; ++s)
          for (int t = 0; t < static_cast<int>(skeleton.strands[s].size()); ++t) {
            if (skeleton.strands[s][t] != b) continue;
            acc[serialize(insert_endpoint(skeleton, c, s, t))] += 1;
            acc[serialize(insert_endpoint(skeleton, c, s, t + 1))] -= 1;
          }
        SparseVec<Int> vec;
        for (const auto& [code, coeff] : acc)
          if (coeff != 0) vec.emplace_back(idx.at(code), coeff);
        if (vec.empty()) continue;
        if (vec.front().second < 0)
          for (auto& [col, x] : vec) x = -x;
        out.insert(std::move(vec));
      }
    }
  }
}

}  // namespace detail

inline bool has_isolated_chord(const ChordDiagram& d) {
  for (const auto& s : d.strands)
    for (size_t t = 0; t + 1 < s.size(); ++t)
      if (s[t] == s[t + 1]) return true;
  return false;
}

// All relation generators as sparse rows over the index, sign-normalized,
// deduplicated, and sorted for schedule independence. Coefficient contents
// are preserved so the integer lattice is exactly the one generated.
inline std::vector<SparseVec<Int>> relation_generators(const DiagramIndex& idx,
                                                       RelationFlags flags) {
  std::set<SparseVec<Int>> rows;
  for (const auto& code : idx.codes) {
    ChordDiagram d = parse_diagram(code);
    if (flags.one_term && has_isolated_chord(d))
      rows.insert(SparseVec<Int>{{idx.at(code), 1}});
    if (flags.four_term) detail::four_term_from(d, idx, rows);
    if (flags.antisym) {
      for (int s = 0; s < d.strand_count; ++s) {
        int endpoints = static_cast<int>(d.strands[s].size());
        int sign = endpoints % 2 == 0 ? 1 : -1;
        std::map<std::string, Int> acc;
        acc[serialize(reverse_component(d, s))] += 1;
        acc[code] -= sign;
        SparseVec<Int> vec;
        for (const auto& [dcode, coeff] : acc)
          if (coeff != 0) vec.emplace_back(idx.at(dcode), coeff);
        if (vec.empty()) continue;
        if (vec.front().second < 0)
          for (auto& [col, x] : vec) x = -x;
        rows.insert(std::move(vec));
      }
    }
  }
  return {rows.begin(), rows.end()};
}

enum class Ring { Rationals, Integers };

struct BasisOptions {
  Int cap = 1'000'000;
  std::string cache_dir;  // empty disables the cache
};

class RelationBasis {
 public:
  RelationBasis(int n, int k, RelationFlags flags, Ring ring, BasisOptions opts = {})
      : n_(n), k_(k), flags_(flags), ring_(ring),
        index_(DiagramIndex::build(n, k, opts.cap)) {
    generators_ = relation_generators(index_, flags_);
    if (!opts.cache_dir.empty() && try_load_cache(opts.cache_dir)) {
      loaded_from_cache_ = true;
      return;
    }
    for (const auto& g : generators_) {
      if (ring_ == Ring::Rationals)
        echelon_.insert(g);
      else
        lattice_.insert(g);
    }
    if (ring_ == Ring::Integers) lattice_.finalize();
    if (!opts.cache_dir.empty()) save_cache(opts.cache_dir);
  }

  int n() const { return n_; }
  int k() const { return k_; }
  RelationFlags flags() const { return flags_; }
  Ring ring() const { return ring_; }
  const DiagramIndex& index() const { return index_; }
  int generator_count() const { return static_cast<int>(generators_.size()); }
  bool loaded_from_cache() const { return loaded_from_cache_; }

  int rank() const {
    return ring_ == Ring::Rationals ? echelon_.rank() : lattice_.rank();
  }
  Int quotient_dimension() const { return Int(index_.size()) - rank(); }

  bool is_zero(const LinearCombination<Rat>& lc) const {
    if (ring_ == Ring::Rationals)
      return echelon_.reduces_to_zero(
          RationalEchelon::clear_denominators(to_sparse(lc, index_)));
    return lattice_.contains(integral_vector(lc));
  }

  bool equal_mod(const LinearCombination<Rat>& a, const LinearCombination<Rat>& b) const {
    LinearCombination<Rat> diff = a;
    for (const auto& [code, coeff] : b.terms) diff.add_code(code, -coeff);
    return is_zero(diff);
  }

  // Unique coset representative: over Q the support avoids all pivot
  // columns; over Z pivot-column entries are reduced into [0, pivot).
  LinearCombination<Rat> reduce(const LinearCombination<Rat>& lc) const {
    if (ring_ == Ring::Rationals)
      return from_sparse(echelon_.reduce(to_sparse(lc, index_)), index_);
    SparseVec<Int> reduced = lattice_.reduce(integral_vector(lc));
    LinearCombination<Rat> out;
    for (const auto& [col, x] : reduced) out.terms[index_.codes[col]] = Rat(x);
    return out;
  }

  // Dimension of the span of the given classes inside the quotient (over Q).
  int subspace_dimension(const std::vector<LinearCombination<Rat>>& elements) const {
    if (ring_ != Ring::Rationals)
      throw std::logic_error("subspace_dimension is defined for the rational ring");
    RationalEchelon scratch;
    int dim = 0;
    for (const auto& lc : elements) {
      SparseVec<Rat> residue = echelon_.reduce(to_sparse(lc, index_));
      if (scratch.insert(RationalEchelon::clear_denominators(residue))) ++dim;
    }
    return dim;
  }

  std::vector<Int> torsion() const {
    if (ring_ != Ring::Integers)
      throw std::logic_error("torsion is defined for the integer ring");
    return lattice_.torsion();
  }

  // Smallest m in [1, max_order] with m*v inside the relation lattice;
  // 0 when there is none.
  Int element_torsion_order(const LinearCombination<Int>& v, const Int& max_order) const {
    if (ring_ != Ring::Integers)
      throw std::logic_error("element_torsion_order is defined for the integer ring");
    SparseVec<Int> base = to_sparse(v, index_);
    for (Int m = 1; m <= max_order; ++m) {
      SparseVec<Int> scaled;
      scaled.reserve(base.size());
      for (const auto& [c, x] : base) scaled.emplace_back(c, m * x);
      if (lattice_.contains(scaled)) return m;
    }
    return 0;
  }

  int gf2_generator_rank() const { return gf2_rank(generators_, index_.size()); }

 private:
  SparseVec<Int> integral_vector(const LinearCombination<Rat>& lc) const {
    SparseVec<Int> out;
    out.reserve(lc.terms.size());
    for (const auto& [code, coeff] : lc.terms) {
      if (boost::multiprecision::denominator(coeff) != 1)
        throw std::invalid_argument(
            "integer ring requires integer coefficients, got " + code);
      out.emplace_back(index_.at(code), Int(boost::multiprecision::numerator(coeff)));
    }
    return out;
  }

  std::string cache_path(const std::string& dir) const {
    return dir + "/rel_n" + std::to_string(n_) + "_k" + std::to_string(k_) + "_" +
           flags_.tag() + "_" + (ring_ == Ring::Rationals ? "q" : "z") + "_g1.cache";
  }

  void save_cache(const std::string& dir) const {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    const auto& rows = ring_ == Ring::Rationals ? echelon_.rows() : lattice_.rows();
    std::string path = cache_path(dir);
    std::ofstream out(path + ".tmp");
    if (!out) return;  // caching is best effort
    out << "chordlink-cache v1\n"
        << n_ << " " << k_ << " " << flags_.tag() << " "
        << (ring_ == Ring::Rationals ? "q" : "z") << " " << index_.size() << " "
        << rows.size() << "\n";
    out << (index_.size() ? index_.codes.front() : "") << "\n";
    out << (index_.size() ? index_.codes.back() : "") << "\n";
    for (const auto& row : rows) {
      for (size_t i = 0; i < row.size(); ++i) {
        if (i) out << " ";
        out << row[i].first << ":" << row[i].second;
      }
      out << "\n";
    }
    out.close();
    std::filesystem::rename(path + ".tmp", path, ec);
  }

  bool try_load_cache(const std::string& dir) {
    std::ifstream in(cache_path(dir));
    if (!in) return false;
    std::string header;
    if (!std::getline(in, header) || header != "chordlink-cache v1") return false;
    int n = 0, k = 0, ncodes = 0;
    size_t nrows = 0;
    std::string tag, ring;
    if (!(in >> n >> k >> tag >> ring >> ncodes >> nrows)) return false;
    if (n != n_ || k != k_ || tag != flags_.tag() ||
        ring != (ring_ == Ring::Rationals ? "q" : "z") || ncodes != index_.size())
      return false;
    in.ignore();
    std::string first, last;
    if (!std::getline(in, first) || !std::getline(in, last)) return false;
    if (index_.size() &&
        (first != index_.codes.front() || last != index_.codes.back()))
      return false;
    RationalEchelon echelon;
    IntegerLattice lattice;
    std::string line;
    size_t seen = 0;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      SparseVec<Int> row;
      std::istringstream ls(line);
      std::string tok;
      int prev_col = -1;
      while (ls >> tok) {
        auto colon = tok.find(':');
        if (colon == std::string::npos) return false;
        int col = std::stoi(tok.substr(0, colon));
        Int val(tok.substr(colon + 1));
        if (col <= prev_col || col >= index_.size() || val == 0) return false;
        row.emplace_back(col, std::move(val));
        prev_col = col;
      }
      if (row.empty()) return false;
      try {
        if (ring_ == Ring::Rationals)
          echelon.adopt_row(std::move(row));
        else
          lattice.adopt_row(std::move(row));
      } catch (const std::exception&) {
        return false;
      }
      ++seen;
    }
    if (seen != nrows) return false;
    // Revalidate with a sample of freshly generated relations: every one must
    // already lie in the loaded span.
    size_t step = std::max<size_t>(1, generators_.size() / 25);
    for (size_t i = 0; i < generators_.size(); i += step) {
      bool ok = ring_ == Ring::Rationals ? echelon.reduces_to_zero(generators_[i])
                                         : lattice.contains(generators_[i]);
      if (!ok) return false;
    }
    if (ring_ == Ring::Rationals) {
      echelon_ = std::move(echelon);
    } else {
      lattice.mark_finalized();
      lattice_ = std::move(lattice);
    }
    return true;
  }

  int n_, k_;
  RelationFlags flags_;
  Ring ring_;
  DiagramIndex index_;
  std::vector<SparseVec<Int>> generators_;
  RationalEchelon echelon_;
  IntegerLattice lattice_;
  bool loaded_from_cache_ = false;
};

}  // namespace chordlink
