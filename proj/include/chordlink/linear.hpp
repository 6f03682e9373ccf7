#pragma once

// Exact sparse linear algebra over the rationals and the integers, sized for
// spaces indexed by a few thousand chord diagrams. Rational ranks use
// fraction-free elimination on integer-primitive rows; integer lattices keep
// a Hermite-style echelon basis and derive torsion through Smith normal form.

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "chordlink/diagram.hpp"

namespace chordlink {

using Rat = boost::multiprecision::cpp_rational;

template <typename R>
using SparseVec = std::vector<std::pair<int, R>>;  // sorted by column, nonzero values

// sa*a + sb*b, merged and zero-stripped.
template <typename R>
SparseVec<R> sv_combine(const SparseVec<R>& a, const R& sa, const SparseVec<R>& b,
                        const R& sb) {
  SparseVec<R> out;
  out.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      R v = sa * a[i].second;
      if (v != 0) out.emplace_back(a[i].first, std::move(v));
      ++i;
    } else if (i == a.size() || b[j].first < a[i].first) {
      R v = sb * b[j].second;
      if (v != 0) out.emplace_back(b[j].first, std::move(v));
      ++j;
    } else {
      R v = sa * a[i].second + sb * b[j].second;
      if (v != 0) out.emplace_back(a[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

template <typename R>
const R* sv_at(const SparseVec<R>& v, int col) {
  auto it = std::lower_bound(v.begin(), v.end(), col,
                             [](const auto& e, int c) { return e.first < c; });
  if (it == v.end() || it->first != col) return nullptr;
  return &it->second;
}

inline Int sv_content(const SparseVec<Int>& v) {
  Int g = 0;
  for (const auto& [c, x] : v) {
    g = boost::multiprecision::gcd(g, x);
    if (g == 1) break;
  }
  return g;
}

// Divide by the content and make the leading coefficient positive.
inline void sv_make_primitive(SparseVec<Int>& v) {
  if (v.empty()) return;
  Int g = sv_content(v);
  if (v.front().second < 0) g = -g;
  if (g != 1)
    for (auto& [c, x] : v) x /= g;
}

// g = gcd(a,b) > 0 together with x*a + y*b = g; a, b not both zero.
inline void extended_gcd(Int a, Int b, Int& g, Int& x, Int& y) {
  Int x0 = 1, y0 = 0, x1 = 0, y1 = 1;
  while (b != 0) {
    Int q = a / b;
    Int r = a - q * b;
    a = b;
    b = r;
    Int nx = x0 - q * x1, ny = y0 - q * y1;
    x0 = x1;
    y0 = y1;
    x1 = nx;
    y1 = ny;
  }
  if (a < 0) {
    a = -a;
    x0 = -x0;
    y0 = -y0;
  }
  g = a;
  x = x0;
  y = y0;
}

inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  Int r = a - q * b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

// Row echelon basis over Q, kept as primitive integer rows. Ranks and
// zero-tests run fraction-free; reduce() produces the unique representative
// with no support on pivot columns.
class RationalEchelon {
 public:
  // Returns true when the vector enlarged the span.
  bool insert(SparseVec<Int> v) {
    sv_make_primitive(v);
    while (!v.empty()) {
      int c = v.front().first;
      auto it = pivot_row_.find(c);
      if (it == pivot_row_.end()) {
        pivot_row_[c] = static_cast<int>(rows_.size());
        rows_.push_back(std::move(v));
        return true;
      }
      const auto& row = rows_[it->second];
      v = sv_combine(v, row.front().second, row, Int(-v.front().second));
      sv_make_primitive(v);
    }
    return false;
  }

  bool insert(const SparseVec<Rat>& v) { return insert(clear_denominators(v)); }

  static SparseVec<Int> clear_denominators(const SparseVec<Rat>& v) {
    Int lcm = 1;
    for (const auto& [c, x] : v) {
      Int den = boost::multiprecision::denominator(x);
      lcm = lcm / boost::multiprecision::gcd(lcm, den) * den;
    }
    SparseVec<Int> out;
    out.reserve(v.size());
    for (const auto& [c, x] : v) {
      Int num = boost::multiprecision::numerator(x);
      Int den = boost::multiprecision::denominator(x);
      Int val = num * (lcm / den);
      if (val != 0) out.emplace_back(c, std::move(val));
    }
    return out;
  }

  bool reduces_to_zero(SparseVec<Int> v) const {
    sv_make_primitive(v);
    while (!v.empty()) {
      auto it = pivot_row_.find(v.front().first);
      if (it == pivot_row_.end()) return false;
      const auto& row = rows_[it->second];
      v = sv_combine(v, row.front().second, row, Int(-v.front().second));
      sv_make_primitive(v);
    }
    return true;
  }

  SparseVec<Rat> reduce(SparseVec<Rat> v) const {
    for (const auto& [c, idx] : pivot_row_) {
      const Rat* entry = sv_at(v, c);
      if (!entry) continue;
      const auto& row = rows_[idx];
      Rat scale = -(*entry) / Rat(row.front().second);
      SparseVec<Rat> row_q;
      row_q.reserve(row.size());
      for (const auto& [rc, rx] : row) row_q.emplace_back(rc, Rat(rx));
      v = sv_combine(v, Rat(1), row_q, scale);
    }
    return v;
  }

  int rank() const { return static_cast<int>(rows_.size()); }
  const std::vector<SparseVec<Int>>& rows() const { return rows_; }
  const std::map<int, int>& pivots() const { return pivot_row_; }

  void adopt_row(SparseVec<Int> row) {
    // For cache loading: rows must arrive echelon-compatible.
    if (row.empty()) throw std::invalid_argument("adopt_row: empty row");
    int c = row.front().first;
    if (pivot_row_.count(c)) throw std::invalid_argument("adopt_row: duplicate pivot");
    pivot_row_[c] = static_cast<int>(rows_.size());
    rows_.push_back(std::move(row));
  }

 private:
  std::map<int, int> pivot_row_;
  std::vector<SparseVec<Int>> rows_;
};

// Echelon basis of an integer lattice (row span over Z). Insertion keeps the
// span exact via unimodular pivot rotations; finalize() back-reduces entries
// above each pivot into [0, pivot) for a unique basis.
class IntegerLattice {
 public:
  void insert(SparseVec<Int> v) {
    finalized_ = false;
    while (!v.empty()) {
      int c = v.front().first;
      auto it = pivot_row_.find(c);
      if (it == pivot_row_.end()) {
        if (v.front().second < 0)
          for (auto& [cc, x] : v) x = -x;
        pivot_row_[c] = static_cast<int>(rows_.size());
        rows_.push_back(std::move(v));
        return;
      }
      auto& row = rows_[it->second];
      Int a = row.front().second, b = v.front().second;
      if (b % a == 0) {
        v = sv_combine(v, Int(1), row, Int(-(b / a)));
      } else {
        Int g, x, y;
        extended_gcd(a, b, g, x, y);
        SparseVec<Int> merged = sv_combine(row, x, v, y);  // leading value g at c
        v = sv_combine(v, Int(a / g), row, Int(-(b / g)));  // leading entry at c vanishes
        row = std::move(merged);
      }
    }
  }

  void finalize() {
    if (finalized_) return;
    for (auto& row : rows_)
      if (row.front().second < 0)
        for (auto& [c, x] : row) x = -x;
    for (auto& [c, idx] : pivot_row_) {
      auto& row = rows_[idx];
      // Reduce this row's entries at later pivot columns into [0, pivot).
      for (auto it = pivot_row_.upper_bound(c); it != pivot_row_.end(); ++it) {
        const Int* entry = sv_at(row, it->first);
        if (!entry) continue;
        const auto& other = rows_[it->second];
        Int q = floor_div(*entry, other.front().second);
        if (q != 0) row = sv_combine(row, Int(1), other, Int(-q));
      }
    }
    finalized_ = true;
  }

  bool contains(SparseVec<Int> v) const {
    while (!v.empty()) {
      auto it = pivot_row_.find(v.front().first);
      if (it == pivot_row_.end()) return false;
      const auto& row = rows_[it->second];
      Int a = row.front().second, b = v.front().second;
      if (b % a != 0) return false;
      v = sv_combine(v, Int(1), row, Int(-(b / a)));
    }
    return true;
  }

  int rank() const { return static_cast<int>(rows_.size()); }
  const std::vector<SparseVec<Int>>& rows() const { return rows_; }
  const std::map<int, int>& pivots() const { return pivot_row_; }
  bool finalized() const { return finalized_; }

  void adopt_row(SparseVec<Int> row) {
    // For cache loading: rows must arrive from a finalized basis.
    if (row.empty()) throw std::invalid_argument("adopt_row: empty row");
    if (row.front().second <= 0)
      throw std::invalid_argument("adopt_row: leading entry must be positive");
    int c = row.front().first;
    if (pivot_row_.count(c)) throw std::invalid_argument("adopt_row: duplicate pivot");
    pivot_row_[c] = static_cast<int>(rows_.size());
    rows_.push_back(std::move(row));
  }
  void mark_finalized() { finalized_ = true; }

  // Reduced representative of v modulo the lattice: entries at pivot columns
  // land in [0, pivot). Requires finalize().
  SparseVec<Int> reduce(SparseVec<Int> v) const {
    if (!finalized_) throw std::logic_error("IntegerLattice::reduce before finalize");
    for (const auto& [c, idx] : pivot_row_) {
      const Int* entry = sv_at(v, c);
      if (!entry) continue;
      const auto& row = rows_[idx];
      Int q = floor_div(*entry, row.front().second);
      if (q != 0) v = sv_combine(v, Int(1), row, Int(-q));
    }
    return v;
  }

  // Torsion part of Z^ncols / lattice: the Smith normal form diagonals that
  // exceed 1, in divisibility order. Pivot-1 rows drop out up front; the
  // leftover matrix is small and handled densely.
  std::vector<Int> torsion() const {
    if (!finalized_) throw std::logic_error("IntegerLattice::torsion before finalize");
    std::set<int> unit_cols;
    std::vector<const SparseVec<Int>*> hard;
    for (const auto& [c, idx] : pivot_row_) {
      if (rows_[idx].front().second == 1)
        unit_cols.insert(c);
      else
        hard.push_back(&rows_[idx]);
    }
    if (hard.empty()) return {};
    std::set<int> cols;
    for (const auto* row : hard)
      for (const auto& [c, x] : *row)
        if (!unit_cols.count(c)) cols.insert(c);
    std::map<int, int> col_index;
    for (int c : cols) col_index[c] = static_cast<int>(col_index.size());
    std::vector<std::vector<Int>> m(hard.size(), std::vector<Int>(cols.size(), 0));
    for (size_t r = 0; r < hard.size(); ++r)
      for (const auto& [c, x] : *hard[r])
        if (!unit_cols.count(c)) m[r][col_index[c]] = x;
    std::vector<Int> diag = smith_diagonals(std::move(m));
    std::vector<Int> out;
    for (const auto& d : diag)
      if (d > 1) out.push_back(d);
    return out;
  }

  // Dense Smith normal form diagonals (absolute values, divisibility chain).
  static std::vector<Int> smith_diagonals(std::vector<std::vector<Int>> m) {
    size_t rows = m.size();
    if (rows == 0) return {};
    size_t cols = m[0].size();
    std::vector<Int> diag;
    size_t t = 0;
    while (t < rows && t < cols) {
      // Find the smallest nonzero entry in the trailing submatrix.
      size_t pr = rows, pc = cols;
      Int best = 0;
      for (size_t i = t; i < rows; ++i)
        for (size_t j = t; j < cols; ++j) {
          if (m[i][j] == 0) continue;
          Int a = boost::multiprecision::abs(m[i][j]);
          if (best == 0 || a < best) {
            best = a;
            pr = i;
            pc = j;
          }
        }
      if (best == 0) break;
      std::swap(m[t], m[pr]);
      for (size_t i = t; i < rows; ++i) std::swap(m[i][t], m[i][pc]);
      if (m[t][t] < 0)
        for (size_t j = t; j < cols; ++j) m[t][j] = -m[t][j];
      bool clean = true;
      for (size_t i = t + 1; i < rows; ++i) {
        if (m[i][t] == 0) continue;
        Int q = floor_div(m[i][t], m[t][t]);
        for (size_t j = t; j < cols; ++j) m[i][j] -= q * m[t][j];
        if (m[i][t] != 0) clean = false;
      }
      for (size_t j = t + 1; j < cols; ++j) {
        if (m[t][j] == 0) continue;
        Int q = floor_div(m[t][j], m[t][t]);
        for (size_t i = t; i < rows; ++i) m[i][j] -= q * m[i][t];
        if (m[t][j] != 0) clean = false;
      }
      if (!clean) continue;  // smaller remainders appeared; pick a new pivot
      // Divisibility fixup: the pivot must divide the whole submatrix.
      bool fixed = false;
      for (size_t i = t + 1; i < rows && !fixed; ++i)
        for (size_t j = t + 1; j < cols && !fixed; ++j)
          if (m[i][j] % m[t][t] != 0) {
            for (size_t jj = t; jj < cols; ++jj) m[t][jj] += m[i][jj];
            fixed = true;
          }
      if (fixed) continue;
      diag.push_back(m[t][t]);
      ++t;
    }
    return diag;
  }

 private:
  std::map<int, int> pivot_row_;
  std::vector<SparseVec<Int>> rows_;
  bool finalized_ = false;
};

// Rank of the mod-2 reduction, as an independent cross-check on big runs.
inline int gf2_rank(const std::vector<SparseVec<Int>>& rows, int ncols) {
  size_t words = (static_cast<size_t>(ncols) + 63) / 64;
  std::vector<std::vector<uint64_t>> basis;  // echelon bit rows
  std::vector<int> lead;
  int rank = 0;
  for (const auto& row : rows) {
    std::vector<uint64_t> bits(words, 0);
    bool nonzero = false;
    for (const auto& [c, x] : row)
      if ((x & 1) != 0) {
        bits[c / 64] ^= (uint64_t{1} << (c % 64));
        nonzero = true;
      }
    if (!nonzero) continue;
    for (size_t b = 0; b < basis.size(); ++b) {
      int l = lead[b];
      if ((bits[l / 64] >> (l % 64)) & 1)
        for (size_t w = 0; w < words; ++w) bits[w] ^= basis[b][w];
    }
    int first = -1;
    for (int c = 0; c < ncols && first < 0; ++c)
      if ((bits[c / 64] >> (c % 64)) & 1) first = c;
    if (first < 0) continue;
    basis.push_back(std::move(bits));
    lead.push_back(first);
    ++rank;
  }
  return rank;
}

}  // namespace chordlink
