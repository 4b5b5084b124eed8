#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "stabkit/bitvec.hpp"

namespace stabkit {

// Incremental row basis with on-line elimination.
class Gf2Basis {
 public:
  // Returns true and keeps v if it is independent of the rows so far.
  bool add(BitVec v) {
    reduce(v);
    const std::size_t piv = v.find_first();
    if (piv == BitVec::npos) return false;
    rows_.emplace_back(std::move(v), piv);
    return true;
  }

  bool contains(BitVec v) const {
    reduce(v);
    return v.none();
  }

  std::size_t rank() const { return rows_.size(); }

 private:
  void reduce(BitVec& v) const {
    for (const auto& [row, piv] : rows_)
      if (v.get(piv)) v ^= row;
  }

  std::vector<std::pair<BitVec, std::size_t>> rows_;
};

inline std::size_t gf2_rank(const std::vector<BitVec>& rows) {
  Gf2Basis b;
  for (const auto& r : rows) b.add(r);
  return b.rank();
}

// Coefficients c with xor_{i: c_i} rows[i] = target, if target is in the
// row space.  c has one bit per input row.
inline std::optional<BitVec> gf2_solve_combination(
    const std::vector<BitVec>& rows, const BitVec& target) {
  struct Pivot {
    BitVec row, combo;
    std::size_t col;
  };
  std::vector<Pivot> pivots;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    BitVec v = rows[r];
    BitVec c(rows.size());
    c.set(r, true);
    for (const auto& p : pivots)
      if (v.get(p.col)) {
        v ^= p.row;
        c ^= p.combo;
      }
    const std::size_t col = v.find_first();
    if (col != BitVec::npos)
      pivots.push_back({std::move(v), std::move(c), col});
  }
  BitVec v = target;
  BitVec c(rows.size());
  for (const auto& p : pivots)
    if (v.get(p.col)) {
      v ^= p.row;
      c ^= p.combo;
    }
  if (v.any()) return std::nullopt;
  return c;
}

// Solve A d = b for d of length m, where A's rows are given and b holds one
// bit per row.  Returns any solution (free variables set to 0).
inline std::optional<BitVec> gf2_solve_system(std::vector<BitVec> a_rows,
                                              std::size_t m, BitVec b) {
  std::vector<std::size_t> pivot_col;
  std::size_t rr = 0;
  for (std::size_t col = 0; col < m && rr < a_rows.size(); ++col) {
    std::size_t sel = BitVec::npos;
    for (std::size_t r = rr; r < a_rows.size(); ++r)
      if (a_rows[r].get(col)) {
        sel = r;
        break;
      }
    if (sel == BitVec::npos) continue;
    std::swap(a_rows[rr], a_rows[sel]);
    {
      const bool t = b.get(rr);
      b.set(rr, b.get(sel));
      b.set(sel, t);
    }
    for (std::size_t r = 0; r < a_rows.size(); ++r)
      if (r != rr && a_rows[r].get(col)) {
        a_rows[r] ^= a_rows[rr];
        b.set(r, b.get(r) ^ b.get(rr));
      }
    pivot_col.push_back(col);
    ++rr;
  }
  for (std::size_t r = rr; r < a_rows.size(); ++r)
    if (b.get(r)) return std::nullopt;
  BitVec d(m);
  for (std::size_t r = 0; r < rr; ++r) d.set(pivot_col[r], b.get(r));
  return d;
}

// Basis of {v : A v = 0} for the matrix whose rows are given (length m).
inline std::vector<BitVec> gf2_kernel(std::vector<BitVec> rows,
                                      std::size_t m) {
  std::vector<std::size_t> pivot_col;
  std::size_t rr = 0;
  for (std::size_t col = 0; col < m && rr < rows.size(); ++col) {
    std::size_t sel = BitVec::npos;
    for (std::size_t r = rr; r < rows.size(); ++r)
      if (rows[r].get(col)) {
        sel = r;
        break;
      }
    if (sel == BitVec::npos) continue;
    std::swap(rows[rr], rows[sel]);
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (r != rr && rows[r].get(col)) rows[r] ^= rows[rr];
    pivot_col.push_back(col);
    ++rr;
  }
  std::vector<bool> is_pivot(m, false);
  for (std::size_t c : pivot_col) is_pivot[c] = true;
  std::vector<BitVec> basis;
  for (std::size_t f = 0; f < m; ++f) {
    if (is_pivot[f]) continue;
    BitVec v(m);
    v.set(f, true);
    for (std::size_t r = 0; r < rr; ++r)
      if (rows[r].get(f)) v.set(pivot_col[r], true);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace stabkit
