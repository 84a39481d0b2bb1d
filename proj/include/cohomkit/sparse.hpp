#pragma once

#include "cohomkit/smith.hpp"

#include <map>
#include <set>
#include <vector>

namespace cohomkit {

/// Sparse integer matrix assembled by triplets; duplicate entries accumulate.
class SparseIntMatrix {
 public:
  SparseIntMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows) {}

  void add(std::size_t r, std::size_t c, const Integer& v) {
    if (v == 0) return;
    auto& row = rows_.at(r);
    auto [it, inserted] = row.emplace(c, v);
    if (!inserted) {
      it->second += v;
      if (it->second == 0) row.erase(it);
    }
  }

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  const std::map<std::size_t, Integer>& row(std::size_t r) const { return rows_[r]; }

  IntMatrix to_dense() const {
    IntMatrix out(rows_.size(), cols_);
    for (std::size_t r = 0; r < rows_.size(); ++r)
      for (const auto& [c, v] : rows_[r]) out(r, c) = v;
    return out;
  }

 private:
  friend struct SparseInvariants;
  std::size_t cols_;
  std::vector<std::map<std::size_t, Integer>> rows_;
};

/// Rank and non-unit invariant factors of an integer matrix. Eliminates unit pivots
/// sparsely, then finishes the remaining block with a dense Smith normal form.
struct SparseInvariants {
  std::size_t rank = 0;
  IntVector nonunit_factors;

  static SparseInvariants compute(SparseIntMatrix m) {
    auto& rows = m.rows_;
    std::vector<std::set<std::size_t>> col_rows(m.cols_);
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (const auto& [c, v] : rows[r]) col_rows[c].insert(r);
    std::vector<bool> alive(rows.size(), true);
    SparseInvariants out;

    for (std::size_t c = 0; c < m.cols_; ++c) {
      std::size_t pivot = rows.size();
      for (std::size_t r : col_rows[c]) {
        const Integer& v = rows[r].at(c);
        if (v != 1 && v != -1) continue;
        if (pivot == rows.size() || rows[r].size() < rows[pivot].size()) pivot = r;
      }
      if (pivot == rows.size()) continue;
      const Integer pv = rows[pivot].at(c);
      std::vector<std::size_t> targets(col_rows[c].begin(), col_rows[c].end());
      for (std::size_t r : targets) {
        if (r == pivot) continue;
        Integer f = rows[r].at(c) * pv;  // pv is its own inverse
        for (const auto& [cc, v] : rows[pivot]) {
          auto it = rows[r].find(cc);
          if (it == rows[r].end()) {
            rows[r].emplace(cc, -f * v);
            col_rows[cc].insert(r);
          } else {
            it->second -= f * v;
            if (it->second == 0) {
              rows[r].erase(it);
              col_rows[cc].erase(r);
            }
          }
        }
      }
      for (const auto& [cc, v] : rows[pivot]) col_rows[cc].erase(pivot);
      rows[pivot].clear();
      alive[pivot] = false;
      ++out.rank;
    }

    std::vector<std::size_t> rest_rows, rest_cols;
    std::vector<std::size_t> col_index(m.cols_, m.cols_);
    for (std::size_t c = 0; c < m.cols_; ++c)
      if (!col_rows[c].empty()) {
        col_index[c] = rest_cols.size();
        rest_cols.push_back(c);
      }
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (alive[r] && !rows[r].empty()) rest_rows.push_back(r);
    if (!rest_rows.empty()) {
      IntMatrix dense(rest_rows.size(), rest_cols.size());
      for (std::size_t i = 0; i < rest_rows.size(); ++i)
        for (const auto& [c, v] : rows[rest_rows[i]]) dense(i, col_index[c]) = v;
      const auto snf = smith_normal_form(dense, false);
      out.rank += snf.rank;
      for (std::size_t i = 0; i < snf.rank; ++i)
        if (snf.D(i, i) != 1) out.nonunit_factors.push_back(snf.D(i, i));
    }
    return out;
  }
};

}  // namespace cohomkit
