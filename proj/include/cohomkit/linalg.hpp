#pragma once

#include "cohomkit/smith.hpp"

#include <algorithm>
#include <optional>
#include <vector>

namespace cohomkit {

/// Some x with A x == b over Z, or A x == b (mod m). Deterministic: free coordinates in
/// Smith coordinates are zero and constrained ones take their least nonnegative value.
/// Returns nullopt when no solution exists.
inline std::optional<IntVector> solve_mod(const IntMatrix& a, std::span<const Integer> b,
                                          const Modulus& modulus) {
  if (b.size() != a.rows()) throw DimensionMismatch("solve_mod: right-hand side length");
  const auto snf = modulus.is_integral() ? smith_normal_form(a) : smith_normal_form(a, modulus);
  IntVector c = snf.U.apply(b);
  IntVector y(a.cols());
  for (std::size_t i = 0; i < c.size(); ++i) {
    Integer ci = modulus.reduce(c[i]);
    if (i < snf.rank) {
      const Integer& d = snf.D(i, i);
      if (ci % d != 0) return std::nullopt;
      if (modulus.is_integral()) {
        y[i] = ci / d;
      } else {
        y[i] = mod_floor(ci / d, modulus.value() / d);
      }
    } else if (ci != 0) {
      return std::nullopt;
    }
  }
  IntVector x = snf.V.apply(y);
  for (auto& xi : x) xi = modulus.reduce(xi);
  return x;
}

/// Invariant factors of target / image(M). Over Z a factor 0 is a free summand Z; over Z/m a
/// summand Z/m is reported as m. Unit factors are dropped; order follows divisibility with
/// free summands last.
inline IntVector cokernel_invariants(const IntMatrix& m, const Modulus& modulus = Modulus()) {
  const auto snf = modulus.is_integral() ? smith_normal_form(m, false) : smith_normal_form(m, modulus, false);
  IntVector out;
  for (std::size_t i = 0; i < snf.rank; ++i)
    if (snf.D(i, i) != 1) out.push_back(snf.D(i, i));
  for (std::size_t i = snf.rank; i < m.rows(); ++i) out.push_back(modulus.value());
  return out;
}

inline std::size_t matrix_rank(const IntMatrix& m, const Modulus& modulus = Modulus()) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  return (modulus.is_integral() ? smith_normal_form(m, false) : smith_normal_form(m, modulus, false)).rank;
}

/// Basis of the null space of A over a prime field F_p.
inline std::vector<IntVector> nullspace_mod_prime(const IntMatrix& a, const Integer& p) {
  std::vector<IntVector> out;
  if (a.cols() == 0) return out;
  if (a.rows() == 0) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      IntVector e(a.cols());
      e[j] = 1;
      out.push_back(std::move(e));
    }
    return out;
  }
  const auto snf = smith_normal_form(a, Modulus::of(p));
  for (std::size_t j = snf.rank; j < a.cols(); ++j) out.push_back(snf.V.column(j));
  return out;
}

/// Row-style lattice basis in echelon form over Z (positive pivots, entries above pivots
/// reduced) or over F_p (monic pivots). Supports incremental insertion and membership tests.
class LatticeSpan {
 public:
  explicit LatticeSpan(std::size_t dimension, Modulus modulus = Modulus())
      : dim_(dimension), modulus_(std::move(modulus)) {}

  std::size_t dimension() const { return dim_; }
  std::size_t rank() const { return rows_.size(); }
  const std::vector<IntVector>& basis() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivot_cols_; }

  /// Inserts v; returns true when the span grew.
  bool insert(IntVector v) {
    if (v.size() != dim_) throw DimensionMismatch("LatticeSpan::insert");
    normalize_vector(v);
    bool grew = false;
    std::size_t k = 0;
    for (;;) {
      auto lead = leading(v);
      if (!lead) break;
      while (k < rows_.size() && pivot_cols_[k] < *lead) ++k;
      if (k == rows_.size() || pivot_cols_[k] > *lead) {
        if (!modulus_.is_integral()) {
          scale_to_monic(v, *lead);
        } else if (v[*lead] < 0) {
          for (auto& x : v) x = -x;
        }
        rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(k), std::move(v));
        pivot_cols_.insert(pivot_cols_.begin() + static_cast<std::ptrdiff_t>(k), *lead);
        grew = true;
        break;
      }
      const std::size_t c = *lead;
      IntVector& row = rows_[k];
      if (!modulus_.is_integral() || v[c] % row[c] == 0) {
        Integer f = modulus_.is_integral() ? Integer(v[c] / row[c]) : v[c];
        axpy(v, row, -f);
        continue;
      }
      auto e = extended_gcd(row[c], v[c]);
      Integer a = row[c] / e.g, b = v[c] / e.g;
      IntVector new_row(dim_), new_v(dim_);
      for (std::size_t j = 0; j < dim_; ++j) {
        new_row[j] = e.x * row[j] + e.y * v[j];
        new_v[j] = -b * row[j] + a * v[j];
      }
      row = std::move(new_row);
      v = std::move(new_v);
      grew = true;
    }
    if (grew) reduce_above_pivots();
    return grew;
  }

  bool contains(const IntVector& v) const { return coordinates(v).has_value(); }

  /// Coordinates of v in the current basis, if v lies in the span.
  std::optional<IntVector> coordinates(IntVector v) const {
    if (v.size() != dim_) throw DimensionMismatch("LatticeSpan::coordinates");
    normalize_vector(v);
    IntVector coords(rows_.size());
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const std::size_t c = pivot_cols_[k];
      for (std::size_t j = (k == 0 ? 0 : pivot_cols_[k - 1] + 1); j < c; ++j)
        if (v[j] != 0) return std::nullopt;
      if (v[c] == 0) continue;
      Integer f;
      if (!modulus_.is_integral()) {
        f = v[c];
      } else {
        if (v[c] % rows_[k][c] != 0) return std::nullopt;
        f = v[c] / rows_[k][c];
      }
      coords[k] = f;
      axpy(v, rows_[k], -f);
    }
    if (!cohomkit::is_zero(v)) return std::nullopt;
    return coords;
  }

 private:
  std::optional<std::size_t> leading(const IntVector& v) const {
    for (std::size_t j = 0; j < dim_; ++j)
      if (v[j] != 0) return j;
    return std::nullopt;
  }
  void normalize_vector(IntVector& v) const {
    if (!modulus_.is_integral())
      for (auto& x : v) x = mod_floor(x, modulus_.value());
  }
  void axpy(IntVector& v, const IntVector& row, const Integer& f) const {
    if (f == 0) return;
    for (std::size_t j = 0; j < dim_; ++j)
      if (row[j] != 0) v[j] += f * row[j];
    normalize_vector(v);
  }
  void scale_to_monic(IntVector& v, std::size_t lead) const {
    Integer inv = inverse_mod(v[lead], modulus_.value());
    for (auto& x : v) x = mod_floor(x * inv, modulus_.value());
  }
  void reduce_above_pivots() {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const std::size_t c = pivot_cols_[k];
      if (modulus_.is_integral() && rows_[k][c] < 0)
        for (auto& x : rows_[k]) x = -x;
      for (std::size_t i = 0; i < k; ++i) {
        if (rows_[i][c] == 0) continue;
        Integer f;
        if (modulus_.is_integral()) {
          f = rows_[i][c] / rows_[k][c];
          if (rows_[i][c] - f * rows_[k][c] < 0) f -= 1;
        } else {
          f = rows_[i][c];
        }
        axpy(rows_[i], rows_[k], -f);
      }
    }
  }

  std::size_t dim_;
  Modulus modulus_;
  std::vector<IntVector> rows_;
  std::vector<std::size_t> pivot_cols_;
};

/// Basis of {x : A x == 0} over Z (a saturated lattice) or over F_p.
inline std::vector<IntVector> kernel_basis(const IntMatrix& a, const Modulus& modulus = Modulus()) {
  if (!modulus.is_integral()) return nullspace_mod_prime(a, modulus.value());
  std::vector<IntVector> out;
  if (a.cols() == 0) return out;
  if (a.rows() == 0) return nullspace_mod_prime(a, 2);  // identity basis
  const auto snf = smith_normal_form(a);
  LatticeSpan span(a.cols());
  for (std::size_t j = snf.rank; j < a.cols(); ++j) span.insert(snf.V.column(j));
  return span.basis();
}

/// Linear map returning a preimage under A for vectors in the image of A, valid when every
/// nonzero invariant factor of A is a unit (image saturated).
class PreimageSolver {
 public:
  PreimageSolver() = default;
  explicit PreimageSolver(const IntMatrix& a) {
    const auto snf = smith_normal_form(a);
    for (std::size_t i = 0; i < snf.rank; ++i)
      if (snf.D(i, i) != 1)
        throw InvalidArgument("PreimageSolver: image is not saturated (invariant factor " +
                              snf.D(i, i).str() + ")");
    // x = V * P * U c where P projects onto the first rank coordinates.
    map_ = IntMatrix(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.cols(); ++i)
      for (std::size_t k = 0; k < snf.rank; ++k) {
        if (snf.V(i, k) == 0) continue;
        for (std::size_t j = 0; j < a.rows(); ++j)
          if (snf.U(k, j) != 0) map_(i, j) += snf.V(i, k) * snf.U(k, j);
      }
  }
  IntVector operator()(std::span<const Integer> c) const { return map_.apply(c); }
  const IntMatrix& matrix() const { return map_; }

 private:
  IntMatrix map_;
};

/// Preimage map built from unit pivots only: rows are eliminated with +-1 pivots chosen by a
/// Markowitz count, which keeps entries small on the sparse boundary matrices of resolutions.
/// Falls back to the Smith-based map when a nonunit pivot would be needed.
class UnitPivotPreimage {
 public:
  explicit UnitPivotPreimage(const IntMatrix& a) {
    const std::size_t rows = a.rows(), cols = a.cols();
    IntMatrix e = a;
    IntMatrix l = IntMatrix::identity(rows);
    std::vector<bool> row_used(rows, false), col_used(cols, false);
    std::vector<std::pair<std::size_t, std::size_t>> pivots;
    const std::size_t rank = matrix_rank(a);
    while (pivots.size() < rank) {
      std::vector<std::size_t> row_nnz(rows, 0), col_nnz(cols, 0);
      for (std::size_t i = 0; i < rows; ++i)
        if (!row_used[i])
          for (std::size_t j = 0; j < cols; ++j)
            if (!col_used[j] && e(i, j) != 0) {
              ++row_nnz[i];
              ++col_nnz[j];
            }
      std::optional<std::pair<std::size_t, std::size_t>> best;
      std::size_t best_cost = SIZE_MAX;
      for (std::size_t i = 0; i < rows; ++i) {
        if (row_used[i]) continue;
        for (std::size_t j = 0; j < cols; ++j) {
          if (col_used[j] || (e(i, j) != 1 && e(i, j) != -1)) continue;
          const std::size_t cost = (row_nnz[i] - 1) * (col_nnz[j] - 1);
          if (cost < best_cost) {
            best_cost = cost;
            best = std::make_pair(i, j);
          }
        }
      }
      if (!best) {
        map_ = PreimageSolver(a).matrix();
        unit_ = false;
        return;
      }
      const auto [pr, pc] = *best;
      const Integer pv = e(pr, pc);
      for (std::size_t i = 0; i < rows; ++i) {
        if (i == pr || e(i, pc) == 0) continue;
        const Integer f = e(i, pc) * pv;
        e.add_row_multiple(i, pr, -f);
        l.add_row_multiple(i, pr, -f);
      }
      row_used[pr] = true;
      col_used[pc] = true;
      pivots.emplace_back(pr, pc);
    }
    map_ = IntMatrix(cols, rows);
    for (const auto& [pr, pc] : pivots) {
      const Integer pv = e(pr, pc);
      for (std::size_t j = 0; j < rows; ++j)
        if (l(pr, j) != 0) map_(pc, j) = pv * l(pr, j);
    }
  }

  IntVector operator()(std::span<const Integer> c) const { return map_.apply(c); }
  const IntMatrix& matrix() const { return map_; }
  bool used_unit_pivots() const { return unit_; }

 private:
  IntMatrix map_;
  bool unit_ = true;
};

/// Subquotient ker(B) / im(A) of a three-term complex of free modules
/// C' --A--> C --B--> C'' over Z or Z/m, with explicit generators and a coordinate map.
struct Subquotient {
  Modulus modulus;
  std::size_t ambient = 0;
  IntVector orders;                   // invariant factors; 0 means a free summand Z
  std::vector<IntVector> generators;  // representatives in C, one per factor
  IntMatrix boundary;                 // A, kept for membership tests

  // Cycle lattice coordinates: w_k = (cycle_coords z)_k / cycle_scale_k, then the kept
  // rows of the second Smith transform map them to coordinates along the generators.
  IntMatrix cycle_coords;
  IntVector cycle_scale;
  IntMatrix reduce;

  std::size_t size() const { return orders.size(); }

  bool is_cycle_lattice_member(std::span<const Integer> z) const {
    IntVector w = cycle_coords.apply(z);
    for (std::size_t k = 0; k < w.size(); ++k)
      if (w[k] % cycle_scale[k] != 0) return false;
    return true;
  }

  /// Coordinates of a cycle z along the generators (reduced by each nonzero order).
  IntVector coordinates(std::span<const Integer> z) const {
    if (z.size() != ambient) throw DimensionMismatch("Subquotient::coordinates");
    if (orders.empty()) return {};
    IntVector w = cycle_coords.apply(z);
    for (std::size_t k = 0; k < w.size(); ++k) {
      if (w[k] % cycle_scale[k] != 0) throw InvalidArgument("coordinates: not a cycle");
      w[k] /= cycle_scale[k];
    }
    IntVector c = reduce.apply(w);
    for (std::size_t k = 0; k < c.size(); ++k)
      if (orders[k] != 0) c[k] = mod_floor(c[k], orders[k]);
    return c;
  }

  /// Decides z in im(A) by solving A x == z over the coefficient ring.
  bool is_boundary(std::span<const Integer> z) const {
    if (boundary.cols() == 0) {
      for (const auto& x : z)
        if (modulus.reduce(x) != 0) return false;
      return true;
    }
    return solve_mod(boundary, z, modulus).has_value();
  }
};

inline Subquotient subquotient(const IntMatrix& a, const IntMatrix& b, std::size_t ambient,
                               const Modulus& modulus) {
  if (a.rows() != ambient || b.cols() != ambient)
    throw DimensionMismatch("subquotient: complex dimensions");
  Subquotient out;
  out.modulus = modulus;
  out.ambient = ambient;
  out.boundary = a;
  const std::size_t c = ambient;
  if (c == 0) return out;

  const Integer& m = modulus.value();
  // Basis of K~ = {x in Z^c : B x == 0 (mod m)}: columns V e_j scaled by t_j.
  const auto snf = b.rows() == 0 ? smith_normal_form(IntMatrix(1, c)) : smith_normal_form(b);
  std::vector<IntVector> w_cols;
  std::vector<IntVector> w_rows;
  IntVector scales;
  for (std::size_t j = 0; j < c; ++j) {
    Integer t = 1;
    if (j < snf.rank) {
      if (modulus.is_integral()) continue;
      t = m / gcd(snf.D(j, j), m);
    }
    IntVector col = snf.V.column(j);
    for (auto& x : col) x *= t;
    w_cols.push_back(std::move(col));
    w_rows.push_back(snf.V_inverse.row_vector(j));
    scales.push_back(t);
  }
  const std::size_t kdim = w_cols.size();
  if (kdim == 0) return out;
  out.cycle_coords = IntMatrix::from_rows(w_rows, c);
  out.cycle_scale = scales;

  auto to_coords = [&](const IntVector& x) {
    IntVector w = out.cycle_coords.apply(x);
    for (std::size_t k = 0; k < kdim; ++k) {
      if (w[k] % scales[k] != 0) throw InvalidArgument("subquotient: boundary outside cycles");
      w[k] /= scales[k];
    }
    return w;
  };

  // Relations im(A) + m Z^c in W-coordinates.
  std::vector<IntVector> rel_cols;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    IntVector w = to_coords(a.column(j));
    if (!is_zero(w)) rel_cols.push_back(std::move(w));
  }
  if (!modulus.is_integral())
    for (std::size_t i = 0; i < c; ++i) {
      IntVector e(c);
      e[i] = m;
      rel_cols.push_back(to_coords(e));
    }
  const IntMatrix rel = rel_cols.empty() ? IntMatrix(kdim, 1) : IntMatrix::from_columns(rel_cols, kdim);
  const auto snf2 = smith_normal_form(rel);

  const IntMatrix w = IntMatrix::from_columns(w_cols, c);
  std::vector<IntVector> reduce_rows;
  for (std::size_t k = 0; k < kdim; ++k) {
    Integer order = k < snf2.rank ? snf2.D(k, k) : Integer(0);
    if (order == 1) continue;
    out.orders.push_back(order);
    IntVector g = w.apply(snf2.U_inverse.column(k));
    for (auto& x : g) x = modulus.reduce(x);
    out.generators.push_back(std::move(g));
    reduce_rows.push_back(snf2.U.row_vector(k));
  }
  out.reduce = IntMatrix::from_rows(reduce_rows, kdim);
  return out;
}

}  // namespace cohomkit
