#pragma once

#include "cohomkit/int_matrix.hpp"
#include "cohomkit/modulus.hpp"

#include <algorithm>
#include <optional>
#include <tuple>

namespace cohomkit {

/// U * source * V == D with U, V invertible over the coefficient ring and D diagonal,
/// d_1 | d_2 | ... | d_rank nonzero followed by zeros. Over Z/m the d_i divide m.
struct SmithDecomposition {
  IntMatrix source;
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;
  IntMatrix U_inverse;
  IntMatrix V_inverse;
  Modulus modulus;
  std::size_t rank = 0;

  IntVector diagonal() const {
    IntVector out;
    for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) out.push_back(D(i, i));
    return out;
  }
};

namespace detail {

class SmithReducer {
 public:
  SmithReducer(const IntMatrix& m, const Integer& modulus, bool track)
      : a_(modulus == 0 ? m : m.reduced(modulus)), m_(modulus), track_(track) {
    if (track_) {
      u_ = IntMatrix::identity(a_.rows());
      ui_ = u_;
      v_ = IntMatrix::identity(a_.cols());
      vi_ = v_;
    }
  }

  SmithDecomposition run(const IntMatrix& source) {
    std::size_t t = 0;
    const std::size_t limit = std::min(a_.rows(), a_.cols());
    while (t < limit) {
      auto pivot = find_pivot(t);
      if (!pivot) break;
      swap_rows(t, pivot->first);
      swap_cols(t, pivot->second);
      for (;;) {
        clear(t);
        auto bad = find_indivisible(t);
        if (!bad) break;
        add_row_multiple(t, *bad, 1);
      }
      normalize(t);
      ++t;
    }
    SmithDecomposition out;
    out.source = source;
    out.D = a_;
    out.modulus = Modulus::of(m_);
    out.rank = t;
    if (track_) {
      out.U = std::move(u_);
      out.V = std::move(v_);
      out.U_inverse = std::move(ui_);
      out.V_inverse = std::move(vi_);
    }
    return out;
  }

 private:
  bool nonzero(const Integer& x) const { return x != 0; }

  // Ideal size key: |x| over Z, gcd(x, m) over Z/m. Smaller means larger ideal.
  Integer key(const Integer& x) const { return m_ == 0 ? abs_value(x) : gcd(x, m_); }

  bool divides(const Integer& a, const Integer& b) const {
    if (b == 0) return true;
    if (m_ == 0) return a != 0 && b % a == 0;
    return b % gcd(a, m_) == 0;
  }

  // q with a*q == b in the ring; requires divides(a, b).
  Integer quotient(const Integer& a, const Integer& b) const {
    if (m_ == 0) return b / a;
    Integer g = gcd(a, m_);
    Integer mm = m_ / g;
    if (mm == 1) return 0;
    return mod_floor((b / g) * inverse_mod(a / g, mm), mm);
  }

  std::optional<std::pair<std::size_t, std::size_t>> find_pivot(std::size_t t) const {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    Integer best_key;
    for (std::size_t i = t; i < a_.rows(); ++i)
      for (std::size_t j = t; j < a_.cols(); ++j) {
        const Integer& x = a_(i, j);
        if (!nonzero(x)) continue;
        Integer k = key(x);
        if (!best || k < best_key) {
          best = {i, j};
          best_key = k;
          if (best_key == 1) return best;
        }
      }
    return best;
  }

  std::optional<std::size_t> find_indivisible(std::size_t t) const {
    const Integer& p = a_(t, t);
    for (std::size_t i = t + 1; i < a_.rows(); ++i)
      for (std::size_t j = t + 1; j < a_.cols(); ++j)
        if (!divides(p, a_(i, j))) return i;
    return std::nullopt;
  }

  void clear(std::size_t t) {
    bool dirty = true;
    while (dirty) {
      dirty = false;
      for (std::size_t i = t + 1; i < a_.rows(); ++i) {
        const Integer b = a_(i, t);
        if (!nonzero(b)) continue;
        const Integer a = a_(t, t);
        if (divides(a, b)) {
          add_row_multiple(i, t, -quotient(a, b));
        } else {
          auto e = extended_gcd(a, b);
          combine_rows(t, i, e.x, e.y, -(b / e.g), a / e.g);
        }
      }
      for (std::size_t j = t + 1; j < a_.cols(); ++j) {
        const Integer b = a_(t, j);
        if (!nonzero(b)) continue;
        const Integer a = a_(t, t);
        if (divides(a, b)) {
          add_col_multiple(j, t, -quotient(a, b));
        } else {
          auto e = extended_gcd(a, b);
          combine_cols(t, j, e.x, e.y, -(b / e.g), a / e.g);
          dirty = true;
        }
      }
    }
  }

  void normalize(std::size_t t) {
    const Integer a = a_(t, t);
    if (m_ == 0) {
      if (a < 0) scale_row(t, -1, -1);
      return;
    }
    Integer g = gcd(a, m_);
    if (g == a) return;
    Integer mm = m_ / g;
    Integer w = inverse_mod(a / g, mm);
    while (gcd(w, m_) != 1) w += mm;
    scale_row(t, w, inverse_mod(w, m_));
  }

  void reduce_row(IntMatrix& x, std::size_t r) {
    if (m_ != 0) x.reduce_row(r, m_);
  }
  void reduce_col(IntMatrix& x, std::size_t c) {
    if (m_ != 0) x.reduce_col(c, m_);
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    a_.swap_rows(a, b);
    if (track_) {
      u_.swap_rows(a, b);
      ui_.swap_cols(a, b);
    }
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    a_.swap_cols(a, b);
    if (track_) {
      v_.swap_cols(a, b);
      vi_.swap_rows(a, b);
    }
  }
  void add_row_multiple(std::size_t target, std::size_t source, const Integer& f) {
    if (f == 0) return;
    a_.add_row_multiple(target, source, f);
    reduce_row(a_, target);
    if (track_) {
      u_.add_row_multiple(target, source, f);
      reduce_row(u_, target);
      ui_.add_col_multiple(source, target, -f);
      reduce_col(ui_, source);
    }
  }
  void add_col_multiple(std::size_t target, std::size_t source, const Integer& f) {
    if (f == 0) return;
    a_.add_col_multiple(target, source, f);
    reduce_col(a_, target);
    if (track_) {
      v_.add_col_multiple(target, source, f);
      reduce_col(v_, target);
      vi_.add_row_multiple(source, target, -f);
      reduce_row(vi_, source);
    }
  }
  // Rows (a, b) <- (x a + y b, u a + v b), determinant 1.
  void combine_rows(std::size_t a, std::size_t b, const Integer& x, const Integer& y,
                    const Integer& u, const Integer& v) {
    a_.combine_rows(a, b, x, y, u, v);
    reduce_row(a_, a);
    reduce_row(a_, b);
    if (track_) {
      u_.combine_rows(a, b, x, y, u, v);
      reduce_row(u_, a);
      reduce_row(u_, b);
      ui_.combine_cols(a, b, v, -u, -y, x);
      reduce_col(ui_, a);
      reduce_col(ui_, b);
    }
  }
  // Columns (a, b) <- (x a + y b, u a + v b), determinant 1.
  void combine_cols(std::size_t a, std::size_t b, const Integer& x, const Integer& y,
                    const Integer& u, const Integer& v) {
    a_.combine_cols(a, b, x, y, u, v);
    reduce_col(a_, a);
    reduce_col(a_, b);
    if (track_) {
      v_.combine_cols(a, b, x, y, u, v);
      reduce_col(v_, a);
      reduce_col(v_, b);
      vi_.combine_rows(a, b, v, -u, -y, x);
      reduce_row(vi_, a);
      reduce_row(vi_, b);
    }
  }
  void scale_row(std::size_t r, const Integer& w, const Integer& w_inv) {
    a_.scale_row(r, w);
    reduce_row(a_, r);
    if (track_) {
      u_.scale_row(r, w);
      reduce_row(u_, r);
      for (std::size_t i = 0; i < ui_.rows(); ++i) ui_(i, r) *= w_inv;
      reduce_col(ui_, r);
    }
  }

  IntMatrix a_;
  Integer m_;
  bool track_;
  IntMatrix u_, ui_, v_, vi_;
};

}  // namespace detail

/// Smith normal form over Z. Pivots are chosen by smallest absolute value, ties by lowest
/// (row, col), so the result is deterministic.
inline SmithDecomposition smith_normal_form(const IntMatrix& m, bool track_transforms = true) {
  return detail::SmithReducer(m, 0, track_transforms).run(m);
}

/// Smith normal form over Z/modulus (any modulus >= 2). Diagonal entries divide the modulus.
inline SmithDecomposition smith_normal_form(const IntMatrix& m, const Modulus& modulus,
                                            bool track_transforms = true) {
  return detail::SmithReducer(m, modulus.value(), track_transforms).run(m);
}

}  // namespace cohomkit
