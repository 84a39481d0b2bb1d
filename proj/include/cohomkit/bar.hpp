#pragma once

#include "cohomkit/resolution.hpp"
#include "cohomkit/sparse.hpp"

#include <cstdlib>
#include <string>
#include <vector>

namespace cohomkit {

/// Upper bound on the number of entries of a cochain space; COHOMKIT_SIZE_CAP overrides.
struct SizeCap {
  std::size_t entries = 1'000'000;

  static SizeCap from_env() {
    SizeCap cap;
    if (const char* env = std::getenv("COHOMKIT_SIZE_CAP")) {
      try {
        cap.entries = static_cast<std::size_t>(std::stoull(env));
      } catch (const std::exception&) {
        throw InvalidArgument(std::string("COHOMKIT_SIZE_CAP is not a number: ") + env);
      }
    }
    return cap;
  }

  void check(std::size_t count, const std::string& what) const {
    if (count > entries)
      throw SizeCapExceeded(what + " needs " + std::to_string(count) + " entries, cap is " +
                            std::to_string(entries));
  }
};

/// Number of normalized bar cells in degree n: (|G| - 1)^n, saturating at SIZE_MAX.
inline std::size_t bar_rank(std::size_t order, std::size_t n) {
  std::size_t base = order - 1, out = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (base != 0 && out > SIZE_MAX / base) return SIZE_MAX;
    out *= base;
  }
  return out;
}

/// Dense indexing of tuples (g_1, ..., g_n) of non-identity elements: element e sits at digit
/// e - 1 and g_1 is the most significant digit.
class TupleCodec {
 public:
  TupleCodec(std::size_t order, std::size_t n) : base_(order - 1), n_(n) {
    powers_.assign(n + 1, 1);
    for (std::size_t i = 1; i <= n; ++i) powers_[i] = powers_[i - 1] * base_;
  }

  std::size_t size() const { return powers_[n_]; }
  std::size_t degree() const { return n_; }

  void decode(std::size_t index, std::vector<std::size_t>& elements) const {
    elements.resize(n_);
    for (std::size_t i = n_; i-- > 0;) {
      elements[i] = index % base_ + 1;
      index /= base_;
    }
  }
  std::vector<std::size_t> decode(std::size_t index) const {
    std::vector<std::size_t> out;
    decode(index, out);
    return out;
  }

  template <class Range>
  std::size_t encode(const Range& elements) const {
    std::size_t index = 0;
    for (std::size_t e : elements) index = index * base_ + (e - 1);
    return index;
  }

 private:
  std::size_t base_;
  std::size_t n_;
  std::vector<std::size_t> powers_;
};

/// One term of a bar boundary: coefficient element g acting on cell `index`, with sign.
struct BarTerm {
  std::size_t element;
  std::size_t index;
  int sign;
};

/// Boundary of [g_1|...|g_n]: g_1[g_2|...] + sum (-1)^i [..|g_i g_{i+1}|..] + (-1)^n [g_1|...|g_{n-1}],
/// dropping faces where a product hits the identity.
inline std::vector<BarTerm> bar_boundary(const FiniteGroup& g, const std::vector<std::size_t>& cell) {
  const std::size_t n = cell.size();
  std::vector<BarTerm> out;
  if (n == 0) return out;
  const TupleCodec lower(g.order(), n - 1);
  std::vector<std::size_t> face(cell.begin() + 1, cell.end());
  out.push_back({cell[0], lower.encode(face), 1});
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t prod = g.mul(cell[i - 1], cell[i]);
    if (prod == 0) continue;
    face.clear();
    face.insert(face.end(), cell.begin(), cell.begin() + static_cast<std::ptrdiff_t>(i - 1));
    face.push_back(prod);
    face.insert(face.end(), cell.begin() + static_cast<std::ptrdiff_t>(i + 1), cell.end());
    out.push_back({0, lower.encode(face), i % 2 == 0 ? 1 : -1});
  }
  face.assign(cell.begin(), cell.end() - 1);
  out.push_back({0, lower.encode(face), n % 2 == 0 ? 1 : -1});
  return out;
}

/// Normalized bar resolution of the trivial module, with cells generated on demand.
class BarResolution {
 public:
  BarResolution(GroupPtr group, std::size_t length, SizeCap cap = SizeCap::from_env())
      : group_(std::move(group)), length_(length) {
    cap.check(bar_rank(group_->order(), length), "bar resolution degree " + std::to_string(length));
  }

  const GroupPtr& group() const { return group_; }
  std::size_t length() const { return length_; }
  std::size_t rank(std::size_t n) const { return bar_rank(group_->order(), n); }
  std::vector<std::size_t> ranks() const {
    std::vector<std::size_t> out;
    for (std::size_t n = 0; n <= length_; ++n) out.push_back(rank(n));
    return out;
  }

  /// d_n on the Z-basis (cell, element) indexed cell * |G| + element.
  SparseIntMatrix differential(std::size_t n) const {
    const auto& g = *group_;
    const std::size_t order = g.order();
    SparseIntMatrix out(rank(n - 1) * order, rank(n) * order);
    const TupleCodec codec(order, n);
    std::vector<std::size_t> cell;
    for (std::size_t t = 0; t < codec.size(); ++t) {
      codec.decode(t, cell);
      const auto terms = bar_boundary(g, cell);
      for (std::size_t h = 0; h < order; ++h)
        for (const auto& term : terms) out.add(term.index * order + g.mul(h, term.element), t * order + h, term.sign);
    }
    return out;
  }

  /// Augmentation Z[G] -> Z on the degree-0 term.
  SparseIntMatrix augmentation() const {
    SparseIntMatrix out(1, group_->order());
    for (std::size_t h = 0; h < group_->order(); ++h) out.add(0, h, 1);
    return out;
  }

  /// The same data as an explicit Resolution (generator images in the expanded basis).
  Resolution to_resolution() const {
    Resolution res;
    res.group = group_;
    res.images.emplace_back();
    res.augmentation_images = IntMatrix{{1}};
    res.target_actions = trivial_actions(*group_);
    for (std::size_t n = 0; n <= length_; ++n) res.ranks.push_back(rank(n));
    const std::size_t order = group_->order();
    for (std::size_t n = 1; n <= length_; ++n) {
      IntMatrix images(rank(n - 1) * order, rank(n));
      const TupleCodec codec(order, n);
      for (std::size_t t = 0; t < codec.size(); ++t)
        for (const auto& term : bar_boundary(*group_, codec.decode(t)))
          images(term.index * order + term.element, t) += term.sign;
      res.images.push_back(std::move(images));
    }
    return res;
  }

 private:
  GroupPtr group_;
  std::size_t length_;
};

inline BarResolution bar_resolution(GroupPtr group, std::size_t length, SizeCap cap = SizeCap::from_env()) {
  return BarResolution(std::move(group), length, cap);
}

/// d o d == 0 and exactness of the augmented bar complex, using sparse elimination.
inline ComplexReport verify_complex(const BarResolution& bar) {
  ComplexReport report;
  const std::size_t len = bar.length();
  std::vector<SparseIntMatrix> d;
  d.push_back(bar.augmentation());
  for (std::size_t n = 1; n <= len; ++n) d.push_back(bar.differential(n));
  std::vector<SparseInvariants> inv;
  for (const auto& m : d) inv.push_back(SparseInvariants::compute(m));
  for (std::size_t n = 0; n <= len; ++n) {
    DegreeCheck check;
    check.degree = n;
    if (n >= 1) {
      // Compose column by column: d_{n-1}(d_n(e)).
      const auto& outer = d[n - 1];
      const auto& inner = d[n];
      std::vector<std::map<std::size_t, Integer>> cols(inner.cols());
      for (std::size_t r = 0; r < inner.rows(); ++r)
        for (const auto& [c, v] : inner.row(r)) cols[c][r] += v;
      std::vector<std::map<std::size_t, Integer>> outer_cols(outer.cols());
      for (std::size_t r = 0; r < outer.rows(); ++r)
        for (const auto& [c, v] : outer.row(r)) outer_cols[c][r] += v;
      for (std::size_t c = 0; c < cols.size() && check.composes_to_zero; ++c) {
        std::map<std::size_t, Integer> acc;
        for (const auto& [mid, v] : cols[c])
          for (const auto& [r, w] : outer_cols[mid]) acc[r] += v * w;
        for (const auto& [r, v] : acc)
          if (v != 0) check.composes_to_zero = false;
      }
    }
    if (n < len) {
      check.exactness_checked = true;
      check.exact = inv[n].rank + inv[n + 1].rank == d[n].cols() && inv[n + 1].nonunit_factors.empty();
    }
    report.degrees.push_back(check);
  }
  return report;
}

/// Cochains on the normalized bar resolution with trivial coefficients Z or Z/m: a cochain of
/// degree n is a vector of length (|G| - 1)^n.
namespace bar_cochain {

/// (d f)(g_1..g_{n+1}) = f(g_2..) + sum (-1)^i f(..g_i g_{i+1}..) + (-1)^{n+1} f(g_1..g_n).
inline IntVector coboundary(const FiniteGroup& g, std::span<const Integer> f, std::size_t n,
                            const Modulus& modulus = Modulus()) {
  const TupleCodec source(g.order(), n);
  if (f.size() != source.size()) throw DimensionMismatch("bar cochain length");
  const TupleCodec target(g.order(), n + 1);
  IntVector out(target.size());
  std::vector<std::size_t> cell;
  for (std::size_t t = 0; t < target.size(); ++t) {
    target.decode(t, cell);
    Integer acc = 0;
    for (const auto& term : bar_boundary(g, cell)) {
      const Integer& v = f[term.index];
      if (v == 0) continue;
      if (term.sign > 0)
        acc += v;
      else
        acc -= v;
    }
    out[t] = modulus.reduce(acc);
  }
  return out;
}

/// Alexander-Whitney product: (f u h)(g_1..g_{p+q}) = f(g_1..g_p) h(g_{p+1}..g_{p+q}).
inline IntVector cup(std::span<const Integer> f, std::span<const Integer> h, const Modulus& modulus = Modulus()) {
  IntVector out(f.size() * h.size());
  for (std::size_t a = 0; a < f.size(); ++a) {
    if (f[a] == 0) continue;
    for (std::size_t b = 0; b < h.size(); ++b)
      if (h[b] != 0) out[a * h.size() + b] = modulus.reduce(f[a] * h[b]);
  }
  return out;
}

/// Dense coboundary matrix d^n : C^n -> C^{n+1} as a sparse matrix over Z.
inline SparseIntMatrix coboundary_matrix(const FiniteGroup& g, std::size_t n) {
  const TupleCodec target(g.order(), n + 1);
  SparseIntMatrix out(target.size(), bar_rank(g.order(), n));
  std::vector<std::size_t> cell;
  for (std::size_t t = 0; t < target.size(); ++t) {
    target.decode(t, cell);
    for (const auto& term : bar_boundary(g, cell)) out.add(t, term.index, term.sign);
  }
  return out;
}

}  // namespace bar_cochain

}  // namespace cohomkit
