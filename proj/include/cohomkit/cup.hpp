#pragma once

#include "cohomkit/cohomology.hpp"

#include <array>
#include <map>

namespace cohomkit {

/// Alexander-Whitney cup product on bar cocycles.
inline CohomologyClass cup_product(const CohomologyClass& x, const CohomologyClass& y) {
  require_compatible(x, y);
  return {x.group, x.degree + y.degree, x.modulus, bar_cochain::cup(x.cocycle, y.cocycle, x.modulus)};
}

inline CohomologyClass cup_power(const CohomologyClass& x, unsigned n) {
  CohomologyClass out = unit_class(x.group, x.modulus);
  for (unsigned k = 0; k < n; ++k) out = cup_product(out, x);
  return out;
}

/// Degreewise bases of a graded ring up to a bound, with structure constants. Degree n is the
/// abelian group with cyclic orders orders[n] (0 = Z); an element is a coordinate vector.
struct GradedRingSlice {
  std::string label;
  Modulus modulus;
  std::size_t max_degree = 0;
  std::vector<IntVector> orders;
  std::map<std::array<std::size_t, 4>, IntVector> table;  // (a, i, b, j) -> coords in degree a + b
  std::vector<std::vector<CohomologyClass>> basis;        // empty for abstract slices

  std::size_t dimension(std::size_t n) const { return orders.at(n).size(); }
  std::vector<std::size_t> dimensions() const {
    std::vector<std::size_t> out;
    for (const auto& o : orders) out.push_back(o.size());
    return out;
  }

  IntVector reduce(std::size_t n, IntVector c) const {
    for (std::size_t k = 0; k < c.size(); ++k)
      if (orders[n][k] != 0) c[k] = mod_floor(c[k], orders[n][k]);
    return c;
  }

  const IntVector& product(std::size_t a, std::size_t i, std::size_t b, std::size_t j) const {
    return table.at({a, i, b, j});
  }

  /// Bilinear extension of the structure constants.
  IntVector multiply(std::size_t a, std::span<const Integer> x, std::size_t b, std::span<const Integer> y) const {
    if (a + b > max_degree) throw SliceTooShallow("product lands in degree " + std::to_string(a + b));
    IntVector out(dimension(a + b));
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < y.size(); ++j) {
        if (y[j] == 0) continue;
        const auto& c = product(a, i, b, j);
        for (std::size_t k = 0; k < c.size(); ++k) out[k] += x[i] * y[j] * c[k];
      }
    }
    return reduce(a + b, out);
  }

  /// x^e for x in degree a, or nullopt when e * a exceeds the slice.
  std::optional<IntVector> power(std::size_t a, std::span<const Integer> x, unsigned e) const {
    if (static_cast<std::size_t>(e) * a > max_degree) return std::nullopt;
    IntVector acc = unit();
    std::size_t deg = 0;
    for (unsigned k = 0; k < e; ++k) {
      acc = multiply(deg, acc, a, x);
      deg += a;
    }
    return acc;
  }

  /// Coordinates of the unit in degree 0 (first basis element).
  IntVector unit() const {
    IntVector u(dimension(0));
    if (!u.empty()) u[0] = 1;
    return u;
  }
};

/// Builds the slice of H^*(G, coefficients) up to degree N from the engine's bases, expressing
/// each basis product in basis coordinates.
inline GradedRingSlice ring_slice(const CohomologyEngine& engine, const Modulus& coefficients, std::size_t max_degree) {
  if (max_degree > engine.max_degree()) throw SliceTooShallow("engine bound is " + std::to_string(engine.max_degree()));
  GradedRingSlice slice;
  slice.label = engine.group()->label();
  slice.modulus = coefficients;
  slice.max_degree = max_degree;
  for (std::size_t n = 0; n <= max_degree; ++n) {
    auto h = engine.cohomology_group(coefficients, n);
    if (n == 0) {
      // The engine's degree-0 generator is the unit up to sign; fix it to the unit itself.
      h.basis = {unit_class(engine.group(), coefficients)};
    }
    slice.orders.push_back(h.invariant_factors);
    slice.basis.push_back(std::move(h.basis));
  }
  for (std::size_t a = 0; a <= max_degree; ++a)
    for (std::size_t b = 0; a + b <= max_degree; ++b)
      for (std::size_t i = 0; i < slice.basis[a].size(); ++i)
        for (std::size_t j = 0; j < slice.basis[b].size(); ++j)
          slice.table[{a, i, b, j}] = engine.coordinates(cup_product(slice.basis[a][i], slice.basis[b][j]));
  return slice;
}

inline GradedRingSlice ring_slice(GroupPtr group, const Modulus& coefficients, std::size_t max_degree,
                                  SizeCap cap = SizeCap::from_env()) {
  return ring_slice(CohomologyEngine(std::move(group), max_degree, cap), coefficients, max_degree);
}

/// First basis pair violating x y = (-1)^{|x||y|} y x, if any.
inline std::optional<std::array<std::size_t, 4>> graded_commutativity_failure(const GradedRingSlice& s) {
  for (const auto& [key, xy] : s.table) {
    const auto [a, i, b, j] = key;
    IntVector yx = s.product(b, j, a, i);
    if ((a * b) % 2 == 1)
      for (auto& v : yx) v = -v;
    if (s.reduce(a + b, yx) != xy) return key;
  }
  return std::nullopt;
}

/// First basis triple violating (x y) z = x (y z), if any.
inline std::optional<std::array<std::size_t, 6>> associativity_failure(const GradedRingSlice& s) {
  const std::size_t n = s.max_degree;
  for (std::size_t a = 0; a <= n; ++a)
    for (std::size_t b = 0; a + b <= n; ++b)
      for (std::size_t c = 0; a + b + c <= n; ++c)
        for (std::size_t i = 0; i < s.dimension(a); ++i)
          for (std::size_t j = 0; j < s.dimension(b); ++j)
            for (std::size_t k = 0; k < s.dimension(c); ++k) {
              IntVector z(s.dimension(c));
              z[k] = 1;
              IntVector x(s.dimension(a));
              x[i] = 1;
              const auto left = s.multiply(a + b, s.product(a, i, b, j), c, z);
              const auto right = s.multiply(a, x, b + c, s.product(b, j, c, k));
              if (left != right) return std::array<std::size_t, 6>{a, i, b, j, c, k};
            }
  return std::nullopt;
}

/// Whether the degree-0 unit acts as the identity in the table.
inline bool unit_acts_trivially(const GradedRingSlice& s) {
  if (s.dimension(0) == 0) return false;
  for (std::size_t b = 0; b <= s.max_degree; ++b)
    for (std::size_t j = 0; j < s.dimension(b); ++j) {
      IntVector e(s.dimension(b));
      e[j] = 1;
      if (s.product(0, 0, b, j) != e || s.product(b, j, 0, 0) != e) return false;
    }
  return true;
}

}  // namespace cohomkit
