#pragma once

#include "cohomkit/cup.hpp"

#include <set>
#include <tuple>

namespace cohomkit {

/// Block sizes of a kC_p-module, largest first.
struct JordanType {
  Integer p;
  std::vector<std::size_t> blocks;

  std::size_t dimension() const {
    std::size_t n = 0;
    for (auto b : blocks) n += b;
    return n;
  }
  friend bool operator==(const JordanType& a, const JordanType& b) { return a.p == b.p && a.blocks == b.blocks; }
};

namespace detail {

/// The generator g = 1 + N on J_a.
inline IntMatrix jordan_generator(std::size_t a) {
  IntMatrix m = IntMatrix::identity(a);
  for (std::size_t i = 0; i + 1 < a; ++i) m(i, i + 1) = 1;
  return m;
}

inline IntMatrix kronecker(const IntMatrix& x, const IntMatrix& y) {
  IntMatrix out(x.rows() * y.rows(), x.cols() * y.cols());
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j)
      if (x(i, j) != 0)
        for (std::size_t k = 0; k < y.rows(); ++k)
          for (std::size_t l = 0; l < y.cols(); ++l) out(i * y.rows() + k, j * y.cols() + l) = x(i, j) * y(k, l);
  return out;
}

/// Jordan type of a nilpotent operator t on F_p^n modulo a t-stable subspace with basis the
/// columns of w (possibly empty), from the ranks of t^k.
inline std::vector<std::size_t> nilpotent_type(const IntMatrix& t, const IntMatrix& w, const Integer& p) {
  const Modulus mod = Modulus::of(p);
  const std::size_t n = t.rows();
  const std::size_t wr = matrix_rank(w, mod);
  std::vector<std::size_t> ranks{n - wr};
  IntMatrix power = IntMatrix::identity(n);
  while (ranks.back() > 0) {
    power = (t * power).reduced(p);
    ranks.push_back(matrix_rank(IntMatrix::hstack(power, w), mod) - wr);
    if (ranks.size() > n + 2) throw InvalidArgument("operator is not nilpotent");
  }
  // Blocks of size >= k: r_{k-1} - r_k.
  std::vector<std::size_t> at_least;
  for (std::size_t k = 1; k < ranks.size(); ++k) at_least.push_back(ranks[k - 1] - ranks[k]);
  std::vector<std::size_t> blocks;
  for (std::size_t k = at_least.size(); k-- > 0;) {
    const std::size_t exact = at_least[k] - (k + 1 < at_least.size() ? at_least[k + 1] : 0);
    for (std::size_t c = 0; c < exact; ++c) blocks.push_back(k + 1);
  }
  return blocks;
}

}  // namespace detail

/// Jordan type of J_a (x) J_b with g acting diagonally.
inline JordanType jordan_tensor_type(std::size_t a, std::size_t b, const Integer& p) {
  if (!is_prime(p)) throw NotPrime(p.str());
  if (a < 1 || b < 1 || Integer(a) > p || Integer(b) > p) throw InvalidArgument("block sizes must lie in 1..p");
  IntMatrix t = detail::kronecker(detail::jordan_generator(a), detail::jordan_generator(b));
  for (std::size_t i = 0; i < t.rows(); ++i) t(i, i) -= 1;
  return {p, detail::nilpotent_type(t.reduced(p), IntMatrix(a * b, 0), p)};
}

/// A short exact sequence 0 -> J_a -> J_c -> J_b -> 0.
struct BlockSequence {
  std::size_t a, c, b;
  friend bool operator<(const BlockSequence& x, const BlockSequence& y) {
    return std::tie(x.a, x.c, x.b) < std::tie(y.a, y.c, y.b);
  }
};

/// All (a, c, b) with 1 <= a < c <= p realised by some injective module map J_a -> J_c with
/// cokernel a single block J_b, found by running through every element of Hom(J_a, J_c).
inline std::vector<BlockSequence> block_sequences(const Integer& p) {
  if (!is_prime(p) || p > 5) throw InvalidArgument("block sequences are enumerated for primes up to 5");
  const std::size_t q = static_cast<std::size_t>(p);
  std::set<BlockSequence> found;
  for (std::size_t c = 2; c <= q; ++c)
    for (std::size_t a = 1; a < c; ++a) {
      const IntMatrix ga = detail::jordan_generator(a), gc = detail::jordan_generator(c);
      // X g_a = g_c X for X : F_p^a -> F_p^c, unknown index i * a + j.
      IntMatrix eq(c * a, c * a);
      for (std::size_t i = 0; i < c; ++i)
        for (std::size_t j = 0; j < a; ++j) {
          const std::size_t row = i * a + j;
          for (std::size_t k = 0; k < a; ++k) eq(row, i * a + k) += ga(k, j);
          for (std::size_t k = 0; k < c; ++k) eq(row, k * a + j) -= gc(i, k);
        }
      const auto homs = nullspace_mod_prime(eq.reduced(p), p);
      IntMatrix tc = gc;
      for (std::size_t i = 0; i < c; ++i) tc(i, i) -= 1;
      std::vector<std::size_t> digits(homs.size(), 0);
      while (true) {
        IntMatrix x(c, a);
        for (std::size_t h = 0; h < homs.size(); ++h)
          for (std::size_t i = 0; i < c; ++i)
            for (std::size_t j = 0; j < a; ++j) x(i, j) += digits[h] * homs[h][i * a + j];
        x = x.reduced(p);
        if (matrix_rank(x, Modulus::of(p)) == a) {
          const auto blocks = detail::nilpotent_type(tc, x, p);
          if (blocks.size() == 1) found.insert({a, c, blocks[0]});
        }
        std::size_t pos = 0;
        while (pos < digits.size() && ++digits[pos] == q) digits[pos++] = 0;
        if (pos == digits.size()) break;
      }
    }
  return {found.begin(), found.end()};
}

/// Least set of non-projective block sizes containing the seed and closed under Omega,
/// summands of tensor products with every J_b, and two-out-of-three on block sequences
/// (J_p counts as zero).
inline std::set<std::size_t> thick_closure(const std::set<std::size_t>& seed, const Integer& p) {
  if (!is_prime(p)) throw NotPrime(p.str());
  const std::size_t q = static_cast<std::size_t>(p);
  for (auto a : seed)
    if (a < 1 || a >= q) throw InvalidArgument("seed block sizes must lie in 1..p-1");
  const auto sequences = block_sequences(p);
  std::set<std::size_t> out = seed;
  bool changed = true;
  auto add = [&](std::size_t a) {
    if (a < q && out.insert(a).second) changed = true;
  };
  while (changed) {
    changed = false;
    const std::set<std::size_t> now = out;
    for (auto a : now) {
      add(q - a);
      for (std::size_t b = 1; b <= q; ++b)
        for (auto block : jordan_tensor_type(a, b, p).blocks) add(block);
    }
    auto in = [&](std::size_t x) { return x == q || out.count(x) > 0; };
    for (const auto& s : sequences) {
      const int count = in(s.a) + in(s.b) + in(s.c);
      if (count == 2) {
        add(s.a);
        add(s.b);
        add(s.c);
      }
    }
  }
  return out;
}

/// Distinct closed sets over all seeds: the thick tensor ideals of the stable category.
inline std::vector<std::set<std::size_t>> thick_ideals(const Integer& p) {
  const std::size_t q = static_cast<std::size_t>(p);
  std::set<std::set<std::size_t>> ideals;
  for (std::size_t mask = 0; mask < (std::size_t{1} << (q - 1)); ++mask) {
    std::set<std::size_t> seed;
    for (std::size_t a = 1; a < q; ++a)
      if (mask & (std::size_t{1} << (a - 1))) seed.insert(a);
    ideals.insert(thick_closure(seed, p));
  }
  return {ideals.begin(), ideals.end()};
}

/// A degree-preserving map between ring slices, one matrix per degree (target x source).
struct RingMapSlice {
  GradedRingSlice source;
  GradedRingSlice target;
  std::vector<IntMatrix> maps;

  IntVector apply(std::size_t n, std::span<const Integer> x) const { return target.reduce(n, maps.at(n).apply(x)); }

  /// First basis pair with f(x y) != f(x) f(y), if any.
  std::optional<std::array<std::size_t, 4>> multiplicativity_failure() const {
    const std::size_t n = std::min(source.max_degree, target.max_degree);
    for (std::size_t a = 0; a <= n; ++a)
      for (std::size_t b = 0; a + b <= n; ++b)
        for (std::size_t i = 0; i < source.dimension(a); ++i)
          for (std::size_t j = 0; j < source.dimension(b); ++j) {
            IntVector x(source.dimension(a)), y(source.dimension(b));
            x[i] = 1;
            y[j] = 1;
            if (apply(a + b, source.product(a, i, b, j)) != target.multiply(a, apply(a, x), b, apply(b, y)))
              return std::array<std::size_t, 4>{a, i, b, j};
          }
    return std::nullopt;
  }
};

inline RingMapSlice identity_map(const GradedRingSlice& s) {
  RingMapSlice f{s, s, {}};
  for (std::size_t n = 0; n <= s.max_degree; ++n) f.maps.push_back(IntMatrix::identity(s.dimension(n)));
  return f;
}

inline RingMapSlice zero_map(const GradedRingSlice& source, const GradedRingSlice& target) {
  RingMapSlice f{source, target, {}};
  for (std::size_t n = 0; n <= std::min(source.max_degree, target.max_degree); ++n)
    f.maps.push_back(IntMatrix(target.dimension(n), source.dimension(n)));
  return f;
}

/// The p-primary part of H^*(G, Z) tensored with F_p, up to degree N: degree 0 is F_p on the
/// unit, degree n >= 1 has the basis of p_primary_part. Basis classes are integral.
inline GradedRingSlice integral_mod_p_slice(const CohomologyEngine& engine, const Integer& p, std::size_t max_degree) {
  if (max_degree > engine.max_degree()) throw SliceTooShallow("engine bound is " + std::to_string(engine.max_degree()));
  GradedRingSlice slice;
  slice.label = engine.group()->label();
  slice.modulus = Modulus::of(p);
  slice.max_degree = max_degree;
  std::vector<IntVector> factors;
  for (std::size_t n = 0; n <= max_degree; ++n) {
    if (n == 0) {
      slice.basis.push_back({unit_class(engine.group())});
      factors.push_back({0});
    } else {
      auto part = p_primary_part(engine, p, n);
      slice.basis.push_back(part.basis);
      factors.push_back(part.factors);
    }
    slice.orders.push_back(IntVector(slice.basis.back().size(), p));
  }
  // Coordinates of an integral p-primary class along the p-primary basis, mod p.
  auto coords = [&](const CohomologyClass& x) {
    const auto h = engine.cohomology_group(Modulus(), x.degree);
    const IntVector c = engine.coordinates(x);
    IntVector out;
    for (std::size_t k = 0; k < c.size(); ++k) {
      const Integer& d = h.invariant_factors[k];
      if (x.degree == 0) {
        out.push_back(mod_floor(c[k], p));
        continue;
      }
      const unsigned v = valuation(d, p);
      if (v == 0) {
        if (c[k] % d != 0) throw InvalidArgument("product left the p-primary part");
        continue;
      }
      const Integer cofactor = d / power(p, v);
      if (c[k] % cofactor != 0) throw InvalidArgument("product left the p-primary part");
      out.push_back(mod_floor(c[k] / cofactor, p));
    }
    return out;
  };
  for (std::size_t a = 0; a <= max_degree; ++a)
    for (std::size_t b = 0; a + b <= max_degree; ++b)
      for (std::size_t i = 0; i < slice.basis[a].size(); ++i)
        for (std::size_t j = 0; j < slice.basis[b].size(); ++j)
          slice.table[{a, i, b, j}] = coords(cup_product(slice.basis[a][i], slice.basis[b][j]));
  return slice;
}

/// theta_1 from integral_mod_p_slice to ring_slice(Z/p), both to degree N.
inline RingMapSlice reduction_map(const CohomologyEngine& engine, const Integer& p, std::size_t max_degree) {
  RingMapSlice f{integral_mod_p_slice(engine, p, max_degree), ring_slice(engine, Modulus::of(p), max_degree), {}};
  for (std::size_t n = 0; n <= max_degree; ++n) {
    IntMatrix m(f.target.dimension(n), f.source.dimension(n));
    for (std::size_t k = 0; k < f.source.dimension(n); ++k) {
      const IntVector c = engine.coordinates(coefficient_map(CoefficientMap::theta, p, 1, f.source.basis[n][k]));
      for (std::size_t r = 0; r < c.size(); ++r) m(r, k) = c[r];
    }
    f.maps.push_back(std::move(m));
  }
  return f;
}

struct KernelWitness {
  std::size_t degree = 0;
  IntVector element;  // source coordinates
  bool checked = false;
  bool nilpotent = false;
};

struct ImageWitness {
  std::size_t degree = 0;
  std::size_t index = 0;
  std::optional<IntVector> preimage;  // source coordinates in degree p^s * degree
};

struct KappaCertificate {
  bool passed = false;
  std::vector<KernelWitness> kernel;
  std::vector<ImageWitness> image;
};

/// F-isomorphism certificate on positive degrees up to N: kernel elements z with s|z| <= N
/// satisfy z^s = 0, and every target basis x with p^s |x| <= N has x^{p^s} in the image.
inline KappaCertificate kappa_certificate(const RingMapSlice& f, const Integer& p, unsigned s, std::size_t max_degree) {
  if (!is_prime(p)) throw NotPrime(p.str());
  if (max_degree > f.source.max_degree || max_degree > f.target.max_degree || max_degree >= f.maps.size())
    throw SliceTooShallow("slices stop before degree " + std::to_string(max_degree));
  for (const auto* slice : {&f.source, &f.target})
    for (const auto& o : slice->orders)
      for (const auto& x : o)
        if (x != p) throw InvalidArgument("kappa certificates work on F_p-slices");
  KappaCertificate out;
  bool ok = true;
  const unsigned e = std::max(s, 1u);
  const unsigned q = static_cast<unsigned>(power(p, s));
  for (std::size_t d = 1; d <= max_degree; ++d) {
    for (auto& z : nullspace_mod_prime(f.maps[d], p)) {
      KernelWitness w;
      w.degree = d;
      w.element = z;
      if (auto pw = f.source.power(d, z, e); pw && e * d <= max_degree) {
        w.checked = true;
        w.nilpotent = is_zero(*pw);
        ok = ok && w.nilpotent;
      }
      out.kernel.push_back(std::move(w));
    }
    if (static_cast<std::size_t>(q) * d > max_degree) continue;
    const std::size_t up = static_cast<std::size_t>(q) * d;
    for (std::size_t k = 0; k < f.target.dimension(d); ++k) {
      IntVector x(f.target.dimension(d));
      x[k] = 1;
      ImageWitness w;
      w.degree = d;
      w.index = k;
      const IntVector y = *f.target.power(d, x, q);
      if (f.maps[up].cols() == 0) {
        if (is_zero(y)) w.preimage = IntVector{};
      } else {
        w.preimage = solve_mod(f.maps[up], y, Modulus::of(p));
      }
      ok = ok && w.preimage.has_value();
      out.image.push_back(std::move(w));
    }
  }
  out.passed = ok;
  return out;
}

}  // namespace cohomkit
