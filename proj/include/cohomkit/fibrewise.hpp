#pragma once

#include "cohomkit/cochain.hpp"
#include "cohomkit/group_ring.hpp"
#include "cohomkit/module.hpp"

namespace cohomkit {

/// The group algebra over F_p, or over Q when p = 0. Basis: group elements.
struct FibreAlgebra {
  GroupPtr group;
  Integer p;  // 0 for the rationals

  std::size_t dimension() const { return group->order(); }

  /// Coefficient of e_c in e_a e_b.
  Integer structure_constant(std::size_t a, std::size_t b, std::size_t c) const {
    return group->mul(a, b) == c ? 1 : 0;
  }

  GroupRingElement multiply(const GroupRingElement& a, const GroupRingElement& b) const { return a * b; }

  /// Maschke: semisimple iff the characteristic does not divide |G|.
  bool semisimple() const { return p == 0 || Integer(group->order()) % p != 0; }
};

inline FibreAlgebra fibre_algebra(GroupPtr group, const Integer& p) {
  if (p != 0 && !is_prime(p)) throw NotPrime(p.str());
  return {std::move(group), p};
}

/// Outcome of the splitting test on a free cover F -> M.
struct ProjectivityResult {
  bool projective = false;
  std::size_t cover_rank = 0;        // F = (RG)^cover_rank
  IntMatrix cover;                   // dim M x dim F, the cover map
  std::optional<IntMatrix> splitting; // dim F x dim M, equivariant with cover * splitting = 1
};

namespace detail {

/// Free cover on greedy generators of M: column k * |G| + h is h . gen_k.
inline std::pair<std::size_t, IntMatrix> free_cover(const FGModule& m) {
  const auto& g = *m.group();
  const Modulus mod = m.modulus();
  std::vector<IntVector> basis;
  for (std::size_t i = 0; i < m.rank(); ++i) {
    IntVector e(m.rank());
    e[i] = 1;
    basis.push_back(std::move(e));
  }
  auto act = [&](std::size_t h, const IntVector& v) {
    IntVector w = m.actions()[h].apply(v);
    for (auto& x : w) x = mod.reduce(x);
    return w;
  };
  const auto gens = greedy_generators(g, basis, m.rank(), mod, act);
  IntMatrix cover(m.rank(), gens.size() * g.order());
  for (std::size_t k = 0; k < gens.size(); ++k)
    for (std::size_t h = 0; h < g.order(); ++h) {
      const IntVector w = act(h, gens[k]);
      for (std::size_t i = 0; i < w.size(); ++i) cover(i, k * g.order() + h) = w[i];
    }
  return {gens.size(), cover};
}

/// Unknown S (F x n, index i * n + j) with S rho(s) = lambda(s) S for each generator s and
/// pi S = 1.
inline std::optional<IntMatrix> solve_splitting(const FGModule& m, std::size_t cover_rank, const IntMatrix& pi) {
  const auto& g = *m.group();
  const std::size_t order = g.order(), n = m.rank(), f = cover_rank * order;
  const std::size_t gens = g.generators().size();
  IntMatrix a(gens * f * n + n * n, f * n);
  IntVector b(a.rows());
  std::size_t row = 0;
  for (std::size_t s = 0; s < gens; ++s) {
    const IntMatrix& rho = m.generator_actions()[s];
    const std::size_t inv = g.inv(g.generators()[s]);
    for (std::size_t i = 0; i < f; ++i) {
      // (lambda(s) S)(i, j) = S(l, j) with l = (k, s^{-1} h) for i = (k, h).
      const std::size_t l = (i / order) * order + g.mul(inv, i % order);
      for (std::size_t j = 0; j < n; ++j, ++row) {
        for (std::size_t k = 0; k < n; ++k)
          if (rho(k, j) != 0) a(row, i * n + k) += rho(k, j);
        a(row, l * n + j) -= 1;
      }
    }
  }
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t j = 0; j < n; ++j, ++row) {
      for (std::size_t l = 0; l < f; ++l)
        if (pi(r, l) != 0) a(row, l * n + j) = pi(r, l);
      b[row] = r == j ? 1 : 0;
    }
  auto x = solve_mod(a, b, m.modulus());
  if (!x) return std::nullopt;
  IntMatrix s(f, n);
  for (std::size_t i = 0; i < f; ++i)
    for (std::size_t j = 0; j < n; ++j) s(i, j) = m.modulus().reduce((*x)[i * n + j]);
  return s;
}

}  // namespace detail

/// Projectivity over RG for R = Z or F_p, decided by whether the free cover splits.
inline ProjectivityResult splitting_projectivity_test(const FGModule& m) {
  if (m.base() == BaseRing::rationals) throw InvalidModule("rational modules use rational_projectivity");
  const FGModule free = m.base() == BaseRing::integers ? m.free_presentation() : m;
  ProjectivityResult out;
  if (free.rank() == 0) {
    out.projective = true;
    out.splitting = IntMatrix(0, 0);
    return out;
  }
  auto [rank, pi] = detail::free_cover(free);
  out.cover_rank = rank;
  out.cover = pi;
  out.splitting = detail::solve_splitting(free, rank, pi);
  out.projective = out.splitting.has_value();
  return out;
}

/// Whether S is an equivariant section of the cover pi, over the module's base ring.
inline bool verify_splitting(const FGModule& m, std::size_t cover_rank, const IntMatrix& pi, const IntMatrix& s) {
  const auto& g = *m.group();
  const Modulus mod = m.modulus();
  auto same = [&](const IntMatrix& x, const IntMatrix& y) {
    return mod.is_integral() ? x == y : x.reduced(mod.value()) == y.reduced(mod.value());
  };
  if (!same(pi * s, IntMatrix::identity(m.rank()))) return false;
  for (std::size_t idx = 0; idx < g.generators().size(); ++idx) {
    const std::size_t gen = g.generators()[idx];
    IntMatrix lambda(s.rows(), s.rows());
    for (std::size_t i = 0; i < s.rows(); ++i) lambda((i / g.order()) * g.order() + g.mul(gen, i % g.order()), i) = 1;
    if (!same(s * m.generator_actions()[idx], lambda * s)) return false;
  }
  return true;
}

/// Over Q every module is projective. With `verify`, the averaged section
/// |G| S = sum_g lambda(g) S_0 rho(g)^{-1} is built and checked to be integral, equivariant and
/// to split |G| times the identity.
inline bool rational_projectivity(const FGModule& m, bool verify = true) {
  if (!verify) return true;
  const FGModule free = m.base() == BaseRing::integers ? m.free_presentation() : m;
  const auto& g = *free.group();
  const std::size_t n = free.rank(), order = g.order();
  if (n == 0) return true;
  // S_0 sends v_j to e_j at the identity slot of a rank-n free module.
  IntMatrix pi(n, n * order);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t h = 0; h < order; ++h) {
      const IntVector w = free.actions()[h].column(k);
      for (std::size_t i = 0; i < n; ++i) pi(i, k * order + h) = w[i];
    }
  IntMatrix avg(n * order, n);
  for (std::size_t h = 0; h < order; ++h) {
    const IntMatrix& rho_inv = free.actions()[g.inv(h)];
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j)
        if (rho_inv(k, j) != 0) avg(k * order + h, j) += rho_inv(k, j);
  }
  const Integer scale = order;
  IntMatrix target = IntMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i) target(i, i) = scale;
  if (!(pi * avg == target)) return false;
  for (std::size_t idx = 0; idx < g.generators().size(); ++idx) {
    const std::size_t gen = g.generators()[idx];
    IntMatrix lambda(n * order, n * order);
    for (std::size_t i = 0; i < n * order; ++i) lambda((i / order) * order + g.mul(gen, i % order), i) = 1;
    if (!(avg * free.generator_actions()[idx] == lambda * avg)) return false;
  }
  return true;
}

inline ProjectivityResult fibre_projectivity_test(const FGModule& m) {
  if (m.base() != BaseRing::prime_field) throw InvalidModule("fibre projectivity needs a module over F_p G");
  return splitting_projectivity_test(m);
}

/// Direct test over ZG for a Z-free module.
inline ProjectivityResult integral_projectivity_test(const FGModule& m) {
  if (m.base() != BaseRing::integers) throw InvalidModule("integral projectivity needs a module over ZG");
  if (!m.base_free()) throw NotBaseFree("module has Z-torsion");
  return splitting_projectivity_test(m);
}

struct FibreVerdict {
  Integer p;  // 0 for the rational fibre
  bool projective = false;
  std::optional<IntMatrix> splitting;
};

/// Projective dimension of a Z-free module over ZG through its fibres. Fibre algebras are
/// self-injective, so each fibre contributes 0 or infinity.
struct ProjDimReport {
  std::vector<FibreVerdict> fibres;
  bool finite() const {
    for (const auto& f : fibres)
      if (!f.projective) return false;
    return true;
  }
  std::string value() const { return finite() ? "0" : "inf"; }
};

inline ProjDimReport proj_dim_via_fibres(const FGModule& m, bool verify_rational = true) {
  if (m.base() != BaseRing::integers) throw InvalidModule("expected a module over ZG");
  if (!m.base_free()) throw NotBaseFree("module has Z-torsion");
  ProjDimReport out;
  out.fibres.push_back({0, rational_projectivity(m, verify_rational), std::nullopt});
  for (const auto& p : prime_divisors(Integer(m.group()->order()))) {
    auto r = fibre_projectivity_test(m.fibre(p));
    out.fibres.push_back({p, r.projective, std::move(r.splitting)});
  }
  return out;
}

/// Gorenstein projectivity over ZG for a finitely generated module: the underlying group is free.
inline bool gproj_test(const FGModule& m) {
  if (m.base() == BaseRing::integers) return m.base_free();
  return m.rank() == 0 || m.base() == BaseRing::rationals;
}

/// An isomorphism Hom_Z(ZG, Z) = ZG on one side, as the matrix of Phi: ZG -> Hom_Z(ZG, Z) in
/// the basis e_h and its dual basis.
struct DualisingWitness {
  IntMatrix left;   // Phi(g a) = g . Phi(a), with (g . f)(x) = f(x g)
  IntMatrix right;  // Phi(a g) = Phi(a) . g, with (f . g)(x) = f(g x)
};

namespace detail {

/// Equivariant maps X -> Y between permutation modules on the group basis, given per-generator
/// permutations of source and target; returns a Z-basis of the solution lattice.
inline std::vector<IntVector> equivariant_maps(const FiniteGroup& g,
                                              const std::function<std::size_t(std::size_t, std::size_t)>& src,
                                              const std::function<std::size_t(std::size_t, std::size_t)>& dst) {
  const std::size_t n = g.order();
  IntMatrix a(g.generators().size() * n * n, n * n);
  std::size_t row = 0;
  for (auto s : g.generators())
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i, ++row) {
        // (Phi P)(i, j) = Phi(i, src(s, j));  (Q Phi)(i, j) = Phi(q, j) where dst(s, q) = i.
        a(row, i * n + src(s, j)) += 1;
        for (std::size_t q = 0; q < n; ++q)
          if (dst(s, q) == i) a(row, q * n + j) -= 1;
      }
  return kernel_basis(a, Modulus());
}

inline std::optional<IntMatrix> unimodular_member(const std::vector<IntVector>& basis, std::size_t n) {
  auto as_matrix = [&](const IntVector& v) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = v[i * n + j];
    return m;
  };
  auto unimodular = [&](const IntMatrix& m) {
    const Integer d = determinant(m);
    return d == 1 || d == -1;
  };
  for (const auto& v : basis)
    if (auto m = as_matrix(v); unimodular(m)) return m;
  for (std::size_t a = 0; a < basis.size(); ++a)
    for (std::size_t b = a + 1; b < basis.size(); ++b)
      for (int sign : {1, -1}) {
        IntVector v = basis[a];
        for (std::size_t k = 0; k < v.size(); ++k) v[k] += sign * basis[b][k];
        if (auto m = as_matrix(v); unimodular(m)) return m;
      }
  return std::nullopt;
}

}  // namespace detail

inline DualisingWitness dualising_check(GroupPtr group) {
  const auto& g = *group;
  if (g.order() > FiniteGroup::kDefaultOrderCap) throw OrderCapExceeded(std::to_string(g.order()));
  const std::size_t n = g.order();
  // Left: g e_h = e_{gh}; g . delta_h = delta_{h g^{-1}}.
  auto left_src = [&](std::size_t s, std::size_t h) { return g.mul(s, h); };
  auto left_dst = [&](std::size_t s, std::size_t h) { return g.mul(h, g.inv(s)); };
  // Right: e_h s = e_{hs}; delta_h . s = delta_{s^{-1} h}.
  auto right_src = [&](std::size_t s, std::size_t h) { return g.mul(h, s); };
  auto right_dst = [&](std::size_t s, std::size_t h) { return g.mul(g.inv(s), h); };
  auto left = detail::unimodular_member(detail::equivariant_maps(g, left_src, left_dst), n);
  auto right = detail::unimodular_member(detail::equivariant_maps(g, right_src, right_dst), n);
  if (!left || !right) throw NoIsomorphismFound("no unimodular equivariant map for " + g.label());
  return {*left, *right};
}

/// Re-checks equivariance and invertibility of a dualising witness.
inline bool verify_dualising(const FiniteGroup& g, const DualisingWitness& w) {
  const std::size_t n = g.order();
  auto perm = [&](auto f, std::size_t s) {
    IntMatrix m(n, n);
    for (std::size_t h = 0; h < n; ++h) m(f(s, h), h) = 1;
    return m;
  };
  auto check = [&](const IntMatrix& phi, auto src, auto dst) {
    const Integer d = determinant(phi);
    if (d != 1 && d != -1) return false;
    for (auto s : g.generators())
      if (!(phi * perm(src, s) == perm(dst, s) * phi)) return false;
    return true;
  };
  return check(w.left, [&](std::size_t s, std::size_t h) { return g.mul(s, h); },
               [&](std::size_t s, std::size_t h) { return g.mul(h, g.inv(s)); }) &&
         check(w.right, [&](std::size_t s, std::size_t h) { return g.mul(h, s); },
               [&](std::size_t s, std::size_t h) { return g.mul(g.inv(s), h); });
}

/// Free resolution of M over ZG (or F_pG) by iterated kernels, padded with zero terms when it
/// stops early. A presentation with relations is covered on the basis vectors, the first
/// kernel being the preimage of the relation lattice.
inline Resolution module_resolution(const FGModule& m, std::size_t length) {
  if (m.base() == BaseRing::rationals) throw InvalidModule("rational modules are not resolved");
  const auto& group = m.group();
  const auto& g = *group;
  const Modulus mod = m.modulus();
  Resolution res;
  if (m.relations().empty()) {
    res = free_resolution(group, m.actions(), m.rank(), mod, length);
  } else {
    res.group = group;
    res.modulus = mod;
    res.target_actions = m.actions();
    res.ranks.push_back(m.rank());
    res.augmentation_images = IntMatrix::identity(m.rank());
    res.images.emplace_back();
    const IntMatrix cover = res.augmentation();
    const IntMatrix rel = m.relation_matrix();
    IntMatrix joint = IntMatrix::hstack(cover, rel);
    std::vector<IntVector> kernel;
    for (const auto& v : kernel_basis(joint, mod)) {
      IntVector head(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(cover.cols()));
      if (!is_zero(head)) kernel.push_back(std::move(head));
    }
    auto free_act = [&](std::size_t h, const IntVector& v) { return free_module::act(g, h, v); };
    std::size_t ambient = cover.cols();
    for (std::size_t deg = 1; deg <= length && !kernel.empty(); ++deg) {
      auto next = detail::greedy_generators(g, kernel, ambient, mod, free_act);
      res.ranks.push_back(next.size());
      res.images.push_back(IntMatrix::from_columns(next, ambient));
      const IntMatrix d = res.differential(deg);
      kernel = kernel_basis(d, mod);
      ambient = d.cols();
    }
  }
  if (res.ranks.empty()) {
    res.group = group;
    res.modulus = mod;
    res.ranks.push_back(0);
    res.images.emplace_back();
    res.augmentation_images = IntMatrix(m.rank(), 0);
  }
  while (res.length() < length) {
    const std::size_t prev = res.dimension(res.length());
    res.ranks.push_back(0);
    res.images.push_back(IntMatrix(prev, 0));
  }
  return res;
}

/// Ext^i over RG from M to N as invariant factors (0 = free summand Z). N must be Z-free or a
/// module over the same F_p.
inline IntVector ext_group(const FGModule& m, const FGModule& n, std::size_t i) {
  if (!same_group(m.group(), n.group())) throw InvalidModule("modules over different groups");
  Modulus coeff;
  if (n.base() == BaseRing::prime_field) {
    coeff = n.modulus();
    if (m.base() == BaseRing::prime_field && m.characteristic() != n.characteristic())
      throw ModulusMismatch("different characteristics");
  } else if (n.base() == BaseRing::rationals || m.base() == BaseRing::rationals) {
    throw InvalidModule("rational coefficients are not supported for Ext");
  } else if (m.base() == BaseRing::prime_field) {
    throw InvalidModule("Ext from an F_pG-module into a ZG-module: reduce the target first");
  }
  const FGModule target = n.base() == BaseRing::integers ? n.free_presentation() : n;
  const Resolution res = module_resolution(m, i + 1);
  CochainComplex cc(res, coeff, target.actions(), target.rank());
  return cc.cohomology(i).orders;
}

}  // namespace cohomkit
