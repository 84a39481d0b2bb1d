#pragma once

#include "cohomkit/resolution.hpp"

#include <map>

namespace cohomkit {

enum class BaseRing { integers, prime_field, rationals };

/// Finitely generated module over RG, R in {Z, F_p, Q}: the quotient of R^r by the span of
/// the relation vectors, with one r x r matrix per group generator acting on columns.
class FGModule {
 public:
  FGModule(GroupPtr group, BaseRing base, Integer p, std::size_t rank, std::vector<IntVector> relations,
           std::vector<IntMatrix> generator_actions)
      : group_(std::move(group)),
        base_(base),
        p_(std::move(p)),
        rank_(rank),
        relations_(std::move(relations)),
        generator_actions_(std::move(generator_actions)) {
    validate();
  }

  const GroupPtr& group() const { return group_; }
  BaseRing base() const { return base_; }
  const Integer& characteristic() const { return p_; }
  std::size_t rank() const { return rank_; }
  const std::vector<IntVector>& relations() const { return relations_; }
  const std::vector<IntMatrix>& generator_actions() const { return generator_actions_; }
  const ElementActions& actions() const { return actions_; }

  /// Z, F_p, or Z for rationals (matrices stay integral).
  Modulus modulus() const { return base_ == BaseRing::prime_field ? Modulus::of(p_) : Modulus(); }

  IntMatrix relation_matrix() const { return IntMatrix::from_columns(relations_, rank_); }

  /// Invariant factors of the underlying R-module (0 for a free summand).
  IntVector underlying_invariants() const {
    IntVector out;
    for (const auto& d : cokernel_invariants(relation_matrix(), modulus()))
      out.push_back(d);
    return out;
  }

  bool base_free() const {
    if (base_ != BaseRing::integers) return true;
    for (const auto& d : underlying_invariants())
      if (d != 0) return false;
    return true;
  }

  /// The same module on a basis of R^r / relations, which must be R-free.
  FGModule free_presentation() const {
    if (relations_.empty()) return *this;
    if (!base_free()) throw NotBaseFree("module has torsion " + torsion_string());
    const auto snf = smith_normal_form(relation_matrix(), modulus());
    const std::size_t r = snf.rank;
    const std::size_t free_rank = rank_ - r;
    // Rows r.. of U give coordinates on the quotient; columns r.. of U^{-1} give a section.
    std::vector<IntMatrix> acts;
    for (const auto& a : generator_actions_) {
      IntMatrix m(free_rank, free_rank);
      const IntMatrix t = snf.U * a * snf.U_inverse;
      for (std::size_t i = 0; i < free_rank; ++i)
        for (std::size_t j = 0; j < free_rank; ++j) m(i, j) = modulus().reduce(t(r + i, r + j));
      acts.push_back(std::move(m));
    }
    return FGModule(group_, base_, p_, free_rank, {}, std::move(acts));
  }

  /// Reduction to the fibre at p (p prime) or the rational fibre (p = 0). Needs base Z.
  FGModule fibre(const Integer& p) const {
    if (base_ != BaseRing::integers) throw InvalidModule("fibres are taken of integral modules");
    const FGModule m = free_presentation();
    if (p == 0) return FGModule(group_, BaseRing::rationals, 0, m.rank_, {}, m.generator_actions_);
    if (!is_prime(p)) throw NotPrime(p.str());
    std::vector<IntMatrix> acts;
    for (const auto& a : m.generator_actions_) acts.push_back(a.reduced(p));
    return FGModule(group_, BaseRing::prime_field, p, m.rank_, {}, std::move(acts));
  }

 private:
  std::string torsion_string() const {
    std::string out;
    for (const auto& d : underlying_invariants())
      if (d != 0) out += (out.empty() ? "Z/" : " + Z/") + d.str();
    return out;
  }

  void validate() {
    const auto& g = *group_;
    if (generator_actions_.size() != g.generators().size())
      throw InvalidModule("expected " + std::to_string(g.generators().size()) + " generator matrices");
    if (base_ == BaseRing::prime_field && !is_prime(p_)) throw NotPrime(p_.str());
    for (const auto& a : generator_actions_)
      if (a.rows() != rank_ || a.cols() != rank_) throw InvalidModule("action matrix is not " + std::to_string(rank_) + " square");
    for (const auto& r : relations_)
      if (r.size() != rank_) throw InvalidModule("relation vector length");
    const Modulus mod = modulus();
    for (auto& a : generator_actions_) a = mod.is_integral() ? a : a.reduced(mod.value());

    // Every element's action along a spanning tree.
    const auto tree = g.spanning_tree();
    actions_.assign(g.order(), IntMatrix::identity(rank_));
    for (std::size_t x : tree.order) {
      if (x == 0) continue;
      const auto [slot, prev] = tree.parent[x];
      actions_[x] = generator_actions_[slot] * actions_[prev];
      if (!mod.is_integral()) actions_[x] = actions_[x].reduced(mod.value());
    }

    // Relations must span a stable submodule, and the group law must hold modulo it.
    LatticeSpan rel(rank_, mod);
    for (const auto& r : relations_) rel.insert(r);
    auto in_relations = [&](IntVector v) {
      for (auto& x : v) x = mod.reduce(x);
      return is_zero(v) || rel.contains(v);
    };
    for (const auto& a : generator_actions_)
      for (const auto& r : relations_)
        if (!in_relations(a.apply(r))) throw InvalidModule("relations are not stable under the action");
    for (std::size_t a = 0; a < g.order(); ++a)
      for (std::size_t s = 0; s < g.generators().size(); ++s) {
        const IntMatrix lhs = generator_actions_[s] * actions_[a];
        const IntMatrix& rhs = actions_[g.mul(g.generators()[s], a)];
        for (std::size_t j = 0; j < rank_; ++j) {
          IntVector diff(rank_);
          for (std::size_t i = 0; i < rank_; ++i) diff[i] = lhs(i, j) - rhs(i, j);
          if (!in_relations(diff)) throw InvalidModule("action does not respect the group multiplication");
        }
      }
  }

  GroupPtr group_;
  BaseRing base_;
  Integer p_;
  std::size_t rank_;
  std::vector<IntVector> relations_;
  std::vector<IntMatrix> generator_actions_;
  ElementActions actions_;
};

namespace modules {

inline std::vector<IntMatrix> generator_matrices(const FiniteGroup& g, const ElementActions& all) {
  std::vector<IntMatrix> out;
  for (auto s : g.generators()) out.push_back(all[s]);
  return out;
}

inline FGModule trivial(GroupPtr group, BaseRing base = BaseRing::integers, Integer p = 0) {
  auto acts = generator_matrices(*group, trivial_actions(*group));
  return FGModule(group, base, std::move(p), 1, {}, std::move(acts));
}

/// Trivial module Z/m over ZG, presented as Z with relation m.
inline FGModule trivial_cyclic(GroupPtr group, const Integer& m) {
  auto acts = generator_matrices(*group, trivial_actions(*group));
  return FGModule(group, BaseRing::integers, 0, 1, {IntVector{m}}, std::move(acts));
}

/// The group ring itself with left multiplication.
inline FGModule regular(GroupPtr group, BaseRing base = BaseRing::integers, Integer p = 0) {
  std::vector<IntMatrix> acts;
  for (auto s : group->generators()) acts.push_back(left_regular_matrix(*group, s));
  return FGModule(group, base, std::move(p), group->order(), {}, std::move(acts));
}

/// Kernel of the augmentation, on the basis g - 1 for g != 1.
inline FGModule augmentation_ideal(GroupPtr group, BaseRing base = BaseRing::integers, Integer p = 0) {
  const auto& g = *group;
  const std::size_t n = g.order() - 1;
  std::vector<IntMatrix> acts;
  // h (g - 1) = (hg - 1) - (h - 1).
  for (auto h : g.generators()) {
    IntMatrix m(n, n);
    for (std::size_t x = 1; x < g.order(); ++x) {
      const std::size_t hx = g.mul(h, x);
      if (hx != 0) m(hx - 1, x - 1) += 1;
      if (h != 0) m(h - 1, x - 1) -= 1;
    }
    acts.push_back(std::move(m));
  }
  return FGModule(group, base, std::move(p), n, {}, std::move(acts));
}

}  // namespace modules

}  // namespace cohomkit
