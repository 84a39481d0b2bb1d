#pragma once

#include "cohomkit/group.hpp"
#include "cohomkit/int_matrix.hpp"
#include "cohomkit/modulus.hpp"

namespace cohomkit {

/// Element of the group ring over Z or Z/m; coefficients indexed by group element.
class GroupRingElement {
 public:
  GroupRingElement(GroupPtr group, IntVector coeffs, Modulus modulus = Modulus())
      : group_(std::move(group)), coeffs_(std::move(coeffs)), modulus_(std::move(modulus)) {
    if (coeffs_.size() != group_->order()) throw DimensionMismatch("group ring coefficient count");
    for (auto& c : coeffs_) c = modulus_.reduce(c);
  }

  static GroupRingElement basis(GroupPtr group, std::size_t g, Modulus modulus = Modulus()) {
    IntVector c(group->order());
    c.at(g) = 1;
    return GroupRingElement(std::move(group), std::move(c), std::move(modulus));
  }
  static GroupRingElement one(GroupPtr group, Modulus modulus = Modulus()) {
    return basis(std::move(group), 0, std::move(modulus));
  }
  /// Sum of all group elements.
  static GroupRingElement norm(GroupPtr group, Modulus modulus = Modulus()) {
    IntVector c(group->order(), 1);
    return GroupRingElement(std::move(group), std::move(c), std::move(modulus));
  }

  const GroupPtr& group() const { return group_; }
  const IntVector& coeffs() const { return coeffs_; }
  const Modulus& modulus() const { return modulus_; }
  const Integer& operator[](std::size_t g) const { return coeffs_[g]; }

  Integer augmentation() const {
    Integer s = 0;
    for (const auto& c : coeffs_) s += c;
    return modulus_.reduce(s);
  }

  friend bool operator==(const GroupRingElement& a, const GroupRingElement& b) {
    return a.group_ == b.group_ && a.modulus_ == b.modulus_ && a.coeffs_ == b.coeffs_;
  }

  friend GroupRingElement operator+(const GroupRingElement& a, const GroupRingElement& b) {
    check_compatible(a, b);
    IntVector c = a.coeffs_;
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.coeffs_[i];
    return GroupRingElement(a.group_, std::move(c), a.modulus_);
  }
  friend GroupRingElement operator-(const GroupRingElement& a, const GroupRingElement& b) {
    check_compatible(a, b);
    IntVector c = a.coeffs_;
    for (std::size_t i = 0; i < c.size(); ++i) c[i] -= b.coeffs_[i];
    return GroupRingElement(a.group_, std::move(c), a.modulus_);
  }
  friend GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b) {
    return group_ring_multiply(a, b);
  }

  /// Convolution product along the multiplication table.
  friend GroupRingElement group_ring_multiply(const GroupRingElement& a, const GroupRingElement& b) {
    check_compatible(a, b);
    const auto& g = *a.group_;
    IntVector c(g.order());
    for (std::size_t x = 0; x < g.order(); ++x) {
      if (a.coeffs_[x] == 0) continue;
      for (std::size_t y = 0; y < g.order(); ++y)
        if (b.coeffs_[y] != 0) c[g.mul(x, y)] += a.coeffs_[x] * b.coeffs_[y];
    }
    return GroupRingElement(a.group_, std::move(c), a.modulus_);
  }

 private:
  static void check_compatible(const GroupRingElement& a, const GroupRingElement& b) {
    if (a.group_ != b.group_ && a.group_->label() != b.group_->label())
      throw InvalidArgument("group ring elements over different groups");
    if (a.modulus_ != b.modulus_)
      throw ModulusMismatch(a.modulus_.str() + " vs " + b.modulus_.str());
  }

  GroupPtr group_;
  IntVector coeffs_;
  Modulus modulus_;
};

/// Matrix of left multiplication by x on the group-element basis: column h holds x*h.
inline IntMatrix regular_action_matrix(const GroupRingElement& x) {
  const auto& g = *x.group();
  IntMatrix m(g.order(), g.order());
  for (std::size_t h = 0; h < g.order(); ++h)
    for (std::size_t k = 0; k < g.order(); ++k)
      if (x[k] != 0) m(g.mul(k, h), h) += x[k];
  return m;
}

/// Permutation matrix of left multiplication by the element g.
inline IntMatrix left_regular_matrix(const FiniteGroup& group, std::size_t g) {
  IntMatrix m(group.order(), group.order());
  for (std::size_t h = 0; h < group.order(); ++h) m(group.mul(g, h), h) = 1;
  return m;
}

}  // namespace cohomkit
