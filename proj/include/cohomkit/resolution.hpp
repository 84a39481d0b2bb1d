#pragma once

#include "cohomkit/group_ring.hpp"
#include "cohomkit/linalg.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace cohomkit {

/// Free modules (ZG)^r and (F_pG)^r: coordinates indexed by (generator k, element g) at
/// k * |G| + g, with G acting on the left by permuting the element slot.
namespace free_module {

inline IntVector act(const FiniteGroup& g, std::size_t h, std::span<const Integer> x) {
  const std::size_t n = g.order();
  IntVector out(x.size());
  for (std::size_t base = 0; base < x.size(); base += n)
    for (std::size_t e = 0; e < n; ++e)
      if (x[base + e] != 0) out[base + g.mul(h, e)] = x[base + e];
  return out;
}

/// Expands generator images (columns) into the matrix of the module map on the Z-basis:
/// column k * |G| + g holds g * image_k.
inline IntMatrix expand(const FiniteGroup& g, const IntMatrix& images) {
  const std::size_t n = g.order();
  IntMatrix out(images.rows(), images.cols() * n);
  for (std::size_t k = 0; k < images.cols(); ++k) {
    IntVector col = images.column(k);
    for (std::size_t e = 0; e < n; ++e) {
      IntVector moved = act(g, e, col);
      for (std::size_t i = 0; i < moved.size(); ++i) out(i, k * n + e) = moved[i];
    }
  }
  return out;
}

/// Sum of coefficients within each generator block.
inline IntVector augment(const FiniteGroup& g, std::span<const Integer> x) {
  const std::size_t n = g.order();
  IntVector out(x.size() / n);
  for (std::size_t i = 0; i < x.size(); ++i) out[i / n] += x[i];
  return out;
}

}  // namespace free_module

/// Action of every group element on a module of given dimension (matrices act on columns).
using ElementActions = std::vector<IntMatrix>;

inline ElementActions trivial_actions(const FiniteGroup& g, std::size_t dim = 1) {
  return ElementActions(g.order(), IntMatrix::identity(dim));
}

/// Explicit free resolution of a module M over ZG or F_pG, with finitely many terms.
struct Resolution {
  GroupPtr group;
  Modulus modulus;                      // Z or F_p
  std::vector<std::size_t> ranks;       // ranks[0..length]; empty for M = 0
  std::vector<IntMatrix> images;        // images[n], n >= 1: columns d(e_k) in P_{n-1}
  IntMatrix augmentation_images;        // columns: image of e_k in M
  ElementActions target_actions;        // action on M

  std::size_t length() const { return ranks.empty() ? 0 : ranks.size() - 1; }
  std::size_t target_dimension() const { return augmentation_images.rows(); }
  std::size_t dimension(std::size_t n) const { return ranks.at(n) * group->order(); }

  /// Matrix of d_n : P_n -> P_{n-1} on Z-bases, reduced by the modulus.
  IntMatrix differential(std::size_t n) const {
    IntMatrix m = free_module::expand(*group, images.at(n));
    return modulus.is_integral() ? m : m.reduced(modulus.value());
  }

  /// Matrix of the augmentation P_0 -> M.
  IntMatrix augmentation() const {
    const std::size_t n = group->order();
    IntMatrix out(target_dimension(), ranks.at(0) * n);
    for (std::size_t k = 0; k < ranks[0]; ++k) {
      IntVector v = augmentation_images.column(k);
      for (std::size_t g = 0; g < n; ++g) {
        IntVector w = target_actions[g].apply(v);
        for (std::size_t i = 0; i < w.size(); ++i) out(i, k * n + g) = modulus.reduce(w[i]);
      }
    }
    return out;
  }
};

namespace detail {

/// Greedy generators of a G-stable lattice (or F_p-subspace): walks the given basis and keeps
/// each vector not already in the span of the translates of those kept so far.
inline std::vector<IntVector> greedy_generators(
    const FiniteGroup& g, const std::vector<IntVector>& basis, std::size_t dim, const Modulus& modulus,
    const std::function<IntVector(std::size_t, const IntVector&)>& act) {
  LatticeSpan span(dim, modulus);
  std::vector<IntVector> gens;
  for (const auto& v : basis) {
    if (span.contains(v)) continue;
    gens.push_back(v);
    for (std::size_t h = 0; h < g.order(); ++h) span.insert(act(h, v));
  }
  return gens;
}

}  // namespace detail

/// Free resolution by iterated kernels: each term is free on greedily chosen generators of the
/// previous kernel (generators are picked from an echelon basis, no radical computation).
/// The module is given by the action of every element on Z^d or F_p^d.
inline Resolution free_resolution(GroupPtr group, const ElementActions& actions, std::size_t dim,
                                  const Modulus& modulus, std::size_t length) {
  Resolution res;
  res.group = group;
  res.modulus = modulus;
  res.target_actions = actions;
  const auto& g = *group;
  if (dim == 0) {
    res.augmentation_images = IntMatrix(0, 0);
    return res;
  }

  std::vector<IntVector> basis;
  for (std::size_t i = 0; i < dim; ++i) {
    IntVector e(dim);
    e[i] = 1;
    basis.push_back(std::move(e));
  }
  auto module_act = [&](std::size_t h, const IntVector& v) {
    IntVector w = actions[h].apply(v);
    for (auto& x : w) x = modulus.reduce(x);
    return w;
  };
  auto gens = detail::greedy_generators(g, basis, dim, modulus, module_act);
  res.ranks.push_back(gens.size());
  res.augmentation_images = IntMatrix::from_columns(gens, dim);
  res.images.emplace_back();  // images[0] unused
  IntMatrix current = res.augmentation();

  for (std::size_t deg = 1; deg <= length; ++deg) {
    auto kernel = kernel_basis(current, modulus);
    if (kernel.empty()) break;
    const std::size_t ambient = current.cols();
    auto free_act = [&](std::size_t h, const IntVector& v) { return free_module::act(g, h, v); };
    auto next = detail::greedy_generators(g, kernel, ambient, modulus, free_act);
    res.ranks.push_back(next.size());
    res.images.push_back(IntMatrix::from_columns(next, ambient));
    current = res.differential(deg);
  }
  return res;
}

/// Free resolution of the trivial module Z (or F_p) by iterated kernels.
inline Resolution trivial_free_resolution(GroupPtr group, std::size_t length, const Modulus& modulus = Modulus()) {
  auto actions = trivial_actions(*group);
  return free_resolution(group, actions, 1, modulus, length);
}

/// Period-two resolution of Z over Z[C_n]: differentials alternate (g - 1) and the norm
/// element. `generator` is an element of order |G|.
inline Resolution periodic_resolution(GroupPtr group, std::size_t generator, std::size_t length) {
  const auto& g = *group;
  const std::size_t n = g.order();
  if (n < 2) throw InvalidArgument("periodic resolution needs order >= 2");
  if (g.element_order(generator) != n) throw InvalidArgument("element does not generate the group");
  Resolution res;
  res.group = group;
  res.ranks.assign(length + 1, 1);
  res.images.emplace_back();
  res.augmentation_images = IntMatrix(1, 1);
  res.augmentation_images(0, 0) = 1;
  res.target_actions = trivial_actions(g);
  for (std::size_t deg = 1; deg <= length; ++deg) {
    IntMatrix col(n, 1);
    if (deg % 2 == 1) {
      col(generator, 0) += 1;
      col(0, 0) -= 1;
    } else {
      for (std::size_t e = 0; e < n; ++e) col(e, 0) = 1;
    }
    res.images.push_back(col);
  }
  return res;
}

inline Resolution periodic_resolution_cyclic(std::size_t order, std::size_t length) {
  if (order < 2) throw InvalidArgument("periodic resolution needs order >= 2");
  auto group = groups::cyclic(order);
  return periodic_resolution(group, 1, length);
}

/// Per-degree outcome of a complex check.
struct DegreeCheck {
  std::size_t degree = 0;
  bool composes_to_zero = true;
  bool exact = true;
  bool exactness_checked = false;
};

struct ComplexReport {
  std::vector<DegreeCheck> degrees;
  bool passed() const {
    for (const auto& d : degrees)
      if (!d.composes_to_zero || !d.exact) return false;
    return true;
  }
  std::optional<std::size_t> first_failure() const {
    for (const auto& d : degrees)
      if (!d.composes_to_zero || !d.exact) return d.degree;
    return std::nullopt;
  }
};

namespace detail {

// Exactness of X --b--> Y --a--> Z at Y: rank a + rank b == dim Y and, over Z, the image
// of b is saturated (all nonzero invariant factors are units).
inline bool exact_at(const IntMatrix& a, const IntMatrix& b, std::size_t dim, const Modulus& modulus) {
  std::size_t rank_a = matrix_rank(a, modulus);
  if (modulus.is_integral()) {
    const auto snf = smith_normal_form(b, false);
    for (std::size_t i = 0; i < snf.rank; ++i)
      if (snf.D(i, i) != 1) return false;
    return rank_a + snf.rank == dim;
  }
  return rank_a + matrix_rank(b, modulus) == dim;
}

}  // namespace detail

/// Checks d o d == 0 in every degree and exactness of the augmented complex in degrees
/// 0 .. length-1.
inline ComplexReport verify_complex(const Resolution& res) {
  ComplexReport report;
  if (res.ranks.empty()) return report;
  const std::size_t len = res.length();
  std::vector<IntMatrix> d(len + 1);
  d[0] = res.augmentation();
  for (std::size_t n = 1; n <= len; ++n) d[n] = res.differential(n);
  for (std::size_t n = 0; n <= len; ++n) {
    DegreeCheck check;
    check.degree = n;
    if (n >= 1) {
      IntMatrix comp = d[n - 1] * d[n];
      if (!res.modulus.is_integral()) comp = comp.reduced(res.modulus.value());
      check.composes_to_zero = comp.is_zero();
    }
    if (n < len) {
      check.exactness_checked = true;
      check.exact = detail::exact_at(d[n], d[n + 1], res.dimension(n), res.modulus);
    }
    report.degrees.push_back(check);
  }
  return report;
}

}  // namespace cohomkit
