#pragma once

#include "cohomkit/linalg.hpp"

#include <algorithm>

namespace cohomkit {

/// Koszul complex over Z on a_1..a_d: K_k = exterior power of Z^d, basis the k-subsets in
/// lexicographic order, d(e_S) = sum_t (-1)^t a_{s_t} e_{S - s_t}.
struct KoszulComplex {
  IntVector elements;
  std::vector<std::vector<std::vector<std::size_t>>> subsets;  // per degree k
  std::vector<IntMatrix> differentials;                        // [k]: K_k -> K_{k-1}, k >= 1

  std::size_t length() const { return elements.size(); }
  std::size_t rank(std::size_t k) const { return subsets.at(k).size(); }

  std::size_t index(std::size_t k, const std::vector<std::size_t>& s) const {
    const auto& list = subsets[k];
    return static_cast<std::size_t>(std::lower_bound(list.begin(), list.end(), s) - list.begin());
  }

  /// H_k as invariant factors.
  IntVector homology(std::size_t k) const {
    const std::size_t d = length();
    const IntMatrix in = k < d ? differentials[k + 1] : IntMatrix(rank(k), 0);
    const IntMatrix out = k > 0 ? differentials[k] : IntMatrix(0, rank(k));
    return subquotient(in, out, rank(k), Modulus()).orders;
  }

  bool composes_to_zero() const {
    for (std::size_t k = 2; k < differentials.size(); ++k)
      if (!(differentials[k - 1] * differentials[k]).is_zero()) return false;
    return true;
  }
};

inline KoszulComplex koszul_complex(const IntVector& elements) {
  const std::size_t d = elements.size();
  if (d < 1 || d > 4) throw InvalidArgument("Koszul complexes are built for 1 <= d <= 4");
  KoszulComplex k;
  k.elements = elements;
  k.subsets.resize(d + 1);
  for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < d; ++i)
      if (mask & (std::size_t{1} << i)) s.push_back(i);
    k.subsets[s.size()].push_back(std::move(s));
  }
  for (auto& list : k.subsets) std::sort(list.begin(), list.end());
  k.differentials.emplace_back();
  for (std::size_t deg = 1; deg <= d; ++deg) {
    IntMatrix m(k.rank(deg - 1), k.rank(deg));
    for (std::size_t c = 0; c < k.rank(deg); ++c) {
      const auto& s = k.subsets[deg][c];
      for (std::size_t t = 0; t < s.size(); ++t) {
        auto face = s;
        face.erase(face.begin() + static_cast<std::ptrdiff_t>(t));
        m(k.index(deg - 1, face), c) += (t % 2 == 0 ? 1 : -1) * elements[s[t]];
      }
    }
    k.differentials.push_back(std::move(m));
  }
  return k;
}

/// Outcome of matching Hom_Z(K, Z) with K shifted down by d. phi[k] : K^k -> K_{d-k} with
/// phi[k+1] delta^k = d_{d-k} phi[k], delta^k the transpose of d_{k+1}.
struct KoszulSelfDuality {
  bool passed = false;
  std::vector<IntMatrix> phi;
};

/// phi is a chain map Hom(K, Z) -> K[d] made of unimodular matrices.
inline bool verify_selfduality(const KoszulComplex& k, const std::vector<IntMatrix>& phi) {
  const std::size_t d = k.length();
  if (phi.size() != d + 1) return false;
  for (std::size_t deg = 0; deg <= d; ++deg)
    if (phi[deg].rows() != k.rank(d - deg) || phi[deg].cols() != k.rank(deg)) return false;
  for (std::size_t deg = 0; deg < d; ++deg)
    if (!(phi[deg + 1] * k.differentials[deg + 1].transpose() == k.differentials[d - deg] * phi[deg])) return false;
  for (const auto& m : phi) {
    const Integer det = determinant(m);
    if (det != 1 && det != -1) return false;
  }
  return true;
}

inline KoszulSelfDuality koszul_selfdual_check(const IntVector& elements) {
  const KoszulComplex k = koszul_complex(elements);
  const std::size_t d = k.length();
  KoszulSelfDuality out;
  if (!k.composes_to_zero()) return out;
  // Hodge star e_S^* -> sign(S, S^c) e_{S^c}, then signs are fixed degree by degree.
  for (std::size_t deg = 0; deg <= d; ++deg) {
    IntMatrix m(k.rank(d - deg), k.rank(deg));
    for (std::size_t c = 0; c < k.rank(deg); ++c) {
      const auto& s = k.subsets[deg][c];
      std::vector<std::size_t> comp, word = s;
      for (std::size_t i = 0; i < d; ++i)
        if (!std::binary_search(s.begin(), s.end(), i)) comp.push_back(i);
      word.insert(word.end(), comp.begin(), comp.end());
      std::size_t inversions = 0;
      for (std::size_t a = 0; a < word.size(); ++a)
        for (std::size_t b = a + 1; b < word.size(); ++b)
          if (word[a] > word[b]) ++inversions;
      m(k.index(d - deg, comp), c) = inversions % 2 == 0 ? 1 : -1;
    }
    out.phi.push_back(std::move(m));
  }
  for (std::size_t deg = 0; deg < d; ++deg) {
    const IntMatrix lhs = out.phi[deg + 1] * k.differentials[deg + 1].transpose();
    const IntMatrix rhs = k.differentials[d - deg] * out.phi[deg];
    if (lhs == rhs) continue;
    if (lhs == IntMatrix(rhs.rows(), rhs.cols()) - rhs) {
      auto& next = out.phi[deg + 1];
      next = IntMatrix(next.rows(), next.cols()) - next;
      continue;
    }
    return out;
  }
  out.passed = verify_selfduality(k, out.phi);
  return out;
}

}  // namespace cohomkit
