#pragma once

#include "cohomkit/errors.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <memory>
#include <string>
#include <vector>

namespace cohomkit {

using Permutation = std::vector<int>;  // one-line image notation on {0..n-1}

/// Finite group stored by its multiplication table. Element 0 is the identity.
class FiniteGroup {
 public:
  static constexpr std::size_t kDefaultOrderCap = 64;

  /// Validates the table: Latin square, two-sided identity at 0, associativity (order <= 64).
  FiniteGroup(std::string label, std::size_t order, std::vector<std::uint32_t> table,
              std::vector<std::size_t> generators, std::vector<Permutation> realization = {})
      : label_(std::move(label)),
        order_(order),
        table_(std::move(table)),
        generators_(std::move(generators)),
        realization_(std::move(realization)) {
    validate();
  }

  const std::string& label() const { return label_; }
  std::size_t order() const { return order_; }
  std::size_t identity() const { return 0; }
  std::size_t mul(std::size_t a, std::size_t b) const { return table_[a * order_ + b]; }
  std::size_t inv(std::size_t a) const { return inverse_[a]; }
  const std::vector<std::size_t>& generators() const { return generators_; }
  /// Permutation realization of each element, when the group came from permutations.
  const std::vector<Permutation>& realization() const { return realization_; }
  std::vector<Permutation> generator_permutations() const {
    std::vector<Permutation> out;
    if (realization_.empty()) return out;
    for (auto g : generators_) out.push_back(realization_[g]);
    return out;
  }

  std::size_t element_order(std::size_t a) const {
    std::size_t k = 1, x = a;
    while (x != 0) {
      x = mul(x, a);
      ++k;
    }
    return k;
  }

  /// Elements in breadth-first order from the identity, with the generator index used to
  /// reach each one (word[x] = {generator, predecessor}); identity maps to itself.
  struct Spanning {
    std::vector<std::size_t> order;
    std::vector<std::pair<std::size_t, std::size_t>> parent;  // (generator slot, predecessor)
  };
  Spanning spanning_tree() const {
    Spanning out;
    out.parent.assign(order_, {0, order_});
    std::vector<bool> seen(order_, false);
    std::deque<std::size_t> queue{0};
    seen[0] = true;
    while (!queue.empty()) {
      std::size_t x = queue.front();
      queue.pop_front();
      out.order.push_back(x);
      for (std::size_t s = 0; s < generators_.size(); ++s) {
        std::size_t y = mul(generators_[s], x);
        if (!seen[y]) {
          seen[y] = true;
          out.parent[y] = {s, x};
          queue.push_back(y);
        }
      }
    }
    return out;
  }

 private:
  void validate() {
    if (order_ == 0) throw InvalidGroup("empty group");
    if (table_.size() != order_ * order_) throw InvalidGroup("table size mismatch");
    for (std::size_t a = 0; a < order_; ++a) {
      std::vector<bool> row(order_, false), col(order_, false);
      for (std::size_t b = 0; b < order_; ++b) {
        auto x = table_[a * order_ + b];
        auto y = table_[b * order_ + a];
        if (x >= order_ || y >= order_ || row[x] || col[y]) throw InvalidGroup("not a Latin square");
        row[x] = true;
        col[y] = true;
      }
      if (mul(0, a) != a || mul(a, 0) != a) throw InvalidGroup("element 0 is not the identity");
    }
    if (order_ <= kDefaultOrderCap)
      for (std::size_t a = 0; a < order_; ++a)
        for (std::size_t b = 0; b < order_; ++b)
          for (std::size_t c = 0; c < order_; ++c)
            if (mul(mul(a, b), c) != mul(a, mul(b, c))) throw InvalidGroup("not associative");
    inverse_.assign(order_, 0);
    for (std::size_t a = 0; a < order_; ++a)
      for (std::size_t b = 0; b < order_; ++b)
        if (mul(a, b) == 0) inverse_[a] = b;
    for (auto g : generators_)
      if (g >= order_) throw InvalidGroup("generator index out of range");
    if (spanning_tree().order.size() != order_) throw InvalidGroup("generators do not generate");
  }

  std::string label_;
  std::size_t order_;
  std::vector<std::uint32_t> table_;
  std::vector<std::size_t> inverse_;
  std::vector<std::size_t> generators_;
  std::vector<Permutation> realization_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

inline bool same_group(const GroupPtr& a, const GroupPtr& b) {
  return a == b || (a->order() == b->order() && a->label() == b->label());
}

inline Permutation compose(const Permutation& a, const Permutation& b) {
  Permutation out(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = a[static_cast<std::size_t>(b[i])];
  return out;
}

/// Closure of a set of permutations; the product is composition (a*b)(x) = a(b(x)).
inline GroupPtr group_from_generators(const std::vector<Permutation>& perms, std::string label = "G",
                                      std::size_t order_cap = FiniteGroup::kDefaultOrderCap) {
  std::size_t degree = perms.empty() ? 1 : perms.front().size();
  for (const auto& p : perms) {
    if (p.size() != degree) throw InvalidGroup("generators act on different sets");
    std::vector<bool> hit(degree, false);
    for (int x : p) {
      if (x < 0 || static_cast<std::size_t>(x) >= degree || hit[static_cast<std::size_t>(x)])
        throw InvalidGroup("generator is not a bijection");
      hit[static_cast<std::size_t>(x)] = true;
    }
  }
  Permutation id(degree);
  for (std::size_t i = 0; i < degree; ++i) id[i] = static_cast<int>(i);

  std::vector<Permutation> elements{id};
  std::map<Permutation, std::size_t> index{{id, 0}};
  for (std::size_t head = 0; head < elements.size(); ++head) {
    for (const auto& s : perms) {
      Permutation y = compose(s, elements[head]);
      if (index.emplace(y, elements.size()).second) {
        elements.push_back(y);
        if (elements.size() > order_cap)
          throw OrderCapExceeded("closure exceeds order cap " + std::to_string(order_cap));
      }
    }
  }
  const std::size_t n = elements.size();
  std::vector<std::uint32_t> table(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      table[a * n + b] = static_cast<std::uint32_t>(index.at(compose(elements[a], elements[b])));
  std::vector<std::size_t> gens;
  for (const auto& s : perms) gens.push_back(index.at(s));
  return std::make_shared<const FiniteGroup>(std::move(label), n, std::move(table), std::move(gens),
                                             std::move(elements));
}

namespace groups {

inline GroupPtr cyclic(std::size_t n) {
  if (n < 1) throw InvalidGroup("cyclic group order must be positive");
  Permutation g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = static_cast<int>((i + 1) % n);
  return group_from_generators({g}, "c" + std::to_string(n), std::max<std::size_t>(n, 64));
}

inline GroupPtr klein_four() {
  return group_from_generators({{1, 0, 3, 2}, {2, 3, 0, 1}}, "klein4");
}

inline GroupPtr symmetric_3() { return group_from_generators({{1, 0, 2}, {1, 2, 0}}, "s3"); }

/// Quaternion group in its left regular representation. Elements are indexed
/// 1, i, j, k, -1, -i, -j, -k as 0..7.
inline GroupPtr quaternion_8() {
  // Unit quaternion product on {1,i,j,k}: (index, sign).
  static constexpr std::array<std::array<std::pair<int, int>, 4>, 4> kUnits{{
      {{{0, 1}, {1, 1}, {2, 1}, {3, 1}}},
      {{{1, 1}, {0, -1}, {3, 1}, {2, -1}}},
      {{{2, 1}, {3, -1}, {0, -1}, {1, 1}}},
      {{{3, 1}, {2, 1}, {1, -1}, {0, -1}}},
  }};
  auto product = [](int a, int b) {
    int sa = a >= 4 ? -1 : 1, sb = b >= 4 ? -1 : 1;
    auto [u, s] = kUnits[static_cast<std::size_t>(a % 4)][static_cast<std::size_t>(b % 4)];
    int sign = sa * sb * s;
    return u + (sign < 0 ? 4 : 0);
  };
  auto left_mult = [&](int q) {
    Permutation p(8);
    for (int x = 0; x < 8; ++x) p[static_cast<std::size_t>(x)] = product(q, x);
    return p;
  };
  return group_from_generators({left_mult(1), left_mult(2)}, "q8");
}

/// Built-in names: c<n> (cyclic), klein4 (alias c2xc2), s3, q8.
inline GroupPtr builtin(const std::string& name) {
  if (name == "klein4" || name == "c2xc2" || name == "v4") return klein_four();
  if (name == "s3") return symmetric_3();
  if (name == "q8") return quaternion_8();
  if (name.size() > 1 && name[0] == 'c' && name.find_first_not_of("0123456789", 1) == std::string::npos) {
    auto n = std::stoul(name.substr(1));
    if (n < 1 || n > FiniteGroup::kDefaultOrderCap) throw OrderCapExceeded("cyclic order " + name.substr(1));
    return cyclic(n);
  }
  throw InvalidGroup("unknown built-in group '" + name + "'");
}

}  // namespace groups

/// Largest s with p^s dividing the group order.
inline unsigned order_valuation(const FiniteGroup& g, std::size_t p) {
  unsigned s = 0;
  std::size_t n = g.order();
  while (n % p == 0) {
    n /= p;
    ++s;
  }
  return s;
}

/// Smallest-index element of order |G|, if the group is cyclic.
inline std::optional<std::size_t> cyclic_generator(const FiniteGroup& g) {
  if (g.order() == 1) return std::nullopt;
  for (std::size_t a = 1; a < g.order(); ++a)
    if (g.element_order(a) == g.order()) return a;
  return std::nullopt;
}

}  // namespace cohomkit
