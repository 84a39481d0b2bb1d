#pragma once

#include "cohomkit/bar.hpp"
#include "cohomkit/cochain.hpp"

#include <deque>
#include <map>
#include <memory>
#include <mutex>

namespace cohomkit {

/// A cohomology class with trivial coefficients Z or Z/m, carried by a cocycle on the
/// normalized bar cochains of the given degree.
struct CohomologyClass {
  GroupPtr group;
  std::size_t degree = 0;
  Modulus modulus;
  IntVector cocycle;
};

struct CohomologyGroup {
  GroupPtr group;
  std::size_t degree = 0;
  Modulus modulus;
  IntVector invariant_factors;  // 0 marks a free summand Z
  std::vector<CohomologyClass> basis;

  std::size_t size() const { return basis.size(); }
};

inline void require_compatible(const CohomologyClass& x, const CohomologyClass& y) {
  if (!same_group(x.group, y.group)) throw InvalidArgument("classes live on different groups");
  if (x.modulus != y.modulus) throw ModulusMismatch(x.modulus.str() + " vs " + y.modulus.str());
}

inline CohomologyClass unit_class(GroupPtr group, Modulus modulus = Modulus()) {
  return {std::move(group), 0, std::move(modulus), IntVector{1}};
}

inline CohomologyClass zero_class(GroupPtr group, std::size_t degree, Modulus modulus = Modulus()) {
  const std::size_t size = bar_rank(group->order(), degree);
  return {std::move(group), degree, std::move(modulus), IntVector(size)};
}

inline CohomologyClass operator+(const CohomologyClass& x, const CohomologyClass& y) {
  require_compatible(x, y);
  if (x.degree != y.degree) throw InvalidArgument("adding classes of different degrees");
  CohomologyClass out = x;
  for (std::size_t i = 0; i < out.cocycle.size(); ++i) out.cocycle[i] = x.modulus.reduce(x.cocycle[i] + y.cocycle[i]);
  return out;
}

inline CohomologyClass scale(const CohomologyClass& x, const Integer& c) {
  CohomologyClass out = x;
  for (auto& v : out.cocycle) v = x.modulus.reduce(v * c);
  return out;
}

inline CohomologyClass operator-(const CohomologyClass& x, const CohomologyClass& y) { return x + scale(y, -1); }

/// Cocycle condition checked directly on the bar cochains.
inline bool is_cocycle(const CohomologyClass& x) {
  return is_zero(bar_cochain::coboundary(*x.group, x.cocycle, x.degree, x.modulus));
}

enum class SmallResolution { automatic, periodic, iterated_kernels };

/// Computes cohomology of G with trivial coefficients up to a fixed degree. Cocycles live on the
/// normalized bar cochains; classes are identified by transferring them along a chain map
/// psi : P -> Bar to a small free resolution P, and cohomology bases on P are pulled back to the
/// bar along a chain map phi : Bar -> P.
class CohomologyEngine {
 public:
  CohomologyEngine(GroupPtr group, std::size_t max_degree, SizeCap cap = SizeCap::from_env(),
                   SmallResolution kind = SmallResolution::automatic)
      : group_(std::move(group)), max_degree_(max_degree) {
    cap.check(bar_rank(group_->order(), max_degree + 1), "bar cochains in degree " + std::to_string(max_degree + 1));
    if (group_->order() == 1) throw InvalidGroup("trivial group has no positive-degree cohomology to compute");
    const auto gen = cyclic_generator(*group_);
    const bool periodic = kind == SmallResolution::periodic ||
                          (kind == SmallResolution::automatic && gen.has_value());
    if (periodic) {
      if (!gen) throw InvalidArgument("periodic resolution needs a cyclic group");
      small_ = periodic_resolution(group_, *gen, max_degree + 1);
    } else {
      small_ = trivial_free_resolution(group_, max_degree + 1);
    }
    if (small_.length() < max_degree + 1) throw InvalidArgument("small resolution stopped early");
    build_psi();
  }

  const GroupPtr& group() const { return group_; }
  std::size_t max_degree() const { return max_degree_; }
  const Resolution& small_resolution() const { return small_; }

  /// psi_n(e_k) as a chain on the bar cells of degree n (all coefficients sit at the identity).
  const IntVector& psi(std::size_t n, std::size_t k) const { return psi_.at(n).at(k); }

  /// phi_n([t]) in P_n modulo m, indexed k * |G| + g.
  IntVector phi(std::size_t n, std::size_t t, const Integer& m) const {
    const auto& table = phi_table(n, m);
    const std::size_t width = small_.dimension(n);
    IntVector out(width);
    for (std::size_t i = 0; i < width; ++i) out[i] = table[t * width + i];
    return out;
  }

  /// Transfer of a bar cochain to the small cochain complex: f(e_k) = z(psi_n(e_k)).
  IntVector transfer(const CohomologyClass& x) const {
    check_class(x);
    IntVector out(small_.ranks[x.degree]);
    for (std::size_t k = 0; k < out.size(); ++k) {
      const IntVector& p = psi_[x.degree][k];
      Integer acc = 0;
      for (std::size_t t = 0; t < p.size(); ++t)
        if (p[t] != 0 && x.cocycle[t] != 0) acc += p[t] * x.cocycle[t];
      out[k] = x.modulus.reduce(acc);
    }
    return out;
  }

  /// A bar cocycle whose transfer is cohomologous to the small cocycle f. Over Z/m this is
  /// f o phi_n with phi taken mod m. Over Z in positive degree, where every class is killed by
  /// N = |G|, it is the integral Bockstein of the mod-N cocycle y o phi_{n-1} for some y with
  /// delta y = N f.
  IntVector pull_back(std::size_t n, std::span<const Integer> f, const Modulus& modulus) const {
    if (!modulus.is_integral()) return pull_back_mod(n, f, modulus.value());
    if (n == 0) return IntVector{f[0]};
    const Integer order = group_->order();
    CochainComplex cc(small_);
    IntVector target(f.begin(), f.end());
    for (auto& v : target) v *= order;
    auto y = solve_mod(cc.coboundary(n - 1), target, Modulus());
    if (!y) throw InvalidArgument("pull_back: integral class is not killed by the group order");
    IntVector z = pull_back_mod(n - 1, *y, order);
    IntVector d = bar_cochain::coboundary(*group_, z, n - 1);
    for (auto& v : d) v /= order;
    return d;
  }

  /// ker/im on the small cochain complex, cached per (modulus, degree).
  const Subquotient& small_cohomology(std::size_t n, const Modulus& modulus) const {
    if (n > max_degree_) throw InvalidArgument("degree " + std::to_string(n) + " beyond engine bound");
    std::lock_guard lock(mutex_);
    auto key = std::make_pair(modulus.value(), n);
    auto it = subquotients_.find(key);
    if (it == subquotients_.end()) {
      CochainComplex cc(small_, modulus);
      it = subquotients_.emplace(key, std::make_shared<const Subquotient>(cc.cohomology(n))).first;
    }
    return *it->second;
  }

  CohomologyGroup cohomology_group(const Modulus& modulus, std::size_t n) const {
    {
      std::lock_guard lock(mutex_);
      auto it = groups_.find({modulus.value(), n});
      if (it != groups_.end()) return *it->second;
    }
    const auto& h = small_cohomology(n, modulus);
    CohomologyGroup out;
    out.group = group_;
    out.degree = n;
    out.modulus = modulus;
    out.invariant_factors = h.orders;
    for (const auto& gen : h.generators) out.basis.push_back({group_, n, modulus, pull_back(n, gen, modulus)});
    std::lock_guard lock(mutex_);
    groups_.emplace(std::make_pair(modulus.value(), n), std::make_shared<const CohomologyGroup>(out));
    return out;
  }

  bool is_coboundary(const CohomologyClass& x) const {
    return small_cohomology(x.degree, x.modulus).is_boundary(transfer(x));
  }

  bool equal(const CohomologyClass& x, const CohomologyClass& y) const {
    require_compatible(x, y);
    if (x.degree != y.degree) return false;
    return is_coboundary(x - y);
  }

  /// Coordinates of the class along the basis of cohomology_group(modulus, degree).
  IntVector coordinates(const CohomologyClass& x) const {
    return small_cohomology(x.degree, x.modulus).coordinates(transfer(x));
  }

  /// Linear combination of the basis classes with the given coordinates.
  CohomologyClass from_coordinates(const Modulus& modulus, std::size_t n, std::span<const Integer> c) const {
    const auto group = cohomology_group(modulus, n);
    if (c.size() != group.size()) throw DimensionMismatch("coordinate count");
    CohomologyClass out = zero_class(group_, n, modulus);
    for (std::size_t i = 0; i < c.size(); ++i)
      if (c[i] != 0) out = out + scale(group.basis[i], c[i]);
    return out;
  }

  /// Some class y in the span of `sources` (same degree and modulus as target) with
  /// sum c_j sources_j ~ target; returns the coefficients or nullopt.
  std::optional<IntVector> solve_span(const std::vector<CohomologyClass>& sources, const CohomologyClass& target) const {
    check_class(target);
    const auto& h = small_cohomology(target.degree, target.modulus);
    const std::size_t dim = small_.ranks[target.degree];
    // Columns: transferred sources, then coboundaries; solve over the coefficient ring.
    const IntMatrix& b = h.boundary;
    IntMatrix a(dim, sources.size() + b.cols());
    for (std::size_t j = 0; j < sources.size(); ++j) {
      require_compatible(sources[j], target);
      if (sources[j].degree != target.degree) throw InvalidArgument("solve_span: degree mismatch");
      IntVector f = transfer(sources[j]);
      for (std::size_t i = 0; i < dim; ++i) a(i, j) = f[i];
    }
    for (std::size_t j = 0; j < b.cols(); ++j)
      for (std::size_t i = 0; i < dim; ++i) a(i, sources.size() + j) = b(i, j);
    if (a.cols() == 0) {
      if (h.is_boundary(transfer(target))) return IntVector{};
      return std::nullopt;
    }
    auto x = solve_mod(a, transfer(target), target.modulus);
    if (!x) return std::nullopt;
    return IntVector(x->begin(), x->begin() + static_cast<std::ptrdiff_t>(sources.size()));
  }

 private:
  void check_class(const CohomologyClass& x) const {
    if (!same_group(x.group, group_)) throw InvalidArgument("class belongs to another group");
    if (x.degree > max_degree_) throw InvalidArgument("degree " + std::to_string(x.degree) + " beyond engine bound");
    if (x.cocycle.size() != bar_rank(group_->order(), x.degree)) throw DimensionMismatch("cocycle length");
  }

  void build_psi() {
    const std::size_t order = group_->order();
    psi_.resize(max_degree_ + 1);
    psi_[0].assign(small_.ranks[0], IntVector{1});
    for (std::size_t n = 1; n <= max_degree_; ++n) {
      const std::size_t lower = bar_rank(order, n - 1);
      const IntMatrix& images = small_.images[n];
      for (std::size_t k = 0; k < small_.ranks[n]; ++k) {
        IntVector out(bar_rank(order, n));
        for (std::size_t j = 0; j < small_.ranks[n - 1]; ++j)
          for (std::size_t g = 1; g < order; ++g) {
            const Integer& a = images(j * order + g, k);
            if (a == 0) continue;
            const IntVector& prev = psi_[n - 1][j];
            const std::size_t offset = (g - 1) * lower;
            for (std::size_t t = 0; t < lower; ++t)
              if (prev[t] != 0) out[offset + t] += a * prev[t];
          }
        psi_[n].push_back(std::move(out));
      }
    }
  }

  IntVector pull_back_mod(std::size_t n, std::span<const Integer> f, const Integer& m) const {
    const auto& table = phi_table(n, m);
    const std::size_t order = group_->order();
    const std::size_t width = small_.dimension(n);
    const std::size_t cells = bar_rank(order, n);
    std::vector<std::int64_t> coeff(f.size());
    const auto mm = static_cast<std::int64_t>(m);
    for (std::size_t k = 0; k < f.size(); ++k) coeff[k] = static_cast<std::int64_t>(mod_floor(f[k], m));
    IntVector out(cells);
    for (std::size_t t = 0; t < cells; ++t) {
      std::int64_t acc = 0;
      for (std::size_t k = 0; k < f.size(); ++k) {
        if (coeff[k] == 0) continue;
        std::int64_t s = 0;
        for (std::size_t g = 0; g < order; ++g) s += table[t * width + k * order + g];
        acc = (acc + (s % mm) * coeff[k]) % mm;
      }
      out[t] = acc < 0 ? acc + mm : acc;
    }
    return out;
  }

  const IntMatrix& preimage_map(std::size_t n) const {
    std::lock_guard lock(mutex_);
    while (preimage_.size() <= n) {
      const std::size_t deg = preimage_.size();
      preimage_.push_back(deg == 0 ? IntMatrix() : UnitPivotPreimage(small_.differential(deg)).matrix());
    }
    return preimage_[n];
  }

  // phi_n([t]) = H_n(phi_{n-1}(d [t])) mod m, H_n a preimage map for d_n on P. Entries in [0, m).
  const std::vector<std::int64_t>& phi_table(std::size_t n, const Integer& m) const {
    if (n > max_degree_) throw InvalidArgument("degree beyond engine bound");
    if (m < 2 || m > (Integer(1) << 30)) throw InvalidArgument("comparison map modulus out of range");
    std::lock_guard lock(mutex_);
    auto& tables = phi_[m];
    const auto& g = *group_;
    const std::size_t order = g.order();
    const auto mm = static_cast<std::int64_t>(m);
    if (tables.empty()) {
      tables.emplace_back(order * small_.ranks[0], 0);
      tables[0][0] = 1;
    }
    while (tables.size() <= n) {
      const std::size_t deg = tables.size();
      const IntMatrix& h = preimage_map(deg);
      const std::size_t in_width = small_.dimension(deg - 1), out_width = small_.dimension(deg);
      std::vector<std::int64_t> hcols(in_width * out_width);  // column-major
      for (std::size_t i = 0; i < out_width; ++i)
        for (std::size_t j = 0; j < in_width; ++j)
          hcols[j * out_width + i] = static_cast<std::int64_t>(mod_floor(h(i, j), m));

      const auto& prev = tables[deg - 1];
      const TupleCodec codec(order, deg);
      std::vector<std::int64_t> table(codec.size() * out_width, 0);
      std::vector<std::int64_t> c(in_width);
      std::vector<std::size_t> cell;
      for (std::size_t t = 0; t < codec.size(); ++t) {
        codec.decode(t, cell);
        std::fill(c.begin(), c.end(), 0);
        for (const auto& term : bar_boundary(g, cell)) {
          const std::int64_t* src = prev.data() + term.index * in_width;
          for (std::size_t base = 0; base < in_width; base += order)
            for (std::size_t e = 0; e < order; ++e) {
              if (src[base + e] == 0) continue;
              std::size_t dst = base + g.mul(term.element, e);
              c[dst] += term.sign > 0 ? src[base + e] : mm - src[base + e];
            }
        }
        std::int64_t* out = table.data() + t * out_width;
        for (std::size_t j = 0; j < in_width; ++j) {
          const std::int64_t cj = c[j] % mm;
          if (cj == 0) continue;
          const std::int64_t* col = hcols.data() + j * out_width;
          for (std::size_t i = 0; i < out_width; ++i)
            if (col[i] != 0) out[i] = (out[i] + cj * col[i]) % mm;
        }
      }
      tables.push_back(std::move(table));
    }
    return tables[n];
  }

  GroupPtr group_;
  std::size_t max_degree_;
  Resolution small_;
  std::vector<std::vector<IntVector>> psi_;
  mutable std::recursive_mutex mutex_;
  mutable std::deque<IntMatrix> preimage_;
  mutable std::map<Integer, std::deque<std::vector<std::int64_t>>> phi_;
  mutable std::map<std::pair<Integer, std::size_t>, std::shared_ptr<const Subquotient>> subquotients_;
  mutable std::map<std::pair<Integer, std::size_t>, std::shared_ptr<const CohomologyGroup>> groups_;
};

/// One-shot H^n(G, coefficients) through a fresh engine.
inline CohomologyGroup cohomology_group(GroupPtr group, const Modulus& coefficients, std::size_t n,
                                        SizeCap cap = SizeCap::from_env()) {
  return CohomologyEngine(std::move(group), n, cap).cohomology_group(coefficients, n);
}

/// Normal form of a finite-or-free abelian group given as a list of cyclic orders (0 = Z):
/// invariant factors d_1 | d_2 | ... followed by zeros, units dropped.
inline IntVector canonical_invariants(const IntVector& orders) {
  std::map<Integer, std::vector<Integer>> by_prime;
  std::size_t free_rank = 0;
  for (const auto& o : orders) {
    if (o == 0) {
      ++free_rank;
      continue;
    }
    for (const auto& p : prime_divisors(o)) by_prime[p].push_back(power(p, valuation(o, p)));
  }
  std::size_t count = 0;
  for (auto& [p, powers] : by_prime) {
    std::sort(powers.begin(), powers.end(), std::greater<>());
    count = std::max(count, powers.size());
  }
  IntVector out(count, 1);
  for (const auto& [p, powers] : by_prime)
    for (std::size_t i = 0; i < powers.size(); ++i) out[count - 1 - i] *= powers[i];
  out.insert(out.end(), free_rank, Integer(0));
  return out;
}

/// Independent route: H^n straight from the bar cochain complex over Z (sparse elimination),
/// with Z/m coefficients obtained through the universal coefficient theorem.
inline IntVector bar_cohomology_invariants(const FiniteGroup& g, const Modulus& coefficients, std::size_t n,
                                           SizeCap cap = SizeCap::from_env()) {
  cap.check(bar_rank(g.order(), n + 1), "bar cochains in degree " + std::to_string(n + 1));
  // Integral H^k: torsion = non-unit factors of d^{k-1}, free rank = dim C^k - rank d^k - rank d^{k-1}.
  auto invariants = [&](std::size_t k, const SparseInvariants* lower, const SparseInvariants& upper) {
    IntVector out;
    if (lower) out = lower->nonunit_factors;
    const std::size_t free_rank = bar_rank(g.order(), k) - upper.rank - (lower ? lower->rank : 0);
    out.insert(out.end(), free_rank, Integer(0));
    return out;
  };
  std::optional<SparseInvariants> below;
  if (n > 0) below = SparseInvariants::compute(bar_cochain::coboundary_matrix(g, n - 1));
  const auto here = SparseInvariants::compute(bar_cochain::coboundary_matrix(g, n));
  IntVector hn = invariants(n, below ? &*below : nullptr, here);
  if (coefficients.is_integral()) return canonical_invariants(hn);
  const Integer& m = coefficients.value();
  IntVector orders;
  for (const auto& d : hn) orders.push_back(gcd(d, m));  // H^n tensor Z/m
  for (const auto& d : here.nonunit_factors) orders.push_back(gcd(d, m));  // Tor(H^{n+1}, Z/m)
  IntVector kept;
  for (const auto& o : orders)
    if (o != 1) kept.push_back(o);
  return canonical_invariants(kept);
}

enum class CoefficientMap { pi, epsilon, theta };

/// Reduction of coefficients from Z or Z/a to Z/b with b | a.
inline CohomologyClass reduce_coefficients(const CohomologyClass& x, const Modulus& target) {
  if (target.is_integral()) throw InvalidArgument("cannot reduce to Z");
  if (!x.modulus.is_integral() && x.modulus.value() % target.value() != 0)
    throw ModulusMismatch(target.str() + " is not a quotient of " + x.modulus.str());
  CohomologyClass out = x;
  out.modulus = target;
  for (auto& v : out.cocycle) v = target.reduce(v);
  return out;
}

/// pi_i : Z/p^i -> Z/p^{i-1}, epsilon_i : Z/p^i -> Z/p, theta_i : Z -> Z/p^i on cocycles.
inline CohomologyClass coefficient_map(CoefficientMap kind, const Integer& p, unsigned i, const CohomologyClass& x) {
  if (!is_prime(p)) throw NotPrime(p.str());
  Modulus source, target;
  switch (kind) {
    case CoefficientMap::pi:
      if (i < 2) throw InvalidArgument("pi_i needs i >= 2");
      source = Modulus::of(power(p, i));
      target = Modulus::of(power(p, i - 1));
      break;
    case CoefficientMap::epsilon:
      if (i < 1) throw InvalidArgument("epsilon_i needs i >= 1");
      source = Modulus::of(power(p, i));
      target = Modulus::of(p);
      break;
    case CoefficientMap::theta:
      if (i < 1) throw InvalidArgument("theta_i needs i >= 1");
      source = Modulus::integers();
      target = Modulus::of(power(p, i));
      break;
  }
  if (x.modulus != source)
    throw ModulusMismatch("map expects " + source.str() + " coefficients, class has " + x.modulus.str());
  return reduce_coefficients(x, target);
}

/// The prime p and level i with modulus p^i, if the modulus is a prime power.
inline std::optional<std::pair<Integer, unsigned>> prime_power_decomposition(const Modulus& m) {
  if (m.is_integral()) return std::nullopt;
  auto primes = prime_divisors(m.value());
  if (primes.size() != 1) return std::nullopt;
  return std::make_pair(primes[0], valuation(m.value(), primes[0]));
}

/// Connecting map of 0 -> Z/p -> Z/p^{i+1} -> Z/p^i -> 0: lift, apply the coboundary over Z,
/// divide by p^i, reduce mod p.
inline CohomologyClass bockstein_delta(unsigned i, const CohomologyClass& x) {
  const auto pp = prime_power_decomposition(x.modulus);
  if (!pp || pp->second != i)
    throw ModulusMismatch("bockstein_delta(" + std::to_string(i) + ") on " + x.modulus.str() + " coefficients");
  const Integer& p = pp->first;
  const Integer pi = power(p, i);
  IntVector lifted(x.cocycle.size());
  for (std::size_t t = 0; t < lifted.size(); ++t) lifted[t] = mod_floor(x.cocycle[t], pi);
  IntVector d = bar_cochain::coboundary(*x.group, lifted, x.degree);
  for (auto& v : d) {
    if (v % pi != 0) throw InvalidArgument("bockstein_delta: input is not a cocycle mod " + pi.str());
    v = mod_floor(v / pi, p);
  }
  return {x.group, x.degree + 1, Modulus::of(p), std::move(d)};
}

/// The p-power invariant factors of H^n(G, Z), with integral classes generating them.
struct PrimaryPart {
  Integer p;
  std::size_t degree = 0;
  IntVector factors;
  std::vector<CohomologyClass> basis;
};

inline PrimaryPart p_primary_part(const CohomologyEngine& engine, const Integer& p, std::size_t n) {
  if (!is_prime(p)) throw NotPrime(p.str());
  if (n == 0) throw DegreeZeroUnsupported("H^0(G, Z) = Z has no finite p-primary part");
  const auto h = engine.cohomology_group(Modulus(), n);
  PrimaryPart out;
  out.p = p;
  out.degree = n;
  for (std::size_t k = 0; k < h.size(); ++k) {
    const Integer& d = h.invariant_factors[k];
    if (d == 0) throw InvalidArgument("positive-degree integral cohomology should be finite");
    const unsigned v = valuation(d, p);
    if (v == 0) continue;
    const Integer q = power(p, v);
    out.factors.push_back(q);
    out.basis.push_back(scale(h.basis[k], d / q));
  }
  return out;
}

inline PrimaryPart p_primary_part(GroupPtr group, const Integer& p, std::size_t n) {
  if (n == 0) throw DegreeZeroUnsupported("H^0(G, Z) = Z has no finite p-primary part");
  return p_primary_part(CohomologyEngine(std::move(group), n), p, n);
}

/// String form of an abelian group from invariant factors: "0", "Z", "Z/2 + Z/6".
inline std::string format_invariants(const IntVector& factors) {
  if (factors.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) out += " + ";
    out += factors[i] == 0 ? std::string("Z") : "Z/" + factors[i].str();
  }
  return out;
}

}  // namespace cohomkit
