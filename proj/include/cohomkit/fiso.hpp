#pragma once

#include "cohomkit/cup.hpp"

namespace cohomkit {

/// Largest s with p^s dividing |G|.
inline unsigned s_exponent(const FiniteGroup& g, const Integer& p) {
  if (!is_prime(p)) throw NotPrime(p.str());
  return valuation(Integer(g.order()), p);
}

namespace detail {

inline std::pair<Integer, unsigned> prime_level(const CohomologyClass& x) {
  auto pp = prime_power_decomposition(x.modulus);
  if (!pp) throw ModulusMismatch("expected prime-power coefficients, got " + x.modulus.str());
  return *pp;
}

inline CohomologyClass epsilon(const CohomologyClass& x) {
  const auto [p, i] = prime_level(x);
  return coefficient_map(CoefficientMap::epsilon, p, i, x);
}

}  // namespace detail

struct DerivationCheck {
  bool passed = false;
  CohomologyClass lhs;  // delta_i(x u y)
  CohomologyClass rhs;  // delta_i(x) u eps_i(y) + (-1)^|x| eps_i(x) u delta_i(y)
};

/// Compares both sides of the Leibniz rule for delta_i as classes mod p. The engine must reach
/// degree |x| + |y| + 1.
inline DerivationCheck verify_derivation(const CohomologyEngine& engine, unsigned i, const CohomologyClass& x,
                                         const CohomologyClass& y) {
  require_compatible(x, y);
  const auto [p, level] = detail::prime_level(x);
  if (level != i) throw ModulusMismatch("classes are not mod p^" + std::to_string(i));
  DerivationCheck out;
  out.lhs = bockstein_delta(i, cup_product(x, y));
  CohomologyClass second = cup_product(detail::epsilon(x), bockstein_delta(i, y));
  if (x.degree % 2 == 1) second = scale(second, -1);
  out.rhs = cup_product(bockstein_delta(i, x), detail::epsilon(y)) + second;
  out.passed = engine.equal(out.lhs, out.rhs);
  return out;
}

struct PowerLift {
  CohomologyClass preimage;  // mod p^{i+1}
  IntVector coefficients;    // along the basis of H^{p|x|}(G, Z/p^{i+1}); empty for the shortcut
  bool odd_shortcut = false; // odd |x| and odd p: x^2 ~ 0 was verified and zero is returned
};

/// A class z mod p^{i+1} with pi_{i+1}(z) ~ x^p, or nullopt. One always exists for
/// i >= 2; i = 1 is accepted and may legitimately fail.
inline std::optional<PowerLift> try_pth_power_preimage(const CohomologyEngine& engine, unsigned i,
                                                       const CohomologyClass& x) {
  const auto [p, level] = detail::prime_level(x);
  if (level != i) throw ModulusMismatch("class is not mod p^" + std::to_string(i));
  if (x.degree == 0) throw DegreeZeroUnsupported("p-th power lifting needs positive degree");
  const Modulus up = Modulus::of(power(p, i + 1));
  const std::size_t pd = static_cast<std::size_t>(p) * x.degree;
  PowerLift out;
  if (p != 2 && x.degree % 2 == 1) {
    if (2 * x.degree > engine.max_degree()) throw SliceTooShallow("x^2 lies beyond the engine bound");
    if (!engine.is_coboundary(cup_product(x, x))) return std::nullopt;
    out.odd_shortcut = true;
    out.preimage = zero_class(x.group, pd, up);
    return out;
  }
  if (pd > engine.max_degree()) throw SliceTooShallow("x^p lies in degree " + std::to_string(pd));
  const auto lifted = engine.cohomology_group(up, pd);
  std::vector<CohomologyClass> sources;
  for (const auto& b : lifted.basis) sources.push_back(coefficient_map(CoefficientMap::pi, p, i + 1, b));
  auto c = engine.solve_span(sources, cup_power(x, static_cast<unsigned>(p)));
  if (!c) return std::nullopt;
  out.coefficients = *c;
  out.preimage = zero_class(x.group, pd, up);
  for (std::size_t j = 0; j < c->size(); ++j)
    if ((*c)[j] != 0) out.preimage = out.preimage + scale(lifted.basis[j], (*c)[j]);
  return out;
}

inline PowerLift pth_power_preimage(const CohomologyEngine& engine, unsigned i, const CohomologyClass& x) {
  auto out = try_pth_power_preimage(engine, i, x);
  if (!out) throw NoPreimageFound("x^p is not in the image of pi_" + std::to_string(i + 1));
  return *out;
}

/// Outcome of delta_i(x^n) ~ n eps_i(x)^{n-1} u delta_i(x). The identity only follows from the
/// Leibniz rule when |x| is even or p = 2; otherwise `applicable` is false and nothing is checked.
struct InductionCheck {
  bool applicable = false;
  bool passed = true;
};

inline InductionCheck verify_power_rule(const CohomologyEngine& engine, unsigned i, const CohomologyClass& x,
                                        unsigned n) {
  const auto [p, level] = detail::prime_level(x);
  if (level != i) throw ModulusMismatch("class is not mod p^" + std::to_string(i));
  InductionCheck out;
  if (n == 0 || (p != 2 && x.degree % 2 == 1)) return out;
  out.applicable = true;
  const auto lhs = bockstein_delta(i, cup_power(x, n));
  const auto rhs = scale(cup_product(cup_power(detail::epsilon(x), n - 1), bockstein_delta(i, x)), n);
  out.passed = engine.equal(lhs, rhs);
  return out;
}

struct IntegralLift {
  CohomologyClass integral;  // in the p-primary part of H^{p^s |x|}(G, Z)
  IntVector coefficients;    // along p_primary_part(..).basis
};

/// An integral class whose reduction mod p is x^{p^s}, s = v_p(|G|), or nullopt.
inline std::optional<IntegralLift> try_integral_psth_preimage(const CohomologyEngine& engine,
                                                              const CohomologyClass& x) {
  const auto [p, level] = detail::prime_level(x);
  if (level != 1) throw ModulusMismatch("expected mod-p coefficients, got " + x.modulus.str());
  if (x.degree == 0) throw DegreeZeroUnsupported("integral lifting needs positive degree");
  const unsigned s = s_exponent(*x.group, p);
  const unsigned e = static_cast<unsigned>(power(p, s));
  const std::size_t degree = static_cast<std::size_t>(e) * x.degree;
  if (degree > engine.max_degree()) throw SliceTooShallow("x^{p^s} lies in degree " + std::to_string(degree));
  const auto part = p_primary_part(engine, p, degree);
  std::vector<CohomologyClass> sources;
  for (const auto& b : part.basis) sources.push_back(coefficient_map(CoefficientMap::theta, p, 1, b));
  auto c = engine.solve_span(sources, cup_power(x, e));
  if (!c) return std::nullopt;
  IntegralLift out{zero_class(x.group, degree), *c};
  for (std::size_t j = 0; j < c->size(); ++j)
    if ((*c)[j] != 0) out.integral = out.integral + scale(part.basis[j], (*c)[j]);
  return out;
}

inline IntegralLift integral_psth_preimage(const CohomologyEngine& engine, const CohomologyClass& x) {
  auto out = try_integral_psth_preimage(engine, x);
  if (!out) throw NoPreimageFound("x^{p^s} is not the reduction of an integral class");
  return *out;
}

/// A mod-p basis class of degree d whose p^s-th power lifts to the p-primary part.
struct SurjectivityWitness {
  std::size_t degree = 0;
  std::size_t index = 0;
  bool found = false;
  CohomologyClass target;    // the basis class x
  IntVector coefficients;
  CohomologyClass integral;
};

/// For y in the p-primary basis, z = p y reduces to 0 mod p; records the least e <= s with
/// z^e ~ 0 over Z (0 when no such e was found within the bound).
struct NilpotencyWitness {
  std::size_t degree = 0;
  std::size_t index = 0;
  Integer order;             // order of y
  bool reduces_to_zero = false;
  bool checked = false;      // an exponent was found, or s * degree is within the bound
  unsigned exponent = 0;
  CohomologyClass element;   // p y
};

/// A kernel vector of (p-primary part) (x) Z/p -> H^d(G, Z/p), with the check theta_1(z^s) ~ 0.
struct TensorKernelWitness {
  std::size_t degree = 0;
  IntVector coefficients;    // along the p-primary basis, mod p
  bool checked = false;
  bool vanishes = false;
};

struct FIsoReport {
  std::string group;
  Integer p;
  unsigned s = 0;
  std::size_t max_degree = 0;
  std::vector<SurjectivityWitness> surjectivity;
  std::vector<NilpotencyWitness> nilpotency;
  std::vector<TensorKernelWitness> tensor_kernel;
  std::vector<std::string> notes;
  bool passed = false;
};

inline FIsoReport f_iso_check(const CohomologyEngine& engine, const Integer& p, std::size_t max_degree) {
  const auto& group = engine.group();
  FIsoReport report;
  report.group = group->label();
  report.p = p;
  report.s = s_exponent(*group, p);
  report.max_degree = max_degree;
  if (max_degree > engine.max_degree()) throw SliceTooShallow("engine bound is " + std::to_string(engine.max_degree()));
  const Modulus fp = Modulus::of(p);
  const std::size_t e = static_cast<std::size_t>(power(p, report.s));
  bool ok = true;

  for (std::size_t d = 1; d * e <= max_degree; ++d) {
    const auto h = engine.cohomology_group(fp, d);
    for (std::size_t k = 0; k < h.size(); ++k) {
      SurjectivityWitness w;
      w.degree = d;
      w.index = k;
      w.target = h.basis[k];
      if (auto lift = try_integral_psth_preimage(engine, h.basis[k])) {
        w.found = true;
        w.coefficients = lift->coefficients;
        w.integral = lift->integral;
      }
      ok = ok && w.found;
      report.surjectivity.push_back(std::move(w));
    }
  }

  for (std::size_t d = 1; d <= max_degree; ++d) {
    const auto part = p_primary_part(engine, p, d);
    if (part.basis.empty()) continue;
    const auto hp = engine.cohomology_group(fp, d);

    IntMatrix images(hp.size(), part.basis.size());
    for (std::size_t k = 0; k < part.basis.size(); ++k) {
      const auto c = engine.coordinates(coefficient_map(CoefficientMap::theta, p, 1, part.basis[k]));
      for (std::size_t r = 0; r < c.size(); ++r) images(r, k) = c[r];
    }
    for (auto& v : nullspace_mod_prime(images, p)) {
      TensorKernelWitness w;
      w.degree = d;
      w.coefficients = v;
      if (report.s == 0 || report.s * d <= max_degree) {
        w.checked = true;
        CohomologyClass z = zero_class(group, d);
        for (std::size_t k = 0; k < v.size(); ++k)
          if (v[k] != 0) z = z + scale(part.basis[k], v[k]);
        w.vanishes = engine.is_coboundary(
            coefficient_map(CoefficientMap::theta, p, 1, cup_power(z, std::max(report.s, 1u))));
        ok = ok && w.vanishes;
      }
      report.tensor_kernel.push_back(std::move(w));
    }

    for (std::size_t k = 0; k < part.basis.size(); ++k) {
      NilpotencyWitness w;
      w.degree = d;
      w.index = k;
      w.order = part.factors[k];
      w.element = scale(part.basis[k], p);
      w.reduces_to_zero = engine.is_coboundary(coefficient_map(CoefficientMap::theta, p, 1, w.element));
      ok = ok && w.reduces_to_zero;
      CohomologyClass acc = w.element;
      for (unsigned n = 1; n <= report.s && n * d <= max_degree; ++n) {
        if (n > 1) acc = cup_product(acc, w.element);
        if (engine.is_coboundary(acc)) {
          w.exponent = n;
          break;
        }
      }
      w.checked = w.exponent != 0 || report.s * d <= max_degree;
      ok = ok && (w.exponent != 0 || !w.checked);
      report.nilpotency.push_back(std::move(w));
    }
  }
  report.notes.push_back(
      "basis classes suffice for F-surjectivity: Frobenius is additive on homogeneous elements here");
  report.passed = ok;
  return report;
}

inline FIsoReport f_iso_check(GroupPtr group, const Integer& p, std::size_t max_degree,
                              SizeCap cap = SizeCap::from_env()) {
  if (!is_prime(p)) throw NotPrime(p.str());
  return f_iso_check(CohomologyEngine(std::move(group), max_degree, cap), p, max_degree);
}

}  // namespace cohomkit
