#pragma once

#include "cohomkit/json_io.hpp"

#include <functional>

namespace cohomkit::suites {

using nlohmann::json;

struct SuiteResult {
  std::string name;
  bool passed = true;
  std::size_t checks = 0;
  std::vector<std::string> failures;
  json details = json::array();

  void check(bool ok, const std::string& what) {
    ++checks;
    if (!ok) {
      passed = false;
      failures.push_back(what);
    }
  }
};

/// The groups and primes exercised by the Bockstein and F-isomorphism suites.
inline std::vector<std::pair<std::string, int>> prime_family() {
  return {{"c2", 2}, {"c3", 3}, {"c4", 2}, {"klein4", 2}, {"s3", 2}, {"s3", 3}};
}

namespace detail {

inline std::string tag(const std::string& group, const Integer& p) { return group + " p=" + p.str(); }

/// One engine per group, shared by every prime of that group.
class EngineCache {
 public:
  EngineCache(std::size_t max_degree, SizeCap cap) : max_degree_(max_degree), cap_(cap) {}
  const CohomologyEngine& get(const std::string& name) {
    auto it = engines_.find(name);
    if (it == engines_.end())
      it = engines_.emplace(name, std::make_unique<CohomologyEngine>(groups::builtin(name), max_degree_, cap_)).first;
    return *it->second;
  }

 private:
  std::size_t max_degree_;
  SizeCap cap_;
  std::map<std::string, std::unique_ptr<CohomologyEngine>> engines_;
};

}  // namespace detail

/// Normalized-bar cohomology against the periodic resolution for small cyclic groups, and the
/// engine against both.
inline SuiteResult cohomology_oracle(SizeCap cap = SizeCap::from_env()) {
  SuiteResult out{"cohomology-oracle"};
  for (std::size_t n : {2u, 3u, 4u}) {
    auto g = groups::cyclic(n);
    const Resolution periodic = periodic_resolution(g, 1, 7);
    const CohomologyEngine engine(g, 6, cap);
    for (const std::string coeff : {"Z", "Z/2", "Z/3", "Z/4"}) {
      const Modulus m = Modulus::parse(coeff);
      const CochainComplex cc(periodic, m);
      for (std::size_t d = 0; d <= 6; ++d) {
        const IntVector bar = bar_cohomology_invariants(*g, m, d, cap);
        const IntVector per = canonical_invariants(cc.cohomology(d).orders);
        const IntVector eng = canonical_invariants(engine.cohomology_group(m, d).invariant_factors);
        const std::string what = g->label() + " " + coeff + " H^" + std::to_string(d);
        out.check(bar == per, what + ": bar " + format_invariants(bar) + " vs periodic " + format_invariants(per));
        out.check(eng == per, what + ": engine " + format_invariants(eng) + " vs periodic " + format_invariants(per));
        out.details.push_back({{"group", g->label()}, {"coefficients", coeff}, {"degree", d}, {"bar", format_invariants(bar)},
                               {"periodic", format_invariants(per)}});
      }
    }
  }
  return out;
}

/// H^*(C2, F2) to degree 6 and H^*(C2 x C2, F2) to degree 4.
inline SuiteResult ring(SizeCap cap = SizeCap::from_env()) {
  SuiteResult out{"ring"};
  const auto c2 = ring_slice(groups::cyclic(2), Modulus::of(2), 6, cap);
  out.check(c2.dimensions() == std::vector<std::size_t>(7, 1), "c2 dimensions");
  // x^n != 0 for the degree-1 generator, so the slice is polynomial.
  for (std::size_t a = 0; a <= 6; ++a)
    for (std::size_t b = 0; a + b <= 6; ++b)
      out.check(c2.product(a, 0, b, 0) == IntVector{1}, "c2 product in degrees " + std::to_string(a) + "," + std::to_string(b));
  const auto v4 = ring_slice(groups::klein_four(), Modulus::of(2), 4, cap);
  out.check(v4.dimensions() == std::vector<std::size_t>{1, 2, 3, 4, 5}, "klein4 dimensions");
  out.check(!graded_commutativity_failure(v4), "klein4 graded commutativity");
  out.check(!associativity_failure(v4), "klein4 associativity");
  out.details.push_back({{"group", "c2"}, {"dimensions", c2.dimensions()}});
  out.details.push_back({{"group", "klein4"}, {"dimensions", v4.dimensions()}});
  return out;
}

/// delta_i(xy) = delta_i(x) eps_i(y) + (-1)^|x| eps_i(x) delta_i(y) over all basis pairs of total
/// degree <= 5, i in {1, 2}.
inline SuiteResult derivation(SizeCap cap = SizeCap::from_env()) {
  SuiteResult out{"derivation"};
  detail::EngineCache engines(6, cap);
  for (const auto& [name, pv] : prime_family()) {
    const auto& engine = engines.get(name);
    const Integer p = pv;
    std::size_t pairs = 0, induction = 0;
    for (unsigned i : {1u, 2u}) {
      const Modulus m = Modulus::of(power(p, i));
      std::vector<CohomologyGroup> h;
      for (std::size_t n = 0; n <= 5; ++n) h.push_back(engine.cohomology_group(m, n));
      for (std::size_t a = 0; a <= 5; ++a)
        for (std::size_t b = 0; a + b <= 5; ++b)
          for (std::size_t k = 0; k < h[a].size(); ++k)
            for (std::size_t l = 0; l < h[b].size(); ++l) {
              ++pairs;
              out.check(verify_derivation(engine, i, h[a].basis[k], h[b].basis[l]).passed,
                        detail::tag(name, p) + " i=" + std::to_string(i) + " (" + std::to_string(a) + "," +
                            std::to_string(k) + ")x(" + std::to_string(b) + "," + std::to_string(l) + ")");
            }
      // The power rule obtained by induction, where it applies.
      for (std::size_t a = 1; a <= 2; ++a)
        for (const auto& x : h[a].basis)
          for (unsigned n = 1; n <= static_cast<unsigned>(pv) && n * a + 1 <= 6; ++n) {
            const auto c = verify_power_rule(engine, i, x, n);
            if (!c.applicable) continue;
            ++induction;
            out.check(c.passed, detail::tag(name, p) + " power rule n=" + std::to_string(n));
          }
    }
    out.details.push_back({{"group", name}, {"p", pv}, {"pairs", pairs}, {"power_rule_checks", induction}});
  }
  return out;
}

/// x^p lifts along pi_3 for every basis class x mod p^2 of degree 1..3.
inline SuiteResult pth_power(SizeCap cap = SizeCap::from_env()) {
  SuiteResult out{"pth-power"};
  detail::EngineCache engines(6, cap);
  for (const auto& [name, pv] : prime_family()) {
    const auto& engine = engines.get(name);
    const Integer p = pv;
    const Modulus m = Modulus::of(power(p, 2));
    for (std::size_t d = 1; d <= 3; ++d) {
      const auto h = engine.cohomology_group(m, d);
      for (std::size_t k = 0; k < h.size(); ++k) {
        std::string what = detail::tag(name, p) + " degree " + std::to_string(d) + " basis " + std::to_string(k);
        try {
          const auto lift = pth_power_preimage(engine, 2, h.basis[k]);
          out.check(true, what);
          out.details.push_back({{"group", name}, {"p", pv}, {"degree", d}, {"index", k},
                                 {"coefficients", io::to_json(lift.coefficients)}, {"odd_shortcut", lift.odd_shortcut}});
        } catch (const NoPreimageFound& e) {
          out.check(false, what + ": " + e.what());
        }
      }
    }
  }
  return out;
}

/// x^{p^s} is the reduction of an integral class, for mod-p basis classes with p^s |x| <= 6.
inline SuiteResult integral_lift(SizeCap cap = SizeCap::from_env()) {
  SuiteResult out{"integral-lift"};
  detail::EngineCache engines(6, cap);
  for (const auto& [name, pv] : prime_family()) {
    const auto& engine = engines.get(name);
    const Integer p = pv;
    const auto e = static_cast<std::size_t>(power(p, s_exponent(*engine.group(), p)));
    for (std::size_t d = 1; d <= 2 && e * d <= 6; ++d) {
      const auto h = engine.cohomology_group(Modulus::of(p), d);
      for (std::size_t k = 0; k < h.size(); ++k) {
        std::string what = detail::tag(name, p) + " degree " + std::to_string(d) + " basis " + std::to_string(k);
        try {
          const auto lift = integral_psth_preimage(engine, h.basis[k]);
          out.check(true, what);
          out.details.push_back({{"group", name}, {"p", pv}, {"degree", d}, {"index", k},
                                 {"coefficients", io::to_json(lift.coefficients)}});
        } catch (const NoPreimageFound& e) {
          out.check(false, what + ": " + e.what());
        }
      }
    }
  }
  return out;
}

inline SuiteResult fiso(SizeCap cap = SizeCap::from_env()) {
  SuiteResult out{"fiso"};
  detail::EngineCache engines(6, cap);
  for (const auto& [name, pv] : prime_family()) {
    const auto report = f_iso_check(engines.get(name), pv, 6);
    out.check(report.passed, detail::tag(name, pv));
    out.details.push_back({{"group", name}, {"p", pv}, {"s", report.s}, {"surjectivity", report.surjectivity.size()},
                           {"nilpotency", report.nilpotency.size()}, {"verdict", report.passed ? "pass" : "fail"}});
  }
  return out;
}

/// Direct projectivity over ZG against projectivity of every fibre, for ZG, Z and the
/// augmentation ideal over C2, C3, C6.
inline SuiteResult fibres() {
  SuiteResult out{"fibres"};
  for (const std::string name : {"c2", "c3", "c6"}) {
    const auto g = groups::builtin(name);
    for (const std::string token : {"zg", "z", "aug"}) {
      const FGModule m = io::load_module(g, token);
      const auto direct = integral_projectivity_test(m);
      const auto report = proj_dim_via_fibres(m);
      const std::string what = name + " " + token;
      out.check(direct.projective == report.finite(), what + ": direct and fibrewise verdicts differ");
      out.check(direct.projective == (token == "zg"), what + ": unexpected verdict");
      if (direct.splitting)
        out.check(verify_splitting(m.free_presentation(), direct.cover_rank, direct.cover, *direct.splitting),
                  what + ": splitting does not verify");
      json per = json::array();
      for (const auto& f : report.fibres) per.push_back({{"p", f.p.str()}, {"projective", f.projective}});
      out.details.push_back({{"group", name}, {"module", token}, {"direct", direct.projective}, {"fibres", per}});
    }
  }
  return out;
}

inline SuiteResult dualising() {
  SuiteResult out{"dualising"};
  for (const std::string name : {"c2", "c3", "s3", "q8"}) {
    const auto g = groups::builtin(name);
    try {
      const auto w = dualising_check(g);
      out.check(verify_dualising(*g, w), name + ": witness does not verify");
      out.details.push_back({{"group", name}, {"left", io::to_json(w.left)}, {"right", io::to_json(w.right)}});
    } catch (const NoIsomorphismFound& e) {
      out.check(false, name + ": " + e.what());
    }
  }
  return out;
}

/// Ext^i_ZG(M, ZG) = 0 for i = 2, 3 and M in {ZG, Z, I}, G in {C2, C3}; Ext^2_ZC2(Z, Z) = Z/2.
inline SuiteResult ext() {
  SuiteResult out{"ext"};
  for (const std::string name : {"c2", "c3"}) {
    const auto g = groups::builtin(name);
    const FGModule zg = modules::regular(g);
    for (const std::string token : {"zg", "z", "aug"}) {
      const FGModule m = io::load_module(g, token);
      for (std::size_t i : {2u, 3u}) {
        const IntVector e = canonical_invariants(ext_group(m, zg, i));
        out.check(e.empty(), name + " Ext^" + std::to_string(i) + "(" + token + ", ZG) = " + format_invariants(e));
        out.details.push_back({{"group", name}, {"module", token}, {"i", i}, {"ext", format_invariants(e)}});
      }
    }
  }
  const auto c2 = groups::cyclic(2);
  const IntVector control = canonical_invariants(ext_group(modules::trivial(c2), modules::trivial(c2), 2));
  out.check(control == IntVector{2}, "c2 Ext^2(Z, Z) = " + format_invariants(control));
  out.details.push_back({{"group", "c2"}, {"module", "z"}, {"target", "z"}, {"i", 2}, {"ext", format_invariants(control)}});
  return out;
}

inline SuiteResult koszul() {
  SuiteResult out{"koszul"};
  for (const IntVector& e : {IntVector{2}, IntVector{2, 3}, IntVector{2, 3, 5}, IntVector{4, 6}, IntVector{0, 7, -3}}) {
    const auto r = koszul_selfdual_check(e);
    out.check(r.passed, "elements " + io::to_json(e).dump());
    out.details.push_back({{"elements", io::to_json(e)}, {"verdict", r.passed ? "pass" : "fail"}});
  }
  return out;
}

/// Every nonempty seed of nonprojective indecomposables closes to all of them, so only the zero
/// ideal and the whole category remain.
inline SuiteResult classification() {
  SuiteResult out{"classification"};
  for (int pv : {2, 3, 5}) {
    const Integer p = pv;
    const std::size_t q = static_cast<std::size_t>(pv);
    std::set<std::size_t> full;
    for (std::size_t a = 1; a < q; ++a) full.insert(a);
    for (std::size_t mask = 1; mask < (std::size_t{1} << (q - 1)); ++mask) {
      std::set<std::size_t> seed;
      for (std::size_t a = 1; a < q; ++a)
        if (mask & (std::size_t{1} << (a - 1))) seed.insert(a);
      out.check(thick_closure(seed, p) == full, "p=" + p.str() + " seed closure");
    }
    const auto ideals = thick_ideals(p);
    out.check(ideals.size() == 2, "p=" + p.str() + " ideal count " + std::to_string(ideals.size()));
    out.details.push_back({{"p", pv}, {"ideals", ideals.size()}});
  }
  return out;
}

/// The reduction H^*(G, Z) -> H^*(G, F_p) certified on the C2 and C2 x C2 slices at N = 6.
inline SuiteResult kappa(SizeCap cap = SizeCap::from_env()) {
  SuiteResult out{"kappa"};
  for (const std::string name : {"c2", "klein4"}) {
    const CohomologyEngine engine(groups::builtin(name), 6, cap);
    const auto f = reduction_map(engine, 2, 6);
    const auto c = kappa_certificate(f, 2, s_exponent(*engine.group(), 2), 6);
    out.check(c.passed, name);
    out.check(!f.multiplicativity_failure(), name + " multiplicativity");
    out.details.push_back({{"group", name}, {"kernel", c.kernel.size()}, {"image", c.image.size()},
                           {"verdict", c.passed ? "pass" : "fail"}});
  }
  return out;
}

struct SuiteEntry {
  std::string name;
  std::function<SuiteResult()> run;
};

inline const std::vector<SuiteEntry>& registry() {
  static const std::vector<SuiteEntry> entries{
      {"cohomology-oracle", [] { return cohomology_oracle(); }},
      {"ring", [] { return ring(); }},
      {"derivation", [] { return derivation(); }},
      {"pth-power", [] { return pth_power(); }},
      {"integral-lift", [] { return integral_lift(); }},
      {"fiso", [] { return fiso(); }},
      {"fibres", fibres},
      {"dualising", dualising},
      {"ext", ext},
      {"koszul", koszul},
      {"classification", classification},
      {"kappa", [] { return kappa(); }},
  };
  return entries;
}

/// Alternative suite names accepted on the command line.
inline const std::map<std::string, std::string>& aliases() {
  static const std::map<std::string, std::string> table{
      {"lemma4.1", "derivation"}, {"lemma4.2", "pth-power"}, {"prop4.3", "integral-lift"}, {"thm4.4", "fiso"},
      {"lemma2.7", "fibres"},     {"lemma3.3", "dualising"}, {"lemma2.2", "koszul"},
  };
  return table;
}

inline std::optional<SuiteEntry> find(const std::string& name) {
  const auto alias = aliases().find(name);
  const std::string key = alias == aliases().end() ? name : alias->second;
  for (const auto& e : registry())
    if (e.name == key) return e;
  return std::nullopt;
}

inline json to_json(const SuiteResult& r) {
  return {{"suite", r.name}, {"checks", r.checks}, {"failures", r.failures}, {"details", r.details},
          {"verdict", r.passed ? "pass" : "fail"}};
}

}  // namespace cohomkit::suites
