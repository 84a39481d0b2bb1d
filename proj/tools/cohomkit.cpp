#include "cohomkit/cohomkit.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <iostream>
#include <sstream>

using namespace cohomkit;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "cohomkit 0.1.0";

/// A finished command: the JSON report, its human rendering, and whether the verdict passed.
struct Outcome {
  json report;
  std::string text;
  bool passed = true;
};

json stamp(const std::string& command, json inputs) {
  return {{"command", command}, {"inputs", std::move(inputs)}, {"version", kVersion}};
}

std::string set_string(const std::set<std::size_t>& s) {
  std::string out = "{";
  for (auto it = s.begin(); it != s.end(); ++it) out += (it == s.begin() ? "" : ",") + std::to_string(*it);
  return out + "}";
}

std::string coords_string(const IntVector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + v[i].str();
  return out + ")";
}

Integer smallest_prime_factor(std::size_t n) {
  for (std::size_t p = 2; p <= n; ++p)
    if (n % p == 0) return Integer(p);
  throw InvalidArgument("the trivial group has no prime divisors");
}

// ---- commands ----------------------------------------------------------------------------

Outcome run_cohomology(const std::string& group_spec, const std::string& coeff, std::size_t deg) {
  const auto g = io::load_group(group_spec);
  const Modulus m = Modulus::parse(coeff);
  const CohomologyEngine engine(g, deg, SizeCap::from_env());
  const auto h = engine.cohomology_group(m, deg);
  Outcome out;
  out.report = stamp("cohomology", {{"group", group_spec}, {"coeff", m.str()}, {"deg", deg}});
  out.report["group"] = io::group_to_json(*g);
  out.report["result"] = io::to_json(h);
  out.text = "H^" + std::to_string(deg) + "(" + g->label() + "; " + m.str() + ") = " + format_invariants(h.invariant_factors) + "\n";
  return out;
}

Outcome run_ring(const std::string& group_spec, const std::string& coeff, std::size_t max_deg) {
  const auto g = io::load_group(group_spec);
  const Modulus m = Modulus::parse(coeff);
  const CohomologyEngine engine(g, max_deg, SizeCap::from_env());
  const auto slice = ring_slice(engine, m, max_deg);
  Outcome out;
  out.report = stamp("ring", {{"group", group_spec}, {"coeff", m.str()}, {"max_deg", max_deg}});
  out.report["group"] = io::group_to_json(*g);
  out.report["slice"] = io::to_json(slice, true);
  std::ostringstream s;
  s << "H^*(" << g->label() << "; " << m.str() << ") up to degree " << max_deg << "\n";
  for (std::size_t n = 0; n <= max_deg; ++n) s << "  degree " << n << ": " << format_invariants(slice.orders[n]) << "\n";
  s << "products (a,i)*(b,j) = coordinates:\n";
  for (const auto& [key, c] : slice.table) {
    const auto [a, i, b, j] = key;
    if (a == 0 || b == 0) continue;
    s << "  (" << a << "," << i << ")*(" << b << "," << j << ") = " << coords_string(c) << "\n";
  }
  out.text = s.str();
  return out;
}

Outcome run_bockstein(const std::string& group_spec, unsigned i, std::size_t deg, std::optional<Integer> p) {
  const auto g = io::load_group(group_spec);
  if (i < 1) throw InvalidArgument("--i must be at least 1");
  const Integer prime = p ? *p : smallest_prime_factor(g->order());
  if (!is_prime(prime)) throw NotPrime(prime.str());
  const CohomologyEngine engine(g, deg + 1, SizeCap::from_env());
  const auto source = engine.cohomology_group(Modulus::of(power(prime, i)), deg);
  json images = json::array();
  std::ostringstream s;
  s << "delta_" << i << " : H^" << deg << "(" << g->label() << "; Z/" << power(prime, i) << ") -> H^" << deg + 1
    << "(" << g->label() << "; Z/" << prime << ")\n";
  for (std::size_t k = 0; k < source.size(); ++k) {
    const auto d = bockstein_delta(i, source.basis[k]);
    const auto c = engine.coordinates(d);
    images.push_back({{"source", io::class_to_json(source.basis[k])}, {"image", io::class_to_json(d)}, {"coords", io::to_json(c)}});
    s << "  basis " << k << " -> " << coords_string(c) << "\n";
  }
  if (source.size() == 0) s << "  source is zero\n";
  Outcome out;
  out.report = stamp("bockstein", {{"group", group_spec}, {"i", i}, {"deg", deg}, {"p", prime.str()}});
  out.report["group"] = io::group_to_json(*g);
  out.report["images"] = images;
  out.text = s.str();
  return out;
}

Outcome run_fiso(const std::string& group_spec, const Integer& p, std::size_t max_deg) {
  const auto g = io::load_group(group_spec);
  const auto r = f_iso_check(g, p, max_deg, SizeCap::from_env());
  Outcome out;
  out.report = stamp("fiso", {{"group", group_spec}, {"p", p.str()}, {"max_deg", max_deg}});
  out.report["group"] = io::group_to_json(*g);
  out.report["fiso"] = io::to_json(r);
  out.report["verdict"] = r.passed ? "pass" : "fail";
  out.passed = r.passed;
  std::size_t lifted = 0, nil = 0;
  for (const auto& w : r.surjectivity) lifted += w.found;
  for (const auto& w : r.nilpotency) nil += w.exponent != 0;
  std::ostringstream s;
  s << "F-isomorphism check for " << g->label() << " at p = " << p << ", s = " << r.s << ", N = " << max_deg << "\n"
    << "  p^s-th powers lifted: " << lifted << "/" << r.surjectivity.size() << "\n"
    << "  nilpotent kernel witnesses: " << nil << "/" << r.nilpotency.size() << "\n"
    << "  tensor kernel vectors: " << r.tensor_kernel.size() << "\n"
    << "verdict: " << (r.passed ? "pass" : "fail") << "\n";
  out.text = s.str();
  return out;
}

json splitting_json(const ProjectivityResult& r) {
  json j{{"projective", r.projective}, {"cover_rank", r.cover_rank}};
  if (r.splitting) {
    j["cover"] = io::to_json(r.cover);
    j["splitting"] = io::to_json(*r.splitting);
  }
  return j;
}

Outcome run_fibre(const std::string& group_spec, const std::string& module_spec, bool gproj) {
  const auto g = io::load_group(group_spec);
  const FGModule m = io::load_module(g, module_spec);
  Outcome out;
  out.report = stamp("fibre", {{"group", group_spec}, {"module", module_spec}, {"mode", gproj ? "gproj" : "projdim"}});
  out.report["group"] = io::group_to_json(*g);
  out.report["module"] = io::module_to_json(m);
  std::ostringstream s;
  if (gproj) {
    const bool yes = gproj_test(m);
    out.report["gorenstein_projective"] = yes;
    s << "Gorenstein projective: " << (yes ? "yes" : "no") << "\n";
    out.text = s.str();
    return out;
  }
  json fibres = json::array();
  bool all = true;
  if (m.base() == BaseRing::prime_field) {
    const auto r = fibre_projectivity_test(m);
    fibres.push_back(splitting_json(r));
    fibres.back()["p"] = m.characteristic().str();
    all = r.projective;
    s << "F_" << m.characteristic() << ": " << (r.projective ? "projective" : "not projective") << "\n";
  } else {
    if (m.base() != BaseRing::integers) throw InvalidModule("--projdim expects a module over ZG or F_pG");
    if (!m.base_free()) throw NotBaseFree("module has Z-torsion");
    const bool q = rational_projectivity(m);
    fibres.push_back({{"p", "0"}, {"projective", q}});
    all = q;
    s << "Q: " << (q ? "projective" : "not projective") << "\n";
    for (const auto& prime : prime_divisors(Integer(g->order()))) {
      const auto r = fibre_projectivity_test(m.fibre(prime));
      json f = splitting_json(r);
      f["p"] = prime.str();
      fibres.push_back(f);
      all = all && r.projective;
      s << "F_" << prime << ": " << (r.projective ? "projective" : "not projective") << "\n";
    }
    const auto direct = integral_projectivity_test(m);
    out.report["direct"] = splitting_json(direct);
    s << "direct over ZG: " << (direct.projective ? "projective" : "not projective") << "\n";
  }
  out.report["fibres"] = fibres;
  out.report["projdim"] = all ? "0" : "inf";
  s << "projective dimension: " << (all ? "0" : "inf") << "\n";
  out.text = s.str();
  return out;
}

Outcome run_dualising(const std::string& group_spec) {
  const auto g = io::load_group(group_spec);
  Outcome out;
  out.report = stamp("dualising", {{"group", group_spec}});
  out.report["group"] = io::group_to_json(*g);
  try {
    const auto w = dualising_check(g);
    out.passed = verify_dualising(*g, w);
    out.report["left"] = io::to_json(w.left);
    out.report["right"] = io::to_json(w.right);
  } catch (const NoIsomorphismFound& e) {
    out.passed = false;
    out.report["error"] = e.what();
  }
  out.report["verdict"] = out.passed ? "pass" : "fail";
  out.text = std::string("Hom_Z(ZG, Z) = ZG on both sides for ") + g->label() + ": " + (out.passed ? "pass" : "fail") + "\n";
  return out;
}

Outcome run_koszul(const std::vector<std::string>& elements) {
  IntVector e;
  for (const auto& x : elements) {
    if (x.empty() || x.find_first_not_of("-0123456789") != std::string::npos) throw InvalidArgument("not an integer: " + x);
    e.push_back(Integer(x));
  }
  const auto k = koszul_complex(e);
  const auto r = koszul_selfdual_check(e);
  Outcome out;
  out.report = stamp("koszul", {{"elements", io::to_json(e)}});
  json homology = json::array(), phi = json::array();
  std::ostringstream s;
  for (std::size_t d = 0; d <= k.length(); ++d) {
    const auto h = canonical_invariants(k.homology(d));
    homology.push_back(format_invariants(h));
    s << "H_" << d << " = " << format_invariants(h) << "\n";
  }
  for (const auto& m : r.phi) phi.push_back({{"rows", m.rows()}, {"cols", m.cols()}, {"entries", io::to_json(m)}});
  out.report["homology"] = homology;
  out.report["phi"] = phi;
  out.report["verdict"] = r.passed ? "pass" : "fail";
  out.passed = r.passed;
  s << "self-duality Hom(K, Z) = K[" << k.length() << "]: " << (r.passed ? "pass" : "fail") << "\n";
  out.text = s.str();
  return out;
}

Outcome run_thick(const Integer& p, const std::vector<std::size_t>& seed_list) {
  if (!is_prime(p)) throw NotPrime(p.str());
  if (p > 5) throw InvalidArgument("thick ideals are enumerated for p <= 5");
  const std::set<std::size_t> seed(seed_list.begin(), seed_list.end());
  for (auto a : seed)
    if (a < 1 || Integer(a) > p) throw InvalidArgument("block sizes lie in 1.." + p.str());
  const auto closure = thick_closure(seed, p);
  const auto ideals = thick_ideals(p);
  Outcome out;
  out.report = stamp("thick", {{"p", p.str()}, {"seed", seed}});
  out.report["closure"] = closure;
  json list = json::array();
  for (const auto& i : ideals) list.push_back(i);
  out.report["ideals"] = list;
  out.text = "closure " + set_string(closure) + "\n" + std::to_string(ideals.size()) + " thick tensor ideals\n";
  return out;
}

Outcome run_kappa(const std::string& group_spec, const Integer& p, std::optional<unsigned> s_opt, std::size_t max_deg) {
  const auto g = io::load_group(group_spec);
  const unsigned s = s_opt ? *s_opt : s_exponent(*g, p);
  const CohomologyEngine engine(g, max_deg, SizeCap::from_env());
  const auto f = reduction_map(engine, p, max_deg);
  const auto c = kappa_certificate(f, p, s, max_deg);
  Outcome out;
  out.report = stamp("kappa", {{"group", group_spec}, {"p", p.str()}, {"s", s}, {"max_deg", max_deg}});
  out.report["map"] = io::to_json(f);
  out.report["certificate"] = io::to_json(c);
  out.report["verdict"] = c.passed ? "pass" : "fail";
  out.passed = c.passed;
  std::size_t found = 0;
  for (const auto& w : c.image) found += w.preimage.has_value();
  std::ostringstream str;
  str << "reduction H^*(" << g->label() << "; Z) -> H^*(" << g->label() << "; F_" << p << ") up to degree " << max_deg << "\n"
      << "  kernel witnesses: " << c.kernel.size() << "\n"
      << "  p^s-th powers in the image: " << found << "/" << c.image.size() << "\n"
      << "verdict: " << (c.passed ? "pass" : "fail") << "\n";
  out.text = str.str();
  return out;
}

Outcome run_suite(const std::string& name) {
  std::vector<suites::SuiteEntry> selected;
  if (name == "all") {
    selected = suites::registry();
  } else if (auto e = suites::find(name)) {
    selected.push_back(*e);
  } else {
    throw InvalidArgument("unknown suite '" + name + "'");
  }
  Outcome out;
  out.report = stamp("verify-paper", {{"suite", name}});
  json results = json::array();
  std::ostringstream s;
  for (const auto& e : selected) {
    const auto r = e.run();
    results.push_back(suites::to_json(r));
    out.passed = out.passed && r.passed;
    s << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << r.checks << " checks)\n";
    for (const auto& f : r.failures) s << "  " << f << "\n";
  }
  out.report["suites"] = results;
  out.report["verdict"] = out.passed ? "pass" : "fail";
  out.text = s.str();
  return out;
}

// ---- recheck -----------------------------------------------------------------------------

struct Recheck {
  std::size_t checked = 0;
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    ++checked;
    if (!ok) failures.push_back(what);
  }
};

IntVector unit_vector(std::size_t n, std::size_t k) {
  IntVector v(n);
  v[k] = 1;
  return v;
}

void recheck_cohomology(const json& r, Recheck& rc) {
  const auto g = io::group_from_json(r.at("group"));
  const auto& res = r.at("result");
  const std::size_t deg = res.at("degree").get<std::size_t>();
  const Modulus m = Modulus::parse(res.at("coefficients").get<std::string>());
  const CohomologyEngine engine(g, deg, SizeCap::from_env());
  const auto fresh = engine.cohomology_group(m, deg);
  rc.expect(io::to_json(fresh.invariant_factors) == res.at("invariants"), "invariant factors");
  const auto& basis = res.at("basis");
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const CohomologyClass x{g, deg, m, io::vector_from_json(basis[k])};
    rc.expect(is_cocycle(x), "basis " + std::to_string(k) + " is a cocycle");
    rc.expect(engine.coordinates(x) == unit_vector(basis.size(), k), "basis " + std::to_string(k) + " coordinates");
  }
}

void recheck_ring(const json& r, Recheck& rc) {
  const auto g = io::group_from_json(r.at("group"));
  const auto& sj = r.at("slice");
  const auto slice = io::slice_from_json(sj);
  const CohomologyEngine engine(g, slice.max_degree, SizeCap::from_env());
  std::vector<std::vector<CohomologyClass>> basis;
  for (std::size_t n = 0; n < sj.at("basis").size(); ++n) {
    basis.emplace_back();
    for (const auto& c : sj.at("basis")[n]) basis.back().push_back({g, n, slice.modulus, io::vector_from_json(c)});
  }
  for (const auto& [key, c] : slice.table) {
    const auto [a, i, b, j] = key;
    const auto prod = cup_product(basis.at(a).at(i), basis.at(b).at(j));
    rc.expect(engine.equal(prod, engine.from_coordinates(slice.modulus, a + b, c)),
              "product (" + std::to_string(a) + "," + std::to_string(i) + ")*(" + std::to_string(b) + "," + std::to_string(j) + ")");
  }
}

void recheck_bockstein(const json& r, Recheck& rc) {
  const auto g = io::group_from_json(r.at("group"));
  const std::size_t deg = r.at("inputs").at("deg").get<std::size_t>();
  const unsigned i = r.at("inputs").at("i").get<unsigned>();
  const CohomologyEngine engine(g, deg + 1, SizeCap::from_env());
  for (const auto& e : r.at("images")) {
    const auto x = io::class_from_json(g, e.at("source"));
    const auto y = io::class_from_json(g, e.at("image"));
    rc.expect(is_cocycle(x) && is_cocycle(y), "source and image are cocycles");
    rc.expect(engine.equal(bockstein_delta(i, x), y), "image is delta of the source");
    rc.expect(engine.coordinates(y) == io::vector_from_json(e.at("coords")), "image coordinates");
  }
}

void recheck_fiso(const json& r, Recheck& rc) {
  const auto g = io::group_from_json(r.at("group"));
  const auto& f = r.at("fiso");
  const Integer p = io::integer_from_json(f.at("p"));
  const unsigned s = f.at("s").get<unsigned>();
  const CohomologyEngine engine(g, f.at("max_degree").get<std::size_t>(), SizeCap::from_env());
  const auto e = static_cast<unsigned>(power(p, s));
  bool all = true;
  for (const auto& w : f.at("surjectivity")) {
    const auto x = io::class_from_json(g, w.at("target"));
    const std::string what = "lift of degree " + std::to_string(x.degree) + " basis " + w.at("index").dump();
    if (!w.at("found").get<bool>()) {
      all = false;
      continue;
    }
    const auto z = io::class_from_json(g, w.at("integral"));
    rc.expect(is_cocycle(z), what + ": integral cocycle");
    rc.expect(engine.equal(coefficient_map(CoefficientMap::theta, p, 1, z), cup_power(x, e)), what + ": reduces to x^{p^s}");
  }
  for (const auto& w : f.at("nilpotency")) {
    const auto y = io::class_from_json(g, w.at("element"));
    const std::string what = "kernel element of degree " + std::to_string(y.degree);
    rc.expect(engine.is_coboundary(coefficient_map(CoefficientMap::theta, p, 1, y)) == w.at("reduces_to_zero").get<bool>(),
              what + ": reduction mod p");
    const unsigned n = w.at("exponent").get<unsigned>();
    if (n != 0) {
      rc.expect(n <= std::max(s, 1u), what + ": exponent within s");
      rc.expect(engine.is_coboundary(cup_power(y, n)), what + ": power vanishes");
    } else if (w.at("checked").get<bool>()) {
      all = false;
    }
    all = all && w.at("reduces_to_zero").get<bool>();
  }
  for (const auto& w : f.at("tensor_kernel"))
    if (w.at("checked").get<bool>()) all = all && w.at("vanishes").get<bool>();
  rc.expect(all == (f.at("verdict") == "pass"), "verdict matches the witnesses");
}

void recheck_fibre(const json& r, Recheck& rc) {
  const auto g = io::group_from_json(r.at("group"));
  const FGModule m = io::module_from_json(g, r.at("module"));
  if (r.contains("gorenstein_projective")) {
    rc.expect(gproj_test(m) == r.at("gorenstein_projective").get<bool>(), "Gorenstein projectivity");
    return;
  }
  auto check = [&](const FGModule& fm, const json& f, const std::string& what) {
    if (!f.contains("splitting")) return;
    const IntMatrix pi = io::matrix_from_json(f.at("cover"));
    const IntMatrix sp = io::matrix_from_json(f.at("splitting"));
    rc.expect(verify_splitting(fm, f.at("cover_rank").get<std::size_t>(), pi, sp), what + ": splitting verifies");
  };
  bool all = true;
  for (const auto& f : r.at("fibres")) {
    const Integer p(f.at("p").get<std::string>());
    const bool claimed = f.at("projective").get<bool>();
    all = all && claimed;
    if (p == 0) {
      rc.expect(rational_projectivity(m) == claimed, "rational fibre");
      continue;
    }
    const FGModule fm = m.base() == BaseRing::prime_field ? m : m.fibre(p);
    if (claimed) {
      rc.expect(f.contains("splitting"), "F_" + p.str() + ": projective fibre carries a splitting");
      check(fm, f, "F_" + p.str());
    } else {
      rc.expect(!fibre_projectivity_test(fm).projective, "F_" + p.str() + ": no splitting exists");
    }
  }
  if (r.contains("direct")) {
    const auto& d = r.at("direct");
    if (d.at("projective").get<bool>()) check(m.free_presentation(), d, "ZG");
    rc.expect(d.at("projective").get<bool>() == all, "direct and fibrewise verdicts agree");
  }
  rc.expect(r.at("projdim") == (all ? "0" : "inf"), "projective dimension");
}

void recheck_dualising(const json& r, Recheck& rc) {
  const auto g = io::group_from_json(r.at("group"));
  if (!r.contains("left")) {
    rc.expect(r.at("verdict") == "fail", "failed report has no witness");
    return;
  }
  const DualisingWitness w{io::matrix_from_json(r.at("left")), io::matrix_from_json(r.at("right"))};
  rc.expect(verify_dualising(*g, w), "left and right isomorphisms");
}

void recheck_koszul(const json& r, Recheck& rc) {
  const auto k = koszul_complex(io::vector_from_json(r.at("inputs").at("elements")));
  std::vector<IntMatrix> phi;
  for (const auto& m : r.at("phi")) phi.push_back(io::matrix_from_json(m.at("entries"), m.at("cols").get<std::size_t>()));
  const bool ok = verify_selfduality(k, phi);
  rc.expect(ok == (r.at("verdict") == "pass"), "self-duality witness");
  for (std::size_t d = 0; d <= k.length(); ++d)
    rc.expect(format_invariants(canonical_invariants(k.homology(d))) == r.at("homology").at(d).get<std::string>(),
              "H_" + std::to_string(d));
}

void recheck_thick(const json& r, Recheck& rc) {
  const Integer p(r.at("inputs").at("p").get<std::string>());
  const auto seed = r.at("inputs").at("seed").get<std::set<std::size_t>>();
  rc.expect(json(thick_closure(seed, p)) == r.at("closure"), "closure");
  json list = json::array();
  for (const auto& i : thick_ideals(p)) list.push_back(i);
  rc.expect(list == r.at("ideals"), "ideal lattice");
}

void recheck_kappa(const json& r, Recheck& rc) {
  const auto f = io::ring_map_from_json(r.at("map"));
  const auto& in = r.at("inputs");
  const Integer p(in.at("p").get<std::string>());
  const unsigned s = in.at("s").get<unsigned>();
  const std::size_t n = in.at("max_deg").get<std::size_t>();
  rc.expect(!f.multiplicativity_failure(), "the map is multiplicative");
  const auto& c = r.at("certificate");
  const unsigned e = std::max(s, 1u);
  const unsigned q = static_cast<unsigned>(power(p, s));
  for (const auto& w : c.at("kernel")) {
    const std::size_t d = w.at("degree").get<std::size_t>();
    const IntVector z = io::vector_from_json(w.at("element"));
    rc.expect(is_zero(f.apply(d, z)), "kernel element maps to zero");
    if (w.at("checked").get<bool>())
      rc.expect(is_zero(*f.source.power(d, z, e)) == w.at("nilpotent").get<bool>(), "kernel element nilpotency");
  }
  for (const auto& w : c.at("image")) {
    const std::size_t d = w.at("degree").get<std::size_t>();
    if (w.at("preimage").is_null()) continue;
    const IntVector x = unit_vector(f.target.dimension(d), w.at("index").get<std::size_t>());
    const IntVector pre = io::vector_from_json(w.at("preimage"));
    const IntVector img = pre.empty() ? IntVector(f.target.dimension(q * d)) : f.apply(q * d, pre);
    rc.expect(img == *f.target.power(d, x, q), "preimage of a p^s-th power");
  }
  rc.expect(kappa_certificate(f, p, s, n).passed == (c.at("verdict") == "pass"), "verdict");
}

void recheck_suite(const json& r, Recheck& rc) {
  for (const auto& sj : r.at("suites")) {
    const auto e = suites::find(sj.at("suite").get<std::string>());
    rc.expect(e.has_value(), "known suite");
    if (!e) continue;
    const auto fresh = suites::to_json(e->run());
    rc.expect(fresh == sj, sj.at("suite").get<std::string>() + " reproduces");
  }
}

Outcome run_recheck(const std::string& path) {
  const json r = io::parse(io::read_file(path), path);
  if (!r.is_object() || !r.contains("command")) throw InvalidArgument(path + " is not a report");
  const std::string command = r.at("command").get<std::string>();
  static const std::map<std::string, void (*)(const json&, Recheck&)> handlers{
      {"cohomology", recheck_cohomology}, {"ring", recheck_ring},         {"bockstein", recheck_bockstein},
      {"fiso", recheck_fiso},             {"fibre", recheck_fibre},       {"dualising", recheck_dualising},
      {"koszul", recheck_koszul},         {"thick", recheck_thick},       {"kappa", recheck_kappa},
      {"verify-paper", recheck_suite}};
  const auto h = handlers.find(command);
  if (h == handlers.end()) throw InvalidArgument("cannot recheck command '" + command + "'");
  Recheck rc;
  try {
    h->second(r, rc);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed report: ") + e.what());
  }
  Outcome out;
  out.passed = rc.failures.empty();
  out.report = stamp("recheck", {{"report", command}});
  out.report["checked"] = rc.checked;
  out.report["failures"] = rc.failures;
  out.report["verdict"] = out.passed ? "pass" : "fail";
  std::ostringstream s;
  s << "recheck of " << command << " report: " << rc.checked << " checks, " << rc.failures.size() << " failures\n";
  for (const auto& f : rc.failures) s << "  " << f << "\n";
  s << "verdict: " << (out.passed ? "pass" : "fail") << "\n";
  out.text = s.str();
  return out;
}

Integer parse_integer(const std::string& s, const std::string& flag) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw InvalidArgument(flag + " expects a non-negative integer, got '" + s + "'");
  return Integer(s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact cohomology of finite groups, Bocksteins, F-isomorphism and fibrewise checks"};
  app.set_version_flag("--version", kVersion);
  bool as_json = false, timing = false;
  std::string recheck_path;
  app.add_flag("--json", as_json, "Print the JSON report instead of the table");
  app.add_flag("--timing", timing, "Add wall-clock time to the report");
  app.add_option("--recheck", recheck_path, "Re-verify every witness in a saved JSON report");
  app.require_subcommand(0, 1);

  std::string group = "c2", coeff = "Z", module_spec, suite, p_str, s_str;
  std::size_t deg = 0, max_deg = 6;
  unsigned level = 1;
  std::vector<std::string> elements;
  std::vector<std::size_t> seed;
  bool projdim = false, gproj = false;

  auto* cohomology = app.add_subcommand("cohomology", "H^n(G, Z or Z/m) as invariant factors");
  cohomology->add_option("--group", group, "Built-in name or group JSON file")->required();
  cohomology->add_option("--coeff", coeff, "Z or Z/m");
  cohomology->add_option("--deg", deg, "Degree")->required();

  auto* ring_cmd = app.add_subcommand("ring", "Cup product structure constants up to a degree");
  ring_cmd->add_option("--group", group)->required();
  ring_cmd->add_option("--coeff", coeff);
  ring_cmd->add_option("--max-deg", max_deg)->required();

  auto* bock = app.add_subcommand("bockstein", "The Bockstein delta_i on a basis of H^n(G, Z/p^i)");
  bock->add_option("--group", group)->required();
  bock->add_option("--i", level)->required();
  bock->add_option("--deg", deg)->required();
  bock->add_option("--p", p_str, "Prime (default: smallest prime dividing |G|)");

  auto* fiso_cmd = app.add_subcommand("fiso", "F-isomorphism check of H^*(G, Z) -> H^*(G, F_p)");
  fiso_cmd->add_option("--group", group)->required();
  fiso_cmd->add_option("--p", p_str)->required();
  fiso_cmd->add_option("--max-deg", max_deg)->required();

  auto* fibre = app.add_subcommand("fibre", "Projectivity through fibres, or Gorenstein projectivity");
  fibre->add_option("--group", group)->required();
  fibre->add_option("--module", module_spec, "Module JSON file, or zg, z, aug, z/<m>, fp:<p>, fpg:<p>")->required();
  auto* pd_flag = fibre->add_flag("--projdim", projdim);
  fibre->add_flag("--gproj", gproj)->excludes(pd_flag);

  auto* dual = app.add_subcommand("dualising", "Hom_Z(ZG, Z) = ZG as left and right modules");
  dual->add_option("--group", group)->required();

  auto* kos = app.add_subcommand("koszul", "Koszul complex homology and self-duality");
  kos->add_option("--elements", elements)->required()->delimiter(',');

  auto* thick = app.add_subcommand("thick", "Thick tensor ideals of stab(F_p C_p)");
  thick->add_option("--p", p_str)->required();
  thick->add_option("--seed", seed, "Jordan block sizes")->required()->delimiter(',');

  auto* kappa_cmd = app.add_subcommand("kappa", "Certificate that reduction mod p induces a bijection on spectra");
  kappa_cmd->add_option("--group", group)->required();
  kappa_cmd->add_option("--p", p_str)->required();
  kappa_cmd->add_option("--s", s_str, "Exponent (default: p-adic valuation of |G|)");
  kappa_cmd->add_option("--max-deg", max_deg)->required();

  auto* verify = app.add_subcommand("verify-paper", "Run a verification suite");
  std::string names;
  for (const auto& e : suites::registry()) names += " " + e.name;
  for (const auto& [alias, target] : suites::aliases()) names += " " + alias;
  verify->add_option("--suite", suite, "One of: all" + names)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    if (!recheck_path.empty()) {
      if (!app.get_subcommands().empty()) throw InvalidArgument("--recheck takes no subcommand");
      out = run_recheck(recheck_path);
    } else if (app.got_subcommand(cohomology)) {
      out = run_cohomology(group, coeff, deg);
    } else if (app.got_subcommand(ring_cmd)) {
      out = run_ring(group, coeff, max_deg);
    } else if (app.got_subcommand(bock)) {
      std::optional<Integer> p;
      if (!p_str.empty()) p = parse_integer(p_str, "--p");
      out = run_bockstein(group, level, deg, p);
    } else if (app.got_subcommand(fiso_cmd)) {
      out = run_fiso(group, parse_integer(p_str, "--p"), max_deg);
    } else if (app.got_subcommand(fibre)) {
      out = run_fibre(group, module_spec, gproj);
    } else if (app.got_subcommand(dual)) {
      out = run_dualising(group);
    } else if (app.got_subcommand(kos)) {
      out = run_koszul(elements);
    } else if (app.got_subcommand(thick)) {
      out = run_thick(parse_integer(p_str, "--p"), seed);
    } else if (app.got_subcommand(kappa_cmd)) {
      std::optional<unsigned> s;
      if (!s_str.empty()) s = static_cast<unsigned>(parse_integer(s_str, "--s"));
      out = run_kappa(group, parse_integer(p_str, "--p"), s, max_deg);
    } else if (app.got_subcommand(verify)) {
      out = run_suite(suite);
    } else {
      std::cerr << app.help();
      return 2;
    }
  } catch (const NoPreimageFound& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const NoIsomorphismFound& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  if (timing) {
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.report["wall_time_seconds"] = secs;
    std::ostringstream s;
    s << "wall time: " << secs << " s\n";
    out.text += s.str();
  }
  if (as_json)
    std::cout << out.report.dump(2) << "\n";
  else
    std::cout << out.text;
  return out.passed ? 0 : 1;
}
