#pragma once

// Seeded batch suites. Violations are failures of exact identities or of
// proven inequalities; findings are disagreements with printed formulas.

#include <map>
#include <string>
#include <vector>

#include "unitfield/harness.hpp"
#include "unitfield/moduli.hpp"

namespace unitfield {

struct SuiteOutcome {
  std::string name;
  long instances = 0;
  long violations = 0;
  std::map<std::string, long> counters;
  std::map<std::string, long> findings;
  std::vector<std::string> violation_notes;  ///< first few only

  void violation(const std::string& note) {
    ++violations;
    if (violation_notes.size() < 10) violation_notes.push_back(note);
  }
  void finding(const Finding& f) { ++findings[f.code]; }
};

namespace detail {
inline Rng suite_rng(std::uint64_t seed, const std::string& name) {
  std::uint64_t h = 1469598103934665603ULL;  // FNV-1a of the suite name
  for (unsigned char ch : name) h = (h ^ ch) * 1099511628211ULL;
  return Rng(seed ^ h);
}
}  // namespace detail

/// F closed form against Res_Y, B(u1, u2) against d(A(u1, u2)), printed G
/// against Res_X.
inline SuiteOutcome suite_identities(std::uint64_t seed, long count = 200) {
  SuiteOutcome out;
  out.name = "identities";
  Rng rng = detail::suite_rng(seed, out.name);
  for (long n = 0; n < count; ++n) {
    const UnitData d = random_unit_data(rng, 3);
    ++out.instances;
    const auto f = check_F(d);
    if (f.sign != 0) ++out.counters["F_agree"];
    else out.finding(*f.finding);
    auto [lhs, rhs] = derivative_identity(d);
    if (lhs == rhs) ++out.counters["B_agree"];
    else out.violation("B(u1,u2) != d(A(u1,u2)) for u1 = " + pretty(d.u1) + ", u2 = " + pretty(d.u2));
    const auto g = check_G(d);
    if (g.sign != 0) ++out.counters["G_printed_agree"];
    else out.finding(*g.finding);
  }
  return out;
}

inline SuiteOutcome suite_cz(std::uint64_t seed, long count = 500) {
  SuiteOutcome out;
  out.name = "cz";
  Rng rng = detail::suite_rng(seed, out.name);
  const SSet S({Place::at(0), Place::at(1), Place::infinity()});
  const std::vector<Rat> constants{Rat(1), Rat(-1), Rat(2), Rat(1, 2)};
  auto draw = [&] {
    std::vector<long> e{uniform(rng, -3, 3), uniform(rng, -3, 3)};
    return unit_from_exponents(S, constants[static_cast<std::size_t>(uniform(rng, 0, 3))], e);
  };
  while (out.instances < count) {
    RatFunc a = draw(), b = draw();
    if (a == RatFunc(1) || b == RatFunc(1) || (a.is_constant() && b.is_constant())) continue;
    ++out.instances;
    const auto r = cz_check(a, b, S);
    ++out.counters[cz_branch_name(r.branch)];
    if (!r.holds) out.violation("CZ fails for a = " + pretty(a) + ", b = " + pretty(b));
    if (!r.holds_max_form) out.violation("CZ (max-height form) fails for a = " + pretty(a) + ", b = " + pretty(b));
  }
  return out;
}

inline SuiteOutcome suite_zannier(std::uint64_t seed, long count = 500) {
  SuiteOutcome out;
  out.name = "zannier";
  Rng rng = detail::suite_rng(seed, out.name);
  const std::vector<Rat> constants{Rat(1), Rat(-1), Rat(2), Rat(-2)};
  for (long n = 0; n < count; ++n) {
    const SSet S = random_sset(rng, static_cast<std::size_t>(uniform(rng, 2, 3)));
    const long m = uniform(rng, 2, 4);
    std::vector<RatFunc> th;
    for (long i = 0; i < m; ++i) {
      std::vector<long> e;
      for (std::size_t k = 0; k + 1 < S.places().size(); ++k) e.push_back(uniform(rng, -2, 2));
      th.push_back(unit_from_exponents(S, constants[static_cast<std::size_t>(uniform(rng, 0, 3))], e));
    }
    ++out.instances;
    std::vector<int> subset;
    try {
      const auto r = zannier_check(th, S, &subset);
      ++out.counters["accepted"];
      if (!r.holds) out.violation("Zannier fails for m = " + std::to_string(m));
    } catch (const Error& e) {
      if (e.code() != Errc::degenerate_input) throw;
      ++out.counters["rejected"];
      RatFunc sum;
      for (int i : subset) sum += th[static_cast<std::size_t>(i)];
      if (subset.empty() || !sum.is_zero()) out.violation("rejection without a vanishing subset");
    }
  }
  return out;
}

/// Instances built as solutions with at least three finite places, so a
/// second designation exists.
inline UnitEquationInstance random_solution_with_choice(Rng& rng) {
  for (;;) {
    auto inst = random_solution(rng);
    if (inst.S.finite_places().size() >= 3) return inst;
  }
}

/// Another admissible designation: the last two finite places.
inline SSet alternative_designation(const SSet& S) {
  auto f = S.finite_places();
  return S.with_designated({f[f.size() - 2], f[f.size() - 1]});
}

/// The parts of the per-instance analysis that do not depend on omega.
inline Json designation_invariant_view(const UnitEquationInstance& inst) {
  const auto cls = classify(inst);
  const auto div = divisibility_check(inst);
  const auto cover = cover_bound_check(inst.units());
  const auto ab = lemma_ab_chain(inst);
  Json j;
  j["cases"] = classification_json(cls);
  j["findings"] = finding_codes(cls.findings);
  j["divisibility"] = div.ok;
  Json U = Json::array();
  for (const auto& v : cover.U) U.push_back(place_json(v));
  j["U"] = U;
  j["chi_U"] = cover.chi_U;
  j["cover_degree"] = cover.degree;
  j["ab_regime"] = ab_regime_name(ab.regime);
  j["y_zeros"] = ab.y_zeros;
  return j;
}

inline SuiteOutcome suite_derivative_bound(std::uint64_t seed, long count = 500, long invariance_count = 100) {
  SuiteOutcome out;
  out.name = "derivative-bound";
  Rng rng = detail::suite_rng(seed, out.name);
  for (long n = 0; n < count; ++n) {
    const SSet S = random_sset(rng, static_cast<std::size_t>(uniform(rng, 2, 5)));
    const RatFunc u = random_unit(rng, S, 3);
    ++out.instances;
    const RatFunc th = theta(u, S);
    if (height_or_zero(th) > euler_char(S)) out.violation("H(theta) > chi_S for u = " + pretty(u));
    else ++out.counters["height_ok"];
  }
  for (long n = 0; n < invariance_count; ++n) {
    auto inst = random_solution_with_choice(rng);
    auto moved = inst;
    moved.S = alternative_designation(inst.S);
    ++out.instances;
    if (designation_invariant_view(inst) != designation_invariant_view(moved))
      out.violation("classification depends on the designated places");
    else ++out.counters["designation_invariant"];
    // Changing omega scales F by the S-unit m'/m and G by its square.
    const auto F = resultant_F(inst.units()), F2 = resultant_F(moved.units());
    const auto G = resultant_G(inst.units()), G2 = resultant_G(moved.units());
    const RatFunc w = RatFunc(moved.S.omega_denominator()) / RatFunc(inst.S.omega_denominator());
    const QuadPoly Fs{F.c2 * w, F.c1 * w, F.c0 * w};
    const QuadPoly Gs{G.c2 * w * w, G.c1 * w * w, G.c0 * w * w};
    if (!(Fs == F2) || !(Gs == G2)) out.violation("F, G do not scale with omega");
    else ++out.counters["homogeneity_ok"];
  }
  return out;
}

inline Rat random_rational(Rng& rng, long bound) {
  return make_rat(uniform(rng, -bound, bound), uniform(rng, 1, bound));
}

/// A random invertible 3x3 rational matrix.
inline Mat3 random_transform(Rng& rng) {
  for (;;) {
    Mat3 a;
    for (auto& row : a)
      for (auto& x : row) x = Rat(uniform(rng, -3, 3));
    if (det3(a) != 0) return a;
  }
}

/// The configuration in the coordinates x = A x': conic A^T M A, lines l A.
inline ConicTwoLines transform(const ConicTwoLines& c, const Mat3& a) {
  ConicTwoLines out;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      Rat s = 0;
      for (std::size_t k = 0; k < 3; ++k)
        for (std::size_t l = 0; l < 3; ++l) s += a[k][i] * c.conic[k][l] * a[l][j];
      out.conic[i][j] = s;
    }
  for (std::size_t j = 0; j < 3; ++j) {
    out.line2[j] = 0;
    out.line3[j] = 0;
    for (std::size_t k = 0; k < 3; ++k) {
      out.line2[j] += c.line2[k] * a[k][j];
      out.line3[j] += c.line3[k] * a[k][j];
    }
  }
  return out;
}

inline SuiteOutcome suite_moduli(std::uint64_t seed, long lambda_count = 100, long fourple_count = 200) {
  SuiteOutcome out;
  out.name = "moduli";
  Rng rng = detail::suite_rng(seed, out.name);
  for (long n = 0; n < lambda_count;) {
    Rat l0 = random_rational(rng, 9);
    if (l0 == 2 || l0 == -2) continue;
    ++n;
    ++out.instances;
    const ProjPoint lp = coeff_to_moduli(l0);
    if (lp != ProjPoint(Rat(16 / (l0 * l0 - 4)))) out.violation("coeff_to_moduli(" + to_string(l0) + ") != 16/(l^2-4)");
    else ++out.counters["closed_form"];
    // Same class through a change of coordinates and the projection route.
    const auto moved = transform(config_from_coeff(l0), random_transform(rng));
    if (lambda_prime(intersection_fourple(moved)) != lp) out.violation("lambda' not invariant under PGL(3)");
    else ++out.counters["coordinate_invariant"];
    if (!is_normal_crossing(config_from_coeff(l0))) out.violation("normal crossing fails at " + to_string(l0));
  }
  for (long l0 : {2L, -2L}) {
    ++out.instances;
    if (is_normal_crossing(config_from_coeff(Rat(l0)))) out.violation("normal crossing at lam = " + std::to_string(l0));
    else ++out.counters["degenerate_detected"];
  }
  for (long n = 0; n < fourple_count; ++n) {
    Fourple f;
    for (auto& p : f) p = uniform(rng, 0, 9) == 0 ? ProjPoint::infinity() : ProjPoint(random_rational(rng, 7));
    bool distinct = true;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) distinct = distinct && f[static_cast<std::size_t>(i)] != f[static_cast<std::size_t>(j)];
    if (!distinct) {
      --n;
      continue;
    }
    ++out.instances;
    const ProjPoint base = lambda_prime(f);
    bool ok = true;
    for (const auto& g : stabilizer_orbit(f)) ok = ok && lambda_prime(g) == base;
    if (!ok) out.violation("lambda' not invariant under the stabilizer");
    else ++out.counters["orbit_invariant"];
    const ProjPoint beta = cross_ratio(f);
    const ProjPoint swapped = cross_ratio(permute(f, class_stabilizer()[1]));
    if (ProjPoint(beta.b(), beta.a()) != swapped) out.violation("(12) does not invert the cross-ratio");
  }
  return out;
}

/// Squarefree polynomial of degree n with small integer coefficients.
inline Poly random_squarefree(Rng& rng, int n) {
  for (;;) {
    std::vector<Rat> c;
    for (int i = 0; i < n; ++i) c.emplace_back(uniform(rng, -4, 4));
    c.emplace_back(uniform(rng, 1, 3));
    Poly p(std::move(c));
    if (p.degree() == n && is_squarefree(p)) return p;
  }
}

inline SuiteOutcome suite_cover(std::uint64_t seed, long count = 50) {
  SuiteOutcome out;
  out.name = "cover";
  Rng rng = detail::suite_rng(seed, out.name);
  for (long n = 0; n < count; ++n) {
    const UnitData d = random_unit_data(rng, 3);
    ++out.instances;
    const auto r = cover_bound_check(d);
    ++out.counters["degree_" + std::to_string(r.degree)];
    if (r.degenerate) ++out.counters["degenerate"];
    if (!r.holds) out.violation("chi_U = " + std::to_string(r.chi_U) + " > " + std::to_string(r.bound));
    if (r.chi_U > r.bound_estimate) out.violation("chi_U above the 58 chi_S + 28 H(lam) restatement");
  }
  for (int deg = 1; deg <= 8; ++deg) {
    for (int rep = 0; rep < 5; ++rep) {
      ++out.instances;
      const Poly d = random_squarefree(rng, deg);
      const long g = genus_of_cover({QuadCoverSpec::from_poly(d)});
      if (g != (deg - 1) / 2) out.violation("genus of y^2 = d, deg d = " + std::to_string(deg));
      else ++out.counters["genus_ok"];
    }
  }
  return out;
}

inline SuiteOutcome suite_discriminant_bounds(std::uint64_t seed, long count = 200) {
  SuiteOutcome out;
  out.name = "discriminant-bounds";
  Rng rng = detail::suite_rng(seed, out.name);
  for (long n = 0; n < count; ++n) {
    const UnitData d = random_unit_data(rng, 3);
    ++out.instances;
    const auto r = discriminant_bounds(d);
    if (!r.ok_F) out.violation("H(Discr F) = " + std::to_string(r.height_F) + " > " + std::to_string(r.bound_F));
    if (!r.ok_G) out.violation("H(Discr G) = " + std::to_string(r.height_G) + " > " + std::to_string(r.bound_G));
    for (const auto& f : r.findings) out.finding(f);
  }
  return out;
}

inline SuiteOutcome suite_lemma_ab(std::uint64_t seed, long count = 100) {
  SuiteOutcome out;
  out.name = "lemma-ab";
  Rng rng = detail::suite_rng(seed, out.name);
  for (long n = 0; n < count; ++n) {
    const auto inst = random_solution(rng);
    ++out.instances;
    const auto r = lemma_ab_chain(inst);
    ++out.counters[ab_regime_name(r.regime)];
    if (r.violated()) out.violation("lemma ab chain fails for u1 = " + pretty(inst.u1) + ", u2 = " + pretty(inst.u2));
    for (const auto& f : r.findings) out.finding(f);
  }
  return out;
}

struct TrichotomyOutcome {
  SuiteOutcome outcome;
  std::map<std::string, long> case_counts;
};

inline TrichotomyOutcome suite_trichotomy(const SearchConfig& config) {
  TrichotomyOutcome t;
  t.outcome.name = "trichotomy";
  for (const auto& rec : search(config, config.workers)) {
    ++t.outcome.instances;
    const Json& cases = rec.at("cases");
    for (const char* c : {"i", "ii", "iii"})
      if (!cases.at(c).is_null()) ++t.case_counts[c];
    if (cases.at("i").is_null() && cases.at("ii").is_null() && cases.at("iii").is_null()) ++t.case_counts["none"];
    for (const auto& v : rec.at("violations")) t.outcome.violation(v.get<std::string>() + " at " + rec.at("key").dump());
    for (const auto& f : rec.at("findings")) ++t.outcome.findings[f.get<std::string>()];
  }
  return t;
}

struct RunManifest {
  std::string config_digest;
  std::string artifact = kArtifactVersion;
  std::vector<SuiteOutcome> outcomes;
  std::map<std::string, long> case_counts;

  long violations() const {
    long v = 0;
    for (const auto& o : outcomes) v += o.violations;
    return v;
  }
};

inline SuiteOutcome run_suite(const std::string& name, const SearchConfig& config, RunManifest* manifest = nullptr) {
  const auto seed = config.seed;
  if (name == "identities") return suite_identities(seed);
  if (name == "cz") return suite_cz(seed);
  if (name == "zannier") return suite_zannier(seed);
  if (name == "derivative-bound") return suite_derivative_bound(seed);
  if (name == "moduli") return suite_moduli(seed);
  if (name == "cover") return suite_cover(seed);
  if (name == "discriminant-bounds") return suite_discriminant_bounds(seed);
  if (name == "lemma-ab") return suite_lemma_ab(seed);
  if (name == "trichotomy") {
    auto t = suite_trichotomy(config);
    if (manifest) manifest->case_counts = t.case_counts;
    return t.outcome;
  }
  throw Error(Errc::config, "unknown suite '" + name + "'");
}

inline RunManifest run_suites(const SearchConfig& config, const std::vector<std::string>& names) {
  RunManifest m;
  m.config_digest = config_digest(config);
  for (const auto& n : names) m.outcomes.push_back(run_suite(n, config, &m));
  return m;
}

inline Json manifest_json(const RunManifest& m) {
  Json j;
  j["artifact"] = m.artifact;
  j["config_digest"] = m.config_digest;
  Json suites = Json::array();
  for (const auto& o : m.outcomes) {
    Json s;
    s["name"] = o.name;
    s["instances"] = o.instances;
    s["violations"] = o.violations;
    s["counters"] = o.counters;
    s["findings"] = o.findings;
    s["violation_notes"] = o.violation_notes;
    suites.push_back(s);
  }
  j["suites"] = suites;
  j["case_counts"] = m.case_counts;
  std::map<std::string, long> all;
  for (const auto& o : m.outcomes)
    for (const auto& [k, v] : o.findings) all[k] += v;
  j["findings"] = all;
  j["violations"] = m.violations();
  return j;
}

}  // namespace unitfield
