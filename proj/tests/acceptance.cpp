// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "unitfield/unitfield.hpp"

using namespace unitfield;

namespace {

using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

long counter(const SuiteOutcome& o, const std::string& key) {
  auto it = o.counters.find(key);
  return it == o.counters.end() ? 0 : it->second;
}

std::string summary(const SuiteOutcome& o) {
  std::ostringstream os;
  os << o.instances << " instances, " << o.violations << " violations";
  for (const auto& [k, v] : o.counters) os << ", " << k << "=" << v;
  for (const auto& [k, v] : o.findings) os << ", finding " << k << "=" << v;
  return os.str();
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Search state shared by criteria 2, 3 and 10.
struct SearchRun {
  SearchConfig config;
  std::vector<Json> records;
  std::string report;
};

const SearchRun& criterion2_search() {
  static const SearchRun run = [] {
    SearchRun r;
    r.config = load_config(std::string(UNITFIELD_CONFIG_DIR) + "/search_t.json");
    r.records = search(r.config, 1);
    r.report = render_report(r.config, r.records);
    return r;
  }();
  return run;
}

Verdict criterion1(std::uint64_t seed) {
  Verdict v;
  const auto t0 = Clock::now();
  const auto o = suite_identities(seed, 200);
  const double secs = seconds_since(t0);
  v.require(o.instances == 200, "instance count");
  v.require(counter(o, "F_agree") == 200, "closed-form F disagrees with Res_Y");
  v.require(counter(o, "B_agree") == 200, "B(u1,u2) disagrees with d(A(u1,u2))");
  v.require(secs < 30, "runtime " + std::to_string(secs) + " s");
  v.detail = summary(o) + ", " + std::to_string(secs).substr(0, 5) + " s" + (v.detail.empty() ? "" : "; " + v.detail);
  return v;
}

Verdict criterion2() {
  Verdict v;
  const auto& run = criterion2_search();
  long unclassified = 0, empty_cases = 0;
  bool known = false;
  for (const auto& rec : run.records) {
    const Json& c = rec.at("cases");
    if (c.at("i").is_null() && c.at("ii").is_null() && c.at("iii").is_null()) ++empty_cases;
    for (const auto& x : rec.at("violations")) unclassified += x == "unclassified";
    if (rec.at("u1") == "num=[0,1];den=[1]" && rec.at("u2") == "num=[0,0,-2];den=[1]" &&
        rec.at("heights").at("y") == 0 && c.at("i") == Json::parse(R"(["u1^2","lam*u1","u2"])"))
      known = true;
  }
  v.require(!run.records.empty(), "no solutions found");
  v.require(empty_cases == 0, std::to_string(empty_cases) + " records with empty case set");
  v.require(unclassified == 0, std::to_string(unclassified) + " unclassified records");
  v.require(known, "known solution u1 = t, u2 = -2t^2 missing or misclassified");
  v.detail = std::to_string(run.records.size()) + " solutions, known solution " + (known ? "found" : "missing") +
             (v.detail.empty() ? "" : "; " + v.detail);
  return v;
}

Verdict criterion3() {
  Verdict v;
  const auto& run = criterion2_search();
  long violations = 0, checked_places = 0;
  for (const auto& rec : run.records) {
    if (!rec.at("divisibility").at("ok").get<bool>()) ++violations;
    // Place-by-place from the factorization of y.
    const RatFunc u1 = parse_expr(rec.at("u1").get<std::string>());
    const RatFunc u2 = parse_expr(rec.at("u2").get<std::string>());
    const RatFunc y = parse_expr(rec.at("y").get<std::string>());
    if (y.is_zero()) continue;
    const UnitData d{run.config.sset(), run.config.lam, u1, u2};
    const RatFunc fu = resultant_F(d)(u1), gu = resultant_G(d)(u2);
    for (const auto& [place, k] : divisor(y).terms()) {
      if (d.S.contains(place) || k <= 0) continue;
      ++checked_places;
      if ((!fu.is_zero() && valuation(fu, place) < k) || (!gu.is_zero() && valuation(gu, place) < k)) ++violations;
    }
  }
  v.require(violations == 0, std::to_string(violations) + " violations");
  v.detail = std::to_string(run.records.size()) + " solutions, " + std::to_string(checked_places) +
             " zeros of y outside S checked" + (v.detail.empty() ? "" : "; " + v.detail);
  return v;
}

Verdict criterion4(std::uint64_t seed) {
  Verdict v;
  const auto o = suite_cz(seed, 500);
  v.require(o.instances == 500 && o.violations == 0, "suite violations");
  const SSet S({Place::at(0), Place::infinity()});
  const RatFunc t = RatFunc::t();
  const auto r = cz_check(t, t * t, S);
  // a^2 b^-1 = 1: the bound is min(H(a)/|s|, H(b)/|r|) = min(1/1, 2/2) = 1.
  const bool witness = r.gcd_sum == 1 && r.holds && r.branch == CzBranch::dependent_mu_one && r.dependence &&
                       r.height_a / std::labs(r.dependence->s) == 1 && r.height_b / std::labs(r.dependence->r) == 1;
  v.require(witness, "(t, t^2) does not give gcd_sum = 1 = bound");
  v.detail = summary(o) + ", (t, t^2): gcd_sum " + std::to_string(r.gcd_sum) + " vs bound 1" +
             (v.detail.empty() ? "" : "; " + v.detail);
  return v;
}

Verdict criterion5(std::uint64_t seed) {
  Verdict v;
  const auto o = suite_zannier(seed, 500);
  v.require(o.instances == 500 && o.violations == 0, "suite violations");
  v.require(counter(o, "rejected") > 0, "no vanishing-subsum input exercised");
  const SSet S({Place::at(0), Place::infinity()});
  const auto r = zannier_check({RatFunc::t(), RatFunc(1)}, S);
  v.require(r.lhs == 1 && r.rhs == 1, "(t, 1) is not an equality case");
  std::vector<int> subset;
  bool rejected = false;
  try {
    zannier_check({RatFunc::t(), RatFunc(1), -RatFunc::t()}, S, &subset);
  } catch (const Error& e) {
    rejected = e.code() == Errc::degenerate_input && subset == std::vector<int>{0, 2};
  }
  v.require(rejected, "vanishing subsum not rejected with its subset");
  v.detail = summary(o) + ", (t, 1): " + std::to_string(r.lhs) + " = " + std::to_string(r.rhs) +
             (v.detail.empty() ? "" : "; " + v.detail);
  return v;
}

Verdict criterion6(std::uint64_t seed) {
  Verdict v;
  const auto o = suite_derivative_bound(seed, 500, 100);
  v.require(o.violations == 0, "suite violations");
  v.require(counter(o, "height_ok") == 500, "H(theta) <= chi_S fails");
  v.require(counter(o, "designation_invariant") == 100, "classification depends on designation");
  v.detail = summary(o) + (v.detail.empty() ? "" : "; " + v.detail);
  return v;
}

Verdict criterion7(std::uint64_t seed) {
  Verdict v;
  const auto o = suite_moduli(seed, 100, 200);
  v.require(o.violations == 0, "suite violations");
  v.require(counter(o, "closed_form") == 100, "coeff_to_moduli differs from 16/(lam^2 - 4)");
  v.require(counter(o, "orbit_invariant") == 200, "lambda' not invariant under the 8-element group");
  v.require(counter(o, "degenerate_detected") == 2, "normal crossing not detected at +-2");
  v.detail = summary(o) + (v.detail.empty() ? "" : "; " + v.detail);
  return v;
}

Verdict criterion8(std::uint64_t seed) {
  Verdict v;
  const auto o = suite_cover(seed, 50);
  v.require(o.violations == 0, "suite violations");
  v.require(counter(o, "genus_ok") == 40, "genus oracle");
  v.detail = summary(o) + (v.detail.empty() ? "" : "; " + v.detail);
  return v;
}

Verdict criterion9(std::uint64_t seed) {
  Verdict v;
  const auto o = suite_discriminant_bounds(seed, 200);
  v.require(o.instances == 200 && o.violations == 0, "height bound violations");
  v.detail = summary(o) + (v.detail.empty() ? "" : "; " + v.detail);
  return v;
}

Verdict criterion10() {
  Verdict v;
  const auto& run = criterion2_search();
  const std::string four = render_report(run.config, search(run.config, 4));
  v.require(four == run.report, "1-worker and 4-worker reports differ");
  std::istringstream in(run.report);
  const auto res = verify_report(in);
  v.require(res.ok, "verify rejects the report");
  // Mutate one field of one record.
  std::string mutated = run.report;
  const std::string needle = "\"chi_S\":2";
  const auto pos = mutated.find(needle, mutated.find('\n'));
  bool detected = false;
  if (pos != std::string::npos) {
    mutated.replace(pos, needle.size(), "\"chi_S\":3");
    std::istringstream min(mutated);
    const auto bad = verify_report(min);
    detected = !bad.ok && bad.problems.size() == 1 &&
               bad.problems[0].find("field 'chi_S' does not reproduce") != std::string::npos;
  }
  v.require(detected, "single-field mutation not detected");
  v.detail = std::to_string(run.report.size()) + " bytes, verify " + (res.ok ? "true" : "false") + " on " +
             std::to_string(res.records) + " records, mutation " + (detected ? "detected" : "missed") +
             (v.detail.empty() ? "" : "; " + v.detail);
  return v;
}

}  // namespace

int main() {
  const std::uint64_t seed = load_config(std::string(UNITFIELD_CONFIG_DIR) + "/search_t.json").seed;
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"identities", [&] { return criterion1(seed); }},
      {"trichotomy search", criterion2},
      {"divisibility", criterion3},
      {"Corvaja-Zannier", [&] { return criterion4(seed); }},
      {"Zannier", [&] { return criterion5(seed); }},
      {"derivative lemma", [&] { return criterion6(seed); }},
      {"moduli", [&] { return criterion7(seed); }},
      {"cover bounds", [&] { return criterion8(seed); }},
      {"discriminant heights", [&] { return criterion9(seed); }},
      {"determinism and replay", criterion10},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    const auto t0 = Clock::now();
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    failed += !v.pass;
    std::printf("criterion %zu (%s): %s [%.1f s] %s\n", i + 1, criteria[i].first.c_str(), v.pass ? "PASS" : "FAIL",
                seconds_since(t0), v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
