#pragma once

// Configuration, exhaustive search over a unit grid, per-solution report
// records, and replay verification.

#include <openssl/evp.h>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "unitfield/generate.hpp"
#include "unitfield/serialize.hpp"
#include "unitfield/vojta.hpp"

namespace unitfield {

inline constexpr const char* kArtifactVersion = "unitfield 1.0.0";
inline constexpr int kReportFormatVersion = 1;

inline const std::vector<std::string>& known_suites() {
  static const std::vector<std::string> names{"identities", "cz",          "zannier",             "derivative-bound",
                                              "moduli",     "cover",       "discriminant-bounds", "trichotomy",
                                              "lemma-ab"};
  return names;
}

struct SearchConfig {
  std::vector<Place> S;
  RatFunc lam;
  long exponent_bound = 1;
  std::vector<Rat> constant_pool;
  bool strict = true;
  std::uint64_t seed = 0;
  std::vector<std::string> suites;
  // Execution parameters; not part of the canonical config.
  unsigned workers = 1;
  std::uint64_t grid_cap = 10'000'000;

  SSet sset() const { return SSet(S); }
};

/// Canonical form: the fields that determine results, in fixed order.
inline Json config_json(const SearchConfig& c) {
  Json j;
  j["S"] = sset_json(c.sset());
  j["lam"] = ratfunc_json(c.lam);
  j["exponent_bound"] = c.exponent_bound;
  Json pool = Json::array();
  for (const auto& r : c.constant_pool) pool.push_back(rat_json(r));
  j["constant_pool"] = pool;
  j["strict"] = c.strict;
  j["seed"] = c.seed;
  j["suites"] = c.suites;
  return j;
}

inline std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw Error(Errc::io, "sha256 failed");
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return os.str();
}

inline std::string config_digest(const SearchConfig& c) { return sha256_hex(config_json(c).dump()); }

inline void validate_config(const SearchConfig& c) {
  if (c.exponent_bound < 1) throw Error(Errc::config, "exponent_bound must be >= 1");
  if (c.constant_pool.empty()) throw Error(Errc::config, "constant_pool must be nonempty");
  for (const auto& r : c.constant_pool)
    if (r == 0) throw Error(Errc::config, "constant_pool must not contain 0");
  std::set<Rat> seen(c.constant_pool.begin(), c.constant_pool.end());
  if (seen.size() != c.constant_pool.size()) throw Error(Errc::config, "constant_pool has repeated entries");
  for (const auto& s : c.suites)
    if (std::find(known_suites().begin(), known_suites().end(), s) == known_suites().end())
      throw Error(Errc::config, "unknown suite '" + s + "'");
  SSet S = c.sset();
  if (c.lam.is_constant()) throw Error(Errc::config, "lam must be non-constant");
  if (!is_s_unit(c.lam, S)) throw Error(Errc::config, "zeros and poles of lam must lie in S");
  if (c.strict && !is_s_unit(c.lam * c.lam - RatFunc(4), S))
    throw Error(Errc::config, "strict mode: zeros and poles of lam^2 - 4 must lie in S");
  if (c.workers == 0) throw Error(Errc::config, "workers must be >= 1");
}

inline SearchConfig parse_config(const Json& j) {
  static const std::set<std::string> allowed{"S",    "lam",    "exponent_bound", "constant_pool", "strict",
                                             "seed", "suites", "workers",        "grid_cap"};
  if (!j.is_object()) throw Error(Errc::config, "config must be a JSON object");
  for (const auto& [k, v] : j.items())
    if (!allowed.count(k)) throw Error(Errc::config, "unknown config field '" + k + "'");
  for (const char* k : {"S", "lam", "exponent_bound", "constant_pool"})
    if (!j.contains(k)) throw Error(Errc::config, std::string("missing config field '") + k + "'");
  SearchConfig c;
  try {
    for (const auto& p : j.at("S")) c.S.push_back(place_from_json(p));
    c.lam = ratfunc_from_json(j.at("lam"));
    c.exponent_bound = j.at("exponent_bound").get<long>();
    for (const auto& r : j.at("constant_pool")) c.constant_pool.push_back(rat_from_json(r));
    c.strict = j.value("strict", true);
    c.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("suites")) c.suites = j.at("suites").get<std::vector<std::string>>();
    c.workers = j.value("workers", 1U);
    c.grid_cap = j.value("grid_cap", std::uint64_t{10'000'000});
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::config, e.what());
  } catch (const Error& e) {
    throw Error(Errc::config, e.what());
  }
  try {
    validate_config(c);
  } catch (const Error& e) {
    if (e.code() == Errc::config) throw;
    throw Error(Errc::config, e.what());
  }
  return c;
}

inline SearchConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io, "cannot read config '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::config, "config '" + path + "': " + e.what());
  }
  return parse_config(j);
}

// ---------------------------------------------------------------------------
// The unit grid c * prod P_i^e_i, ordered by (constant index, exponent vector).

class UnitGrid {
 public:
  UnitGrid(SSet S, std::vector<Rat> pool, long bound)
      : S_(std::move(S)), pool_(std::move(pool)), bound_(bound), k_(S_.finite_places().size()) {
    exps_ = 1;
    for (std::size_t i = 0; i < k_; ++i) exps_ *= static_cast<std::uint64_t>(2 * bound_ + 1);
  }

  std::uint64_t size() const { return pool_.size() * exps_; }
  const Rat& constant(std::uint64_t idx) const { return pool_[idx / exps_]; }

  /// Lexicographic from (-b, ..., -b) to (b, ..., b).
  std::vector<long> exponents(std::uint64_t idx) const {
    std::uint64_t r = idx % exps_;
    std::vector<long> e(k_);
    for (std::size_t i = k_; i-- > 0;) {
      e[i] = static_cast<long>(r % static_cast<std::uint64_t>(2 * bound_ + 1)) - bound_;
      r /= static_cast<std::uint64_t>(2 * bound_ + 1);
    }
    return e;
  }

  RatFunc unit(std::uint64_t idx) const { return unit_from_exponents(S_, constant(idx), exponents(idx)); }
  const SSet& S() const { return S_; }

 private:
  SSet S_;
  std::vector<Rat> pool_;
  long bound_;
  std::size_t k_;
  std::uint64_t exps_ = 1;
};

namespace detail {

inline constexpr std::uint64_t kPrime = 2147483647ULL;

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) { return a * b % kPrime; }

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  b %= kPrime;
  while (e) {
    if (e & 1) r = mulmod(r, b);
    b = mulmod(b, b);
    e >>= 1;
  }
  return r;
}

inline std::uint64_t rat_mod(const Rat& r) {
  Int n = r.get_num() % Int(static_cast<unsigned long>(kPrime));
  if (n < 0) n += static_cast<unsigned long>(kPrime);
  unsigned long d = mpz_fdiv_ui(r.get_den().get_mpz_t(), kPrime);
  if (d == 0) throw Error(Errc::config, "denominator divisible by the filter prime");
  return mulmod(n.get_ui(), powmod(d, kPrime - 2));
}

inline std::uint64_t poly_mod(const Poly& p, std::uint64_t x) {
  std::uint64_t r = 0;
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) r = (mulmod(r, x) + rat_mod(*it)) % kPrime;
  return r;
}

/// Values of every grid unit and of lam at a few points, modulo a prime.
/// The right-hand side is c * y^2, so all its nonzero values are in one
/// square class; a pair with values in two classes is not a solution.
class ModularFilter {
 public:
  static constexpr int kPoints = 16;

  ModularFilter(const UnitGrid& grid, const RatFunc& lam) {
    const auto finite = grid.S().finite_places();
    for (std::uint64_t x = 2; points_.size() < kPoints; ++x) {
      bool ok = poly_mod(lam.den(), x) != 0;
      for (const auto& v : finite) ok = ok && poly_mod(v.min_poly(), x) != 0;
      if (ok) points_.push_back(x);
    }
    for (std::uint64_t x : points_) lam_.push_back(mulmod(poly_mod(lam.num(), x), powmod(poly_mod(lam.den(), x), kPrime - 2)));
    std::vector<std::vector<std::uint64_t>> place_vals(finite.size());
    std::vector<std::vector<std::uint64_t>> place_inv(finite.size());
    for (std::size_t i = 0; i < finite.size(); ++i)
      for (std::uint64_t x : points_) {
        std::uint64_t v = poly_mod(finite[i].min_poly(), x);
        place_vals[i].push_back(v);
        place_inv[i].push_back(powmod(v, kPrime - 2));
      }
    values_.resize(grid.size() * kPoints);
    for (std::uint64_t idx = 0; idx < grid.size(); ++idx) {
      const auto e = grid.exponents(idx);
      const std::uint64_t c = rat_mod(grid.constant(idx));
      for (int j = 0; j < kPoints; ++j) {
        std::uint64_t v = c;
        for (std::size_t i = 0; i < finite.size(); ++i) {
          std::uint64_t base = e[i] >= 0 ? place_vals[i][static_cast<std::size_t>(j)] : place_inv[i][static_cast<std::size_t>(j)];
          v = mulmod(v, powmod(base, static_cast<std::uint64_t>(std::labs(e[i]))));
        }
        values_[idx * kPoints + static_cast<std::uint64_t>(j)] = v;
      }
    }
  }

  bool may_be_square_class(std::uint64_t i1, std::uint64_t i2) const {
    std::uint64_t ref = 0;
    for (int j = 0; j < kPoints; ++j) {
      const std::uint64_t a = values_[i1 * kPoints + static_cast<std::uint64_t>(j)];
      const std::uint64_t b = values_[i2 * kPoints + static_cast<std::uint64_t>(j)];
      const std::uint64_t r = (mulmod(a, a) + mulmod(lam_[static_cast<std::size_t>(j)], a) + b + 1) % kPrime;
      if (r == 0) continue;
      if (ref == 0) {
        ref = r;
        continue;
      }
      if (powmod(mulmod(r, ref), (kPrime - 1) / 2) != 1) return false;
    }
    return true;
  }

 private:
  std::vector<std::uint64_t> points_;
  std::vector<std::uint64_t> lam_;
  std::vector<std::uint64_t> values_;
};

}  // namespace detail

/// y with y_scale * y^2 = u1^2 + lam u1 + u2 + 1, or nullopt.
inline std::optional<std::pair<RatFunc, Rat>> solve_for_y(const RatFunc& lam, const RatFunc& u1, const RatFunc& u2) {
  RatFunc rhs = equation_rhs(lam, u1, u2);
  if (rhs.is_zero()) return std::make_pair(RatFunc(), Rat(1));
  auto sq = sqrt_up_to_constant(rhs);
  if (!sq) return std::nullopt;
  return std::make_pair(sq->root, sq->constant);
}

// ---------------------------------------------------------------------------
// Report records.

inline Json finding_codes(const std::vector<Finding>& fs) {
  std::set<std::string> codes;
  for (const auto& f : fs) codes.insert(f.code);
  Json a = Json::array();
  for (const auto& c : codes) a.push_back(c);
  return a;
}

inline Json classification_json(const Classification& c) {
  Json j;
  if (c.subsum) {
    Json names = Json::array();
    for (int i : *c.subsum) names.push_back(term_names()[static_cast<std::size_t>(i)]);
    j["i"] = names;
  } else {
    j["i"] = nullptr;
  }
  if (c.dependence) {
    j["ii"] = Json{{"r", c.dependence->r}, {"s", c.dependence->s}, {"mu", rat_json(c.dependence->mu)}};
  } else {
    j["ii"] = nullptr;
  }
  if (c.bounded) {
    j["iii"] = Json{{"bound", c.bounded->bound.get_str()}, {"h1", c.bounded->h1}, {"h2", c.bounded->h2},
                    {"slack", rat_json(c.bounded->slack)}};
  } else {
    j["iii"] = nullptr;
  }
  return j;
}

/// Everything computed for one solution, in stable field order. Violations
/// list failed proven inequalities; findings list disagreements with printed
/// formulas and constants.
inline Json instance_record(const UnitEquationInstance& inst, const Json& key) {
  const Classification cls = classify(inst);
  const UnitData d = inst.units();
  const auto div = divisibility_check(inst);
  const auto fcheck = check_F(d);
  const auto gcheck = check_G(d);
  const auto disc = discriminant_bounds(d);
  const auto cover = cover_bound_check(d);
  const auto ab = lemma_ab_chain(inst);
  const auto deg = degree_bound(inst);

  std::vector<Finding> findings = cls.findings;
  for (const auto* fc : {&fcheck, &gcheck})
    if (fc->finding) findings.push_back(*fc->finding);
  findings.insert(findings.end(), disc.findings.begin(), disc.findings.end());
  findings.insert(findings.end(), ab.findings.begin(), ab.findings.end());
  findings.insert(findings.end(), deg.findings.begin(), deg.findings.end());

  std::vector<std::string> violations;
  if (cls.empty()) violations.push_back("unclassified");
  if (!div.ok) violations.push_back("divisibility-" + div.which);
  if (!disc.ok_F) violations.push_back("discriminant-F-height");
  if (!disc.ok_G) violations.push_back("discriminant-G-height");
  if (!cover.degenerate && !cover.holds) violations.push_back("cover-bound");
  if (!ab.units_ok) violations.push_back("ab-units");
  if (!ab.vy_up) violations.push_back("vy-up");
  if (!ab.hab) violations.push_back("hab");
  if (!ab.vy_down_sound) violations.push_back("vy-down");
  if (!ab.vab_sound) violations.push_back("vab");
  if (!deg.holds) violations.push_back("degree-bound");

  Json r;
  r["key"] = key;
  r["u1"] = expr_string(inst.u1);
  r["u2"] = expr_string(inst.u2);
  r["y"] = expr_string(inst.y);
  r["y_scale"] = rat_json(inst.y_scale);
  r["cases"] = classification_json(cls);
  r["heights"] = Json{{"u1", height(inst.u1)}, {"u2", height(inst.u2)}, {"y", height_or_zero(inst.y)},
                      {"lam", height(inst.lam)}};
  r["chi_S"] = euler_char(inst.S);
  r["divisibility"] = Json{{"ok", div.ok},
                           {"which", div.which},
                           {"witness", div.witness ? place_json(*div.witness) : Json(nullptr)}};
  r["resultants"] = Json{{"F_sign", fcheck.sign}, {"G_sign", gcheck.sign}};
  r["discriminants"] = Json{{"height_F", disc.height_F},
                            {"bound_F", disc.bound_F},
                            {"height_G", disc.height_G},
                            {"bound_G", disc.bound_G}};
  r["cover"] = Json{{"degenerate", cover.degenerate}, {"degree", cover.degree}, {"genus", cover.genus},
                    {"chi_U", cover.chi_U},           {"bound", cover.bound},   {"bound_estimate", cover.bound_estimate},
                    {"holds", cover.holds}};
  r["lemma_ab"] = Json{{"regime", ab_regime_name(ab.regime)}, {"chosen", ab.chosen}, {"y_zeros", ab.y_zeros},
                       {"chi_U", ab.chi_U},       {"vy_up", ab.vy_up},     {"hab", ab.hab},
                       {"vy_down_sound", ab.vy_down_sound}, {"vab_sound", ab.vab_sound}};
  r["degree"] = Json{{"value", deg.degree_bound}, {"limit", deg.limit.get_str()}, {"holds", deg.holds},
                     {"dependent_claim", deg.dependent_claim}};
  r["findings"] = finding_codes(findings);
  r["violations"] = violations;
  return r;
}

/// Grid-search context shared by search and verify.
struct SearchContext {
  SearchConfig config;
  SSet S;
  UnitGrid grid;

  explicit SearchContext(SearchConfig c)
      : config(std::move(c)), S(config.sset()), grid(S, config.constant_pool, config.exponent_bound) {}

  Json key(std::uint64_t i, std::uint64_t j) const {
    return Json{{"c1", rat_json(grid.constant(i))},
                {"e1", grid.exponents(i)},
                {"c2", rat_json(grid.constant(j))},
                {"e2", grid.exponents(j)}};
  }

  /// The record for grid pair (i, j), if it is a solution.
  std::optional<Json> record(std::uint64_t i, std::uint64_t j) const {
    RatFunc u1 = grid.unit(i);
    RatFunc u2 = grid.unit(j);
    auto y = solve_for_y(config.lam, u1, u2);
    if (!y) return std::nullopt;
    UnitEquationInstance inst{S, config.lam, u1, u2, y->first, y->second, config.strict};
    return instance_record(inst, key(i, j));
  }
};

inline Json report_header(const SearchConfig& c) {
  Json h;
  h["format"] = "unitfield-report";
  h["version"] = kReportFormatVersion;
  h["artifact"] = kArtifactVersion;
  h["config"] = config_json(c);
  h["config_digest"] = config_digest(c);
  return h;
}

inline std::uint64_t grid_pairs(const SearchConfig& c) {
  UnitGrid g(c.sset(), c.constant_pool, c.exponent_bound);
  return g.size() * g.size();
}

/// All solutions in the grid as report records, in (c1, e1, c2, e2) order.
/// Workers take contiguous ranges of u1 indices; the output does not depend
/// on their number.
inline std::vector<Json> search(const SearchConfig& config, unsigned workers) {
  validate_config(config);
  const std::uint64_t pairs = grid_pairs(config);
  if (pairs > config.grid_cap)
    throw Error(Errc::grid_too_large,
                std::to_string(pairs) + " candidate pairs exceed the cap of " + std::to_string(config.grid_cap));
  const SearchContext ctx(config);
  const detail::ModularFilter filter(ctx.grid, config.lam);
  const std::uint64_t n = ctx.grid.size();
  workers = std::max(1U, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::uint64_t>(n, 1))));
  std::vector<std::vector<Json>> parts(workers);
  std::vector<std::string> errors(workers);
  auto run = [&](unsigned w) {
    try {
      const std::uint64_t lo = n * w / workers, hi = n * (w + 1) / workers;
      for (std::uint64_t i = lo; i < hi; ++i)
        for (std::uint64_t j = 0; j < n; ++j)
          if (filter.may_be_square_class(i, j))
            if (auto rec = ctx.record(i, j)) parts[w].push_back(std::move(*rec));
    } catch (const std::exception& e) {
      errors[w] = e.what();
    }
  };
  std::vector<std::thread> threads;
  for (unsigned w = 1; w < workers; ++w) threads.emplace_back(run, w);
  run(0);
  for (auto& t : threads) t.join();
  for (const auto& e : errors)
    if (!e.empty()) throw Error(Errc::domain, "search worker failed: " + e);
  std::vector<Json> out;
  for (auto& p : parts)
    for (auto& r : p) out.push_back(std::move(r));
  return out;
}

inline std::string render_report(const SearchConfig& config, const std::vector<Json>& records) {
  std::string out = report_header(config).dump() + "\n";
  for (const auto& r : records) out += r.dump() + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Replay.

struct VerifyResult {
  bool ok = true;
  long records = 0;
  std::vector<std::string> problems;  ///< "line N: ..."
};

namespace detail {
inline std::string first_difference(const Json& expected, const Json& actual) {
  if (!expected.is_object() || !actual.is_object()) return "record";
  for (const auto& [k, v] : expected.items()) {
    if (!actual.contains(k)) return k + " (missing)";
    if (actual.at(k) != v) return k;
  }
  for (const auto& [k, v] : actual.items())
    if (!expected.contains(k)) return k + " (unexpected)";
  return "field order or formatting";
}
}  // namespace detail

inline VerifyResult verify_report(std::istream& in) {
  VerifyResult res;
  std::string line;
  if (!std::getline(in, line)) {
    res.ok = false;
    res.problems.push_back("line 1: missing header");
    return res;
  }
  Json header;
  try {
    header = Json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::parse, std::string("line 1: ") + e.what());
  }
  if (header.value("format", "") != "unitfield-report" || header.value("version", 0) != kReportFormatVersion)
    throw Error(Errc::parse, "line 1: not a version " + std::to_string(kReportFormatVersion) + " unitfield report");
  SearchConfig config = parse_config(header.at("config"));
  if (header.value("config_digest", "") != config_digest(config)) {
    res.ok = false;
    res.problems.push_back("line 1: config digest does not match the config");
  }
  const SearchContext ctx(config);
  std::map<std::string, std::uint64_t> index;
  for (std::uint64_t idx = 0; idx < ctx.grid.size(); ++idx)
    index.emplace(rat_json(ctx.grid.constant(idx)).dump() + Json(ctx.grid.exponents(idx)).dump(), idx);
  long lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    ++res.records;
    Json rec;
    try {
      rec = Json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw Error(Errc::parse, "line " + std::to_string(lineno) + ": " + e.what());
    }
    auto fail = [&](const std::string& why) {
      res.ok = false;
      res.problems.push_back("line " + std::to_string(lineno) + ": " + why);
    };
    if (!rec.is_object() || !rec.contains("key")) {
      fail("record without key");
      continue;
    }
    // Locate the grid pair named by the key.
    std::optional<std::uint64_t> i, j;
    try {
      const Json& key = rec.at("key");
      auto find = [&](const Json& c, const Json& e) -> std::optional<std::uint64_t> {
        auto it = index.find(c.dump() + e.dump());
        if (it == index.end()) return std::nullopt;
        return it->second;
      };
      i = find(key.at("c1"), key.at("e1"));
      j = find(key.at("c2"), key.at("e2"));
    } catch (const nlohmann::json::exception&) {
      fail("malformed key");
      continue;
    }
    if (!i || !j) {
      fail("key outside the configured grid");
      continue;
    }
    auto expected = ctx.record(*i, *j);
    if (!expected) {
      fail("key is not a solution");
      continue;
    }
    if (expected->dump() != line) fail("field '" + detail::first_difference(*expected, rec) + "' does not reproduce");
  }
  return res;
}

inline VerifyResult verify_report_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io, "cannot read report '" + path + "'");
  return verify_report(in);
}

}  // namespace unitfield
