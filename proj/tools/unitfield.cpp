// Command-line front end: search, suites, classify, moduli, cover, verify.

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "unitfield/unitfield.hpp"

namespace {

using namespace unitfield;

enum Exit { kClean = 0, kViolations = 1, kUsage = 2, kIo = 3 };

int exit_code(Errc e) {
  switch (e) {
    case Errc::io: return kIo;
    case Errc::zero_function:
    case Errc::domain: return kViolations;
    default: return kUsage;
  }
}

UnitEquationInstance instance_from_cli(const SearchConfig& cfg, const std::string& u1, const std::string& u2,
                                       const std::string& y) {
  return make_instance(cfg.sset(), cfg.lam, parse_expr(u1), parse_expr(u2), parse_expr(y), cfg.strict);
}

Json cover_json(const CoverBoundReport& r, const DiscriminantReport& d) {
  Json specs = Json::array();
  for (const auto& s : r.specs) specs.push_back(Json{{"d_sf", poly_json(s.d_sf)}, {"inf_ramified", s.inf_ramified}});
  Json U = Json::array();
  for (const auto& v : r.U) U.push_back(place_json(v));
  return Json{{"U", U},
              {"specs", specs},
              {"degree", r.degree},
              {"genus", r.genus},
              {"chi_U", r.chi_U},
              {"chi_S", r.chi_S},
              {"height_lam", r.height_lam},
              {"bound", r.bound},
              {"bound_estimate", r.bound_estimate},
              {"degenerate", r.degenerate},
              {"holds", r.holds},
              {"disc_F", ratfunc_json(d.disc_F)},
              {"disc_G", ratfunc_json(d.disc_G)}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact checks for the unit equation y^2 = u1^2 + lam*u1 + u2 + 1 over Q(t)"};
  app.require_subcommand(1);

  std::string config_path, out_path, report_path, u1, u2, y, lambda_coeff;
  unsigned workers = 0;
  std::vector<std::string> suite_names;

  auto* search_cmd = app.add_subcommand("search", "enumerate solutions in the configured unit grid");
  search_cmd->add_option("--config", config_path)->required();
  search_cmd->add_option("--out", out_path)->required();
  search_cmd->add_option("--workers", workers, "worker threads (default: config value)");

  auto* suites_cmd = app.add_subcommand("suites", "run seeded property suites and print a manifest");
  suites_cmd->add_option("--config", config_path)->required();
  suites_cmd->add_option("--suite", suite_names, "suite to run; repeatable (default: config suites)");
  suites_cmd->add_option("--out", out_path, "write the manifest here instead of stdout");

  auto* classify_cmd = app.add_subcommand("classify", "classify one solution");
  auto* cover_cmd = app.add_subcommand("cover", "splitting cover and its Euler characteristic for one solution");
  for (auto* cmd : {classify_cmd, cover_cmd}) {
    cmd->add_option("--config", config_path)->required();
    cmd->add_option("--u1", u1)->required();
    cmd->add_option("--u2", u2)->required();
    cmd->add_option("--y", y)->required();
  }

  auto* moduli_cmd = app.add_subcommand("moduli", "lambda' of y^2 = x^2 + lam x z + z^2 with the lines z = 0, x = 0");
  moduli_cmd->add_option("--lambda-coeff", lambda_coeff)->required();

  auto* verify_cmd = app.add_subcommand("verify", "recompute every record of a search report");
  verify_cmd->add_option("--report", report_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kClean : kUsage;
  }

  try {
    if (*search_cmd) {
      SearchConfig cfg = load_config(config_path);
      if (workers) cfg.workers = workers;
      const auto records = search(cfg, cfg.workers);
      std::ofstream out(out_path, std::ios::binary);
      if (!out) throw Error(Errc::io, "cannot write '" + out_path + "'");
      out << render_report(cfg, records);
      if (!out) throw Error(Errc::io, "write to '" + out_path + "' failed");
      long bad = 0;
      for (const auto& r : records) bad += r.at("violations").empty() ? 0 : 1;
      std::cerr << records.size() << " solutions, " << bad << " with violations\n";
      return bad ? kViolations : kClean;
    }
    if (*suites_cmd) {
      SearchConfig cfg = load_config(config_path);
      std::vector<std::string> names = suite_names.empty() ? cfg.suites : suite_names;
      if (names.empty()) names = known_suites();
      for (const auto& n : names)
        if (std::find(known_suites().begin(), known_suites().end(), n) == known_suites().end())
          throw Error(Errc::config, "unknown suite '" + n + "'");
      const auto manifest = run_suites(cfg, names);
      const std::string text = manifest_json(manifest).dump(2) + "\n";
      if (out_path.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(out_path);
        if (!out || !(out << text)) throw Error(Errc::io, "cannot write '" + out_path + "'");
      }
      return manifest.violations() ? kViolations : kClean;
    }
    if (*classify_cmd) {
      const SearchConfig cfg = load_config(config_path);
      const auto inst = instance_from_cli(cfg, u1, u2, y);
      const Json rec = instance_record(inst, nullptr);
      std::cout << rec.dump(2) << "\n";
      return rec.at("violations").empty() ? kClean : kViolations;
    }
    if (*cover_cmd) {
      const SearchConfig cfg = load_config(config_path);
      const auto inst = instance_from_cli(cfg, u1, u2, y);
      validate(inst);
      const auto r = cover_bound_check(inst.units());
      std::cout << cover_json(r, discriminant_bounds(inst.units())).dump(2) << "\n";
      return r.degenerate || r.holds ? kClean : kViolations;
    }
    if (*moduli_cmd) {
      const Rat lam = parse_rat(lambda_coeff);
      const auto cfg = config_from_coeff(lam);
      Json j;
      j["lambda_coeff"] = rat_json(lam);
      j["normal_crossing"] = is_normal_crossing(cfg);
      if (is_normal_crossing(cfg)) {
        const Fourple f = intersection_fourple(cfg);
        Json pts = Json::array();
        for (const auto& p : f) pts.push_back(p.to_string());
        j["fourple"] = pts;
        j["cross_ratio"] = cross_ratio(f).to_string();
        j["lambda_prime"] = lambda_prime(f).to_string();
        j["closed_form"] = rat_json(Rat(16 / (lam * lam - 4)));
      }
      std::cout << j.dump(2) << "\n";
      return kClean;
    }
    if (*verify_cmd) {
      const auto res = verify_report_file(report_path);
      for (const auto& p : res.problems) std::cout << p << "\n";
      std::cout << (res.ok ? "OK" : "FAILED") << ": " << res.records << " records\n";
      return res.ok ? kClean : kViolations;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kViolations;
  }
  return kUsage;
}
