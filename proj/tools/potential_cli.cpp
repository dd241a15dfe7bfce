#include "potential/pipeline.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using namespace potential;

namespace {

struct Flags {
  std::string config;
  std::string out;
  std::string solution;
  std::string domain;
  std::string problem;
  std::optional<int> threads;
  std::optional<int> refine;
};

void add_flags(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config, "JSON run configuration");
  sub->add_option("--out", f.out, "Output directory (overrides output.dir)");
  sub->add_option("--threads", f.threads, "Worker threads (0 = runtime default)")->check(CLI::NonNegativeNumber);
  sub->add_option("--refine", f.refine, "Refinement steps applied to every resolution")->check(CLI::NonNegativeNumber);
  sub->add_option("--domain", f.domain, "Domain shorthand: sphere:<r> or ellipsoid:<a>,<b>,<c>");
  sub->add_option("--problem", f.problem, "Problem shorthand: exterior:c=<c> or interior:c=<c>,d=<d>");
}

RunConfig resolve_config(const Flags& f) {
  RunConfig cfg;
  if (!f.config.empty()) {
    if (!fs::exists(f.config)) throw ConfigError("configuration file not found: " + f.config);
    cfg = load_config(f.config);
  } else if (!f.domain.empty()) {
    Json j;
    j["domain"] = to_json(parse_domain_shorthand(f.domain));
    j["problem"] = to_json(f.problem.empty() ? ProblemSpec::exterior(1.0) : parse_problem_shorthand(f.problem));
    cfg = parse_config(j);
  } else {
    throw ConfigError("give --config <path> or --domain/--problem");
  }
  if (!f.config.empty() && (!f.domain.empty() || !f.problem.empty()))
    throw ConfigError("--domain/--problem cannot be combined with --config");
  if (!f.out.empty()) cfg.outDir = f.out;
  if (f.threads) cfg.threads = *f.threads;
  if (f.refine) cfg.refine = *f.refine;
  cfg.validate();
  return cfg;
}

HarmonicSolution obtain_solution(const RunConfig& cfg, const Flags& f) {
  if (!f.solution.empty()) {
    if (!fs::exists(f.solution)) throw ConfigError("solution file not found: " + f.solution);
    return load_solution(f.solution);
  }
  const HarmonicSolution sol = run_solve(cfg);
  std::printf("solved: fitResidual = %.3e, condition = %.3e\n", sol.fitResidual, sol.conditionEstimate);
  return sol;
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << text;
}

void write_level_sets(const RunConfig& cfg, const HarmonicSolution& sol) {
  const RunConfig eff = effective_config(cfg);
  std::vector<double> levels{cfg.problem.dirichlet};
  levels.insert(levels.end(), cfg.levels.begin(), cfg.levels.end());
  for (std::size_t i = 0; i < levels.size(); ++i) {
    try {
      const LevelSet ls = level_set_for(sol, levels[i], eff.resolution.order);
      std::ostringstream csv;
      write_level_set_csv(ls, csv);
      write_text(fs::path(cfg.outDir) / "levelsets" / ("level_" + std::to_string(i) + ".csv"), csv.str());
    } catch (const std::exception& e) {
      std::fprintf(stderr, "level %g not exported: %s\n", levels[i], e.what());
    }
  }
}

void write_identity_csvs(const RunConfig& cfg, const Json& identities) {
  std::ostringstream levels;
  write_identity_levels_csv(identities, levels);
  write_text(fs::path(cfg.outDir) / "identity_levels.csv", levels.str());
  std::ostringstream boundary;
  write_identity_boundary_csv(identities, boundary);
  write_text(fs::path(cfg.outDir) / "identity_boundary.csv", boundary.str());
}

void print_identities(const Json& doc) {
  for (const auto& w : doc.at("weights")) {
    if (w.contains("error")) {
      std::printf("identity %-12s error: %s\n", w["weight"]["kind"].get<std::string>().c_str(),
                  w["error"]["message"].get<std::string>().c_str());
    } else {
      std::printf("identity %-12s [%.4g, %.4g]  lhs %.10g  rhs %.10g  relResidual %.3e\n",
                  w["weight"]["kind"].get<std::string>().c_str(), w["a"].get<double>(), w["b"].get<double>(),
                  w["lhs"].get<double>(), w["rhs"].get<double>(), w["relResidual"].get<double>());
    }
  }
  const Json& p = doc.at("pointwise");
  std::printf("pointwise: max Bochner residual %.3e, max quasi-Einstein residual %.3e over %zu points\n",
              p["maxBochnerResidual"].get<double>(), p["maxQuasiEinsteinResidual"].get<double>(),
              p["samples"].size());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exterior and punctured interior potentials: solve, check overdetermining conditions, verify identities"};
  app.require_subcommand(1);
  Flags flags;

  auto* solve_cmd = app.add_subcommand("solve", "Solve the boundary value problem and write solution.json");
  auto* check_cmd = app.add_subcommand("check", "Evaluate the criteria battery and the symmetry certificate");
  auto* ident_cmd = app.add_subcommand("identities", "Weighted identities, Bochner and quasi-Einstein residuals");
  auto* cap_cmd = app.add_subcommand("capacity", "Capacity (exterior) or normalizing constants (interior)");
  auto* decay_cmd = app.add_subcommand("decay", "Far-field decay exponents of u, |Du| and |D2u|");
  auto* report_cmd = app.add_subcommand("report", "Full battery in one report.json");
  for (auto* sub : {solve_cmd, check_cmd, ident_cmd, cap_cmd, decay_cmd, report_cmd}) add_flags(sub, flags);
  for (auto* sub : {check_cmd, ident_cmd, cap_cmd, decay_cmd, report_cmd})
    sub->add_option("--solution", flags.solution, "Reuse a solution file instead of solving");

  CLI11_PARSE(app, argc, argv);

  try {
    const RunConfig cfg = resolve_config(flags);
    const fs::path out(cfg.outDir);
    if (solve_cmd->parsed()) {
      const HarmonicSolution sol = run_solve(cfg);
      save_solution(sol, out / "solution.json");
      std::printf("fitResidual = %.6e\nconditionEstimate = %.6e\nrank = %lld\nwrote %s\n", sol.fitResidual,
                  sol.conditionEstimate, static_cast<long long>(sol.rank), (out / "solution.json").string().c_str());
    } else if (check_cmd->parsed()) {
      const HarmonicSolution sol = obtain_solution(cfg, flags);
      const Json doc = run_check(cfg, sol);
      write_json(doc, out / "check.json");
      write_level_sets(cfg, sol);
      std::fputs(summary_table(doc).c_str(), stdout);
    } else if (ident_cmd->parsed()) {
      const HarmonicSolution sol = obtain_solution(cfg, flags);
      const Json doc = run_identities(cfg, sol);
      write_json(doc, out / "identities.json");
      write_identity_csvs(cfg, doc);
      print_identities(doc);
    } else if (cap_cmd->parsed()) {
      const HarmonicSolution sol = obtain_solution(cfg, flags);
      const Json doc = run_capacity(cfg, sol);
      write_json(doc, out / "capacity.json");
      if (doc.contains("capacity"))
        std::printf("capacity = %.12g (cross-check %.12g at c = %g)\n", doc["capacity"]["value"].get<double>(),
                    doc["capacity"]["crossCheck"].get<double>(), doc["capacity"]["crossCheckLevel"].get<double>());
      else
        std::printf("c1 = %.12g, c1 (limit) = %.12g, c2 = %.12g\n", doc["interiorConstants"]["c1"].get<double>(),
                    doc["interiorConstants"]["c1Limit"].get<double>(), doc["interiorConstants"]["c2"].get<double>());
    } else if (decay_cmd->parsed()) {
      const HarmonicSolution sol = obtain_solution(cfg, flags);
      const Json doc = run_decay(cfg, sol);
      write_json(doc, out / "decay.json");
      std::printf("exponents: u %.6f, |Du| %.6f, |D2u| %.6f\n", doc["decay"]["fittedExponent"].get<double>(),
                  doc["decay"]["gradientExponent"].get<double>(), doc["decay"]["hessianExponent"].get<double>());
    } else if (report_cmd->parsed()) {
      const HarmonicSolution sol = obtain_solution(cfg, flags);
      const Json doc = run_report(cfg, sol);
      write_json(doc, out / "report.json");
      write_identity_csvs(cfg, doc["identities"]);
      std::fputs(summary_table(doc["check"]).c_str(), stdout);
      print_identities(doc["identities"]);
    }
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const SolverFailure& e) {
    std::fprintf(stderr, "solver failure: %s (condition estimate %.3e)\n", e.what(), e.condition);
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error (%s): %s\n", error_type(e).c_str(), e.what());
    return 1;
  }
  return 0;
}
