#include "potential/pipeline.hpp"

#include "potential/conformal.hpp"
#include "potential/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>
#include <sstream>

namespace potential {

std::string error_type(const std::exception& e) {
  if (dynamic_cast<const IrregularLevelSetError*>(&e)) return "IrregularLevelSetError";
  if (dynamic_cast<const NonStarShapedLevelSetError*>(&e)) return "NonStarShapedLevelSetError";
  if (dynamic_cast<const SolverFailure*>(&e)) return "SolverFailure";
  if (dynamic_cast<const CutoffError*>(&e)) return "CutoffError";
  if (dynamic_cast<const ConsistencyError*>(&e)) return "ConsistencyError";
  if (dynamic_cast<const OutOfRegionError*>(&e)) return "OutOfRegionError";
  if (dynamic_cast<const InsufficientSamplesError*>(&e)) return "InsufficientSamplesError";
  if (dynamic_cast<const InvalidDomainError*>(&e)) return "InvalidDomainError";
  if (dynamic_cast<const ConfigError*>(&e)) return "ConfigError";
  if (dynamic_cast<const PreconditionError*>(&e)) return "PreconditionError";
  if (dynamic_cast<const DomainError*>(&e)) return "DomainError";
  return "Error";
}

namespace {

Json error_json(const std::exception& e) { return {{"type", error_type(e)}, {"message", e.what()}}; }

Json solution_summary(const HarmonicSolution& sol) {
  return {{"fitResidual", sol.fitResidual},
          {"conditionEstimate", sol.conditionEstimate},
          {"rank", sol.rank},
          {"sources", sol.sources.rows()},
          {"sourceFactor", sol.sourceFactor}};
}

Json header(const RunConfig& cfg, const HarmonicSolution& sol) {
  Json j;
  j["schemaVersion"] = kSchemaVersion;
  j["domain"] = to_json(cfg.domain);
  j["problem"] = to_json(cfg.problem);
  j["solution"] = solution_summary(sol);
  return j;
}

void require_matching(const RunConfig& cfg, const HarmonicSolution& sol) {
  if (sol.problem.kind != cfg.problem.kind || sol.problem.dirichlet != cfg.problem.dirichlet ||
      sol.problem.flux != cfg.problem.flux)
    throw ConfigError("solution file was computed for a different problem than the configuration");
}

// Deterministic uniform in [0, 1) from the top 53 bits.
double uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::vector<Vec3> sample_points(const HarmonicSolution& sol, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Vec3> out;
  for (int i = 0; i < count; ++i) {
    const double z = 2.0 * uniform(rng) - 1.0;
    const double phi = 2.0 * kPi * uniform(rng);
    const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
    const Vec3 w(s * std::cos(phi), s * std::sin(phi), z);
    const double rb = sol.domain.ray_boundary_radius(w);
    const double t = uniform(rng);
    const double r = sol.problem.is_interior() ? rb * (0.2 + 0.7 * t) : rb * (1.1 + 1.9 * t);
    out.push_back(r * w);
  }
  return out;
}

std::vector<double> with_boundary(const RunConfig& cfg) {
  std::vector<double> out{cfg.problem.dirichlet};
  for (double c : cfg.levels)
    if (c != cfg.problem.dirichlet) out.push_back(c);
  return out;
}

}  // namespace

RunConfig effective_config(const RunConfig& cfg) {
  RunConfig out = cfg;
  for (int s = 0; s < cfg.refine; ++s) {
    out.resolution.order = (3 * out.resolution.order + 1) / 2;
    out.resolution.coareaLevels *= 2;
  }
  out.identityResolution = refined(cfg.identityResolution, cfg.refine);
  return out;
}

HarmonicSolution run_solve(const RunConfig& cfg) {
  cfg.validate();
  if (cfg.threads > 0) set_thread_count(cfg.threads);
  const SurfaceQuadrature quad = build_quadrature(cfg.domain, cfg.quadratureOrder);
  return solve(cfg.domain, quad, cfg.problem, cfg.solver);
}

Json run_check(const RunConfig& base, const HarmonicSolution& sol) {
  const RunConfig cfg = effective_config(base);
  cfg.validate();
  require_matching(cfg, sol);
  if (cfg.threads > 0) set_thread_count(cfg.threads);
  const std::vector<std::string> ids = cfg.criteria.value_or(applicable_criteria(cfg.problem.kind));
  const CriteriaOptions& opts = cfg.resolution;

  Json doc = header(cfg, sol);
  doc["resolution"] = {{"order", opts.order}, {"coareaLevels", opts.coareaLevels}};
  Json entries = Json::array();
  const auto record = [&](const std::string& id, std::optional<double> level, const auto& fn) {
    try {
      Json e = to_json(fn());
      if (level) e["level"] = *level;
      entries.push_back(e);
    } catch (const std::exception& ex) {
      Json e{{"criterionId", id}};
      if (level) e["level"] = *level;
      e["error"] = error_json(ex);
      entries.push_back(e);
    }
  };

  for (const auto& id : ids) {
    if (id == criterion_id::kT11) {
      for (double c : with_boundary(cfg)) record(id, c, [&] { return check_T11(sol, c, opts); });
    } else if (id == criterion_id::kC12) {
      record(id, std::nullopt, [&] { return check_C12(sol, opts); });
    } else if (id == criterion_id::kC13) {
      record(id, std::nullopt, [&] { return check_C13(sol, opts); });
    } else if (id == criterion_id::kC14) {
      for (double c : with_boundary(cfg))
        record(id, c, [&] { return check_pointwise(sol, c, PointwiseDirection::AtMost, opts); });
    } else if (id == criterion_id::kT15) {
      for (double c : with_boundary(cfg)) record(id, c, [&] { return check_neumann(sol, c, opts); });
    } else if (id == criterion_id::kT16) {
      record(id, std::nullopt, [&] { return check_T16(sol, opts); });
    } else if (id == criterion_id::kC17) {
      const double c = cfg.problem.dirichlet;
      record(id, c, [&] { return check_pointwise(sol, c, PointwiseDirection::AtLeast, opts); });
    } else if (id == criterion_id::kT18) {
      record(id, std::nullopt, [&] { return check_neumann(sol, std::nullopt, opts); });
    } else if (id == criterion_id::kT19) {
      const auto [a, b] = cfg.twoBoundary.value_or(default_two_boundary(cfg.problem));
      record(id, std::nullopt, [&] { return check_T19(sol, a, b, opts); });
    }
  }
  doc["criteria"] = entries;

  try {
    doc["certificate"] = to_json(symmetry_certificate(sol, cfg.levels, opts.order));
  } catch (const std::exception& ex) {
    doc["certificate"] = {{"granted", false}, {"error", error_json(ex)}};
  }
  try {
    if (sol.problem.is_interior()) doc["interiorConstants"] = to_json(interior_constants(sol, opts.order));
    else doc["capacity"] = to_json(capacity_report(sol, opts.order));
  } catch (const std::exception& ex) {
    doc[sol.problem.is_interior() ? "interiorConstants" : "capacity"] = {{"error", error_json(ex)}};
  }
  return doc;
}

Json run_identities(const RunConfig& base, const HarmonicSolution& sol) {
  const RunConfig cfg = effective_config(base);
  cfg.validate();
  require_matching(cfg, sol);
  if (cfg.threads > 0) set_thread_count(cfg.threads);
  Json doc = header(cfg, sol);
  doc["resolution"] = {{"levels", cfg.identityResolution.levels}, {"order", cfg.identityResolution.order}};

  Json weights = Json::array();
  for (const auto& chk : cfg.identityChecks.value_or(default_identity_checks(cfg.problem))) {
    try {
      weights.push_back(to_json(weighted_identity_check(sol, chk.weight, chk.a, chk.b, cfg.identityResolution)));
    } catch (const std::exception& ex) {
      weights.push_back({{"weight", to_json(chk.weight)}, {"a", chk.a}, {"b", chk.b}, {"error", error_json(ex)}});
    }
  }
  doc["weights"] = weights;

  Json samples = Json::array();
  double max_bochner = 0.0;
  double max_tensor = 0.0;
  double max_scalar = 0.0;
  for (const Vec3& x : sample_points(sol, cfg.bochnerSamples, cfg.sampleSeed)) {
    const BochnerResidual b = bochner_residual(sol, x);
    const QuasiEinsteinResidual<double> q = quasi_einstein_residual(sol, x);
    max_bochner = std::max(max_bochner, b.residual);
    max_tensor = std::max(max_tensor, q.tensorResidualNorm);
    max_scalar = std::max(max_scalar, q.scalarCurvatureResidual);
    samples.push_back({{"point", {x.x(), x.y(), x.z()}},
                       {"bochner", to_json(b)},
                       {"quasiEinsteinResidual", q.tensorResidualNorm},
                       {"scalarCurvatureResidual", q.scalarCurvatureResidual}});
  }
  doc["pointwise"] = {{"seed", cfg.sampleSeed},
                      {"maxBochnerResidual", max_bochner},
                      {"maxQuasiEinsteinResidual", max_tensor},
                      {"maxScalarCurvatureResidual", max_scalar},
                      {"samples", samples}};

  if (!sol.problem.is_interior()) {
    try {
      doc["truncatedWitness"] = to_json(truncated_identity_witness(sol, cfg.problem.dirichlet));
    } catch (const std::exception& ex) {
      doc["truncatedWitness"] = {{"error", error_json(ex)}};
    }
  } else {
    try {
      const auto [ci, ti] = cfg.interiorIdentity.value_or(default_interior_identity(cfg.problem));
      doc["interiorIdentity"] = to_json(interior_identity_check(sol, ci, ti, cfg.identityResolution));
    } catch (const std::exception& ex) {
      doc["interiorIdentity"] = {{"error", error_json(ex)}};
    }
    try {
      const LimitCheck lc = interior_limit_check(sol, cfg.problem.dirichlet + 50.0 * cfg.problem.flux,
                                                 cfg.identityResolution.order);
      doc["singularLimit"] = {{"level", lc.level},
                              {"numeric", lc.numeric},
                              {"closedForm", lc.closedForm},
                              {"relativeDifference", lc.relativeDifference}};
    } catch (const std::exception& ex) {
      doc["singularLimit"] = {{"error", error_json(ex)}};
    }
  }
  return doc;
}

Json run_capacity(const RunConfig& base, const HarmonicSolution& sol) {
  const RunConfig cfg = effective_config(base);
  cfg.validate();
  require_matching(cfg, sol);
  Json doc = header(cfg, sol);
  if (sol.problem.is_interior()) doc["interiorConstants"] = to_json(interior_constants(sol, cfg.resolution.order));
  else doc["capacity"] = to_json(capacity_report(sol, cfg.resolution.order));
  return doc;
}

Json run_decay(const RunConfig& base, const HarmonicSolution& sol) {
  const RunConfig cfg = effective_config(base);
  cfg.validate();
  require_matching(cfg, sol);
  if (sol.problem.is_interior()) throw ConfigError("decay applies to exterior problems only");
  Json doc = header(cfg, sol);
  doc["decay"] = to_json(decay_report(sol, cfg.decayRadii));
  return doc;
}

Json run_report(const RunConfig& cfg, const HarmonicSolution& sol) {
  Json doc = header(cfg, sol);
  doc["check"] = run_check(cfg, sol);
  doc["identities"] = run_identities(cfg, sol);
  if (!sol.problem.is_interior()) {
    try {
      doc["decay"] = run_decay(cfg, sol)["decay"];
    } catch (const std::exception& ex) {
      doc["decay"] = {{"error", error_json(ex)}};
    }
  }
  return doc;
}

namespace {

std::string fmt(const Json& v) {
  if (!v.is_number()) return "-";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v.get<double>());
  return buf;
}

}  // namespace

std::string summary_table(const Json& check) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof line, "%-24s %9s %13s %13s %13s %11s  %s\n", "criterion", "level", "lhs", "rhs",
                "margin", "error", "verdict");
  out << line;
  for (const auto& e : check.at("criteria")) {
    const std::string verdict =
        e.contains("error") ? "error: " + e["error"]["type"].get<std::string>() : e["verdict"].get<std::string>();
    std::snprintf(line, sizeof line, "%-24s %9s %13s %13s %13s %11s  %s\n", e["criterionId"].get<std::string>().c_str(),
                  fmt(e.value("level", Json())).c_str(), fmt(e.value("lhs", Json())).c_str(),
                  fmt(e.value("rhs", Json())).c_str(), fmt(e.value("margin", Json())).c_str(),
                  fmt(e.value("errorEstimate", Json())).c_str(), verdict.c_str());
    out << line;
  }
  const Json& cert = check.at("certificate");
  out << "symmetry certificate: " << (cert.value("granted", false) ? "granted" : "denied");
  if (cert.contains("pFunctionSpread"))
    out << " (P spread " << fmt(cert["pFunctionSpread"]) << ", equality residual " << fmt(cert["equalityResidual"])
        << ", inferred radius " << fmt(cert["inferredRadius"]) << ")";
  out << "\n";
  if (cert.contains("failing") && !cert["failing"].empty()) {
    out << "  failing:";
    for (const auto& f : cert["failing"]) out << " " << f.get<std::string>();
    out << "\n";
  }
  return out.str();
}

void write_identity_levels_csv(const Json& identities, std::ostream& out) {
  out << "weight,f,levelIntegral\n";
  char line[128];
  for (const auto& w : identities.at("weights")) {
    if (!w.contains("levelF")) continue;
    const std::string name = w["weight"]["kind"].get<std::string>();
    for (std::size_t i = 0; i < w["levelF"].size(); ++i) {
      std::snprintf(line, sizeof line, "%s,%.17g,%.17g\n", name.c_str(), w["levelF"][i].get<double>(),
                    w["levelIntegrals"][i].get<double>());
      out << line;
    }
  }
}

void write_identity_boundary_csv(const Json& identities, std::ostream& out) {
  out << "weight,side,f,b3,bh,firstIntegral\n";
  char line[160];
  for (const auto& w : identities.at("weights")) {
    if (!w.contains("atA")) continue;
    const std::string name = w["weight"]["kind"].get<std::string>();
    for (const char* side : {"a", "b"}) {
      const Json& t = w[side == std::string("a") ? "atA" : "atB"];
      const double fi = w[side == std::string("a") ? "firstIntegralAtA" : "firstIntegralAtB"].get<double>();
      std::snprintf(line, sizeof line, "%s,%s,%.17g,%.17g,%.17g,%.17g\n", name.c_str(), side,
                    t["f"].get<double>(), t["b3"].get<double>(), t["bh"].get<double>(), fi);
      out << line;
    }
  }
}

}  // namespace potential
