#include "potential/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace potential {

namespace {

Json vec_json(const Vec3& v) { return Json::array({v.x(), v.y(), v.z()}); }

Vec3 vec_from(const Json& j, const char* what) {
  if (!j.is_array() || j.size() != 3) throw ConfigError(std::string(what) + " must be an array of 3 numbers");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

template <typename T>
T get_or(const Json& j, const char* key, T fallback) {
  return j.contains(key) ? j.at(key).get<T>() : fallback;
}

const char* kind_name(DomainKind k) {
  switch (k) {
    case DomainKind::Sphere: return "sphere";
    case DomainKind::Ellipsoid: return "ellipsoid";
    case DomainKind::StarShaped: return "star";
  }
  return "sphere";
}

const char* placement_name(SourcePlacement p) { return p == SourcePlacement::Radial ? "radial" : "confocal"; }

SourcePlacement placement_from(const std::string& s) {
  if (s == "radial") return SourcePlacement::Radial;
  if (s == "confocal") return SourcePlacement::Confocal;
  throw ConfigError("unknown source placement '" + s + "'");
}

std::vector<double> split_numbers(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("cannot parse number '" + item + "' in " + what);
    }
  }
  return out;
}

}  // namespace

// --- domain / problem ----------------------------------------------------

Json to_json(const DomainSpec& d) {
  Json j;
  j["kind"] = kind_name(d.kind);
  switch (d.kind) {
    case DomainKind::Sphere: j["radius"] = d.radius; break;
    case DomainKind::Ellipsoid: j["axes"] = vec_json(d.axes); break;
    case DomainKind::StarShaped: {
      Json terms = Json::array();
      for (const auto& t : d.terms)
        terms.push_back({{"degree", t.degree}, {"order", t.order}, {"coefficient", t.coefficient}});
      j["terms"] = terms;
      j["maxDegree"] = d.maxDegree;
      j["rhoMin"] = d.rhoMin;
      break;
    }
  }
  j["center"] = vec_json(d.center);
  return j;
}

DomainSpec domain_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind")) throw ConfigError("domain needs a 'kind'");
  const std::string kind = j.at("kind").get<std::string>();
  const Vec3 center = j.contains("center") ? vec_from(j.at("center"), "domain.center") : Vec3::Zero();
  DomainSpec d;
  if (kind == "sphere") {
    d = DomainSpec::sphere(get_or(j, "radius", 1.0), center);
  } else if (kind == "ellipsoid") {
    if (!j.contains("axes")) throw ConfigError("ellipsoid domain needs 'axes'");
    const Vec3 a = vec_from(j.at("axes"), "domain.axes");
    d = DomainSpec::ellipsoid(a.x(), a.y(), a.z(), center);
  } else if (kind == "star") {
    std::vector<HarmonicTerm> terms;
    for (const auto& t : j.at("terms"))
      terms.push_back({t.at("degree").get<int>(), t.at("order").get<int>(), t.at("coefficient").get<double>()});
    d = DomainSpec::star_shaped(std::move(terms), get_or(j, "maxDegree", 8));
    d.rhoMin = get_or(j, "rhoMin", 1e-2);
    d.center = center;
  } else {
    throw ConfigError("unknown domain kind '" + kind + "'");
  }
  return d;
}

Json to_json(const ProblemSpec& p) {
  Json j;
  j["kind"] = p.is_interior() ? "interior" : "exterior";
  j["c"] = p.dirichlet;
  if (p.is_interior()) j["d"] = p.flux;
  return j;
}

ProblemSpec problem_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind")) throw ConfigError("problem needs a 'kind'");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "exterior") return ProblemSpec::exterior(get_or(j, "c", 1.0));
  if (kind == "interior") {
    if (!j.contains("d")) throw ConfigError("interior problem needs 'd'");
    return ProblemSpec::interior(get_or(j, "c", 0.0), j.at("d").get<double>());
  }
  throw ConfigError("unknown problem kind '" + kind + "'");
}

DomainSpec parse_domain_shorthand(const std::string& text) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const std::vector<double> v =
      colon == std::string::npos ? std::vector<double>{} : split_numbers(text.substr(colon + 1), "--domain");
  if (kind == "sphere") {
    if (v.size() > 1) throw ConfigError("--domain sphere takes one radius");
    return DomainSpec::sphere(v.empty() ? 1.0 : v[0]);
  }
  if (kind == "ellipsoid") {
    if (v.size() != 3) throw ConfigError("--domain ellipsoid takes three semi-axes");
    return DomainSpec::ellipsoid(v[0], v[1], v[2]);
  }
  throw ConfigError("--domain must be sphere:<r> or ellipsoid:<a>,<b>,<c>");
}

ProblemSpec parse_problem_shorthand(const std::string& text) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  double c = kind == "interior" ? 0.0 : 1.0;
  std::optional<double> d;
  if (colon != std::string::npos) {
    std::stringstream ss(text.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw ConfigError("--problem entries look like c=1 or d=1");
      const std::string key = item.substr(0, eq);
      const double value = split_numbers(item.substr(eq + 1), "--problem").at(0);
      if (key == "c") c = value;
      else if (key == "d") d = value;
      else throw ConfigError("unknown --problem key '" + key + "'");
    }
  }
  if (kind == "exterior") {
    if (d) throw ConfigError("exterior problems take no d");
    return ProblemSpec::exterior(c);
  }
  if (kind == "interior") {
    if (!d) throw ConfigError("interior problems need d");
    return ProblemSpec::interior(c, *d);
  }
  throw ConfigError("--problem must be exterior:c=<c> or interior:c=<c>,d=<d>");
}

Json to_json(const WeightSpec& w) {
  Json j;
  j["kind"] = w.name();
  if (w.kind == WeightKind::ShiftedLog) j["t"] = w.t;
  return j;
}

// --- run configuration ----------------------------------------------------

std::vector<std::string> applicable_criteria(ProblemKind kind) {
  if (kind == ProblemKind::Exterior)
    return {criterion_id::kT11, criterion_id::kC12, criterion_id::kC13, criterion_id::kC14, criterion_id::kT15,
            criterion_id::kT19};
  return {criterion_id::kT16, criterion_id::kC17, criterion_id::kT18, criterion_id::kT19};
}

std::vector<double> default_levels(const ProblemSpec& p) {
  if (p.is_interior()) return {p.dirichlet + 0.5 * p.flux, p.dirichlet + p.flux, p.dirichlet + 2.0 * p.flux};
  return {0.25 * p.dirichlet, 0.5 * p.dirichlet, 0.75 * p.dirichlet};
}

std::pair<double, double> default_two_boundary(const ProblemSpec& p) {
  if (p.is_interior()) return {p.dirichlet + 0.5 * p.flux, p.dirichlet + 2.0 * p.flux};
  return {0.3 * p.dirichlet, 0.7 * p.dirichlet};
}

std::vector<IdentityCheckSpec> default_identity_checks(const ProblemSpec& p) {
  if (p.is_interior()) return {};
  const double a = std::log(0.2 * p.dirichlet);
  const double b = std::log(0.8 * p.dirichlet);
  return {{WeightSpec::linear(), a, b}, {WeightSpec::shifted_log(p.dirichlet), a, b}};
}

std::pair<double, double> default_interior_identity(const ProblemSpec& p) {
  return {std::max(p.dirichlet, 0.0) + 0.5 * p.flux, std::max(p.dirichlet, 0.0) + 4.0 * p.flux};
}

std::vector<double> default_decay_radii(const DomainSpec& domain) {
  const double r = 5.0 * domain.enclosing_radius();
  return {r, 2.0 * r, 4.0 * r, 7.0 * r, 10.0 * r};
}

void RunConfig::validate() const {
  try {
    domain.validate();
  } catch (const InvalidDomainError& e) {
    throw ConfigError(std::string("invalid domain: ") + e.what());
  }
  if (problem.is_interior()) {
    if (!(problem.flux > 0.0)) throw ConfigError("interior problem needs d > 0");
  } else if (!(problem.dirichlet > 0.0)) {
    throw ConfigError("exterior problem needs c > 0");
  }
  if (quadratureOrder < kMinQuadratureOrder) throw ConfigError("quadrature order is too small");
  if (solver.sourceOrder < 2) throw ConfigError("source order is too small");
  if (resolution.order < kMinQuadratureOrder) throw ConfigError("criteria order is too small");
  if (resolution.coareaLevels < 16) throw ConfigError("coarea integration needs at least 16 levels");
  if (threads < 0) throw ConfigError("threads must be >= 0");
  if (refine < 0) throw ConfigError("refine must be >= 0");

  const double c = problem.dirichlet;
  for (double level : levels) {
    const bool ok = problem.is_interior() ? level >= c : (level > 0.0 && level <= c);
    if (!ok) {
      std::ostringstream msg;
      msg << "level " << level << " is outside the range of u";
      throw ConfigError(msg.str());
    }
  }

  if (criteria) {
    const std::vector<std::string> allowed = applicable_criteria(problem.kind);
    const std::vector<std::string> every = [] {
      auto e = applicable_criteria(ProblemKind::Exterior);
      for (auto& id : applicable_criteria(ProblemKind::Interior))
        if (std::find(e.begin(), e.end(), id) == e.end()) e.push_back(id);
      return e;
    }();
    for (const auto& id : *criteria) {
      if (std::find(every.begin(), every.end(), id) == every.end())
        throw ConfigError("unknown criterion '" + id + "'");
      if (std::find(allowed.begin(), allowed.end(), id) == allowed.end())
        throw ConfigError("criterion '" + id + "' does not apply to " +
                          (problem.is_interior() ? std::string("interior") : std::string("exterior")) + " problems");
    }
  }

  if (twoBoundary) {
    const auto [a, b] = *twoBoundary;
    if (!(a > 0.0 && a < b)) throw ConfigError("twoBoundary needs 0 < a < b");
  }

  if (identityChecks) {
    for (const auto& chk : *identityChecks) {
      if (!(chk.a < chk.b)) throw ConfigError("identity range needs a < b");
      if (chk.weight.kind == WeightKind::ShiftedLog) {
        if (!(chk.weight.t > 0.0) || !(chk.b < std::log(chk.weight.t))) {
          std::ostringstream msg;
          msg << "shifted-log weight needs t > e^b (t = " << chk.weight.t << ", e^b = " << std::exp(chk.b) << ")";
          throw ConfigError(msg.str());
        }
      }
    }
  }
  if (interiorIdentity) {
    if (!problem.is_interior()) throw ConfigError("the interior identity needs an interior problem");
    const auto [ci, ti] = *interiorIdentity;
    if (!(ci > 0.0 && ci >= problem.dirichlet && ci < ti)) throw ConfigError("interior identity needs max(0, c) <= c' < t");
  }
  if (identityResolution.levels < 2 || identityResolution.order < kMinQuadratureOrder)
    throw ConfigError("identity resolution is too small");
  if (bochnerSamples < 0) throw ConfigError("bochnerSamples must be >= 0");
  for (double r : decayRadii)
    if (!(r > 0.0)) throw ConfigError("decay radii must be positive");
}

RunConfig parse_config(const Json& j) {
  if (!j.is_object()) throw ConfigError("configuration must be a JSON object");
  RunConfig cfg;
  try {
    if (j.contains("schemaVersion") && j.at("schemaVersion").get<int>() != kSchemaVersion)
      throw ConfigError("unsupported schemaVersion");
    if (!j.contains("domain")) throw ConfigError("configuration needs a 'domain'");
    cfg.domain = domain_from_json(j.at("domain"));
    cfg.problem = j.contains("problem") ? problem_from_json(j.at("problem")) : ProblemSpec::exterior(1.0);

    if (j.contains("solver")) {
      const Json& s = j.at("solver");
      cfg.solver.sourceOrder = get_or(s, "sourceOrder", cfg.solver.sourceOrder);
      if (s.contains("sourceFactor")) cfg.solver.sourceFactor = s.at("sourceFactor").get<double>();
      if (s.contains("placement")) cfg.solver.placement = placement_from(s.at("placement").get<std::string>());
      if (s.contains("tolerance")) cfg.solver.tolerance = s.at("tolerance").get<double>();
      cfg.solver.svdCutoff = get_or(s, "svdCutoff", cfg.solver.svdCutoff);
      cfg.quadratureOrder = get_or(s, "quadratureOrder", cfg.quadratureOrder);
    }

    cfg.levels = j.contains("levels") ? j.at("levels").get<std::vector<double>>() : default_levels(cfg.problem);
    if (j.contains("criteria")) cfg.criteria = j.at("criteria").get<std::vector<std::string>>();
    if (j.contains("twoBoundary")) {
      const auto v = j.at("twoBoundary").get<std::vector<double>>();
      if (v.size() != 2) throw ConfigError("twoBoundary must hold two levels");
      cfg.twoBoundary = std::make_pair(v[0], v[1]);
    }
    if (j.contains("resolution")) {
      const Json& r = j.at("resolution");
      cfg.resolution.order = get_or(r, "order", cfg.resolution.order);
      cfg.resolution.coareaLevels = get_or(r, "coareaLevels", cfg.resolution.coareaLevels);
    }

    if (j.contains("identities")) {
      const Json& id = j.at("identities");
      cfg.identityResolution.levels = get_or(id, "levels", cfg.identityResolution.levels);
      cfg.identityResolution.order = get_or(id, "order", cfg.identityResolution.order);
      cfg.bochnerSamples = get_or(id, "bochnerSamples", cfg.bochnerSamples);
      cfg.sampleSeed = get_or<std::uint64_t>(id, "seed", cfg.sampleSeed);
      if (id.contains("interior")) {
        const Json& in = id.at("interior");
        cfg.interiorIdentity = std::make_pair(in.at("c").get<double>(), in.at("t").get<double>());
      }
      if (id.contains("checks")) {
        std::vector<IdentityCheckSpec> checks;
        for (const auto& c : id.at("checks")) {
          IdentityCheckSpec spec;
          const std::string w = c.at("weight").get<std::string>();
          if (w == "linear") spec.weight = WeightSpec::linear();
          else if (w == "shifted-log") spec.weight = WeightSpec::shifted_log(c.at("t").get<double>());
          else throw ConfigError("unknown weight '" + w + "'");
          spec.a = c.at("a").get<double>();
          spec.b = c.at("b").get<double>();
          checks.push_back(spec);
        }
        cfg.identityChecks = std::move(checks);
      }
    }

    if (j.contains("decay")) cfg.decayRadii = get_or(j.at("decay"), "radii", std::vector<double>{});
    if (cfg.decayRadii.empty() && !cfg.problem.is_interior()) cfg.decayRadii = default_decay_radii(cfg.domain);

    if (j.contains("output")) cfg.outDir = get_or(j.at("output"), "dir", cfg.outDir);
    cfg.threads = get_or(j, "threads", cfg.threads);
    cfg.refine = get_or(j, "refine", cfg.refine);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed configuration: ") + e.what());
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open configuration file " + path.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("cannot parse configuration file " + path.string() + ": " + e.what());
  }
  return parse_config(j);
}

Json to_json(const RunConfig& cfg) {
  Json j;
  j["schemaVersion"] = kSchemaVersion;
  j["domain"] = to_json(cfg.domain);
  j["problem"] = to_json(cfg.problem);
  Json s;
  s["sourceOrder"] = cfg.solver.sourceOrder;
  if (cfg.solver.sourceFactor) s["sourceFactor"] = *cfg.solver.sourceFactor;
  if (cfg.solver.placement) s["placement"] = placement_name(*cfg.solver.placement);
  if (cfg.solver.tolerance) s["tolerance"] = *cfg.solver.tolerance;
  s["svdCutoff"] = cfg.solver.svdCutoff;
  s["quadratureOrder"] = cfg.quadratureOrder;
  j["solver"] = s;
  j["levels"] = cfg.levels;
  if (cfg.criteria) j["criteria"] = *cfg.criteria;
  if (cfg.twoBoundary) j["twoBoundary"] = {cfg.twoBoundary->first, cfg.twoBoundary->second};
  j["resolution"] = {{"order", cfg.resolution.order}, {"coareaLevels", cfg.resolution.coareaLevels}};
  Json id;
  id["levels"] = cfg.identityResolution.levels;
  id["order"] = cfg.identityResolution.order;
  id["bochnerSamples"] = cfg.bochnerSamples;
  id["seed"] = cfg.sampleSeed;
  if (cfg.identityChecks) {
    Json checks = Json::array();
    for (const auto& c : *cfg.identityChecks) {
      Json e{{"weight", c.weight.name()}};
      if (c.weight.kind == WeightKind::ShiftedLog) e["t"] = c.weight.t;
      e["a"] = c.a;
      e["b"] = c.b;
      checks.push_back(e);
    }
    id["checks"] = checks;
  }
  if (cfg.interiorIdentity) id["interior"] = {{"c", cfg.interiorIdentity->first}, {"t", cfg.interiorIdentity->second}};
  j["identities"] = id;
  j["decay"] = {{"radii", cfg.decayRadii}};
  j["output"] = {{"dir", cfg.outDir}};
  j["threads"] = cfg.threads;
  j["refine"] = cfg.refine;
  return j;
}

// --- solutions ------------------------------------------------------------

Json to_json(const HarmonicSolution& sol) {
  Json j;
  j["schemaVersion"] = kSchemaVersion;
  j["domain"] = to_json(sol.domain);
  j["problem"] = to_json(sol.problem);
  j["placement"] = placement_name(sol.placement);
  j["sourceFactor"] = sol.sourceFactor;
  j["constant"] = sol.constant;
  j["singularCoefficient"] = sol.singularCoefficient;
  j["boundaryArea"] = sol.boundaryArea;
  j["fitResidual"] = sol.fitResidual;
  j["conditionEstimate"] = sol.conditionEstimate;
  j["rank"] = sol.rank;
  Json sources = Json::array();
  for (Eigen::Index i = 0; i < sol.sources.rows(); ++i) sources.push_back(vec_json(Vec3(sol.sources.row(i))));
  j["sources"] = sources;
  j["charges"] = std::vector<double>(sol.charges.data(), sol.charges.data() + sol.charges.size());
  return j;
}

HarmonicSolution solution_from_json(const Json& j) {
  HarmonicSolution sol;
  try {
    sol.domain = domain_from_json(j.at("domain"));
    sol.problem = problem_from_json(j.at("problem"));
    sol.placement = placement_from(j.at("placement").get<std::string>());
    sol.sourceFactor = j.at("sourceFactor").get<double>();
    sol.constant = j.at("constant").get<double>();
    sol.singularCoefficient = j.at("singularCoefficient").get<double>();
    sol.boundaryArea = j.at("boundaryArea").get<double>();
    sol.fitResidual = j.at("fitResidual").get<double>();
    sol.conditionEstimate = j.at("conditionEstimate").get<double>();
    sol.rank = j.at("rank").get<Eigen::Index>();
    const Json& src = j.at("sources");
    const auto charges = j.at("charges").get<std::vector<double>>();
    if (src.size() != charges.size()) throw ConfigError("solution has mismatched sources and charges");
    sol.sources.resize(static_cast<Eigen::Index>(src.size()), 3);
    sol.charges.resize(static_cast<Eigen::Index>(charges.size()));
    for (std::size_t i = 0; i < src.size(); ++i) {
      sol.sources.row(static_cast<Eigen::Index>(i)) = vec_from(src[i], "source").transpose();
      sol.charges(static_cast<Eigen::Index>(i)) = charges[i];
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed solution: ") + e.what());
  }
  return sol;
}

void save_solution(const HarmonicSolution& sol, const std::filesystem::path& path) { write_json(to_json(sol), path); }

HarmonicSolution load_solution(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open solution file " + path.string());
  try {
    return solution_from_json(Json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("cannot parse solution file " + path.string() + ": " + e.what());
  }
}

// --- reports --------------------------------------------------------------

Json to_json(const CriterionReport& r) {
  Json j;
  j["criterionId"] = r.criterionId;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["margin"] = r.margin;
  j["errorEstimate"] = r.errorEstimate;
  j["verdict"] = to_string(r.verdict);
  Json w = Json::array();
  for (const auto& x : r.witnesses) {
    Json e{{"name", x.name}, {"value", x.value}};
    if (x.point) e["point"] = vec_json(*x.point);
    w.push_back(e);
  }
  j["witnesses"] = w;
  return j;
}

Json to_json(const SymmetryCertificate& c) {
  Json j;
  j["granted"] = c.granted;
  j["pFunctionSpread"] = c.pFunctionSpread;
  Json levels = Json::array();
  for (std::size_t i = 0; i < c.levels.size(); ++i)
    levels.push_back({{"level", c.levels[i]}, {"sphericity", c.levelSetSphericity[i]}});
  j["levelSetSphericity"] = levels;
  j["equalityResidual"] = c.equalityResidual;
  j["inferredRadius"] = c.inferredRadius;
  j["failing"] = c.failing;
  j["thresholds"] = {{"pFunctionSpread", kCertificateSpread},
                     {"levelSetSphericity", kCertificateSphericity},
                     {"equalityResidual", kCertificateEquality}};
  return j;
}

Json to_json(const CapacityReport& c) {
  return {{"value", c.value},
          {"crossCheck", c.crossCheck},
          {"crossCheckLevel", c.crossCheckLevel},
          {"relativeDifference", c.relativeDifference},
          {"errorEstimate", c.errorEstimate}};
}

Json to_json(const InteriorConstants& c) { return {{"c1", c.c1}, {"c1Limit", c.c1Limit}, {"c2", c.c2}}; }

namespace {

Json boundary_json(const BoundaryTerms& t) {
  return {{"f", t.f}, {"b3", t.b3}, {"bh", t.bh}, {"errorEstimate", t.errorEstimate}};
}

}  // namespace

Json to_json(const IdentityResidual& r) {
  Json j;
  j["weight"] = to_json(r.weight);
  j["a"] = r.a;
  j["b"] = r.b;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["kTerm"] = r.kTerm;
  j["upperTerm"] = r.upperTerm;
  j["lowerTerm"] = r.lowerTerm;
  j["atA"] = boundary_json(r.atA);
  j["atB"] = boundary_json(r.atB);
  j["firstIntegralAtA"] = r.firstIntegralAtA;
  j["firstIntegralAtB"] = r.firstIntegralAtB;
  j["relResidual"] = r.relResidual;
  j["errorEstimate"] = r.errorEstimate;
  j["resolution"] = {{"levels", r.resolution.levels}, {"order", r.resolution.order}};
  j["levelF"] = r.levelF;
  j["levelIntegrals"] = r.levelIntegrals;
  return j;
}

Json to_json(const InteriorIdentityResidual& r) {
  return {{"c", r.c},
          {"t", r.t},
          {"lhs", r.lhs},
          {"rhs", r.rhs},
          {"atC", boundary_json(r.atC)},
          {"atT", boundary_json(r.atT)},
          {"relResidual", r.relResidual},
          {"errorEstimate", r.errorEstimate}};
}

Json to_json(const BochnerResidual& r) { return {{"lhs", r.lhs}, {"rhs", r.rhs}, {"residual", r.residual}}; }

Json to_json(const DecayReport& r) {
  return {{"fittedExponent", r.fittedExponent},   {"gradientExponent", r.gradientExponent},
          {"hessianExponent", r.hessianExponent}, {"sampleRadii", r.sampleRadii},
          {"meanValue", r.meanValue},             {"meanGradient", r.meanGradient},
          {"meanHessian", r.meanHessian}};
}

Json to_json(const WitnessReport& r) {
  return {{"c", r.c},
          {"epsilon", r.epsilon},
          {"volumeTerm", r.volumeTerm},
          {"boundaryTerm", r.boundaryTerm},
          {"cutoffError", r.cutoffError},
          {"errorEstimate", r.errorEstimate},
          {"holds", r.holds}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_json(const Json& j, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << dump(j);
}

}  // namespace potential
