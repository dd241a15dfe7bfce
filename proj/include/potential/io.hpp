#pragma once

#include "potential/criteria.hpp"
#include "potential/geometry.hpp"
#include "potential/harmonic.hpp"
#include "potential/identities.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace potential {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// One weighted identity over the f-range [a, b].
struct IdentityCheckSpec {
  WeightSpec weight;
  double a = 0.0;
  double b = 0.0;
};

/// Everything one run needs. Unset optionals fall back to problem-dependent defaults.
struct RunConfig {
  DomainSpec domain;
  ProblemSpec problem;
  SolverOptions solver;
  int quadratureOrder = 36;

  /// Levels c used by the level-set criteria and the symmetry certificate.
  std::vector<double> levels;
  /// Criterion ids to evaluate; unset means every id applicable to the problem kind.
  std::optional<std::vector<std::string>> criteria;
  std::optional<std::pair<double, double>> twoBoundary;
  CriteriaOptions resolution;

  /// Weighted identities; unset means the default pair for exterior problems.
  std::optional<std::vector<IdentityCheckSpec>> identityChecks;
  /// Levels (c, t) of the interior identity; unset means default_interior_identity.
  std::optional<std::pair<double, double>> interiorIdentity;
  IdentityOptions identityResolution;
  int bochnerSamples = 20;
  std::uint64_t sampleSeed = 20240601;

  std::vector<double> decayRadii;

  std::string outDir = ".";
  int threads = 0;
  int refine = 0;

  /// Throws ConfigError when a field is out of range or inconsistent with the problem kind.
  void validate() const;
};

/// Criterion ids that apply to the problem kind, in report order.
std::vector<std::string> applicable_criteria(ProblemKind kind);
/// Default levels: three values inside the range of u.
std::vector<double> default_levels(const ProblemSpec& problem);
std::pair<double, double> default_two_boundary(const ProblemSpec& problem);
std::vector<IdentityCheckSpec> default_identity_checks(const ProblemSpec& problem);
std::pair<double, double> default_interior_identity(const ProblemSpec& problem);
std::vector<double> default_decay_radii(const DomainSpec& domain);

RunConfig parse_config(const Json& j);
/// Throws ConfigError naming the path when it cannot be read or parsed.
RunConfig load_config(const std::filesystem::path& path);
Json to_json(const RunConfig& cfg);

/// "sphere:1", "ellipsoid:2,1,1".
DomainSpec parse_domain_shorthand(const std::string& text);
/// "exterior:c=1", "interior:c=0,d=1".
ProblemSpec parse_problem_shorthand(const std::string& text);

Json to_json(const DomainSpec& d);
DomainSpec domain_from_json(const Json& j);
Json to_json(const ProblemSpec& p);
ProblemSpec problem_from_json(const Json& j);
Json to_json(const WeightSpec& w);

Json to_json(const HarmonicSolution& sol);
HarmonicSolution solution_from_json(const Json& j);
void save_solution(const HarmonicSolution& sol, const std::filesystem::path& path);
HarmonicSolution load_solution(const std::filesystem::path& path);

Json to_json(const CriterionReport& r);
Json to_json(const SymmetryCertificate& c);
Json to_json(const CapacityReport& c);
Json to_json(const InteriorConstants& c);
Json to_json(const IdentityResidual& r);
Json to_json(const InteriorIdentityResidual& r);
Json to_json(const BochnerResidual& r);
Json to_json(const DecayReport& r);
Json to_json(const WitnessReport& r);

/// Pretty-printed with a trailing newline; doubles in shortest round-trip form.
std::string dump(const Json& j);
void write_json(const Json& j, const std::filesystem::path& path);

}  // namespace potential
