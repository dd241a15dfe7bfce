#pragma once

#include "potential/core.hpp"
#include "potential/harmonic.hpp"
#include "potential/levelset.hpp"

#include <optional>
#include <string>
#include <vector>

namespace potential {

enum class Verdict { Satisfied, SatisfiedEquality, Violated, Inconclusive, HypothesisNotMet };

std::string to_string(Verdict v);

namespace criterion_id {
inline constexpr const char* kT11 = "T1.1-integral";
inline constexpr const char* kC12 = "C1.2-global";
inline constexpr const char* kC13 = "C1.3-capacity";
inline constexpr const char* kC14 = "C1.4-pointwise";
inline constexpr const char* kT15 = "T1.5-neumann";
inline constexpr const char* kT16 = "T1.6-interior-integral";
inline constexpr const char* kC17 = "C1.7-interior-pointwise";
inline constexpr const char* kT18 = "T1.8-interior-neumann";
inline constexpr const char* kT19 = "T1.9-two-boundary";
}  // namespace criterion_id

/// Named number attached to a report; point is set for node-located witnesses.
struct Witness {
  std::string name;
  double value = 0.0;
  std::optional<Vec3> point;
};

/// One overdetermining condition. margin >= 0 means the condition holds.
struct CriterionReport {
  std::string criterionId;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  double errorEstimate = 0.0;
  Verdict verdict = Verdict::Inconclusive;
  std::vector<Witness> witnesses;

  double witness(const std::string& name) const;
};

struct CriteriaOptions {
  /// Angular order of level-set and boundary quadratures.
  int order = 24;
  /// Gauss levels of the coarea integral.
  int coareaLevels = 16;
};

/// Coarse companion order used for the two-resolution error estimate.
int coarse_order(int order);

/// Round-surface witness: sphericity about the centroid and relative |Du| spread both <= 1e-6.
struct Roundness {
  double sphericity = 0.0;
  double gradientSpread = 0.0;
  bool round = false;
};

inline constexpr double kRoundTolerance = 1e-6;

Roundness roundness(const LevelSet& ls);

/// Capacity of the domain: boundary flux of the normalized potential u / c over the given level.
double capacity(const HarmonicSolution& sol, const LevelSet& ls);

struct CapacityReport {
  double value = 0.0;
  double crossCheck = 0.0;
  double crossCheckLevel = 0.0;
  double relativeDifference = 0.0;
  double errorEstimate = 0.0;
};

/// Flux on the boundary, cross-checked on the level set at half the boundary value.
CapacityReport capacity_report(const HarmonicSolution& sol, int order = 24);

CriterionReport check_T11(const HarmonicSolution& sol, double c, const CriteriaOptions& opts = {});
CriterionReport check_C12(const HarmonicSolution& sol, const CriteriaOptions& opts = {});
CriterionReport check_C13(const HarmonicSolution& sol, const CriteriaOptions& opts = {});

enum class PointwiseDirection { AtMost, AtLeast };

/// AtMost: H/(n-1) <= |Du|/((n-2)u) on {u = c} (exterior).
/// AtLeast: H/(n-1) >= the boundary-average bound on {u = c} (interior).
CriterionReport check_pointwise(const HarmonicSolution& sol, double c, PointwiseDirection direction,
                                const CriteriaOptions& opts = {});

inline constexpr double kNeumannSpreadTolerance = 1e-6;

/// Exterior: constancy of |Du| on {u = c} plus inf H/(n-1) <= |Du|/((n-2)u).
/// Interior: constancy of |Du| on the boundary plus sup H/(n-1) >= (|S^2|/|dOmega|)^{1/2}.
CriterionReport check_neumann(const HarmonicSolution& sol, std::optional<double> c, const CriteriaOptions& opts = {});

CriterionReport check_T16(const HarmonicSolution& sol, const CriteriaOptions& opts = {});
CriterionReport check_T19(const HarmonicSolution& sol, double a, double b, const CriteriaOptions& opts = {});

/// Normalizing constants of the interior problem.
struct InteriorConstants {
  double c1 = 0.0;
  /// c1 through the closed-form singular limit.
  double c1Limit = 0.0;
  double c2 = 0.0;
};

InteriorConstants interior_constants(const HarmonicSolution& sol, int order = 24);

struct SymmetryCertificate {
  double pFunctionSpread = 0.0;
  std::vector<double> levels;
  std::vector<double> levelSetSphericity;
  double equalityResidual = 0.0;
  double inferredRadius = 0.0;
  bool granted = false;
  std::vector<std::string> failing;
};

inline constexpr double kCertificateSpread = 1e-5;
inline constexpr double kCertificateSphericity = 1e-5;
inline constexpr double kCertificateEquality = 1e-6;

/// Rigidity certificate over the listed levels plus the boundary. Interior solutions
/// are shifted so that the boundary value is c2 before P and the equality are evaluated.
SymmetryCertificate symmetry_certificate(const HarmonicSolution& sol, const std::vector<double>& levels,
                                         int order = 24);

}  // namespace potential
