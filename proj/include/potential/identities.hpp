#pragma once

#include "potential/conformal.hpp"
#include "potential/core.hpp"
#include "potential/harmonic.hpp"
#include "potential/levelset.hpp"

#include <string>
#include <vector>

namespace potential {

enum class WeightKind { Linear, ShiftedLog };

/// Weight phi(f) of the integrated Bochner identity. Both kinds solve
/// phi'' + phi'^2 - phi' = 0, so K = (1 - phi') e^phi is constant.
struct WeightSpec {
  WeightKind kind = WeightKind::Linear;
  /// Shift parameter of log(1 - e^f / t).
  double t = 0.0;

  static WeightSpec linear() { return {WeightKind::Linear, 0.0}; }
  static WeightSpec shifted_log(double t) { return {WeightKind::ShiftedLog, t}; }

  double phi(double f) const;
  double dphi(double f) const;
  double d2phi(double f) const;
  /// (1 - phi'(f)) e^{phi(f)}.
  double first_integral(double f) const;
  /// The constant value of the first integral: 0 (linear) or 1 (shifted-log).
  double firstIntegralK() const { return kind == WeightKind::Linear ? 0.0 : 1.0; }
  /// phi'' + phi'^2 - phi'.
  double orbit_residual(double f) const;
  std::string name() const { return kind == WeightKind::Linear ? "linear" : "shifted-log"; }
};

struct BochnerResidual {
  /// Lap_g |grad f|_g^2.
  double lhs = 0.0;
  /// 2 |nabla^2 f|_g^2 - <grad |grad f|_g^2, grad f>_g.
  double rhs = 0.0;
  double residual = 0.0;
};

/// Both sides of the Bochner identity from a third-order jet of u.
BochnerResidual bochner_residual(const PointJet& jet);
BochnerResidual bochner_residual(const HarmonicSolution& sol, const Vec3& x);

struct BoundaryTerms {
  double f = 0.0;
  /// int |grad f|_g^3 dsigma_g.
  double b3 = 0.0;
  /// int |grad f|_g^2 H_g dsigma_g.
  double bh = 0.0;
  double errorEstimate = 0.0;
};

/// Boundary integrals of the weighted identity on {f = log level}.
BoundaryTerms boundary_terms(const LevelSet& ls);

struct IdentityOptions {
  int levels = 8;
  int order = 16;
};

/// One step finer than the given resolution (twice the levels, 1.5 times the order).
IdentityOptions refined(const IdentityOptions& opts, int steps = 1);

struct IdentityResidual {
  WeightSpec weight;
  double a = 0.0;
  double b = 0.0;
  /// 2 int_{a<f<b} |nabla^2 f|_g^2 e^{phi(f)} dmu_g.
  double lhs = 0.0;
  double rhs = 0.0;
  /// K (B3(b) - B3(a)).
  double kTerm = 0.0;
  /// 2 e^{phi(b)} BH(b).
  double upperTerm = 0.0;
  /// 2 e^{phi(a)} BH(a).
  double lowerTerm = 0.0;
  BoundaryTerms atA;
  BoundaryTerms atB;
  double firstIntegralAtA = 0.0;
  double firstIntegralAtB = 0.0;
  double relResidual = 0.0;
  double errorEstimate = 0.0;
  /// f values of the coarea levels and the inner integrals there.
  std::vector<double> levelF;
  std::vector<double> levelIntegrals;
  IdentityOptions resolution;
};

IdentityResidual weighted_identity_check(const HarmonicSolution& sol, const WeightSpec& weight, double a, double b,
                                         const IdentityOptions& opts = {});

/// Interior form of the shifted-log identity with the upper level pushed to {u = t}, where the weight vanishes:
/// 2 int_{log c<f<log t} |nabla^2 f|_g^2 (1 - e^f/t) dmu_g = B3(log t) - B3(log c) - (1 - c/t) 2 BH(log c).
struct InteriorIdentityResidual {
  double c = 0.0;
  double t = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  BoundaryTerms atC;
  BoundaryTerms atT;
  double relResidual = 0.0;
  double errorEstimate = 0.0;
};

InteriorIdentityResidual interior_identity_check(const HarmonicSolution& sol, double c, double t,
                                                 const IdentityOptions& opts = {});

struct WitnessReport {
  double c = 1.0;
  double epsilon = 1e-3;
  /// int_{log eps < f < log c} |nabla^2 f|_g^2 e^f dmu_g.
  double volumeTerm = 0.0;
  /// c BH(log c) - eps BH(log eps).
  double boundaryTerm = 0.0;
  /// eps max|grad f|_g max|nabla^2 f|_g int dsigma_g on {f = log eps}.
  double cutoffError = 0.0;
  double errorEstimate = 0.0;
  bool holds = false;
};

inline constexpr double kWitnessCutoffLimit = 1e-6;

/// Truncated volume/boundary identity for exterior solutions; throws CutoffError
/// when the far-field cutoff term is not below kWitnessCutoffLimit.
WitnessReport truncated_identity_witness(const HarmonicSolution& sol, double c, double epsilon = 1e-3,
                                        const IdentityOptions& opts = {16, 24});

/// Closed-form limit of int_{u=t} |Du|^3 u^{-2(n-1)/(n-2)} dsigma as t -> infinity for the
/// interior problem, from the singular part of u.
double interior_b3_limit(const HarmonicSolution& sol);

struct LimitCheck {
  double level = 0.0;
  double numeric = 0.0;
  double closedForm = 0.0;
  double relativeDifference = 0.0;
};

LimitCheck interior_limit_check(const HarmonicSolution& sol, double t, int order = 24);

}  // namespace potential
