#pragma once

#include "potential/core.hpp"
#include "potential/geometry.hpp"

#include <optional>
#include <vector>

namespace potential {

enum class ProblemKind { Exterior, Interior };

/// Exterior: u = dirichlet on the boundary, u -> 0 at infinity.
/// Interior: -Lap u = flux |dOmega| delta_0 in the domain, u = dirichlet on the boundary.
struct ProblemSpec {
  ProblemKind kind = ProblemKind::Exterior;
  double dirichlet = 1.0;
  double flux = 0.0;

  static ProblemSpec exterior(double c = 1.0) { return {ProblemKind::Exterior, c, 0.0}; }
  static ProblemSpec interior(double c, double d) { return {ProblemKind::Interior, c, d}; }
  bool is_interior() const { return kind == ProblemKind::Interior; }
};

enum class SourcePlacement { Radial, Confocal };

struct SolverOptions {
  /// Angular order of the source grid (2 order^2 sources).
  int sourceOrder = 24;
  /// Contraction (exterior) or dilation (interior) factor of the source surface.
  std::optional<double> sourceFactor;
  std::optional<SourcePlacement> placement;
  /// Boundary misfit tolerance; defaults depend on the domain kind.
  std::optional<double> tolerance;
  double svdCutoff = 1e-12;
};

/// Resolved defaults for a domain/problem pair.
double default_source_factor(const DomainSpec& spec, ProblemKind kind, SourcePlacement placement);
SourcePlacement default_placement(const DomainSpec& spec, ProblemKind kind);
double default_tolerance(const DomainSpec& spec);

enum class JetOrder { Value = 0, Gradient = 1, Hessian = 2, Third = 3 };

/// Value and derivatives of a field at one point.
template <typename Scalar>
struct Jet {
  Scalar u{};
  Vector3<Scalar> grad = Vector3<Scalar>::Zero();
  Matrix3<Scalar> hess = Matrix3<Scalar>::Zero();
  Tensor3<Scalar> third{Matrix3<Scalar>::Zero(), Matrix3<Scalar>::Zero(), Matrix3<Scalar>::Zero()};
};

using PointJet = Jet<double>;

/// Adds q / (4 pi |r|) and its derivatives up to the requested order, with r = x - y.
template <typename Scalar>
void accumulate_kernel(const Vector3<Scalar>& r, Scalar q, JetOrder order, Jet<Scalar>& out);

struct HarmonicSolution {
  DomainSpec domain;
  ProblemSpec problem;
  Points sources;
  Eigen::VectorXd charges;
  /// Additive constant of the regular part (interior problem only).
  double constant = 0.0;
  /// d |dOmega| a_3: coefficient of |x|^{-1} carried analytically (interior problem only).
  double singularCoefficient = 0.0;
  /// |dOmega| used to fix the singular coefficient.
  double boundaryArea = 0.0;
  /// Max boundary misfit over collocation and check nodes.
  double fitResidual = 0.0;
  double conditionEstimate = 0.0;
  Eigen::Index rank = 0;
  double sourceFactor = 0.0;
  SourcePlacement placement = SourcePlacement::Radial;

  /// Unchecked evaluation; callers guarantee x lies in the valid region.
  PointJet jet(const Vec3& x, JetOrder order = JetOrder::Hessian) const;
  /// True when x is in the closure of the region where u is defined (x != 0 for interior).
  bool in_region(const Vec3& x, double rel_tol = 1e-9) const;
};

HarmonicSolution solve_exterior(const DomainSpec& spec, const SurfaceQuadrature& quad, double c,
                                const SolverOptions& opts = {});

HarmonicSolution solve_interior(const DomainSpec& spec, const SurfaceQuadrature& quad, double c, double d,
                                const SolverOptions& opts = {});

/// Dispatch on the problem kind.
HarmonicSolution solve(const DomainSpec& spec, const SurfaceQuadrature& quad, const ProblemSpec& problem,
                       const SolverOptions& opts = {});

/// Checked evaluation of (u, Du, D2u); throws OutOfRegionError outside the valid region.
PointJet evaluate(const HarmonicSolution& sol, const Vec3& x, JetOrder order = JetOrder::Hessian);

struct DecayReport {
  double fittedExponent = 0.0;
  double gradientExponent = 0.0;
  double hessianExponent = 0.0;
  std::vector<double> sampleRadii;
  std::vector<double> meanValue;
  std::vector<double> meanGradient;
  std::vector<double> meanHessian;
};

DecayReport decay_report(const HarmonicSolution& sol, const std::vector<double>& radii, int direction_order = 12);

// ---------------------------------------------------------------------------

template <typename Scalar>
void accumulate_kernel(const Vector3<Scalar>& r, Scalar q, JetOrder order, Jet<Scalar>& out) {
  using std::sqrt;
  const Scalar r2 = r.squaredNorm();
  const Scalar inv = Scalar(1) / sqrt(r2);
  const Scalar inv2 = inv * inv;
  const Scalar s = q * inv / Scalar(4.0 * kPi);  // q G
  out.u += s;
  if (order == JetOrder::Value) return;
  const Scalar s3 = s * inv2;  // q / (4 pi R^3)
  out.grad -= s3 * r;
  if (order == JetOrder::Gradient) return;
  const Scalar s5 = s3 * inv2;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) out.hess(i, j) += Scalar(3) * s5 * r(i) * r(j);
    out.hess(i, i) -= s3;
  }
  if (order == JetOrder::Hessian) return;
  const Scalar s7 = s5 * inv2;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        Scalar t = Scalar(-15) * s7 * r(i) * r(j) * r(k);
        if (i == j) t += Scalar(3) * s5 * r(k);
        if (i == k) t += Scalar(3) * s5 * r(j);
        if (j == k) t += Scalar(3) * s5 * r(i);
        out.third[i](j, k) += t;
      }
}

}  // namespace potential
