#pragma once

#include "potential/core.hpp"
#include "potential/geometry.hpp"
#include "potential/harmonic.hpp"

#include <functional>
#include <iosfwd>
#include <vector>

namespace potential {

inline constexpr double kRegularityThreshold = 1e-8;

/// The level set {u = level} as a radial graph over an angular grid centered at the origin.
struct LevelSet {
  double level = 0.0;
  AngularGrid grid;
  Eigen::VectorXd radius;
  Points nodes;
  Eigen::VectorXd weights;
  /// nu = -Du / |Du|.
  Points normals;
  Eigen::VectorXd uValue;
  Eigen::VectorXd uGrad;
  /// H = D2u(nu, nu) / |Du|, positive on round level sets.
  Eigen::VectorXd meanCurvH;
  Points gradient;
  std::vector<Mat3> hessian;
  bool regular = false;

  Eigen::Index size() const { return weights.size(); }
  int order() const { return grid.order; }
  double area() const;
  Vec3 centroid() const;
  /// max / min distance to the area-weighted centroid, minus one.
  double sphericity() const;
  /// Throws IrregularLevelSetError unless regular.
  void require_regular() const;
};

struct ExtractionOptions {
  double radiusTolerance = 1e-13;
  int monotonicitySamples = 8;
};

LevelSet extract_level_set(const HarmonicSolution& sol, double c, int order, const ExtractionOptions& opts = {});

/// Surface quadrature of the boundary itself viewed as the level set {u = dirichlet}:
/// nodes from the geometry, derivatives from the solution.
LevelSet boundary_level_set(const HarmonicSolution& sol, int order);

/// Level set {u = c}; the boundary level uses the exact boundary geometry.
LevelSet level_set_for(const HarmonicSolution& sol, double c, int order);

struct Integral {
  double value = 0.0;
  double errorEstimate = 0.0;
};

/// sum_i w_i v_i, with an error estimate from the nested half-longitude sub-rule.
Integral surface_integral(const LevelSet& ls, const Eigen::VectorXd& values);

/// Per-node integrand evaluated on a level set.
using LevelIntegrand = std::function<Eigen::VectorXd(const LevelSet&)>;

struct CoareaResult {
  double value = 0.0;
  double errorEstimate = 0.0;
  std::vector<double> levels;
  /// Inner integrals int_{u=c} integrand / |Du| dsigma at each level.
  std::vector<double> levelIntegrals;
};

/// int_{c_min < u < c_max} integrand dmu via the coarea formula with Gauss-Legendre in c.
CoareaResult coarea_volume_integral(const HarmonicSolution& sol, const LevelIntegrand& integrand, double c_min,
                                    double c_max, int levels, int order);

/// CSV with one row per node: theta,phi,radius,x,y,z,H,gradNorm,weight.
void write_level_set_csv(const LevelSet& ls, std::ostream& out);

}  // namespace potential
