#include "potential/harmonic.hpp"

#include "potential/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace potential {

SourcePlacement default_placement(const DomainSpec& spec, ProblemKind kind) {
  if (kind == ProblemKind::Exterior && spec.kind == DomainKind::Ellipsoid) return SourcePlacement::Confocal;
  return SourcePlacement::Radial;
}

double default_source_factor(const DomainSpec& spec, ProblemKind kind, SourcePlacement placement) {
  (void)spec;
  if (kind == ProblemKind::Interior) return 1.6;
  return placement == SourcePlacement::Confocal ? 0.3 : 0.5;
}

double default_tolerance(const DomainSpec& spec) { return spec.kind == DomainKind::Sphere ? 1e-9 : 1e-7; }

PointJet HarmonicSolution::jet(const Vec3& x, JetOrder order) const {
  PointJet out;
  const Eigen::Index m = sources.rows();
  for (Eigen::Index j = 0; j < m; ++j) {
    const Vec3 r = x - Vec3(sources.row(j));
    accumulate_kernel<double>(r, charges(j), order, out);
  }
  if (problem.is_interior()) {
    out.u += constant;
    // singularCoefficient |x|^{-1} = (4 pi singularCoefficient) G(x, 0)
    accumulate_kernel<double>(x, 4.0 * kPi * singularCoefficient, order, out);
  }
  return out;
}

bool HarmonicSolution::in_region(const Vec3& x, double rel_tol) const {
  if (!x.allFinite()) return false;
  const Vec3 d = x - domain.center;
  const double r = d.norm();
  if (problem.is_interior()) {
    if (x.norm() == 0.0) return false;
    if (r == 0.0) return true;
    return r <= domain.rho(Vec3(d / r)) * (1.0 + rel_tol);
  }
  if (r == 0.0) return false;
  return r >= domain.rho(Vec3(d / r)) * (1.0 - rel_tol);
}

namespace {

Points boundary_points(const DomainSpec& spec, const AngularGrid& grid) {
  Points p(grid.size(), 3);
  for (Eigen::Index k = 0; k < grid.size(); ++k) {
    const Vec3 w = grid.directions.row(k);
    p.row(k) = (spec.center + spec.rho(w) * w).transpose();
  }
  return p;
}

Points place_sources(const DomainSpec& spec, ProblemKind kind, SourcePlacement placement, double factor, int order) {
  const AngularGrid grid = build_angular_grid(order, spec.frame());
  if (placement == SourcePlacement::Radial) return boundary_points(spec.scaled(factor), grid);
  if (kind != ProblemKind::Exterior || spec.kind == DomainKind::StarShaped)
    throw PreconditionError("confocal source placement needs an exterior problem on a sphere or ellipsoid");
  if (!(factor > 0.0 && factor < 1.0)) throw PreconditionError("confocal source factor must lie in (0, 1)");
  // Confocal inner ellipsoid: the focal set stays enclosed for any factor in (0, 1).
  const Vec3 axes = spec.kind == DomainKind::Sphere ? Vec3::Constant(spec.radius) : spec.axes;
  const double amin = axes.minCoeff();
  const double shift = (1.0 - factor * factor) * amin * amin;
  Vec3 inner;
  for (int a = 0; a < 3; ++a) inner(a) = std::sqrt(axes(a) * axes(a) - shift);
  // Ellipsoidal parameterization (componentwise scaling of the unit direction), which
  // spreads sources evenly along the confocal surface; a radial graph bunches them at the tips.
  Points p(grid.size(), 3);
  for (Eigen::Index k = 0; k < grid.size(); ++k)
    p.row(k) = (spec.center + inner.cwiseProduct(Vec3(grid.directions.row(k)))).transpose();
  return p;
}

Eigen::MatrixXd kernel_matrix(const Points& x, const Points& y, bool constant_column) {
  const Eigen::Index n = x.rows();
  const Eigen::Index m = y.rows();
  Eigen::MatrixXd a(n, m + (constant_column ? 1 : 0));
  const double scale = 1.0 / (4.0 * kPi);
#pragma omp parallel for schedule(static)
  for (Eigen::Index j = 0; j < m; ++j) {
    const Vec3 yj = y.row(j);
    for (Eigen::Index i = 0; i < n; ++i) a(i, j) = scale / (Vec3(x.row(i)) - yj).norm();
  }
  if (constant_column) a.col(m).setOnes();
  return a;
}

Eigen::VectorXd boundary_data(const Points& x, const ProblemSpec& problem, double singular_coefficient) {
  Eigen::VectorXd b(x.rows());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    b(i) = problem.dirichlet;
    if (problem.is_interior()) b(i) -= singular_coefficient / x.row(i).norm();
  }
  return b;
}

HarmonicSolution solve_impl(const DomainSpec& spec, const SurfaceQuadrature& quad, const ProblemSpec& problem,
                            const SolverOptions& opts) {
  spec.validate();
  if (opts.sourceOrder < 2) throw PreconditionError("source order must be at least 2");
  if (!(opts.svdCutoff > 0.0)) throw PreconditionError("svd cutoff must be positive");
  const bool interior = problem.is_interior();

  HarmonicSolution sol;
  sol.domain = spec;
  sol.problem = problem;
  sol.placement = opts.placement.value_or(default_placement(spec, problem.kind));
  sol.sourceFactor = opts.sourceFactor.value_or(default_source_factor(spec, problem.kind, sol.placement));
  if (interior && !(sol.sourceFactor > 1.0)) throw PreconditionError("interior source factor must exceed 1");
  if (!interior && !(sol.sourceFactor > 0.0 && sol.sourceFactor < 1.0))
    throw PreconditionError("exterior source factor must lie in (0, 1)");
  const double tolerance = opts.tolerance.value_or(default_tolerance(spec));

  sol.sources = place_sources(spec, problem.kind, sol.placement, sol.sourceFactor, opts.sourceOrder);
  if (interior) {
    sol.boundaryArea = quad.area();
    sol.singularCoefficient = problem.flux * sol.boundaryArea / (4.0 * kPi);
  }

  const Eigen::MatrixXd a = kernel_matrix(quad.nodes, sol.sources, interior);
  const Eigen::VectorXd b = boundary_data(quad.nodes, problem, sol.singularCoefficient);
  if (a.rows() < a.cols()) throw PreconditionError("collocation nodes must outnumber the unknowns");

  // Least squares through QR, then a truncated SVD of the triangular factor.
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  const Eigen::Index m = a.cols();
  const Eigen::MatrixXd r = qr.matrixQR().topRows(m).triangularView<Eigen::Upper>();
  const Eigen::VectorXd qtb = (qr.householderQ().adjoint() * b).head(m);
  Eigen::BDCSVD<Eigen::MatrixXd> svd(r, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(opts.svdCutoff);
  const Eigen::VectorXd coef = svd.solve(qtb);
  const Eigen::VectorXd& sigma = svd.singularValues();
  sol.rank = svd.rank();
  // Condition of the truncated system actually solved.
  sol.conditionEstimate = sol.rank > 0 ? sigma(0) / sigma(sol.rank - 1) : std::numeric_limits<double>::infinity();
  sol.charges = coef.head(sol.sources.rows());
  if (interior) sol.constant = coef(m - 1);

  // Misfit on the collocation nodes and on a rotated, finer check grid.
  const Eigen::VectorXd misfit = a * coef - b;
  double worst = misfit.cwiseAbs().maxCoeff();
  const int check_order = quad.order() + 3;
  const AngularGrid check = build_angular_grid(check_order, spec.frame(), kPi / (2.0 * check_order));
  const Points check_nodes = boundary_points(spec, check);
  std::vector<double> check_misfit(static_cast<std::size_t>(check_nodes.rows()));
#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < check_nodes.rows(); ++i)
    check_misfit[static_cast<std::size_t>(i)] =
        std::abs(sol.jet(Vec3(check_nodes.row(i)), JetOrder::Value).u - problem.dirichlet);
  for (double v : check_misfit) worst = std::max(worst, v);
  sol.fitResidual = worst;
  if (!(worst <= tolerance)) {
    std::ostringstream msg;
    msg << "boundary misfit " << worst << " exceeds tolerance " << tolerance << " (condition estimate "
        << sol.conditionEstimate << ", rank " << sol.rank << ")";
    throw SolverFailure(msg.str(), sol.conditionEstimate);
  }
  return sol;
}

}  // namespace

HarmonicSolution solve_exterior(const DomainSpec& spec, const SurfaceQuadrature& quad, double c,
                                const SolverOptions& opts) {
  if (!(c > 0.0) || !std::isfinite(c)) throw PreconditionError("exterior problem needs boundary value c > 0");
  return solve_impl(spec, quad, ProblemSpec::exterior(c), opts);
}

HarmonicSolution solve_interior(const DomainSpec& spec, const SurfaceQuadrature& quad, double c, double d,
                                const SolverOptions& opts) {
  if (!(d > 0.0) || !std::isfinite(d)) throw PreconditionError("interior problem needs flux density d > 0");
  if (!std::isfinite(c)) throw PreconditionError("interior problem needs a finite boundary value");
  return solve_impl(spec, quad, ProblemSpec::interior(c, d), opts);
}

HarmonicSolution solve(const DomainSpec& spec, const SurfaceQuadrature& quad, const ProblemSpec& problem,
                       const SolverOptions& opts) {
  if (problem.is_interior()) return solve_interior(spec, quad, problem.dirichlet, problem.flux, opts);
  return solve_exterior(spec, quad, problem.dirichlet, opts);
}

PointJet evaluate(const HarmonicSolution& sol, const Vec3& x, JetOrder order) {
  if (!sol.in_region(x)) {
    std::ostringstream msg;
    msg << "point (" << x.x() << ", " << x.y() << ", " << x.z() << ") is outside the solution's region ("
        << (sol.problem.is_interior() ? "closed domain minus the origin" : "closed exterior") << ")";
    throw OutOfRegionError(msg.str());
  }
  return sol.jet(x, order);
}

DecayReport decay_report(const HarmonicSolution& sol, const std::vector<double>& radii, int direction_order) {
  if (sol.problem.is_interior()) throw PreconditionError("decay report needs an exterior solution");
  if (radii.size() < 4) throw InsufficientSamplesError("decay report needs at least 4 radii");
  const double enclosing = sol.domain.enclosing_radius();
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] >= 2.0 * enclosing)) throw PreconditionError("decay radii must be at least twice the enclosing radius");
    if (i > 0 && !(radii[i] > radii[i - 1])) throw PreconditionError("decay radii must be strictly increasing");
  }
  const AngularGrid grid = build_angular_grid(direction_order);
  const double total = pairwise_sum(grid.weights);
  DecayReport rep;
  rep.sampleRadii = radii;
  std::vector<double> lr, lu, lg, lh;
  for (double r : radii) {
    Eigen::VectorXd uv(grid.size()), gv(grid.size()), hv(grid.size());
#pragma omp parallel for schedule(static)
    for (Eigen::Index k = 0; k < grid.size(); ++k) {
      const PointJet j = sol.jet(r * Vec3(grid.directions.row(k)), JetOrder::Hessian);
      uv(k) = j.u;
      gv(k) = j.grad.norm();
      hv(k) = j.hess.norm();
    }
    rep.meanValue.push_back(weighted_sum(grid.weights, uv) / total);
    rep.meanGradient.push_back(weighted_sum(grid.weights, gv) / total);
    rep.meanHessian.push_back(weighted_sum(grid.weights, hv) / total);
    lr.push_back(std::log(r));
    lu.push_back(std::log(rep.meanValue.back()));
    lg.push_back(std::log(rep.meanGradient.back()));
    lh.push_back(std::log(rep.meanHessian.back()));
  }
  rep.fittedExponent = fit_slope(lr, lu);
  rep.gradientExponent = fit_slope(lr, lg);
  rep.hessianExponent = fit_slope(lr, lh);
  return rep;
}

}  // namespace potential
