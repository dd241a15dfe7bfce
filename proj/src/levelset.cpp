#include "potential/levelset.hpp"

#include "potential/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

namespace potential {

double LevelSet::area() const { return pairwise_sum(weights); }

Vec3 LevelSet::centroid() const {
  Vec3 c;
  for (int a = 0; a < 3; ++a) c(a) = weighted_sum(weights, nodes.col(a)) / area();
  return c;
}

double LevelSet::sphericity() const {
  const Vec3 c = centroid();
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (Eigen::Index i = 0; i < size(); ++i) {
    const double r = (Vec3(nodes.row(i)) - c).norm();
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  return hi / lo - 1.0;
}

void LevelSet::require_regular() const {
  if (regular) return;
  std::ostringstream msg;
  msg << "level set {u = " << level << "} is not regular (min |Du| = " << (size() ? uGrad.minCoeff() : 0.0) << ")";
  throw IrregularLevelSetError(msg.str(), level);
}

namespace {

struct RayResult {
  double radius;
  bool monotone;
};

// Root of u(r w) = c along a ray; u decreases outward for both problem kinds.
RayResult solve_ray(const HarmonicSolution& sol, const Vec3& w, double c, const ExtractionOptions& opts) {
  const bool interior = sol.problem.is_interior();
  const double rb = sol.domain.ray_boundary_radius(w);
  auto value = [&](double r) { return sol.jet(r * w, JetOrder::Value).u; };

  double lo = rb;
  double hi = rb;
  if (!interior) {
    // Nudge inward while the boundary misfit leaves u below the level.
    int guard = 0;
    while (value(lo) < c && guard++ < 8) lo *= 0.97;
    if (value(lo) < c) return {lo, false};
    hi = lo;
    guard = 0;
    while (value(hi) >= c && guard++ < 200) {
      lo = hi;
      hi *= 2.0;
    }
    if (value(hi) >= c) return {hi, false};
  } else {
    int guard = 0;
    while (value(hi) > c && guard++ < 8) hi *= 1.03;
    if (value(hi) > c) return {hi, false};
    lo = hi;
    guard = 0;
    while (value(lo) <= c && guard++ < 200) {
      hi = lo;
      lo *= 0.5;
    }
    if (value(lo) <= c) return {lo, false};
  }

  // Monotonicity witness across the bracket.
  double prev = std::numeric_limits<double>::infinity();
  for (int s = 0; s <= opts.monotonicitySamples; ++s) {
    const double r = lo + (hi - lo) * s / opts.monotonicitySamples;
    const PointJet j = sol.jet(r * w, JetOrder::Gradient);
    if (!(j.u < prev) || !(j.grad.dot(w) < 0.0)) return {r, false};
    prev = j.u;
  }

  // Safeguarded Newton on g(r) = u(r w) - c with bracket [lo, hi], g(lo) > 0 > g(hi).
  double r = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    const PointJet j = sol.jet(r * w, JetOrder::Gradient);
    const double g = j.u - c;
    if (g > 0.0) lo = r;
    else if (g < 0.0) hi = r;
    else break;
    const double dg = j.grad.dot(w);
    double next = r - g / dg;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double step = std::abs(next - r);
    r = next;
    if (step <= opts.radiusTolerance * r || hi - lo <= opts.radiusTolerance * r) break;
  }
  return {r, true};
}

void fill_derivatives(const HarmonicSolution& sol, LevelSet& ls, Eigen::Index k) {
  const PointJet j = sol.jet(Vec3(ls.nodes.row(k)), JetOrder::Hessian);
  const double g = j.grad.norm();
  ls.uValue(k) = j.u;
  ls.uGrad(k) = g;
  ls.gradient.row(k) = j.grad.transpose();
  ls.hessian[static_cast<std::size_t>(k)] = j.hess;
  const Vec3 nu = g > 0.0 ? Vec3(-j.grad / g) : Vec3::Zero();
  ls.normals.row(k) = nu.transpose();
  ls.meanCurvH(k) = g > 0.0 ? nu.dot(j.hess * nu) / g : std::numeric_limits<double>::quiet_NaN();
}

void allocate(LevelSet& ls, Eigen::Index n) {
  ls.radius.resize(n);
  ls.nodes.resize(n, 3);
  ls.weights.resize(n);
  ls.normals.resize(n, 3);
  ls.uValue.resize(n);
  ls.uGrad.resize(n);
  ls.meanCurvH.resize(n);
  ls.gradient.resize(n, 3);
  ls.hessian.assign(static_cast<std::size_t>(n), Mat3::Zero());
}

}  // namespace

LevelSet extract_level_set(const HarmonicSolution& sol, double c, int order, const ExtractionOptions& opts) {
  if (order < kMinQuadratureOrder) throw PreconditionError("level-set order below the quadrature minimum");
  if (!std::isfinite(c)) throw PreconditionError("level value must be finite");
  if (sol.problem.is_interior()) {
    if (!(c >= sol.problem.dirichlet - 1e-12 * std::max(1.0, std::abs(sol.problem.dirichlet))))
      throw PreconditionError("interior level must be >= the boundary value");
  } else if (!(c > 0.0 && c <= sol.problem.dirichlet * (1.0 + 1e-12))) {
    throw PreconditionError("exterior level must lie in (0, boundary value]");
  }

  LevelSet ls;
  ls.level = c;
  ls.grid = build_angular_grid(order, sol.domain.frame());
  const Eigen::Index n = ls.grid.size();
  allocate(ls, n);
  std::vector<char> bad(static_cast<std::size_t>(n), 0);
#pragma omp parallel for schedule(dynamic, 16)
  for (Eigen::Index k = 0; k < n; ++k) {
    const Vec3 w = ls.grid.directions.row(k);
    const RayResult ray = solve_ray(sol, w, c, opts);
    bad[static_cast<std::size_t>(k)] = ray.monotone ? 0 : 1;
    ls.radius(k) = ray.radius;
    ls.nodes.row(k) = (ray.radius * w).transpose();
    fill_derivatives(sol, ls, k);
    const double cosine = std::abs(Vec3(ls.normals.row(k)).dot(w));
    ls.weights(k) = ls.grid.weights(k) * ray.radius * ray.radius / cosine;
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    if (bad[static_cast<std::size_t>(k)]) {
      const Vec3 w = ls.grid.directions.row(k);
      std::ostringstream msg;
      msg << "u is not monotone along the ray (" << w.x() << ", " << w.y() << ", " << w.z() << ") near {u = " << c
          << "}; the level set is not star-shaped about the origin";
      throw NonStarShapedLevelSetError(msg.str());
    }
  }
  ls.regular = ls.uGrad.minCoeff() > kRegularityThreshold;
  return ls;
}

LevelSet boundary_level_set(const HarmonicSolution& sol, int order) {
  const SurfaceQuadrature quad = build_quadrature(sol.domain, order);
  LevelSet ls;
  ls.level = sol.problem.dirichlet;
  ls.grid = quad.grid;
  const Eigen::Index n = quad.size();
  allocate(ls, n);
  ls.nodes = quad.nodes;
  ls.weights = quad.weights;
#pragma omp parallel for schedule(static)
  for (Eigen::Index k = 0; k < n; ++k) {
    ls.radius(k) = (Vec3(quad.nodes.row(k)) - sol.domain.center).norm();
    fill_derivatives(sol, ls, k);
  }
  // Geometry is exact on the boundary; keep its normals and curvature.
  ls.normals = quad.normals;
  ls.meanCurvH = quad.meanCurvature;
  ls.regular = ls.uGrad.minCoeff() > kRegularityThreshold;
  return ls;
}

Integral surface_integral(const LevelSet& ls, const Eigen::VectorXd& values) {
  if (values.size() != ls.size()) {
    std::ostringstream msg;
    msg << "surface_integral: " << values.size() << " values for " << ls.size() << " nodes";
    throw PreconditionError(msg.str());
  }
  Integral out;
  out.value = weighted_sum(ls.weights, values);
  // Every other longitude with doubled weight is itself a valid rule.
  const Eigen::Index nphi = 2 * ls.order();
  Eigen::VectorXd coarse_w = Eigen::VectorXd::Zero(ls.size());
  for (Eigen::Index k = 0; k < ls.size(); ++k)
    if ((k % nphi) % 2 == 0) coarse_w(k) = 2.0 * ls.weights(k);
  out.errorEstimate = std::abs(out.value - weighted_sum(coarse_w, values));
  return out;
}

namespace {

double gauss_pass(const HarmonicSolution& sol, const LevelIntegrand& integrand, double c_min, double c_max,
                  int levels, int order, std::vector<double>* nodes_out, std::vector<double>* inner_out) {
  const GaussRule rule = gauss_legendre(levels, c_min, c_max);
  Eigen::VectorXd inner(levels);
  for (int i = 0; i < levels; ++i) {
    const LevelSet ls = extract_level_set(sol, rule.nodes(i), order);
    ls.require_regular();
    const Eigen::VectorXd v = integrand(ls);
    inner(i) = surface_integral(ls, Eigen::VectorXd(v.cwiseQuotient(ls.uGrad))).value;
    if (nodes_out) nodes_out->push_back(rule.nodes(i));
    if (inner_out) inner_out->push_back(inner(i));
  }
  return weighted_sum(rule.weights, inner);
}

}  // namespace

CoareaResult coarea_volume_integral(const HarmonicSolution& sol, const LevelIntegrand& integrand, double c_min,
                                    double c_max, int levels, int order) {
  if (levels < 8) throw PreconditionError("coarea integration needs at least 8 levels");
  if (!(c_min < c_max)) throw PreconditionError("coarea integration needs c_min < c_max");
  CoareaResult out;
  out.value = gauss_pass(sol, integrand, c_min, c_max, levels, order, &out.levels, &out.levelIntegrals);
  const double coarse = gauss_pass(sol, integrand, c_min, c_max, levels / 2, order, nullptr, nullptr);
  out.errorEstimate = std::abs(out.value - coarse);
  return out;
}

void write_level_set_csv(const LevelSet& ls, std::ostream& out) {
  const auto old = out.precision(17);
  out << "theta,phi,radius,x,y,z,H,gradNorm,weight\n";
  for (Eigen::Index k = 0; k < ls.size(); ++k) {
    out << ls.grid.theta(k) << ',' << ls.grid.phi(k) << ',' << ls.radius(k) << ',' << ls.nodes(k, 0) << ','
        << ls.nodes(k, 1) << ',' << ls.nodes(k, 2) << ',' << ls.meanCurvH(k) << ',' << ls.uGrad(k) << ','
        << ls.weights(k) << '\n';
  }
  out.precision(old);
}

LevelSet level_set_for(const HarmonicSolution& sol, double c, int order) {
  const double cd = sol.problem.dirichlet;
  if (std::abs(c - cd) <= 1e-12 * std::max(1.0, std::abs(cd))) return boundary_level_set(sol, order);
  return extract_level_set(sol, c, order);
}

}  // namespace potential
