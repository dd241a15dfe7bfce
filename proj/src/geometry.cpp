#include "potential/geometry.hpp"

#include "potential/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace potential {

DomainSpec DomainSpec::sphere(double r, const Vec3& center) {
  DomainSpec spec;
  spec.kind = DomainKind::Sphere;
  spec.radius = r;
  spec.center = center;
  return spec;
}

DomainSpec DomainSpec::ellipsoid(double a, double b, double c, const Vec3& center) {
  DomainSpec spec;
  spec.kind = DomainKind::Ellipsoid;
  spec.axes = Vec3(a, b, c);
  spec.center = center;
  return spec;
}

DomainSpec DomainSpec::star_shaped(std::vector<HarmonicTerm> terms, int max_degree) {
  DomainSpec spec;
  spec.kind = DomainKind::StarShaped;
  spec.terms = std::move(terms);
  spec.maxDegree = max_degree;
  return spec;
}

namespace {

double min_rho_on_grid(const DomainSpec& spec, int order) {
  const AngularGrid grid = build_angular_grid(order);
  double lo = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < grid.size(); ++i) lo = std::min(lo, spec.rho(Vec3(grid.directions.row(i))));
  return lo;
}

double max_rho_on_grid(const DomainSpec& spec, int order) {
  const AngularGrid grid = build_angular_grid(order);
  double hi = 0.0;
  for (Eigen::Index i = 0; i < grid.size(); ++i) hi = std::max(hi, spec.rho(Vec3(grid.directions.row(i))));
  return hi;
}

int star_check_order(const DomainSpec& spec) {
  int deg = 0;
  for (const auto& t : spec.terms) deg = std::max(deg, t.degree);
  return std::max(24, 4 * deg + 8);
}

}  // namespace

void DomainSpec::validate() const {
  if (!center.allFinite()) throw InvalidDomainError("domain center must be finite");
  switch (kind) {
    case DomainKind::Sphere:
      if (!(radius > 0.0) || !std::isfinite(radius)) throw InvalidDomainError("sphere radius must be positive");
      break;
    case DomainKind::Ellipsoid:
      if (!(axes.minCoeff() > 0.0) || !axes.allFinite())
        throw InvalidDomainError("ellipsoid semi-axes must be positive");
      break;
    case DomainKind::StarShaped: {
      if (terms.empty()) throw InvalidDomainError("star-shaped domain needs at least one coefficient");
      if (!(rhoMin > 0.0)) throw InvalidDomainError("rhoMin must be positive");
      for (const auto& t : terms) {
        if (t.degree < 0 || std::abs(t.order) > t.degree)
          throw InvalidDomainError("spherical-harmonic term needs degree >= |order|");
        if (t.degree > maxDegree) {
          std::ostringstream msg;
          msg << "spherical-harmonic degree " << t.degree << " exceeds the smoothness guard maxDegree=" << maxDegree;
          throw InvalidDomainError(msg.str());
        }
        if (!std::isfinite(t.coefficient)) throw InvalidDomainError("spherical-harmonic coefficient must be finite");
      }
      const double lo = min_rho_on_grid(*this, star_check_order(*this));
      if (!(lo >= rhoMin)) {
        std::ostringstream msg;
        msg << "radial function dips to " << lo << " below rhoMin=" << rhoMin;
        throw InvalidDomainError(msg.str());
      }
      break;
    }
  }
  if (!(radial_excess(Vec3::Zero()) < 0.0)) throw InvalidDomainError("origin must lie inside the domain");
}

Mat3 DomainSpec::frame() const {
  Mat3 r = Mat3::Identity();
  if (kind != DomainKind::Ellipsoid) return r;
  Eigen::Index longest = 2;
  if (axes.x() > axes.y() && axes.x() > axes.z()) longest = 0;
  else if (axes.y() > axes.x() && axes.y() > axes.z()) longest = 1;
  // Cyclic permutation keeps the frame right-handed.
  const Eigen::Index e1 = (longest + 1) % 3;
  const Eigen::Index e2 = (longest + 2) % 3;
  r.setZero();
  r(e1, 0) = 1.0;
  r(e2, 1) = 1.0;
  r(longest, 2) = 1.0;
  return r;
}

double DomainSpec::radial_excess(const Vec3& x) const {
  const Vec3 d = x - center;
  const double r = d.norm();
  if (r == 0.0) return -rho(Vec3(Vec3::UnitZ()));
  return r - rho(Vec3(d / r));
}

double DomainSpec::enclosing_radius() const {
  switch (kind) {
    case DomainKind::Sphere:
      return center.norm() + radius;
    case DomainKind::Ellipsoid:
      return center.norm() + axes.maxCoeff();
    case DomainKind::StarShaped:
      return center.norm() + 1.05 * max_rho_on_grid(*this, star_check_order(*this));
  }
  return 0.0;
}

double DomainSpec::ray_boundary_radius(const Vec3& w) const {
  if (center.isZero(0.0)) return rho(w);
  double lo = 0.0;
  double hi = enclosing_radius() * 1.01;
  for (int iter = 0; iter < 200 && hi - lo > 1e-15 * hi; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (radial_excess(mid * w) < 0.0) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

DomainSpec DomainSpec::scaled(double factor) const {
  DomainSpec out = *this;
  out.radius *= factor;
  out.axes *= factor;
  for (auto& t : out.terms) t.coefficient *= factor;
  out.rhoMin *= factor;
  return out;
}

AngularGrid build_angular_grid(int order, const Mat3& frame, double phi_offset) {
  if (order < 1) throw PreconditionError("angular grid order must be positive");
  const GaussRule gl = gauss_legendre(order);
  const int nphi = 2 * order;
  const Eigen::Index total = static_cast<Eigen::Index>(order) * nphi;
  AngularGrid grid;
  grid.order = order;
  grid.frame = frame;
  grid.theta.resize(total);
  grid.phi.resize(total);
  grid.directions.resize(total, 3);
  grid.weights.resize(total);
  const double dphi = 2.0 * kPi / nphi;
  for (int i = 0; i < order; ++i) {
    const double t = gl.nodes(i);
    const double theta = std::acos(t);
    const double s = std::sqrt(std::max(0.0, 1.0 - t * t));
    for (int j = 0; j < nphi; ++j) {
      const Eigen::Index k = static_cast<Eigen::Index>(i) * nphi + j;
      const double phi = phi_offset + dphi * j;
      grid.theta(k) = theta;
      grid.phi(k) = phi;
      const Vec3 local(s * std::cos(phi), s * std::sin(phi), t);
      grid.directions.row(k) = (frame * local).transpose();
      grid.weights(k) = gl.weights(i) * dphi;
    }
  }
  return grid;
}

double SurfaceQuadrature::area() const { return pairwise_sum(weights); }

namespace {

template <typename Scalar>
Vector3<Scalar> surface_point(const DomainSpec& spec, const Mat3& frame, Scalar theta, Scalar phi) {
  using std::cos;
  using std::sin;
  const Scalar st = sin(theta);
  const Vector3<Scalar> local(st * cos(phi), st * sin(phi), cos(theta));
  Vector3<Scalar> w;
  for (int a = 0; a < 3; ++a)
    w(a) = Scalar(frame(a, 0)) * local(0) + Scalar(frame(a, 1)) * local(1) + Scalar(frame(a, 2)) * local(2);
  const Scalar r = spec.rho<Scalar>(w);
  Vector3<Scalar> x;
  for (int a = 0; a < 3; ++a) x(a) = Scalar(spec.center(a)) + r * w(a);
  return x;
}

struct SurfaceDerivatives {
  Vec3 x, xt, xp, xtt, xtp, xpp;
};

SurfaceDerivatives differentiate(const DomainSpec& spec, const Mat3& frame, double theta, double phi) {
  using HD = HyperDual<double>;
  SurfaceDerivatives d;
  const auto tt = surface_point<HD>(spec, frame, HD(theta, 1.0, 1.0, 0.0), HD(phi));
  const auto pp = surface_point<HD>(spec, frame, HD(theta), HD(phi, 1.0, 1.0, 0.0));
  const auto tp = surface_point<HD>(spec, frame, HD(theta, 1.0, 0.0, 0.0), HD(phi, 0.0, 1.0, 0.0));
  for (int a = 0; a < 3; ++a) {
    d.x(a) = tt(a).re;
    d.xt(a) = tt(a).e1;
    d.xtt(a) = tt(a).e12;
    d.xp(a) = pp(a).e1;
    d.xpp(a) = pp(a).e12;
    d.xtp(a) = tp(a).e12;
  }
  return d;
}

}  // namespace

SurfaceQuadrature build_quadrature(const DomainSpec& spec, int order) {
  spec.validate();
  if (order < kMinQuadratureOrder) {
    std::ostringstream msg;
    msg << "quadrature order " << order << " below minimum " << kMinQuadratureOrder;
    throw PreconditionError(msg.str());
  }
  SurfaceQuadrature q;
  q.grid = build_angular_grid(order, spec.frame());
  const Eigen::Index n = q.grid.size();
  q.nodes.resize(n, 3);
  q.normals.resize(n, 3);
  q.weights.resize(n);
  q.meanCurvature.resize(n);
  bool degenerate = false;
#pragma omp parallel for schedule(static)
  for (Eigen::Index k = 0; k < n; ++k) {
    const SurfaceDerivatives d = differentiate(spec, q.grid.frame, q.grid.theta(k), q.grid.phi(k));
    Vec3 cross = d.xt.cross(d.xp);
    const double jac = cross.norm();
    Vec3 nu = cross / jac;
    // Radial graphs have r_theta x r_phi outward; guard against a folded parameterization.
    if (nu.dot(d.x - spec.center) <= 0.0) degenerate = true;
    const double e = d.xt.dot(d.xt);
    const double f = d.xt.dot(d.xp);
    const double g = d.xp.dot(d.xp);
    const double l = d.xtt.dot(nu);
    const double m = d.xtp.dot(nu);
    const double nn = d.xpp.dot(nu);
    q.nodes.row(k) = d.x.transpose();
    q.normals.row(k) = nu.transpose();
    q.meanCurvature(k) = -(e * nn - 2.0 * f * m + g * l) / (e * g - f * f);
    const double sin_theta = std::sin(q.grid.theta(k));
    q.weights(k) = q.grid.weights(k) * jac / sin_theta;
  }
  if (degenerate) throw InvalidDomainError("surface parameterization is not a radial graph (normal points inward)");
  if (spec.kind == DomainKind::Sphere) {
    // Closed forms; the differentiated values agree to roundoff.
    for (Eigen::Index k = 0; k < n; ++k) {
      q.normals.row(k) = q.grid.directions.row(k);
      q.meanCurvature(k) = 2.0 / spec.radius;
    }
  }
  return q;
}

double unit_sphere_area(int n) {
  if (n < 2) throw DomainError("unit sphere area needs n >= 2");
  return 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n);
}

RadialGeometry::RadialGeometry(int dimension, double radius) : n(dimension), r0(radius) {
  if (n < 3) throw DomainError("radial geometry needs n >= 3");
  if (!(r0 > 0.0)) throw DomainError("radial geometry needs r0 > 0");
}

RadialValues radial_solution(const RadialGeometry& geom, const RadialProblem& problem, double r) {
  const int n = geom.n;
  const double r0 = geom.r0;
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("radial_solution: need r > 0");
  const double k = n - 2.0;
  if (!problem.interior) {
    if (r < r0 * (1.0 - 1e-15)) throw DomainError("radial_solution: exterior problem needs r >= r0");
    const double c = problem.dirichlet;
    const double u = c * std::pow(r0 / r, k);
    const double ur = -c * k * std::pow(r0, k) * std::pow(r, 1.0 - n);
    const double urr = c * k * (n - 1.0) * std::pow(r0, k) * std::pow(r, -double(n));
    return {u, std::abs(ur), urr, ur};
  }
  if (r > r0 * (1.0 + 1e-15)) throw DomainError("radial_solution: interior problem needs r <= r0");
  const double d = problem.flux;
  // d |dB| a_n = d r0^{n-1} / (n-2), plus the constant that fixes u = c on the sphere.
  const double coeff = d * std::pow(r0, n - 1.0) / k;
  const double u = coeff * std::pow(r, -k) + (problem.dirichlet - d * r0 / k);
  const double ur = -d * std::pow(r0, n - 1.0) * std::pow(r, 1.0 - n);
  const double urr = d * (n - 1.0) * std::pow(r0, n - 1.0) * std::pow(r, -double(n));
  return {u, std::abs(ur), urr, ur};
}

}  // namespace potential
