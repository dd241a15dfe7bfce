#pragma once

#include "potential/core.hpp"
#include "potential/hyperdual.hpp"

#include <cmath>
#include <vector>

namespace potential {

enum class DomainKind { Sphere, Ellipsoid, StarShaped };

/// One real spherical-harmonic term of a star-shaped radial function.
/// Orthonormal real harmonics without the Condon-Shortley phase;
/// order > 0 selects cos(m phi), order < 0 selects sin(|m| phi).
struct HarmonicTerm {
  int degree = 0;
  int order = 0;
  double coefficient = 0.0;
};

/// Smooth closed surface given as a radial graph x = center + rho(w) w over the unit sphere.
struct DomainSpec {
  DomainKind kind = DomainKind::Sphere;
  double radius = 1.0;
  Vec3 axes = Vec3::Ones();
  std::vector<HarmonicTerm> terms;
  /// Smoothness guard for star-shaped surfaces.
  int maxDegree = 8;
  double rhoMin = 1e-2;
  Vec3 center = Vec3::Zero();

  static DomainSpec sphere(double r, const Vec3& center = Vec3::Zero());
  static DomainSpec ellipsoid(double a, double b, double c, const Vec3& center = Vec3::Zero());
  static DomainSpec star_shaped(std::vector<HarmonicTerm> terms, int max_degree = 8);

  /// Throws InvalidDomainError when an invariant is violated.
  void validate() const;

  /// Orthonormal frame whose third column is the pole of the angular grids.
  /// Ellipsoids put the pole on their longest axis.
  Mat3 frame() const;

  /// Radius of the surface in world direction w (unit), measured from the center.
  template <typename Scalar>
  Scalar rho(const Vector3<Scalar>& w) const;

  double rho(const Vec3& w) const { return rho<double>(w); }

  /// Signed radial excess |x - center| - rho(dir); negative inside.
  double radial_excess(const Vec3& x) const;

  /// Distance from the origin to the surface along the unit ray w.
  double ray_boundary_radius(const Vec3& w) const;

  /// Radius of a ball about the origin containing the closed domain.
  double enclosing_radius() const;

  /// Same surface dilated by factor about the center.
  DomainSpec scaled(double factor) const;
};

/// Real orthonormal spherical harmonic as a polynomial in the unit vector w.
template <typename Scalar>
Scalar real_spherical_harmonic(int degree, int order, const Vector3<Scalar>& w);

/// Tensor grid on the unit sphere: Gauss-Legendre in cos(theta), trapezoid in phi.
struct AngularGrid {
  int order = 0;
  Mat3 frame = Mat3::Identity();
  Eigen::VectorXd theta;
  Eigen::VectorXd phi;
  Points directions;
  /// Solid-angle weights; they sum to 4 pi.
  Eigen::VectorXd weights;

  Eigen::Index size() const { return weights.size(); }
};

AngularGrid build_angular_grid(int order, const Mat3& frame = Mat3::Identity(), double phi_offset = 0.0);

/// Quadrature on the boundary surface with outward normals and mean curvature
/// H = sum of principal curvatures, positive on spheres.
struct SurfaceQuadrature {
  AngularGrid grid;
  Points nodes;
  Eigen::VectorXd weights;
  Points normals;
  Eigen::VectorXd meanCurvature;

  int order() const { return grid.order; }
  Eigen::Index size() const { return weights.size(); }
  double area() const;
};

inline constexpr int kMinQuadratureOrder = 6;

SurfaceQuadrature build_quadrature(const DomainSpec& spec, int order);

/// |S^{n-1}| for any n >= 2.
double unit_sphere_area(int n);

/// Closed forms for balls in any dimension n >= 3.
struct RadialGeometry {
  int n = 3;
  double r0 = 1.0;

  RadialGeometry(int dimension, double radius);
  double sphere_area() const { return unit_sphere_area(n); }
  /// a_n = 1 / ((n - 2) |S^{n-1}|).
  double green_constant() const { return 1.0 / ((n - 2) * sphere_area()); }
};

struct RadialProblem {
  bool interior = false;
  double dirichlet = 1.0;
  double flux = 1.0;

  static RadialProblem exterior(double c = 1.0) { return {false, c, 0.0}; }
  static RadialProblem interior_problem(double d, double c = 0.0) { return {true, c, d}; }
};

struct RadialValues {
  double u;
  double gradNorm;
  /// Second derivative along the radius, u_rr.
  double hessRadial;
  /// Signed du/dr.
  double radialDerivative;
};

RadialValues radial_solution(const RadialGeometry& geom, const RadialProblem& problem, double r);

// ---------------------------------------------------------------------------

template <typename Scalar>
Scalar real_spherical_harmonic(int degree, int order, const Vector3<Scalar>& w) {
  using std::sqrt;
  const int m = order < 0 ? -order : order;
  // (x + i y)^m = sin^m(theta) e^{i m phi}
  Scalar re(1.0);
  Scalar im(0.0);
  for (int k = 0; k < m; ++k) {
    const Scalar nre = re * w.x() - im * w.y();
    const Scalar nim = re * w.y() + im * w.x();
    re = nre;
    im = nim;
  }
  // Q_l^m(z) = d^m P_l / dz^m, so that P_l^m = sin^m(theta) Q_l^m(cos theta).
  const Scalar z = w.z();
  double qmm_value = 1.0;
  for (int k = 1; k <= m; ++k) qmm_value *= (2.0 * k - 1.0);
  Scalar q_prev(qmm_value);
  Scalar q = q_prev;
  if (degree > m) {
    Scalar q_curr = z * Scalar((2.0 * m + 1.0) * qmm_value);
    for (int l = m + 2; l <= degree; ++l) {
      Scalar q_next = (Scalar(2.0 * l - 1.0) * z * q_curr - Scalar(l + m - 1.0) * q_prev) / Scalar(double(l - m));
      q_prev = q_curr;
      q_curr = q_next;
    }
    q = q_curr;
  }
  double ratio = 1.0;  // (l - m)! / (l + m)!
  for (int k = degree - m + 1; k <= degree + m; ++k) ratio /= k;
  double norm = std::sqrt((2.0 * degree + 1.0) / (4.0 * kPi) * ratio);
  if (m != 0) norm *= std::sqrt(2.0);
  const Scalar angular = order > 0 ? re : (order < 0 ? im : Scalar(1.0));
  return Scalar(norm) * q * angular;
}

template <typename Scalar>
Scalar DomainSpec::rho(const Vector3<Scalar>& w) const {
  using std::sqrt;
  switch (kind) {
    case DomainKind::Sphere:
      return Scalar(radius);
    case DomainKind::Ellipsoid: {
      const Scalar q = w.x() * w.x() / Scalar(axes.x() * axes.x()) + w.y() * w.y() / Scalar(axes.y() * axes.y()) +
                       w.z() * w.z() / Scalar(axes.z() * axes.z());
      return Scalar(1.0) / sqrt(q);
    }
    case DomainKind::StarShaped: {
      Scalar sum(0.0);
      for (const auto& t : terms) sum += Scalar(t.coefficient) * real_spherical_harmonic<Scalar>(t.degree, t.order, w);
      return sum;
    }
  }
  return Scalar(0.0);
}

}  // namespace potential
