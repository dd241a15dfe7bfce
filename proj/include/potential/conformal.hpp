#pragma once

#include "potential/core.hpp"
#include "potential/harmonic.hpp"
#include "potential/levelset.hpp"

#include <cmath>

namespace potential {

// Quantities of the conformal metric g = u^{2/(n-2)} delta and f = log u, all
// assembled from Euclidean (u, Du, D2u). The dimension n enters only through
// the exponents, so the scalar closed forms accept any n >= 3; tensor
// quantities are fixed at n = 3.

/// |grad f|_g^2 = |Du|^2 u^{-2(n-1)/(n-2)}.
template <typename Scalar>
Scalar p_function(Scalar u, Scalar grad_norm, int n = kDim) {
  using std::pow;
  if (!(u > Scalar(0))) throw DomainError("p_function: needs u > 0");
  return grad_norm * grad_norm * pow(u, Scalar(-2.0 * (n - 1) / (n - 2)));
}

template <typename Scalar>
Scalar p_function(Scalar u, const Vector3<Scalar>& du, int n = kDim) {
  return p_function<Scalar>(u, du.norm(), n);
}

template <typename Scalar>
struct ConformalHessian {
  /// Components of nabla^2 f in Euclidean coordinates.
  Matrix3<Scalar> components;
  /// |nabla^2 f|_g.
  Scalar hessFNorm;
  /// |Lap_g f|; zero for harmonic u.
  Scalar laplacianResidual;
  /// e^{f/(n-2)} = u^{1/(n-2)}, the length scale of g.
  Scalar hgScale;
};

template <typename Scalar>
ConformalHessian<Scalar> hess_f_conformal(Scalar u, const Vector3<Scalar>& du, const Matrix3<Scalar>& d2u) {
  constexpr int n = kDim;
  using std::pow;
  using std::sqrt;
  if (!(u > Scalar(0))) throw DomainError("hess_f_conformal: needs u > 0");
  const Scalar k(n - 2.0);
  const Vector3<Scalar> df = du / u;
  const Matrix3<Scalar> d2f = d2u / u - df * df.transpose();
  const Scalar df2 = df.squaredNorm();
  ConformalHessian<Scalar> out;
  out.components = d2f - (Scalar(2) * df * df.transpose() - df2 * Matrix3<Scalar>::Identity()) / k;
  const Scalar e2 = pow(u, Scalar(-2.0) / k);  // e^{-2f/(n-2)}
  out.hessFNorm = sqrt(e2 * e2 * out.components.squaredNorm());
  // Lap_g f = e^{-2f/(n-2)} g-trace; with the Christoffel correction it equals e^{-2f/(n-2)} (Lap f + |Df|^2).
  out.laplacianResidual = std::abs(e2 * out.components.trace());
  out.hgScale = pow(u, Scalar(1.0) / k);
  return out;
}

/// H_g / (n-1) = e^{-f/(n-2)} (H/(n-1) - |Df|/(n-2)), returned as H_g.
template <typename Scalar>
Scalar mean_curvature_conformal(Scalar h, Scalar u, Scalar grad_norm, int n = kDim) {
  using std::pow;
  if (!(u > Scalar(0))) throw DomainError("mean_curvature_conformal: needs u > 0");
  if (!(grad_norm > Scalar(0))) throw DomainError("mean_curvature_conformal: critical point (|Du| = 0)");
  const Scalar k(n - 2.0);
  return Scalar(n - 1.0) * pow(u, Scalar(-1.0) / k) * (h / Scalar(n - 1.0) - grad_norm / (u * k));
}

/// H_g = nabla^2 f(grad f, grad f) / |grad f|_g^3, valid where Lap_g f = 0.
template <typename Scalar>
Scalar mean_curvature_conformal_from_hessian(Scalar u, const Vector3<Scalar>& du, const Matrix3<Scalar>& d2u) {
  using std::pow;
  constexpr int n = kDim;
  const ConformalHessian<Scalar> h = hess_f_conformal<Scalar>(u, du, d2u);
  const Vector3<Scalar> df = du / u;
  const Scalar norm = df.norm();
  if (!(norm > Scalar(0))) throw DomainError("mean_curvature_conformal_from_hessian: critical point");
  return pow(u, Scalar(-1.0) / Scalar(n - 2.0)) * df.dot(h.components * df) / (norm * norm * norm);
}

template <typename Scalar>
struct QuasiEinsteinResidual {
  /// Max component of Ric_g + nabla^2 f + df df/(n-2) - |grad f|_g^2 g/(n-2).
  Scalar tensorResidualNorm;
  Scalar laplacianResidual;
  /// |R_g/(n-1) - |grad f|_g^2/(n-2)|.
  Scalar scalarCurvatureResidual;
  Scalar scalarCurvature;
  Scalar pFunction;
};

template <typename Scalar>
QuasiEinsteinResidual<Scalar> quasi_einstein_residual(Scalar u, const Vector3<Scalar>& du,
                                                      const Matrix3<Scalar>& d2u) {
  constexpr int n = kDim;
  using std::pow;
  if (!(u > Scalar(0))) throw DomainError("quasi_einstein_residual: needs u > 0");
  const Scalar k(n - 2.0);
  const Matrix3<Scalar> id = Matrix3<Scalar>::Identity();
  const Vector3<Scalar> df = du / u;
  const Matrix3<Scalar> dfdf = df * df.transpose();
  const Matrix3<Scalar> d2f = d2u / u - dfdf;
  const Scalar df2 = df.squaredNorm();
  const Scalar lap_f = d2f.trace();
  const Scalar e2 = pow(u, Scalar(2.0) / k);  // g = e2 delta
  const Matrix3<Scalar> ric = -d2f + dfdf / k - (lap_f + df2) / k * id;
  const ConformalHessian<Scalar> hess = hess_f_conformal<Scalar>(u, du, d2u);
  const Scalar p = p_function<Scalar>(u, du, n);
  const Matrix3<Scalar> residual = ric + hess.components + dfdf / k - p / k * e2 * id;
  QuasiEinsteinResidual<Scalar> out;
  out.tensorResidualNorm = residual.cwiseAbs().maxCoeff();
  out.laplacianResidual = hess.laplacianResidual;
  out.scalarCurvature = ric.trace() / e2;
  out.scalarCurvatureResidual = std::abs(out.scalarCurvature / Scalar(n - 1.0) - p / k);
  out.pFunction = p;
  return out;
}

/// Pointwise conformal data at one field point (n = 3).
struct ConformalPointState {
  double f = 0.0;
  Vec3 gradF = Vec3::Zero();
  double pFunction = 0.0;
  double hessFNorm = 0.0;
  double hgScale = 1.0;
  double laplacianResidual = 0.0;
  Mat3 hessF = Mat3::Zero();
};

ConformalPointState conformal_state(const PointJet& jet);

/// Checked evaluation of the quasi-Einstein residual of a solution at x.
QuasiEinsteinResidual<double> quasi_einstein_residual(const HarmonicSolution& sol, const Vec3& x);

/// Both sides of the Euclidean/conformal rewriting of the integral-criterion integrand on {u = c}:
/// int |Du|^2 [H/(n-1) - |Du|/((n-2)u)] dsigma = c^{n/(n-2)} int |grad f|_g^2 H_g/(n-1) dsigma_g.
struct RewritingIdentity {
  double euclidean = 0.0;
  double conformal = 0.0;
  double relativeDifference = 0.0;
};

RewritingIdentity rewriting_identity(const LevelSet& ls);

/// dsigma_g = u^{(n-1)/(n-2)} dsigma on a level set.
Eigen::VectorXd conformal_area_weights(const LevelSet& ls);

}  // namespace potential
