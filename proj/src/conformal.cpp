#include "potential/conformal.hpp"

#include "potential/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace potential {

ConformalPointState conformal_state(const PointJet& jet) {
  if (!(jet.u > 0.0)) throw DomainError("conformal_state: needs u > 0");
  const ConformalHessian<double> h = hess_f_conformal<double>(jet.u, jet.grad, jet.hess);
  ConformalPointState s;
  s.f = std::log(jet.u);
  s.gradF = jet.grad / jet.u;
  s.pFunction = p_function<double>(jet.u, jet.grad);
  s.hessFNorm = h.hessFNorm;
  s.hgScale = h.hgScale;
  s.laplacianResidual = h.laplacianResidual;
  s.hessF = h.components;
  return s;
}

QuasiEinsteinResidual<double> quasi_einstein_residual(const HarmonicSolution& sol, const Vec3& x) {
  const PointJet j = evaluate(sol, x, JetOrder::Hessian);
  return quasi_einstein_residual<double>(j.u, j.grad, j.hess);
}

Eigen::VectorXd conformal_area_weights(const LevelSet& ls) {
  constexpr double k = kDim - 2.0;
  Eigen::VectorXd w(ls.size());
  for (Eigen::Index i = 0; i < ls.size(); ++i) w(i) = ls.weights(i) * std::pow(ls.uValue(i), (kDim - 1.0) / k);
  return w;
}

RewritingIdentity rewriting_identity(const LevelSet& ls) {
  ls.require_regular();
  constexpr double n = kDim;
  constexpr double k = n - 2.0;
  const Eigen::Index m = ls.size();
  Eigen::VectorXd euclid(m);
  Eigen::VectorXd conf(m);
  Eigen::VectorXd size_term(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double u = ls.uValue(i);
    const double g = ls.uGrad(i);
    size_term(i) = g * g * g / (k * u);
    euclid(i) = g * g * (ls.meanCurvH(i) / (n - 1.0) - g / (k * u));
    conf(i) = p_function<double>(u, g) * mean_curvature_conformal<double>(ls.meanCurvH(i), u, g) / (n - 1.0);
  }
  RewritingIdentity out;
  out.euclidean = weighted_sum(ls.weights, euclid);
  out.conformal = std::pow(ls.level, n / k) * weighted_sum(conformal_area_weights(ls), conf);
  // Both sides vanish on round level sets; measure against the size of the subtracted term there.
  const double floor = 1e-10 * weighted_sum(ls.weights, size_term);
  const double scale = std::max({std::abs(out.euclidean), std::abs(out.conformal), floor});
  out.relativeDifference = std::abs(out.euclidean - out.conformal) / scale;
  return out;
}

}  // namespace potential
