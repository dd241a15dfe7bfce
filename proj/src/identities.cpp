#include "potential/identities.hpp"

#include "potential/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace potential {

namespace {

constexpr double kN = kDim;
constexpr double kK = kN - 2.0;

void check_shift(const WeightSpec& w) {
  if (w.kind == WeightKind::ShiftedLog && !(w.t > 0.0)) throw PreconditionError("shifted-log weight needs t > 0");
}

}  // namespace

double WeightSpec::phi(double f) const {
  if (kind == WeightKind::Linear) return f;
  check_shift(*this);
  const double s = std::exp(f) / t;
  if (!(s < 1.0)) throw DomainError("shifted-log weight evaluated at f >= log t");
  return std::log1p(-s);
}

double WeightSpec::dphi(double f) const {
  if (kind == WeightKind::Linear) return 1.0;
  check_shift(*this);
  const double s = std::exp(f) / t;
  return -s / (1.0 - s);
}

double WeightSpec::d2phi(double f) const {
  if (kind == WeightKind::Linear) return 0.0;
  check_shift(*this);
  const double s = std::exp(f) / t;
  return -s / ((1.0 - s) * (1.0 - s));
}

double WeightSpec::first_integral(double f) const { return (1.0 - dphi(f)) * std::exp(phi(f)); }

double WeightSpec::orbit_residual(double f) const {
  const double d = dphi(f);
  return d2phi(f) + d * d - d;
}

BochnerResidual bochner_residual(const PointJet& j) {
  if (!(j.u > 0.0)) throw DomainError("bochner_residual: needs u > 0");
  const double u = j.u;
  const Vec3& du = j.grad;
  const Mat3& d2u = j.hess;
  const double kp = (kN - 1.0) / kK;  // P = |Du|^2 u^{-2 kp}

  Vec3 lap_grad;
  for (int i = 0; i < 3; ++i) lap_grad(i) = j.third[i].trace();
  const double s = du.squaredNorm();
  const Vec3 ds = 2.0 * d2u * du;
  const double lap_s = 2.0 * d2u.squaredNorm() + 2.0 * du.dot(lap_grad);
  const double lap_u = d2u.trace();

  const double w = std::pow(u, -2.0 * kp);
  const Vec3 dw = -2.0 * kp * std::pow(u, -2.0 * kp - 1.0) * du;
  const double lap_w =
      -2.0 * kp * ((-2.0 * kp - 1.0) * std::pow(u, -2.0 * kp - 2.0) * s + std::pow(u, -2.0 * kp - 1.0) * lap_u);

  const Vec3 dp = w * ds + s * dw;
  const double lap_p = w * lap_s + 2.0 * ds.dot(dw) + s * lap_w;

  const Vec3 df = du / u;
  const double e2 = std::pow(u, -2.0 / kK);  // inverse metric factor
  const double hess_norm = hess_f_conformal<double>(u, du, d2u).hessFNorm;

  BochnerResidual out;
  out.lhs = e2 * (lap_p + df.dot(dp));
  out.rhs = 2.0 * hess_norm * hess_norm - e2 * dp.dot(df);
  out.residual = std::abs(out.lhs - out.rhs);
  return out;
}

BochnerResidual bochner_residual(const HarmonicSolution& sol, const Vec3& x) {
  return bochner_residual(evaluate(sol, x, JetOrder::Third));
}

BoundaryTerms boundary_terms(const LevelSet& ls) {
  ls.require_regular();
  const Eigen::Index m = ls.size();
  Eigen::VectorXd v3(m), vh(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double u = ls.uValue(i);
    const double g = ls.uGrad(i);
    const double p = p_function<double>(u, g);
    const double hg = mean_curvature_conformal<double>(ls.meanCurvH(i), u, g);
    const double dsg = std::pow(u, (kN - 1.0) / kK);  // dsigma_g / dsigma
    v3(i) = p * std::sqrt(p) * dsg;
    vh(i) = p * hg * dsg;
  }
  const Integral i3 = surface_integral(ls, v3);
  const Integral ih = surface_integral(ls, vh);
  BoundaryTerms out;
  out.f = std::log(ls.level);
  out.b3 = i3.value;
  out.bh = ih.value;
  out.errorEstimate = i3.errorEstimate + ih.errorEstimate;
  return out;
}

IdentityOptions refined(const IdentityOptions& opts, int steps) {
  IdentityOptions out = opts;
  for (int s = 0; s < steps; ++s) {
    out.levels *= 2;
    out.order = (3 * out.order + 1) / 2;
  }
  return out;
}

namespace {

// int_{a<f<b} e^{phi(f)} |nabla^2 f|_g^2 dmu_g by coarea over f-levels:
// dmu_g = u^{n/(n-2)} dmu and dmu = u dsigma df / |Du|.
double weighted_hessian_volume(const HarmonicSolution& sol, const std::function<double(double)>& weight, double a,
                               double b, int levels, int order, std::vector<double>* f_out,
                               std::vector<double>* inner_out) {
  const GaussRule rule = gauss_legendre(levels, a, b);
  Eigen::VectorXd inner(levels);
  for (int i = 0; i < levels; ++i) {
    const double f = rule.nodes(i);
    const LevelSet ls = extract_level_set(sol, std::exp(f), order);
    ls.require_regular();
    Eigen::VectorXd v(ls.size());
    for (Eigen::Index k = 0; k < ls.size(); ++k) {
      const double u = ls.uValue(k);
      const double h = hess_f_conformal<double>(u, Vec3(ls.gradient.row(k)), ls.hessian[static_cast<std::size_t>(k)])
                           .hessFNorm;
      v(k) = h * h * std::pow(u, kN / kK + 1.0) / ls.uGrad(k);
    }
    inner(i) = weight(f) * surface_integral(ls, v).value;
    if (f_out) f_out->push_back(f);
    if (inner_out) inner_out->push_back(inner(i));
  }
  return weighted_sum(rule.weights, inner);
}

void check_levels(const HarmonicSolution& sol, double a, double b) {
  if (!(a < b)) throw PreconditionError("identity check needs f-levels a < b");
  if (!std::isfinite(a) || !std::isfinite(b)) throw PreconditionError("identity check needs finite f-levels");
  (void)sol;
}

}  // namespace

IdentityResidual weighted_identity_check(const HarmonicSolution& sol, const WeightSpec& weight, double a, double b,
                                         const IdentityOptions& opts) {
  check_levels(sol, a, b);
  if (opts.levels < 2) throw PreconditionError("identity check needs at least 2 levels");
  if (weight.kind == WeightKind::ShiftedLog) {
    check_shift(weight);
    if (!(b < std::log(weight.t))) {
      std::ostringstream msg;
      msg << "shifted-log weight needs b < log t (b = " << b << ", log t = " << std::log(weight.t) << ")";
      throw PreconditionError(msg.str());
    }
  }

  IdentityResidual out;
  out.weight = weight;
  out.a = a;
  out.b = b;
  out.resolution = opts;

  const LevelSet la = extract_level_set(sol, std::exp(a), opts.order);
  const LevelSet lb = extract_level_set(sol, std::exp(b), opts.order);
  out.atA = boundary_terms(la);
  out.atB = boundary_terms(lb);
  out.firstIntegralAtA = weight.first_integral(a);
  out.firstIntegralAtB = weight.first_integral(b);

  const auto e_phi = [&](double f) { return std::exp(weight.phi(f)); };
  const double volume = weighted_hessian_volume(sol, e_phi, a, b, opts.levels, opts.order, &out.levelF,
                                                &out.levelIntegrals);
  const double coarse = weighted_hessian_volume(sol, e_phi, a, b, std::max(2, opts.levels / 2), opts.order,
                                                nullptr, nullptr);
  out.lhs = 2.0 * volume;

  const double k = weight.firstIntegralK();
  out.kTerm = k * (out.atB.b3 - out.atA.b3);
  out.upperTerm = 2.0 * e_phi(b) * out.atB.bh;
  out.lowerTerm = 2.0 * e_phi(a) * out.atA.bh;
  out.rhs = out.kTerm + out.upperTerm - out.lowerTerm;

  out.errorEstimate = 2.0 * std::abs(volume - coarse) + k * (out.atA.errorEstimate + out.atB.errorEstimate) +
                      2.0 * (e_phi(a) + e_phi(b)) * (out.atA.errorEstimate + out.atB.errorEstimate);
  // The ball makes both sides vanish; normalize against the size of the boundary data there.
  const double floor = 1e-8 * (out.atA.b3 + out.atB.b3);
  const double scale = std::max({std::abs(out.lhs), std::abs(out.rhs), floor});
  out.relResidual = std::abs(out.lhs - out.rhs) / scale;
  if (out.lhs < -(out.errorEstimate + floor)) {
    std::ostringstream msg;
    msg << "weighted Hessian volume term is negative (" << out.lhs << ") beyond its error bar " << out.errorEstimate;
    throw ConsistencyError(msg.str());
  }
  return out;
}

InteriorIdentityResidual interior_identity_check(const HarmonicSolution& sol, double c, double t,
                                                 const IdentityOptions& opts) {
  if (!sol.problem.is_interior()) throw PreconditionError("the interior identity needs an interior solution");
  if (!(c >= sol.problem.dirichlet && c > 0.0 && c < t))
    throw PreconditionError("interior identity needs max(0, boundary value) <= c < t");
  if (opts.levels < 2) throw PreconditionError("identity check needs at least 2 levels");
  InteriorIdentityResidual out;
  out.c = c;
  out.t = t;
  const LevelSet lc = level_set_for(sol, c, opts.order);
  const LevelSet lt = extract_level_set(sol, t, opts.order);
  out.atC = boundary_terms(lc);
  out.atT = boundary_terms(lt);
  const auto weight = [t](double f) { return 1.0 - std::exp(f) / t; };
  const double a = std::log(c);
  const double b = std::log(t);
  const double volume = weighted_hessian_volume(sol, weight, a, b, opts.levels, opts.order, nullptr, nullptr);
  const double coarse =
      weighted_hessian_volume(sol, weight, a, b, std::max(2, opts.levels / 2), opts.order, nullptr, nullptr);
  out.lhs = 2.0 * volume;
  out.rhs = out.atT.b3 - out.atC.b3 - (1.0 - c / t) * 2.0 * out.atC.bh;
  out.errorEstimate = 2.0 * std::abs(volume - coarse) + out.atT.errorEstimate + 3.0 * out.atC.errorEstimate;
  const double floor = 1e-8 * (out.atC.b3 + out.atT.b3);
  out.relResidual = std::abs(out.lhs - out.rhs) / std::max({std::abs(out.lhs), std::abs(out.rhs), floor});
  return out;
}

WitnessReport truncated_identity_witness(const HarmonicSolution& sol, double c, double epsilon,
                                        const IdentityOptions& opts) {
  if (sol.problem.is_interior()) throw PreconditionError("the truncated volume identity needs an exterior solution");
  if (!(epsilon > 0.0 && epsilon < c)) throw PreconditionError("cutoff level must satisfy 0 < eps < c");
  WitnessReport out;
  out.c = c;
  out.epsilon = epsilon;

  const LevelSet lc = extract_level_set(sol, c, opts.order);
  const LevelSet le = extract_level_set(sol, epsilon, opts.order);
  le.require_regular();
  double a1 = 0.0;
  double a3 = 0.0;
  const Eigen::VectorXd dsg = conformal_area_weights(le);
  for (Eigen::Index k = 0; k < le.size(); ++k) {
    const double u = le.uValue(k);
    a1 = std::max(a1, std::sqrt(p_function<double>(u, le.uGrad(k))));
    a3 = std::max(a3,
                  hess_f_conformal<double>(u, Vec3(le.gradient.row(k)), le.hessian[static_cast<std::size_t>(k)]).hessFNorm);
  }
  const double a4 = pairwise_sum(dsg);
  out.cutoffError = epsilon * a1 * a3 * a4;
  if (!(out.cutoffError < kWitnessCutoffLimit)) {
    std::ostringstream msg;
    msg << "far-field cutoff term " << out.cutoffError << " at eps = " << epsilon << " is not below "
        << kWitnessCutoffLimit << "; lower eps";
    throw CutoffError(msg.str(), out.cutoffError);
  }

  const BoundaryTerms bc = boundary_terms(lc);
  const BoundaryTerms be = boundary_terms(le);
  out.boundaryTerm = c * bc.bh - epsilon * be.bh;

  const auto e_f = [](double f) { return std::exp(f); };
  const double a = std::log(epsilon);
  const double b = std::log(c);
  out.volumeTerm = weighted_hessian_volume(sol, e_f, a, b, opts.levels, opts.order, nullptr, nullptr);
  const double coarse = weighted_hessian_volume(sol, e_f, a, b, std::max(2, opts.levels / 2), opts.order, nullptr, nullptr);
  out.errorEstimate = std::abs(out.volumeTerm - coarse) + c * bc.errorEstimate + epsilon * be.errorEstimate;
  out.holds = out.volumeTerm <= out.boundaryTerm + out.cutoffError + out.errorEstimate;
  return out;
}

double interior_b3_limit(const HarmonicSolution& sol) {
  if (!sol.problem.is_interior()) throw PreconditionError("the singular limit needs an interior solution");
  const double d = sol.problem.flux;
  const double area = sol.boundaryArea;
  const double sphere = unit_sphere_area(kDim);
  const double flux = d * area;  // int |Du| dsigma on every level set
  return std::pow(kK, 2.0 * (kN - 1.0) / kK) * std::pow(sphere / (d * area), 2.0 / kK) * flux;
}

LimitCheck interior_limit_check(const HarmonicSolution& sol, double t, int order) {
  const double closed = interior_b3_limit(sol);
  const LevelSet ls = extract_level_set(sol, t, order);
  const BoundaryTerms bt = boundary_terms(ls);
  LimitCheck out;
  out.level = t;
  out.numeric = bt.b3;
  out.closedForm = closed;
  out.relativeDifference = std::abs(bt.b3 - closed) / closed;
  return out;
}

}  // namespace potential
