#include "potential/criteria.hpp"

#include "potential/conformal.hpp"
#include "potential/identities.hpp"
#include "potential/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

namespace potential {

namespace {

constexpr double kN = kDim;
constexpr double kK = kN - 2.0;

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Satisfied: return "satisfied";
    case Verdict::SatisfiedEquality: return "satisfied (equality)";
    case Verdict::Violated: return "violated";
    case Verdict::Inconclusive: return "inconclusive";
    case Verdict::HypothesisNotMet: return "hypothesis-not-met";
  }
  return "inconclusive";
}

double CriterionReport::witness(const std::string& name) const {
  for (const auto& w : witnesses)
    if (w.name == name) return w.value;
  throw PreconditionError("report " + criterionId + " has no witness named " + name);
}

int coarse_order(int order) { return std::max(kMinQuadratureOrder, (3 * order) / 4); }

Roundness roundness(const LevelSet& ls) {
  Roundness r;
  r.sphericity = ls.sphericity();
  const double mean = surface_integral(ls, ls.uGrad).value / ls.area();
  r.gradientSpread = (ls.uGrad.maxCoeff() - ls.uGrad.minCoeff()) / mean;
  r.round = r.sphericity <= kRoundTolerance && r.gradientSpread <= kRoundTolerance;
  return r;
}

double capacity(const HarmonicSolution& sol, const LevelSet& ls) {
  if (sol.problem.is_interior()) throw PreconditionError("capacity needs an exterior solution");
  ls.require_regular();
  return surface_integral(ls, ls.uGrad).value / sol.problem.dirichlet;
}

CapacityReport capacity_report(const HarmonicSolution& sol, int order) {
  const LevelSet boundary = level_set_for(sol, sol.problem.dirichlet, order);
  CapacityReport rep;
  rep.value = capacity(sol, boundary);
  rep.crossCheckLevel = 0.5 * sol.problem.dirichlet;
  rep.crossCheck = capacity(sol, extract_level_set(sol, rep.crossCheckLevel, order));
  rep.relativeDifference = std::abs(rep.value - rep.crossCheck) / std::abs(rep.value);
  rep.errorEstimate = surface_integral(boundary, boundary.uGrad).errorEstimate / sol.problem.dirichlet +
                      std::abs(rep.value - rep.crossCheck);
  return rep;
}

namespace {

// Relative boundary misfit of the solution, the scale of its derivative error.
double relative_fit(const HarmonicSolution& sol) {
  double scale = std::abs(sol.problem.dirichlet);
  if (sol.problem.is_interior())
    scale = std::max(scale, sol.singularCoefficient / sol.domain.enclosing_radius());
  return sol.fitResidual / std::max(scale, std::numeric_limits<double>::min());
}

double solver_error(const HarmonicSolution& sol, double magnitude) {
  return magnitude * std::max(1e3 * relative_fit(sol), 1e-10);
}

void set_verdict(CriterionReport& r, bool round) {
  if (r.margin > r.errorEstimate) r.verdict = Verdict::Satisfied;
  else if (r.margin < -r.errorEstimate) r.verdict = Verdict::Violated;
  else r.verdict = round ? Verdict::SatisfiedEquality : Verdict::Inconclusive;
}

struct Evaluation {
  CriterionReport report;
  double magnitude = 0.0;
  double quadratureError = 0.0;
  bool round = false;
};

using Evaluator = std::function<Evaluation(int order)>;

// Run at two resolutions; their difference plus the solver term is the error bar.
CriterionReport two_resolution(const HarmonicSolution& sol, const CriteriaOptions& opts, const Evaluator& eval) {
  Evaluation fine = eval(opts.order);
  const Evaluation coarse = eval(coarse_order(opts.order));
  CriterionReport r = std::move(fine.report);
  r.errorEstimate =
      std::abs(r.margin - coarse.report.margin) + fine.quadratureError + solver_error(sol, fine.magnitude);
  set_verdict(r, fine.round);
  return r;
}

Witness node_witness(const std::string& name, double value, const LevelSet& ls, Eigen::Index k) {
  return {name, value, Vec3(ls.nodes.row(k))};
}

double mean_of(const LevelSet& ls, const Eigen::VectorXd& v) { return surface_integral(ls, v).value / ls.area(); }

Eigen::VectorXd pow_values(const Eigen::VectorXd& v, double p) { return v.array().pow(p).matrix(); }

void require_exterior(const HarmonicSolution& sol, const char* id) {
  if (sol.problem.is_interior()) throw PreconditionError(std::string(id) + " applies to exterior solutions only");
}

void require_interior(const HarmonicSolution& sol, const char* id) {
  if (!sol.problem.is_interior()) throw PreconditionError(std::string(id) + " applies to interior solutions only");
}

// H/(n-1) and |Du|/((n-2)u) per node.
void equality_sides(const LevelSet& ls, double shift, Eigen::VectorXd& q, Eigen::VectorXd& b) {
  q = ls.meanCurvH / (kN - 1.0);
  b.resize(ls.size());
  for (Eigen::Index i = 0; i < ls.size(); ++i) b(i) = ls.uGrad(i) / (kK * (ls.uValue(i) + shift));
}

}  // namespace

CriterionReport check_T11(const HarmonicSolution& sol, double c, const CriteriaOptions& opts) {
  require_exterior(sol, criterion_id::kT11);
  if (!(c > 0.0 && c <= sol.problem.dirichlet * (1.0 + 1e-12)))
    throw PreconditionError("T1.1-integral: level must lie in (0, boundary value]");
  return two_resolution(sol, opts, [&](int order) {
    const LevelSet ls = level_set_for(sol, c, order);
    ls.require_regular();
    Eigen::VectorXd q, b;
    equality_sides(ls, 0.0, q, b);
    const Eigen::VectorXd g2 = ls.uGrad.cwiseProduct(ls.uGrad);
    const Integral curv = surface_integral(ls, g2.cwiseProduct(q));
    const Integral grad = surface_integral(ls, g2.cwiseProduct(b));
    const RewritingIdentity rw = rewriting_identity(ls);
    const Roundness rd = roundness(ls);
    Evaluation e;
    e.report.criterionId = criterion_id::kT11;
    e.report.lhs = curv.value - grad.value;
    e.report.rhs = 0.0;
    e.report.margin = e.report.rhs - e.report.lhs;
    e.report.witnesses = {{"level", c, {}},
                          {"curvatureTerm", curv.value, {}},
                          {"gradientTerm", grad.value, {}},
                          {"conformalForm", rw.conformal, {}},
                          {"rewritingRelativeDifference", rw.relativeDifference, {}},
                          {"sphericity", rd.sphericity, {}},
                          {"gradientSpread", rd.gradientSpread, {}}};
    e.magnitude = std::abs(curv.value) + std::abs(grad.value);
    e.quadratureError = curv.errorEstimate + grad.errorEstimate;
    e.round = rd.round;
    return e;
  });
}

CriterionReport check_C12(const HarmonicSolution& sol, const CriteriaOptions& opts) {
  require_exterior(sol, criterion_id::kC12);
  if (opts.coareaLevels < 16) throw PreconditionError("C1.2-global needs at least 16 coarea levels");
  const double cd = sol.problem.dirichlet;
  const LevelSet boundary = level_set_for(sol, cd, opts.order);
  boundary.require_regular();
  Eigen::VectorXd phi_values = pow_values(boundary.uGrad, 3.0).cwiseQuotient(boundary.uValue);
  const Integral phi1 = surface_integral(boundary, phi_values);
  const CoareaResult vol = coarea_volume_integral(
      sol,
      [](const LevelSet& ls) { return Eigen::VectorXd(pow_values(ls.uGrad, 4.0).cwiseQuotient(ls.uValue)); },
      0.0, cd, opts.coareaLevels, opts.order);
  CriterionReport r;
  r.criterionId = criterion_id::kC12;
  // Scale-free form: equals Phi(1) / int_0^1 Phi for the normalized potential u / c.
  r.lhs = cd * phi1.value / vol.value;
  r.rhs = 2.0 * (kN - 1.0) / kK;
  r.margin = r.rhs - r.lhs;
  r.errorEstimate = std::abs(r.lhs) * (vol.errorEstimate / std::abs(vol.value) + phi1.errorEstimate / phi1.value) +
                    solver_error(sol, std::abs(r.lhs));
  const Roundness rd = roundness(boundary);
  r.witnesses = {{"phiAtBoundary", phi1.value, {}},
                 {"phiIntegral", vol.value, {}},
                 {"coareaLevels", static_cast<double>(opts.coareaLevels), {}},
                 {"coareaError", vol.errorEstimate, {}}};
  set_verdict(r, rd.round);
  return r;
}

CriterionReport check_C13(const HarmonicSolution& sol, const CriteriaOptions& opts) {
  require_exterior(sol, criterion_id::kC13);
  return two_resolution(sol, opts, [&](int order) {
    const LevelSet ls = level_set_for(sol, sol.problem.dirichlet, order);
    ls.require_regular();
    const double gmax = ls.uGrad.maxCoeff();
    const double gmin = ls.uGrad.minCoeff();
    const double ratio = (gmax * gmax) / (gmin * gmin);
    const Integral total = surface_integral(ls, Eigen::VectorXd(ls.meanCurvH / (kN - 1.0)));
    const double cap = capacity(sol, ls);
    const Roundness rd = roundness(ls);
    Evaluation e;
    e.report.criterionId = criterion_id::kC13;
    e.report.lhs = ratio * total.value;
    e.report.rhs = cap / kK;
    e.report.margin = e.report.rhs - e.report.lhs;
    e.report.witnesses = {{"gradientRatio", ratio, {}},
                          {"totalMeanCurvature", total.value, {}},
                          {"capacity", cap, {}}};
    e.magnitude = std::abs(e.report.lhs) + std::abs(e.report.rhs);
    e.quadratureError = ratio * total.errorEstimate + surface_integral(ls, ls.uGrad).errorEstimate;
    e.round = rd.round;
    return e;
  });
}

namespace {

// Boundary averages of |Du|, |Du|^2, |Du|^3 and of H/(n-1) |Du|^2.
struct BoundaryAverages {
  double area = 0.0;
  double g1 = 0.0;
  double g2 = 0.0;
  double g3 = 0.0;
  double hg2 = 0.0;
  double error = 0.0;
};

BoundaryAverages boundary_averages(const LevelSet& ls) {
  BoundaryAverages a;
  a.area = ls.area();
  const Integral i1 = surface_integral(ls, ls.uGrad);
  const Integral i2 = surface_integral(ls, pow_values(ls.uGrad, 2.0));
  const Integral i3 = surface_integral(ls, pow_values(ls.uGrad, 3.0));
  const Integral ih =
      surface_integral(ls, Eigen::VectorXd((ls.meanCurvH / (kN - 1.0)).cwiseProduct(pow_values(ls.uGrad, 2.0))));
  a.g1 = i1.value / a.area;
  a.g2 = i2.value / a.area;
  a.g3 = i3.value / a.area;
  a.hg2 = ih.value / a.area;
  a.error = (i1.errorEstimate + i2.errorEstimate + i3.errorEstimate + ih.errorEstimate) / a.area;
  return a;
}

double russell_factor(double area) { return std::pow(unit_sphere_area(kDim) / area, 1.0 / (kN - 1.0)); }

}  // namespace

CriterionReport check_pointwise(const HarmonicSolution& sol, double c, PointwiseDirection direction,
                                const CriteriaOptions& opts) {
  const bool at_most = direction == PointwiseDirection::AtMost;
  const char* id = at_most ? criterion_id::kC14 : criterion_id::kC17;
  if (at_most) require_exterior(sol, id);
  else require_interior(sol, id);
  return two_resolution(sol, opts, [&](int order) {
    const LevelSet ls = level_set_for(sol, c, order);
    ls.require_regular();
    Eigen::VectorXd q, b;
    equality_sides(ls, 0.0, q, b);
    Evaluation e;
    e.report.criterionId = id;
    e.report.witnesses.push_back({"level", c, {}});
    Eigen::VectorXd margins;
    if (at_most) {
      margins = b - q;
    } else {
      const LevelSet boundary = level_set_for(sol, sol.problem.dirichlet, order);
      const BoundaryAverages av = boundary_averages(boundary);
      const double bound = russell_factor(av.area) * (av.g1 * av.g1 / av.g2) *
                           std::pow(av.g3 / (av.g1 * av.g1 * av.g1), kN / (2.0 * (kN - 1.0)));
      margins = q.array() - bound;
      b.setConstant(bound);
      e.report.witnesses.push_back({"bound", bound, {}});
      e.quadratureError = av.error;
    }
    Eigen::Index worst = 0;
    e.report.margin = margins.minCoeff(&worst);
    e.report.lhs = q(worst);
    e.report.rhs = b(worst);
    e.report.witnesses.push_back(node_witness("worstNodeMargin", e.report.margin, ls, worst));
    Eigen::Index best = 0;
    e.report.witnesses.push_back(node_witness("bestNodeMargin", margins.maxCoeff(&best), ls, best));
    e.magnitude = q.cwiseAbs().maxCoeff() + b.cwiseAbs().maxCoeff();
    e.round = roundness(ls).round;
    return e;
  });
}

CriterionReport check_neumann(const HarmonicSolution& sol, std::optional<double> c, const CriteriaOptions& opts) {
  const bool interior = sol.problem.is_interior();
  const double level = interior ? sol.problem.dirichlet : c.value_or(sol.problem.dirichlet);
  if (!interior && !(level > 0.0 && level <= sol.problem.dirichlet * (1.0 + 1e-12)))
    throw PreconditionError("T1.5-neumann: level must lie in (0, boundary value]");
  double spread = 0.0;
  CriterionReport r = two_resolution(sol, opts, [&](int order) {
    const LevelSet ls = level_set_for(sol, level, order);
    ls.require_regular();
    Eigen::VectorXd q, b;
    equality_sides(ls, 0.0, q, b);
    const Roundness rd = roundness(ls);
    Evaluation e;
    e.report.witnesses = {{"level", level, {}}, {"gradientSpread", rd.gradientSpread, {}},
                          {"gradientMean", mean_of(ls, ls.uGrad), {}}};
    if (!interior) {
      e.report.criterionId = criterion_id::kT15;
      Eigen::Index at = 0;
      e.report.lhs = q.minCoeff(&at);
      e.report.rhs = b.minCoeff();
      e.report.margin = e.report.rhs - e.report.lhs;
      e.report.witnesses.push_back(node_witness("infCurvature", e.report.lhs, ls, at));
      // The other reading: the bound only has to hold at some node.
      e.report.witnesses.push_back({"alternativeMargin", b.maxCoeff() - e.report.lhs, {}});
    } else {
      e.report.criterionId = criterion_id::kT18;
      Eigen::Index at = 0;
      e.report.lhs = q.maxCoeff(&at);
      e.report.rhs = russell_factor(ls.area());
      e.report.margin = e.report.lhs - e.report.rhs;
      e.report.witnesses.push_back(node_witness("supCurvature", e.report.lhs, ls, at));
      e.report.witnesses.push_back({"neumannValue", sol.problem.flux, {}});
    }
    e.magnitude = std::abs(e.report.lhs) + std::abs(e.report.rhs);
    e.round = rd.round;
    if (order == opts.order) spread = rd.gradientSpread;
    return e;
  });
  if (spread > kNeumannSpreadTolerance) r.verdict = Verdict::HypothesisNotMet;
  return r;
}

InteriorConstants interior_constants(const HarmonicSolution& sol, int order) {
  require_interior(sol, "interior constants");
  const LevelSet boundary = level_set_for(sol, sol.problem.dirichlet, order);
  const BoundaryAverages av = boundary_averages(boundary);
  const double sphere = unit_sphere_area(kDim);
  InteriorConstants out;
  out.c1 = (1.0 / kK) * std::pow(av.area / sphere, 1.0 / (kN - 1.0)) *
           std::pow(av.g3, kK / (2.0 * (kN - 1.0))) / std::pow(av.g1, (kN - 4.0) / (2.0 * (kN - 1.0)));
  out.c1Limit = std::pow(av.g3 * av.area / interior_b3_limit(sol), kK / (2.0 * (kN - 1.0)));
  out.c2 = sol.problem.flux / kK * std::pow(av.area / sphere, 1.0 / (kN - 1.0));
  return out;
}

CriterionReport check_T16(const HarmonicSolution& sol, const CriteriaOptions& opts) {
  require_interior(sol, criterion_id::kT16);
  CriterionReport r = two_resolution(sol, opts, [&](int order) {
    const LevelSet ls = level_set_for(sol, sol.problem.dirichlet, order);
    ls.require_regular();
    const BoundaryAverages av = boundary_averages(ls);
    Evaluation e;
    e.report.criterionId = criterion_id::kT16;
    e.report.lhs = av.hg2 / (av.g1 * av.g1);
    e.report.rhs = russell_factor(av.area) * std::pow(av.g3 / (av.g1 * av.g1 * av.g1), kN / (2.0 * (kN - 1.0)));
    e.report.margin = e.report.lhs - e.report.rhs;
    e.report.witnesses = {{"meanCurvatureGradient2", av.hg2, {}},
                          {"meanGradient", av.g1, {}},
                          {"meanGradient3", av.g3, {}},
                          {"fluxRatio", av.g1 / sol.problem.flux, {}}};
    e.magnitude = std::abs(e.report.lhs) + std::abs(e.report.rhs);
    e.quadratureError = av.error * e.magnitude;
    e.round = roundness(ls).round;
    return e;
  });
  const InteriorConstants k = interior_constants(sol, opts.order);
  r.witnesses.push_back({"c1", k.c1, {}});
  r.witnesses.push_back({"c1Limit", k.c1Limit, {}});
  r.witnesses.push_back({"c2", k.c2, {}});
  return r;
}

CriterionReport check_T19(const HarmonicSolution& sol, double a, double b, const CriteriaOptions& opts) {
  if (!(a > 0.0 && a < b)) throw PreconditionError("T1.9-two-boundary needs 0 < a < b");
  if (!sol.problem.is_interior() && !(b <= sol.problem.dirichlet * (1.0 + 1e-12)))
    throw PreconditionError("T1.9-two-boundary: levels must not exceed the boundary value of an exterior solution");
  if (sol.problem.is_interior() && !(a >= sol.problem.dirichlet))
    throw PreconditionError("T1.9-two-boundary: levels must not be below the boundary value of an interior solution");
  return two_resolution(sol, opts, [&](int order) {
    const LevelSet la = level_set_for(sol, a, order);
    const LevelSet lb = level_set_for(sol, b, order);
    la.require_regular();
    lb.require_regular();
    Eigen::VectorXd qa, ba, qb, bb;
    equality_sides(la, 0.0, qa, ba);
    equality_sides(lb, 0.0, qb, bb);
    Eigen::Index wa = 0;
    Eigen::Index wb = 0;
    const double ma = (qa - ba).minCoeff(&wa);
    const double mb = (bb - qb).minCoeff(&wb);
    Evaluation e;
    e.report.criterionId = criterion_id::kT19;
    e.report.lhs = ma;
    e.report.rhs = mb;
    e.report.margin = std::min(ma, mb);
    e.report.witnesses = {{"levelA", a, {}},
                          {"levelB", b, {}},
                          node_witness("marginA", ma, la, wa),
                          node_witness("marginB", mb, lb, wb),
                          // Radial-graph extraction yields connected level sets.
                          {"connected", 1.0, {}}};
    e.magnitude = qa.cwiseAbs().maxCoeff() + ba.cwiseAbs().maxCoeff() + qb.cwiseAbs().maxCoeff() +
                  bb.cwiseAbs().maxCoeff();
    e.round = roundness(la).round && roundness(lb).round;
    return e;
  });
}

SymmetryCertificate symmetry_certificate(const HarmonicSolution& sol, const std::vector<double>& levels, int order) {
  const bool interior = sol.problem.is_interior();
  double shift = 0.0;
  double inferred = 0.0;
  const LevelSet boundary = level_set_for(sol, sol.problem.dirichlet, order);
  boundary.require_regular();
  if (interior) {
    const InteriorConstants k = interior_constants(sol, order);
    shift = k.c2 - sol.problem.dirichlet;
    inferred = std::pow(boundary.area() / unit_sphere_area(kDim), 1.0 / (kN - 1.0));
  } else {
    inferred = std::pow(capacity(sol, boundary) / (kK * unit_sphere_area(kDim)), 1.0 / kK);
  }

  SymmetryCertificate cert;
  cert.inferredRadius = inferred;
  std::vector<double> all{sol.problem.dirichlet};
  all.insert(all.end(), levels.begin(), levels.end());
  double pmin = std::numeric_limits<double>::infinity();
  double pmax = 0.0;
  double psum = 0.0;
  double count = 0.0;
  for (std::size_t li = 0; li < all.size(); ++li) {
    const LevelSet ls = li == 0 ? boundary : level_set_for(sol, all[li], order);
    ls.require_regular();
    cert.levels.push_back(all[li]);
    cert.levelSetSphericity.push_back(ls.sphericity());
    Eigen::VectorXd q, b;
    equality_sides(ls, shift, q, b);
    cert.equalityResidual = std::max(cert.equalityResidual, (q - b).cwiseAbs().maxCoeff());
    for (Eigen::Index i = 0; i < ls.size(); ++i) {
      const double p = p_function<double>(ls.uValue(i) + shift, ls.uGrad(i));
      pmin = std::min(pmin, p);
      pmax = std::max(pmax, p);
      psum += p;
      count += 1.0;
    }
  }
  cert.pFunctionSpread = (pmax - pmin) / (psum / count);
  if (cert.pFunctionSpread > kCertificateSpread) cert.failing.push_back("pFunctionSpread");
  for (std::size_t i = 0; i < cert.levels.size(); ++i) {
    if (cert.levelSetSphericity[i] > kCertificateSphericity) {
      std::ostringstream name;
      name << "levelSetSphericity[" << cert.levels[i] << "]";
      cert.failing.push_back(name.str());
    }
  }
  if (cert.equalityResidual > kCertificateEquality) cert.failing.push_back("equalityResidual");
  cert.granted = cert.failing.empty();
  return cert;
}

}  // namespace potential
