#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"
#include "potential/levelset.hpp"

#include <cmath>
#include <sstream>

using namespace potential;
using namespace potential::testing;

namespace {

Eigen::VectorXd ones(const LevelSet& ls) { return Eigen::VectorXd::Ones(ls.size()); }

Eigen::VectorXd phi_integrand(const LevelSet& ls) {
  return (ls.uGrad.array().cube() / ls.uValue.array()).matrix();
}

}  // namespace

TEST_CASE("ball level set at one half sits at radius two") {
  const LevelSet ls = extract_level_set(ball_exterior(), 0.5, 12);
  CHECK(ls.regular);
  for (Eigen::Index i = 0; i < ls.size(); ++i) {
    CHECK(ls.radius(i) == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(ls.meanCurvH(i) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(Vec3(ls.normals.row(i)).dot(Vec3(ls.nodes.row(i)).normalized()) == doctest::Approx(1.0));
  }
  CHECK(surface_integral(ls, ones(ls)).value == doctest::Approx(16.0 * kPi).epsilon(1e-8));
  CHECK(ls.sphericity() < 1e-10);
}

TEST_CASE("boundary level of the ball") {
  const LevelSet ext = extract_level_set(ball_exterior(), 1.0, 12);
  const LevelSet bnd = boundary_level_set(ball_exterior(), 12);
  for (const LevelSet* ls : {&ext, &bnd})
    for (Eigen::Index i = 0; i < ls->size(); ++i) {
      CHECK(ls->radius(i) == doctest::Approx(1.0).epsilon(1e-9));
      CHECK(ls->meanCurvH(i) == doctest::Approx(2.0).epsilon(1e-7));
    }
  CHECK(level_set_for(ball_exterior(), 1.0, 12).size() == bnd.size());
}

TEST_CASE("far level sets of the ellipsoid are rounder than the boundary") {
  const HarmonicSolution& sol = ellipsoid_exterior();
  const LevelSet far = extract_level_set(sol, 0.1, 16);
  const LevelSet bnd = boundary_level_set(sol, 16);
  CHECK(far.sphericity() < bnd.sphericity());
  CHECK(bnd.sphericity() > 0.9);
}

TEST_CASE("extracted nodes reproduce the level") {
  for (const HarmonicSolution* sol : {&ellipsoid_exterior(), &ellipsoid_interior()}) {
    const double c = sol->problem.is_interior() ? 2.0 : 0.4;
    const LevelSet ls = extract_level_set(*sol, c, 12);
    for (Eigen::Index i = 0; i < ls.size(); ++i)
      CHECK(std::abs(evaluate(*sol, ls.nodes.row(i), JetOrder::Value).u - c) <= 1e-10);
  }
}

TEST_CASE("level-set curvature from derivatives matches the ball geometry") {
  // H = 2 / r on spheres, independent of the solver.
  for (double c : {0.2, 0.5, 0.9}) {
    const LevelSet ls = extract_level_set(ball_exterior(), c, 10);
    for (Eigen::Index i = 0; i < ls.size(); ++i) CHECK(ls.meanCurvH(i) == doctest::Approx(2.0 / ls.radius(i)).epsilon(1e-8));
  }
}

TEST_CASE("capacity is level independent") {
  for (const HarmonicSolution* sol : {&ball_exterior(), &ellipsoid_exterior()}) {
    const double ref = surface_integral(level_set_for(*sol, 1.0, 36), level_set_for(*sol, 1.0, 36).uGrad).value;
    if (sol == &ball_exterior()) CHECK(ref == doctest::Approx(4.0 * kPi).epsilon(1e-8));
    for (double c : {0.25, 0.5, 0.75}) {
      const LevelSet ls = extract_level_set(*sol, c, 36);
      CHECK(rel(surface_integral(ls, ls.uGrad).value, ref) <= 1e-5);
    }
  }
}

TEST_CASE("flux-cubed integral on the ball") {
  for (double c : {0.25, 0.5, 1.0}) {
    const LevelSet ls = level_set_for(ball_exterior(), c, 16);
    CHECK(surface_integral(ls, phi_integrand(ls)).value == doctest::Approx(4.0 * kPi * c * c * c).epsilon(1e-8));
  }
}

TEST_CASE("coarea integrals on the ball") {
  const HarmonicSolution& sol = ball_exterior();
  // Phi integrand |Du|^3/u on each level, i.e. |Du|^4/u in volume.
  const LevelIntegrand vol_phi = [](const LevelSet& ls) {
    return (ls.uGrad.array().pow(4) / ls.uValue.array()).matrix().eval();
  };
  const CoareaResult phi = coarea_volume_integral(sol, vol_phi, 0.0, 1.0, 16, 12);
  CHECK(phi.value == doctest::Approx(kPi).epsilon(1e-6));
  CHECK(phi.levels.size() == 16);
  CHECK(phi.levelIntegrals.size() == 16);

  // Shell volume between radii 1 and 2.
  const LevelIntegrand volume = [](const LevelSet& ls) { return ones(ls); };
  CHECK(coarea_volume_integral(sol, volume, 0.5, 1.0, 12, 12).value == doctest::Approx(4.0 * kPi * 7.0 / 3.0).epsilon(1e-8));

  const LevelIntegrand zero = [](const LevelSet& ls) { return Eigen::VectorXd::Zero(ls.size()).eval(); };
  CHECK(coarea_volume_integral(sol, zero, 0.2, 0.8, 8, 8).value == 0.0);
}

TEST_CASE("curvature balance holds on every ball level set") {
  for (double c : {0.3, 0.6, 1.0}) {
    const LevelSet ls = level_set_for(ball_exterior(), c, 12);
    for (Eigen::Index i = 0; i < ls.size(); ++i)
      CHECK(std::abs(ls.meanCurvH(i) / 2.0 - ls.uGrad(i) / ls.uValue(i)) <= 1e-8);
  }
}

TEST_CASE("level-set errors") {
  const LevelSet ls = extract_level_set(ball_exterior(), 0.5, 8);
  CHECK_THROWS(surface_integral(ls, Eigen::VectorXd::Ones(3)));
  CHECK_THROWS(extract_level_set(ball_exterior(), 1.5, 8));
  CHECK_THROWS(extract_level_set(ball_exterior(), 0.0, 8));
  CHECK_THROWS(extract_level_set(ball_interior(), -0.5, 8));
  const LevelIntegrand volume = [](const LevelSet& l) { return l.uGrad; };
  CHECK_THROWS(coarea_volume_integral(ball_exterior(), volume, 0.2, 0.8, 4, 8));
  CHECK_THROWS(coarea_volume_integral(ball_exterior(), volume, 0.8, 0.2, 8, 8));
}

TEST_CASE("level-set CSV") {
  const LevelSet ls = extract_level_set(ball_exterior(), 0.5, 6);
  std::ostringstream out;
  write_level_set_csv(ls, out);
  const std::string s = out.str();
  CHECK(s.rfind("theta,phi,radius,x,y,z,H,gradNorm,weight\n", 0) == 0);
  CHECK(std::count(s.begin(), s.end(), '\n') == ls.size() + 1);
}
