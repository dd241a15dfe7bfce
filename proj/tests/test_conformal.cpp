#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "potential/conformal.hpp"
#include "support.hpp"

#include <cmath>
#include <functional>
#include <random>

using namespace potential;
using namespace potential::testing;

namespace {

using Field = std::function<double(const Vec3&)>;

Vec3 fd_gradient(const Field& f, const Vec3& x, double h) {
  Vec3 g;
  for (int i = 0; i < 3; ++i) {
    Vec3 e = Vec3::Zero();
    e(i) = h;
    g(i) = (f(x + e) - f(x - e)) / (2 * h);
  }
  return g;
}

Mat3 fd_hessian(const Field& f, const Vec3& x, double h) {
  Mat3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Vec3 ei = Vec3::Zero(), ej = Vec3::Zero();
      ei(i) = h;
      ej(j) = h;
      m(i, j) = (f(x + ei + ej) - f(x + ei - ej) - f(x - ei + ej) + f(x - ei - ej)) / (4 * h * h);
    }
  return m;
}

// Covariant Hessian of f for g = phi delta, from finite differences of f and log phi only.
Mat3 christoffel_hessian(const Field& f, const Field& log_phi, const Vec3& x, double h) {
  const Mat3 d2 = fd_hessian(f, x, h);
  const Vec3 df = fd_gradient(f, x, h);
  const Vec3 dl = fd_gradient(log_phi, x, h);
  Mat3 out = d2;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        const double gamma = 0.5 * ((i == k) * dl(j) + (j == k) * dl(i) - (i == j) * dl(k));
        out(i, j) -= gamma * df(k);
      }
  return out;
}

std::vector<Vec3> shell_points(int count, double r0, double r1, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(r0, r1);
  std::vector<Vec3> out;
  for (int i = 0; i < count; ++i) out.push_back(Vec3(g(rng), g(rng), g(rng)).normalized() * u(rng));
  return out;
}

const HarmonicSolution& ball_interior_unit() {
  return cached("ball-int-c1", DomainSpec::sphere(1.0), ProblemSpec::interior(1.0, 1.0));
}

}  // namespace

TEST_CASE("p-function closed forms") {
  CHECK(p_function(1.0, 0.0) == 0.0);
  CHECK(p_function(0.5, 0.25) == doctest::Approx(1.0));
  CHECK(p_function(0.25, 1.0 / 16.0, 3) == doctest::Approx(1.0));
  // n = 4, u = r^{-2}: |Du|^2 u^{-3} = 4.
  CHECK(p_function(0.25, 2.0 * std::pow(2.0, -3.0), 4) == doctest::Approx(4.0));
  CHECK_THROWS_AS(p_function(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(p_function(-1.0, 1.0), DomainError);
}

TEST_CASE("p-function is constant on the exterior ball") {
  for (const Vec3& x : shell_points(20, 1.0, 8.0, 3))
    CHECK(conformal_state(evaluate(ball_exterior(), x)).pFunction == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("p-function on the interior ball with boundary value one") {
  const HarmonicSolution& sol = ball_interior_unit();
  const SurfaceQuadrature q = build_quadrature(sol.domain, 12);
  for (Eigen::Index i = 0; i < q.size(); ++i)
    CHECK(conformal_state(evaluate(sol, q.nodes.row(i))).pFunction == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("conformal hessian vanishes on the ball and not on the ellipsoid") {
  for (const Vec3& x : shell_points(20, 1.0, 8.0, 5)) CHECK(conformal_state(evaluate(ball_exterior(), x)).hessFNorm < 1e-8);
  const HarmonicSolution& ell = ellipsoid_exterior();
  const SurfaceQuadrature q = build_quadrature(ell.domain, 16);
  double worst = 0.0;
  for (Eigen::Index i = 0; i < q.size(); ++i) worst = std::max(worst, conformal_state(evaluate(ell, q.nodes.row(i))).hessFNorm);
  CHECK(worst > 1e-3);
}

TEST_CASE("conformal laplacian vanishes at random points") {
  for (const Vec3& x : shell_points(10, 2.1, 6.0, 9))
    CHECK(conformal_state(evaluate(ellipsoid_exterior(), x)).laplacianResidual <= 1e-10);
}

TEST_CASE("conformal hessian matches the Christoffel formula by finite differences") {
  const HarmonicSolution& sol = ellipsoid_exterior();
  const Field f = [&](const Vec3& y) { return std::log(sol.jet(y, JetOrder::Value).u); };
  const Field log_phi = [&](const Vec3& y) { return 2.0 * std::log(sol.jet(y, JetOrder::Value).u); };
  for (const Vec3& x : {Vec3(2.5, 0.5, 0.3), Vec3(0.4, -1.6, 0.9), Vec3(-3.0, 1.0, 2.0)}) {
    const Mat3 oracle = christoffel_hessian(f, log_phi, x, 1e-3);
    const Mat3 got = conformal_state(evaluate(sol, x)).hessF;
    CHECK((got - oracle).norm() <= 1e-5 * std::max(1.0, oracle.norm()));
  }
}

TEST_CASE("scalar curvature matches the conformal Laplacian formula") {
  // g = phi^4 delta with phi = sqrt(u): R_g = -8 phi^{-5} Lap phi.
  const HarmonicSolution& sol = ellipsoid_exterior();
  const Field phi = [&](const Vec3& y) { return std::sqrt(sol.jet(y, JetOrder::Value).u); };
  for (const Vec3& x : {Vec3(2.5, 0.5, 0.3), Vec3(0.4, -1.6, 0.9)}) {
    const double lap = fd_hessian(phi, x, 1e-3).trace();
    const double u = sol.jet(x, JetOrder::Value).u;
    const double oracle = -8.0 * std::pow(u, -2.5) * lap;
    const QuasiEinsteinResidual<double> r = quasi_einstein_residual(sol, x);
    CHECK(r.scalarCurvature == doctest::Approx(oracle).epsilon(1e-5));
    CHECK(r.scalarCurvature == doctest::Approx(2.0 * r.pFunction).epsilon(1e-8));
    CHECK(r.scalarCurvatureResidual <= 1e-8 * std::max(1.0, r.pFunction));
  }
}

TEST_CASE("quasi-Einstein residual") {
  for (const Vec3& x : shell_points(10, 1.0, 6.0, 13)) CHECK(quasi_einstein_residual(ball_exterior(), x).tensorResidualNorm <= 1e-9);
  for (const Vec3& x : shell_points(10, 2.05, 6.0, 14))
    CHECK(quasi_einstein_residual(ellipsoid_exterior(), x).tensorResidualNorm <= 1e-6);

  const PointJet j = evaluate(ellipsoid_exterior(), Vec3(2.5, 0.5, 0.3));
  Mat3 bumped = j.hess;
  bumped(0, 0) += 1e-3 * j.hess.norm();
  const double clean = quasi_einstein_residual<double>(j.u, j.grad, j.hess).tensorResidualNorm;
  const double dirty = quasi_einstein_residual<double>(j.u, j.grad, bumped).tensorResidualNorm;
  CHECK(clean <= 1e-9);
  CHECK(dirty / std::max(1.0, ((j.hess / j.u).norm())) >= 1e-4);
}

TEST_CASE("conformal mean curvature") {
  // Ball at radius 2: H = 1, u = 1/2, |Du| = 1/4.
  CHECK(mean_curvature_conformal(1.0, 0.5, 0.25) == doctest::Approx(0.0).scale(1.0));
  // H/2 = 2 |Du| at u = 1.
  const double g = 0.3;
  CHECK(mean_curvature_conformal(4.0 * g, 1.0, g) / 2.0 == doctest::Approx(g));
  CHECK_THROWS_AS(mean_curvature_conformal(1.0, 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(mean_curvature_conformal(1.0, 0.0, 1.0), DomainError);

  const HarmonicSolution& ell = ellipsoid_exterior();
  const LevelSet ls = boundary_level_set(ell, 16);
  double lo = 1e300, hi = -1e300;
  for (Eigen::Index i = 0; i < ls.size(); ++i) {
    const double hg = mean_curvature_conformal(ls.meanCurvH(i), ls.uValue(i), ls.uGrad(i));
    lo = std::min(lo, hg);
    hi = std::max(hi, hg);
  }
  CHECK(lo < 0.0);
  CHECK(hi > 0.0);
}

TEST_CASE("conformal mean curvature agrees with the hessian form off the boundary") {
  const HarmonicSolution& ell = ellipsoid_exterior();
  const LevelSet ls = extract_level_set(ell, 0.5, 12);
  for (Eigen::Index i = 0; i < ls.size(); i += 7) {
    const double a = mean_curvature_conformal(ls.meanCurvH(i), ls.uValue(i), ls.uGrad(i));
    const double b = mean_curvature_conformal_from_hessian<double>(ls.uValue(i), ls.gradient.row(i), ls.hessian[i]);
    CHECK(a == doctest::Approx(b).epsilon(1e-8).scale(1.0));
  }
}

TEST_CASE("rewriting identity holds on level sets") {
  const RewritingIdentity r = rewriting_identity(extract_level_set(ellipsoid_exterior(), 0.5, 24));
  CHECK(r.relativeDifference <= 1e-6);
  const RewritingIdentity b = rewriting_identity(boundary_level_set(ball_exterior(), 16));
  CHECK(std::abs(b.euclidean) < 1e-8);
  CHECK(std::abs(b.conformal) < 1e-8);
}

TEST_CASE("conformal area weights") {
  const LevelSet ls = extract_level_set(ball_exterior(), 0.5, 12);
  // u^2 dsigma on {u = 1/2}: area 16 pi times 1/4.
  CHECK(conformal_area_weights(ls).sum() == doctest::Approx(4.0 * kPi).epsilon(1e-8));
}

TEST_CASE("p-function maximum is attained on the boundary") {
  const HarmonicSolution& ell = ellipsoid_exterior();
  const LevelSet ls = boundary_level_set(ell, 16);
  double boundary_max = 0.0;
  for (Eigen::Index i = 0; i < ls.size(); ++i) boundary_max = std::max(boundary_max, p_function(ls.uValue(i), ls.uGrad(i)));
  for (const Vec3& x : shell_points(200, 2.01, 10.0, 17)) {
    if (!ell.in_region(x)) continue;
    CHECK(conformal_state(evaluate(ell, x)).pFunction <= boundary_max + 1e-6);
  }
}

TEST_CASE("conformal quantities reject non-positive u") {
  const Vec3 z = Vec3::Zero();
  CHECK_THROWS_AS(hess_f_conformal<double>(0.0, z, Mat3::Zero()), DomainError);
  CHECK_THROWS_AS(quasi_einstein_residual<double>(-1.0, z, Mat3::Zero()), DomainError);
  PointJet j;
  j.u = 0.0;
  CHECK_THROWS_AS(conformal_state(j), DomainError);
}
