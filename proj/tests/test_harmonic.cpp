#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

#include <cmath>
#include <random>

using namespace potential;
using namespace potential::testing;

namespace {

// Random points in the shell r0 < |x| < r1.
std::vector<Vec3> shell_points(int count, double r0, double r1, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(r0, r1);
  std::vector<Vec3> out;
  for (int i = 0; i < count; ++i) out.push_back(Vec3(g(rng), g(rng), g(rng)).normalized() * u(rng));
  return out;
}

double boundary_flux(const HarmonicSolution& sol, int order = 36) {
  const SurfaceQuadrature q = build_quadrature(sol.domain, order);
  double s = 0.0;
  for (Eigen::Index i = 0; i < q.size(); ++i)
    s += q.weights(i) * evaluate(sol, q.nodes.row(i), JetOrder::Gradient).grad.norm();
  return s;
}

}  // namespace

TEST_CASE("exterior ball matches the radial solution") {
  const HarmonicSolution& sol = ball_exterior();
  CHECK(evaluate(sol, Vec3(2, 0, 0)).u == doctest::Approx(0.5).epsilon(1e-8));
  const PointJet j = evaluate(sol, unit(1, 2, -1) * 4.0);
  CHECK(j.u == doctest::Approx(0.25).epsilon(1e-8));
  CHECK(j.grad.norm() == doctest::Approx(1.0 / 16.0).epsilon(1e-8));
  const RadialGeometry g(3, 1.0);
  for (const Vec3& x : shell_points(20, 1.05, 6.0, 7)) {
    const RadialValues r = radial_solution(g, RadialProblem::exterior(1.0), x.norm());
    CHECK(evaluate(sol, x).u == doctest::Approx(r.u).epsilon(1e-8));
  }
}

TEST_CASE("boundary values match the Dirichlet datum within the fit residual") {
  for (const HarmonicSolution* sol : {&ball_exterior(), &ellipsoid_exterior(), &ellipsoid_interior()}) {
    const SurfaceQuadrature q = build_quadrature(sol->domain, 20);
    double worst = 0.0;
    for (Eigen::Index i = 0; i < q.size(); ++i)
      worst = std::max(worst, std::abs(evaluate(*sol, q.nodes.row(i), JetOrder::Value).u - sol->problem.dirichlet));
    CHECK(worst <= 10.0 * sol->fitResidual + 1e-12);
    CHECK(sol->fitResidual < 1e-6);
  }
}

TEST_CASE("hessian trace vanishes at random points") {
  const HarmonicSolution& ext = ellipsoid_exterior();
  for (const Vec3& x : shell_points(10, 2.2, 5.0, 11)) {
    const PointJet j = evaluate(ext, x);
    CHECK(std::abs(j.hess.trace()) <= 1e-12);
  }
  const HarmonicSolution& in = ellipsoid_interior();
  for (const Vec3& x : shell_points(10, 0.1, 0.9, 12)) {
    const PointJet j = evaluate(in, x);
    CHECK(std::abs(j.hess.trace()) <= 1e-12 * std::max(1.0, j.hess.norm()));
  }
}

TEST_CASE("interior ball: constant normal derivative and closed-form value") {
  const HarmonicSolution& sol = ball_interior();
  const SurfaceQuadrature q = build_quadrature(sol.domain, 16);
  for (Eigen::Index i = 0; i < q.size(); ++i)
    CHECK(evaluate(sol, q.nodes.row(i), JetOrder::Gradient).grad.norm() == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(evaluate(sol, Vec3(0.5, 0, 0)).u == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(evaluate(sol, unit(1, 1, 1) * 0.25).u == doctest::Approx(3.0).epsilon(1e-8));
}

TEST_CASE("interior flux equals d times the boundary area") {
  for (const HarmonicSolution* sol : {&ball_interior(), &ellipsoid_interior()}) {
    const double area = build_quadrature(sol->domain, 36).area();
    CHECK(boundary_flux(*sol) / (sol->problem.flux * area) == doctest::Approx(1.0).epsilon(1e-6));
  }
  const HarmonicSolution& s = cached("ell-int-d2", DomainSpec::ellipsoid(1.0, 1.5, 0.8), ProblemSpec::interior(0.5, 2.0));
  CHECK(boundary_flux(s) / (2.0 * build_quadrature(s.domain, 36).area()) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("prolate spheroid capacity matches the closed form") {
  const double exact = 4.0 * kPi * std::sqrt(3.0) / std::log(2.0 + std::sqrt(3.0));
  CHECK(boundary_flux(ellipsoid_exterior()) == doctest::Approx(exact).epsilon(1e-7));
  CHECK(boundary_flux(ball_exterior()) == doctest::Approx(4.0 * kPi).epsilon(1e-10));
}

TEST_CASE("jet derivatives agree with finite differences") {
  const HarmonicSolution& sol = ellipsoid_exterior();
  const Vec3 x(1.3, 1.1, -0.9);
  const PointJet j = sol.jet(x, JetOrder::Third);
  const double h = 1e-5;
  for (int k = 0; k < 3; ++k) {
    Vec3 e = Vec3::Zero();
    e(k) = h;
    const PointJet p = sol.jet(x + e, JetOrder::Hessian);
    const PointJet m = sol.jet(x - e, JetOrder::Hessian);
    CHECK(j.grad(k) == doctest::Approx((p.u - m.u) / (2 * h)).epsilon(1e-7));
    CHECK((j.hess.col(k) - (p.grad - m.grad) / (2 * h)).norm() < 1e-7);
    CHECK((j.third[k] - (p.hess - m.hess) / (2 * h)).norm() < 1e-6);
  }
}

TEST_CASE("scaling the Dirichlet datum scales the solution") {
  const HarmonicSolution& s = cached("ball-ext-c3", DomainSpec::sphere(1.0), ProblemSpec::exterior(3.0));
  CHECK(evaluate(s, Vec3(0, 0, 3)).u == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("solver and evaluation errors") {
  const DomainSpec sphere = DomainSpec::sphere(1.0);
  const SurfaceQuadrature q = build_quadrature(sphere, 12);
  CHECK_THROWS_AS(solve_exterior(sphere, q, 0.0), PreconditionError);
  CHECK_THROWS_AS(solve_exterior(sphere, q, -1.0), PreconditionError);
  CHECK_THROWS_AS(solve_interior(sphere, q, 0.0, 0.0), PreconditionError);
  CHECK_THROWS_AS(solve_interior(sphere, q, 0.0, -1.0), PreconditionError);
  CHECK_THROWS_AS(evaluate(ball_exterior(), Vec3(0.5, 0, 0)), OutOfRegionError);
  CHECK_THROWS_AS(evaluate(ball_interior(), Vec3(1.5, 0, 0)), OutOfRegionError);
  CHECK_THROWS_AS(evaluate(ball_interior(), Vec3::Zero()), OutOfRegionError);
  CHECK(ball_exterior().in_region(Vec3(1, 0, 0)));
  CHECK_FALSE(ball_exterior().in_region(Vec3(0.9, 0, 0)));
}

TEST_CASE("decay exponents") {
  const std::vector<double> radii{10.0, 20.0, 40.0, 80.0};
  const DecayReport ball = decay_report(ball_exterior(), radii);
  CHECK(ball.fittedExponent == doctest::Approx(-1.0).epsilon(1e-6));
  CHECK(ball.gradientExponent == doctest::Approx(-2.0).epsilon(1e-6));
  CHECK(ball.hessianExponent == doctest::Approx(-3.0).epsilon(1e-6));
  CHECK(ball.sampleRadii.size() == 4);
  const DecayReport ell = decay_report(ellipsoid_exterior(), {20.0, 40.0, 80.0, 160.0, 320.0});
  CHECK(std::abs(ell.fittedExponent + 1.0) <= 1e-3);
  CHECK_THROWS_AS(decay_report(ball_exterior(), {10.0, 20.0, 40.0}), InsufficientSamplesError);
}
