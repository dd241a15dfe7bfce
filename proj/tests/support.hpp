#pragma once

#include "potential/core.hpp"
#include "potential/geometry.hpp"
#include "potential/harmonic.hpp"

#include <map>
#include <string>

namespace potential::testing {

// Solutions are expensive (about 2 s each); tests share them by key.
inline const HarmonicSolution& cached(const std::string& key, const DomainSpec& domain, const ProblemSpec& problem,
                                      int quad_order = 36) {
  static std::map<std::string, HarmonicSolution> cache;
  auto it = cache.find(key);
  if (it == cache.end()) {
    const SurfaceQuadrature quad = build_quadrature(domain, quad_order);
    it = cache.emplace(key, solve(domain, quad, problem)).first;
  }
  return it->second;
}

inline const HarmonicSolution& ball_exterior() {
  return cached("ball-ext", DomainSpec::sphere(1.0), ProblemSpec::exterior(1.0));
}

inline const HarmonicSolution& ellipsoid_exterior() {
  return cached("ell-ext", DomainSpec::ellipsoid(2.0, 1.0, 1.0), ProblemSpec::exterior(1.0));
}

inline const HarmonicSolution& ball_interior() {
  return cached("ball-int", DomainSpec::sphere(1.0), ProblemSpec::interior(0.0, 1.0));
}

inline const HarmonicSolution& ellipsoid_interior() {
  return cached("ell-int", DomainSpec::ellipsoid(2.0, 1.0, 1.0), ProblemSpec::interior(0.0, 1.0));
}

inline Vec3 unit(double x, double y, double z) { return Vec3(x, y, z).normalized(); }

inline double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace potential::testing
