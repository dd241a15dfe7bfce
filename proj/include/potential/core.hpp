#pragma once

#include <Eigen/Dense>

#include <array>
#include <numbers>
#include <stdexcept>
#include <string>

namespace potential {

template <typename Scalar>
using Vector3 = Eigen::Matrix<Scalar, 3, 1>;
template <typename Scalar>
using Matrix3 = Eigen::Matrix<Scalar, 3, 3>;

using Vec3 = Vector3<double>;
using Mat3 = Matrix3<double>;
// Row-per-node storage for point sets on surfaces.
using Points = Eigen::Matrix<double, Eigen::Dynamic, 3, Eigen::RowMajor>;

// Third derivative tensor T(i,j,k) = d^3 u / dx_i dx_j dx_k, stored as T[i](j,k).
template <typename Scalar>
using Tensor3 = std::array<Matrix3<Scalar>, 3>;

/// Ambient dimension of every mesh-level computation.
inline constexpr int kDim = 3;

inline constexpr double kPi = std::numbers::pi;

// Error taxonomy. Each failure the toolkit can report has its own type so
// callers (and the CLI) can react without string matching.

struct InvalidDomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Argument outside the mathematical domain of a formula (u <= 0, r out of range, ...).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct OutOfRegionError : std::out_of_range {
  using std::out_of_range::out_of_range;
};

struct SolverFailure : std::runtime_error {
  SolverFailure(const std::string& what, double condition_estimate)
      : std::runtime_error(what), condition(condition_estimate) {}
  double condition;
};

struct NonStarShapedLevelSetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IrregularLevelSetError : std::runtime_error {
  IrregularLevelSetError(const std::string& what, double level_value)
      : std::runtime_error(what), level(level_value) {}
  double level;
};

/// Far-field truncation of a volume identity too coarse to be neglected.
struct CutoffError : std::runtime_error {
  CutoffError(const std::string& what, double bound_value) : std::runtime_error(what), bound(bound_value) {}
  double bound;
};

/// A computed quantity that must be nonnegative came out negative beyond its error bar.
struct ConsistencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InsufficientSamplesError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Set the worker count used by node-parallel loops (no-op without OpenMP).
void set_thread_count(int threads);
int thread_count();

}  // namespace potential
