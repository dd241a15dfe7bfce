#pragma once

#include "potential/core.hpp"

#include <span>
#include <vector>

namespace potential {

/// OpenMP thread count for node loops; no-op without OpenMP.
void set_thread_count(int threads);
int thread_count();

struct GaussRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

/// n-point Gauss-Legendre rule on [-1, 1] (Newton iteration on P_n).
GaussRule gauss_legendre(int n);

/// n-point Gauss-Legendre rule mapped to [a, b].
GaussRule gauss_legendre(int n, double a, double b);

/// Pairwise (cascade) summation; the result depends only on the input order.
double pairwise_sum(std::span<const double> values);

inline double pairwise_sum(const Eigen::VectorXd& values) {
  return pairwise_sum(std::span<const double>(values.data(), static_cast<std::size_t>(values.size())));
}

/// Weighted sum sum_i w_i v_i with pairwise reduction.
double weighted_sum(const Eigen::VectorXd& weights, const Eigen::VectorXd& values);

/// Least-squares slope of y against x.
double fit_slope(std::span<const double> x, std::span<const double> y);

}  // namespace potential
