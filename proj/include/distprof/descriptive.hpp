#pragma once

#include <variant>
#include <vector>

#include "distprof/empirical.hpp"
#include "distprof/metric.hpp"

namespace distprof {

// Frechet mean restricted to sample candidates.
struct FrechetSummary {
    std::size_t mean_index = 0;            // smallest minimizing index
    std::vector<std::size_t> mean_indices; // every minimizer
    double frechet_variance = 0.0;
    // (1/n) sum_i d^2(X_i, X_j) for every candidate j
    std::vector<double> candidate_values;
};

FrechetSummary frechet_mean_sample(const DistanceMatrix& d);

// Vector for euclidean samples, distribution for wasserstein1d samples.
using MeanObject = std::variant<Object, EmpiricalDistribution>;

// Closed-form Frechet mean: coordinatewise mean (euclidean) or averaged
// quantile functions (wasserstein1d).
MeanObject frechet_mean_exact(const ObjectSample& sample, const MetricSpec& spec);

// 1/(2 n (n-1)) sum_{i,j} d^2(X_i, X_j)
double metric_variance(const DistanceMatrix& d);

// Sample metric covariance of paired objects (X_i, Y_i) living in one metric
// space. cross(i, j) = d(X_i, Y_j); the independent-copy terms average over
// ordered pairs i != j:
//   (1/2) [ (1/(n(n-1))) sum_{i != j} cross(i,j)^2 - (1/n) sum_i cross(i,i)^2 ]
double metric_covariance(const Matrix& cross);

// Cov(X, Y) / sqrt(Cov(X, X) Cov(Y, Y)).
double metric_correlation(const DistanceMatrix& dx, const DistanceMatrix& dy, const Matrix& cross);

} // namespace distprof
