#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "distprof/metric.hpp"
#include "distprof/two_sample.hpp"

namespace distprof {

// (nm/(n+m)) [2 mean d(x, y) - mean d(x, x') - mean d(y, y')], within-sample
// means over all ordered pairs including the zero diagonal.
double energy_statistic(const DistanceMatrix& pooled, std::span<const std::uint8_t> labels);
double energy_statistic(const PooledDistances& pooled);

// Two-sample Hotelling T^2 on pooled vectors split by labels:
// (nm/(n+m)) (xbar - ybar)^T (S_pooled + ridge I)^{-1} (xbar - ybar).
// Without an explicit ridge, 1e-8 trace(S_pooled) / p is used. A ridge of 0
// with a singular pooled covariance is an error.
class HotellingStatistic {
public:
    HotellingStatistic(const ObjectSample& pooled, std::optional<double> ridge = std::nullopt);
    double operator()(std::span<const std::uint8_t> labels) const;

private:
    std::size_t dim_ = 0;
    std::vector<std::vector<double>> points_;
    std::optional<double> ridge_;
};

double hotelling_statistic(const ObjectSample& x, const ObjectSample& y,
                           std::optional<double> ridge = std::nullopt);

TestResult energy_test(const PooledDistances& pooled, std::size_t K, double alpha, std::uint64_t seed);

TestResult hotelling_test(const ObjectSample& x, const ObjectSample& y, std::size_t K, double alpha,
                          std::uint64_t seed, std::optional<double> ridge = std::nullopt);

} // namespace distprof
