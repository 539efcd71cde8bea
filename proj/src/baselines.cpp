#include "distprof/baselines.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "distprof/error.hpp"

namespace distprof {

double energy_statistic(const DistanceMatrix& pooled, std::span<const std::uint8_t> labels) {
    require(labels.size() == pooled.size(), "label vector does not match the pooled sample");
    const std::size_t N = pooled.size();
    double xx = 0.0;
    double yy = 0.0;
    double xy = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        const auto row = pooled.row(i);
        for (std::size_t j = 0; j < N; ++j) {
            if (labels[i] != labels[j]) {
                if (labels[i] == 0) {
                    xy += row[j];
                }
            } else if (labels[i] == 0) {
                xx += row[j];
            } else {
                yy += row[j];
            }
        }
    }
    const auto m = static_cast<double>(std::count(labels.begin(), labels.end(), 1));
    const double n = static_cast<double>(N) - m;
    require(n >= 1 && m >= 1, "energy statistic needs two nonempty samples");
    return (n * m / (n + m)) * (2.0 * xy / (n * m) - xx / (n * n) - yy / (m * m));
}

double energy_statistic(const PooledDistances& pooled) {
    return energy_statistic(pooled.d, observed_labels(pooled.n, pooled.m));
}

HotellingStatistic::HotellingStatistic(const ObjectSample& pooled, std::optional<double> ridge)
    : points_(pooled.objects), ridge_(ridge) {
    require(pooled.encoding == Encoding::vector, "Hotelling's T^2 needs vector objects");
    require(!points_.empty(), "Hotelling's T^2 needs data");
    dim_ = points_.front().size();
    require(dim_ >= 1, "Hotelling's T^2 needs at least one coordinate");
    for (const auto& p : points_) {
        require(p.size() == dim_, "vectors have different dimensions");
    }
    require(!ridge_ || *ridge_ >= 0.0, "Hotelling ridge must be nonnegative");
}

double HotellingStatistic::operator()(std::span<const std::uint8_t> labels) const {
    require(labels.size() == points_.size(), "label vector does not match the pooled sample");
    const std::size_t N = points_.size();
    const auto p = static_cast<Eigen::Index>(dim_);
    const auto m_count = static_cast<std::size_t>(std::count(labels.begin(), labels.end(), 1));
    const std::size_t n_count = N - m_count;
    require(n_count >= 1 && m_count >= 1 && N >= 3, "Hotelling's T^2 needs n + m - 2 >= 1");

    Eigen::VectorXd mean_x = Eigen::VectorXd::Zero(p);
    Eigen::VectorXd mean_y = Eigen::VectorXd::Zero(p);
    for (std::size_t i = 0; i < N; ++i) {
        const Eigen::Map<const Eigen::VectorXd> v(points_[i].data(), p);
        (labels[i] == 0 ? mean_x : mean_y) += v;
    }
    const double n = static_cast<double>(n_count);
    const double m = static_cast<double>(m_count);
    mean_x /= n;
    mean_y /= m;

    Eigen::MatrixXd scatter = Eigen::MatrixXd::Zero(p, p);
    for (std::size_t i = 0; i < N; ++i) {
        const Eigen::Map<const Eigen::VectorXd> v(points_[i].data(), p);
        const Eigen::VectorXd centered = v - (labels[i] == 0 ? mean_x : mean_y);
        scatter.selfadjointView<Eigen::Lower>().rankUpdate(centered);
    }
    Eigen::MatrixXd pooled_cov = scatter.selfadjointView<Eigen::Lower>();
    pooled_cov /= (n + m - 2.0);

    const double ridge = ridge_ ? *ridge_ : 1e-8 * pooled_cov.trace() / static_cast<double>(p);
    pooled_cov.diagonal().array() += ridge;

    Eigen::LDLT<Eigen::MatrixXd> ldlt(pooled_cov);
    const auto pivots = ldlt.vectorD();
    const double largest = pivots.cwiseAbs().maxCoeff();
    const bool singular = ldlt.info() != Eigen::Success || !(largest > 0.0) ||
                          pivots.minCoeff() <= 1e-13 * largest;
    if (singular) {
        throw ValidationError("pooled covariance is singular; use a positive ridge");
    }
    const Eigen::VectorXd diff = mean_x - mean_y;
    return (n * m / (n + m)) * diff.dot(ldlt.solve(diff));
}

double hotelling_statistic(const ObjectSample& x, const ObjectSample& y, std::optional<double> ridge) {
    return HotellingStatistic(pool(x, y), ridge)(observed_labels(x.size(), y.size()));
}

TestResult energy_test(const PooledDistances& pooled, std::size_t K, double alpha, std::uint64_t seed) {
    return permutation_test(
        "energy", pooled.n, pooled.m,
        [&](std::span<const std::uint8_t> labels) { return energy_statistic(pooled.d, labels); }, K,
        alpha, seed);
}

TestResult hotelling_test(const ObjectSample& x, const ObjectSample& y, std::size_t K, double alpha,
                          std::uint64_t seed, std::optional<double> ridge) {
    require(x.size() >= 2 && y.size() >= 2, "two-sample tests need at least 2 objects per sample");
    const HotellingStatistic statistic(pool(x, y), ridge);
    return permutation_test(
        "hotelling", x.size(), y.size(),
        [&](std::span<const std::uint8_t> labels) { return statistic(labels); }, K, alpha, seed);
}

} // namespace distprof
