#include "distprof/descriptive.hpp"

#include <algorithm>
#include <cmath>

#include "distprof/error.hpp"
#include "distprof/numeric.hpp"

namespace distprof {

FrechetSummary frechet_mean_sample(const DistanceMatrix& d) {
    const std::size_t n = d.size();
    require(n >= 1, "frechet_mean_sample: empty sample");
    FrechetSummary summary;
    summary.candidate_values.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<double> squares(n);
        for (std::size_t i = 0; i < n; ++i) {
            squares[i] = d(i, j) * d(i, j);
        }
        summary.candidate_values[j] = ordered_sum(std::move(squares)) / static_cast<double>(n);
    }
    const double best = *std::min_element(summary.candidate_values.begin(),
                                          summary.candidate_values.end());
    for (std::size_t j = 0; j < n; ++j) {
        if (summary.candidate_values[j] == best) {
            summary.mean_indices.push_back(j);
        }
    }
    summary.mean_index = summary.mean_indices.front();
    summary.frechet_variance = best;
    return summary;
}

MeanObject frechet_mean_exact(const ObjectSample& sample, const MetricSpec& spec) {
    require(sample.size() >= 1, "frechet_mean_exact: empty sample");
    switch (spec.kind) {
    case MetricKind::euclidean: {
        require(sample.encoding == Encoding::vector, "euclidean mean needs vector objects");
        const std::size_t p = sample.objects.front().size();
        Object mean(p, 0.0);
        for (std::size_t k = 0; k < p; ++k) {
            std::vector<double> column(sample.size());
            for (std::size_t i = 0; i < sample.size(); ++i) {
                require(sample.objects[i].size() == p, "vectors have different dimensions");
                column[i] = sample.objects[i][k];
            }
            mean[k] = ordered_sum(std::move(column)) / static_cast<double>(sample.size());
        }
        return mean;
    }
    case MetricKind::wasserstein1d: {
        require(sample.encoding == Encoding::distribution1d,
                "wasserstein1d mean needs distribution objects");
        std::vector<EmpiricalDistribution> dists;
        dists.reserve(sample.size());
        for (const auto& obj : sample.objects) {
            dists.push_back(EmpiricalDistribution::from_sorted(obj));
        }
        return barycenter_exact(dists);
    }
    default:
        throw ValidationError("no closed-form Frechet mean for metric " +
                              std::string(to_string(spec.kind)));
    }
}

double metric_variance(const DistanceMatrix& d) {
    const std::size_t n = d.size();
    require(n >= 2, "metric_variance needs at least 2 objects");
    std::vector<double> squares;
    squares.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            squares.push_back(d(i, j) * d(i, j));
        }
    }
    const double nn = static_cast<double>(n);
    return ordered_sum(std::move(squares)) / (2.0 * nn * (nn - 1.0));
}

double metric_covariance(const Matrix& cross) {
    require(cross.rows == cross.cols, "metric covariance needs paired samples of equal size");
    const std::size_t n = cross.rows;
    require(n >= 2, "metric covariance needs at least 2 pairs");
    std::vector<double> off;
    std::vector<double> diag;
    off.reserve(n * n);
    diag.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double sq = cross(i, j) * cross(i, j);
            (i == j ? diag : off).push_back(sq);
        }
    }
    const double nn = static_cast<double>(n);
    return 0.5 * (ordered_sum(std::move(off)) / (nn * (nn - 1.0)) - ordered_sum(std::move(diag)) / nn);
}

double metric_correlation(const DistanceMatrix& dx, const DistanceMatrix& dy, const Matrix& cross) {
    require(dx.size() == dy.size() && cross.rows == dx.size() && cross.cols == dx.size(),
            "metric correlation: size mismatch");
    const double vx = metric_covariance(dx.matrix());
    const double vy = metric_covariance(dy.matrix());
    require(vx > 0.0 && vy > 0.0, "metric correlation: zero self-covariance");
    return metric_covariance(cross) / std::sqrt(vx * vy);
}

} // namespace distprof
