#include "distprof/two_sample.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "distprof/error.hpp"
#include "distprof/numeric.hpp"
#include "distprof/parallel.hpp"
#include "distprof/rng.hpp"

namespace distprof {

PooledDistances::PooledDistances(std::size_t n_x, std::size_t n_y, DistanceMatrix pooled)
    : n(n_x), m(n_y), d(std::move(pooled)) {
    require(n >= 2 && m >= 2, "two-sample tests need at least 2 objects per sample");
    require(d.size() == n + m, "pooled distance matrix has order " + std::to_string(d.size()) +
                                   ", expected " + std::to_string(n + m));
}

PooledDistances pool_distances(const MetricSpec& spec, const ObjectSample& x, const ObjectSample& y) {
    return PooledDistances(x.size(), y.size(), distance_matrix(spec, pool(x, y)));
}

Labels observed_labels(std::size_t n, std::size_t m) {
    Labels labels(n + m, 0);
    std::fill(labels.begin() + static_cast<std::ptrdiff_t>(n), labels.end(), 1);
    return labels;
}

WeightProfile WeightProfile::global(StepWeight w) {
    WeightProfile p;
    p.weights_ = {std::move(w)};
    return p;
}

WeightProfile WeightProfile::per_object(std::vector<StepWeight> weights) {
    require(!weights.empty(), "per-object weight profile list is empty");
    WeightProfile p;
    p.weights_ = std::move(weights);
    return p;
}

const StepWeight& WeightProfile::at(std::size_t pooled_index) const {
    return weights_.size() == 1 ? weights_.front() : weights_.at(pooled_index);
}

bool WeightProfile::is_unit() const {
    return std::all_of(weights_.begin(), weights_.end(), [](const auto& w) { return w.is_unit(); });
}

DpStatistic::DpStatistic(const DistanceMatrix& pooled, WeightProfile weights)
    : size_(pooled.size()), weights_(std::move(weights)) {
    require(!weights_.per_object() || weights_.size() == size_,
            "per-object weights must cover every pooled object");
    sorted_rows_.resize(size_);
    parallel_for(size_, [&](std::size_t i) {
        auto& row = sorted_rows_[i];
        row.reserve(size_ - 1);
        for (std::size_t j = 0; j < size_; ++j) {
            if (j != i) {
                row.emplace_back(pooled(i, j), static_cast<std::uint32_t>(j));
            }
        }
        std::sort(row.begin(), row.end());
    });
}

double DpStatistic::object_integral(std::size_t i, std::span<const std::uint8_t> labels,
                                    std::size_t same_count, std::size_t other_count) const {
    const auto& row = sorted_rows_[i];
    const std::uint8_t own = labels[i];
    const double in_denominator = static_cast<double>(same_count - 1);
    const double out_denominator = static_cast<double>(other_count);
    const StepWeight& w = weights_.at(i);
    const bool unit = w.is_unit();

    std::size_t in = 0;
    std::size_t out = 0;
    double total = 0.0;
    double prev = 0.0;
    std::size_t k = 0;
    while (k < row.size()) {
        const double t = row[k].first;
        const double gap = static_cast<double>(in) / in_denominator -
                           static_cast<double>(out) / out_denominator;
        if (gap != 0.0) {
            const double width = unit ? t - prev : w.cumulative(t) - w.cumulative(prev);
            total += gap * gap * width;
        }
        while (k < row.size() && row[k].first == t) {
            if (labels[row[k].second] == own) {
                ++in;
            } else {
                ++out;
            }
            ++k;
        }
        prev = t;
    }
    return total;
}

DpStatistic::Components DpStatistic::components(std::span<const std::uint8_t> labels) const {
    require(labels.size() == size_, "label vector does not match the pooled sample");
    const auto m = static_cast<std::size_t>(std::count(labels.begin(), labels.end(), 1));
    const std::size_t n = size_ - m;
    require(n >= 2 && m >= 2, "two-sample tests need at least 2 objects per sample");
    double sx = 0.0;
    double sy = 0.0;
    for (std::size_t i = 0; i < size_; ++i) {
        if (labels[i] == 0) {
            sx += object_integral(i, labels, n, m);
        } else {
            sy += object_integral(i, labels, m, n);
        }
    }
    return {sx / static_cast<double>(n), sy / static_cast<double>(m)};
}

double DpStatistic::statistic(std::span<const std::uint8_t> labels) const {
    const auto m = static_cast<double>(std::count(labels.begin(), labels.end(), 1));
    const double n = static_cast<double>(labels.size()) - m;
    const auto c = components(labels);
    return (n * m / (n + m)) * (c.tx + c.ty);
}

double DpStatistic::plugin(std::span<const std::uint8_t> labels) const {
    const auto c = components(labels);
    return c.tx + c.ty;
}

double dp_statistic(const PooledDistances& pooled, const WeightProfile& w) {
    return DpStatistic(pooled.d, w).statistic(observed_labels(pooled.n, pooled.m));
}

double dw_plugin(const PooledDistances& pooled, const WeightProfile& w) {
    return DpStatistic(pooled.d, w).plugin(observed_labels(pooled.n, pooled.m));
}

std::vector<double> permutation_replicates(std::size_t n, std::size_t m, std::size_t K,
                                           std::uint64_t seed, const LabelStatistic& statistic) {
    require(K >= 1, "need at least one permutation");
    std::vector<double> replicates(K);
    parallel_for(K, [&](std::size_t j) {
        Engine engine = substream(seed, {static_cast<std::uint64_t>(j)});
        std::vector<std::size_t> order(n + m);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::shuffle(order.begin(), order.end(), engine);
        Labels labels(n + m);
        for (std::size_t k = 0; k < n + m; ++k) {
            labels[order[k]] = k < n ? 0 : 1;
        }
        replicates[j] = statistic(labels);
    });
    return replicates;
}

std::vector<double> permutation_replicates(const PooledDistances& pooled, const WeightProfile& w,
                                           std::size_t K, std::uint64_t seed) {
    const DpStatistic engine(pooled.d, w);
    return permutation_replicates(pooled.n, pooled.m, K, seed,
                                  [&](std::span<const std::uint8_t> labels) {
                                      return engine.statistic(labels);
                                  });
}

double p_value(double statistic, std::span<const double> replicates) {
    require(!replicates.empty(), "p_value: no replicates");
    const auto exceed = std::count_if(replicates.begin(), replicates.end(),
                                      [statistic](double r) { return r >= statistic; });
    return (1.0 + static_cast<double>(exceed)) / (static_cast<double>(replicates.size()) + 1.0);
}

double critical_value(std::span<const double> replicates, double alpha) {
    require(!replicates.empty(), "critical_value: no replicates");
    require(alpha > 0.0 && alpha < 1.0, "critical_value: alpha must lie in (0, 1)");
    std::vector<double> sorted(replicates.begin(), replicates.end());
    std::sort(sorted.begin(), sorted.end());
    return sorted[order_statistic_index(sorted.size(), 1.0 - alpha) - 1];
}

TestResult permutation_test(std::string method, std::size_t n, std::size_t m,
                            const LabelStatistic& statistic, std::size_t K, double alpha,
                            std::uint64_t seed) {
    require(alpha > 0.0 && alpha < 1.0, "alpha must lie in (0, 1)");
    TestResult result;
    result.method = std::move(method);
    result.statistic = statistic(observed_labels(n, m));
    result.replicates = permutation_replicates(n, m, K, seed, statistic);
    result.p_value = p_value(result.statistic, result.replicates);
    result.q_alpha_hat = critical_value(result.replicates, alpha);
    result.alpha = alpha;
    result.K = K;
    result.seed = seed;
    result.n = n;
    result.m = m;
    return result;
}

TestResult dp_test(const PooledDistances& pooled, const WeightProfile& w, std::size_t K,
                   double alpha, std::uint64_t seed) {
    const DpStatistic engine(pooled.d, w);
    return permutation_test(
        "dp", pooled.n, pooled.m,
        [&](std::span<const std::uint8_t> labels) { return engine.statistic(labels); }, K, alpha,
        seed);
}

} // namespace distprof
