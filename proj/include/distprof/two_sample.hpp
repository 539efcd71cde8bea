#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "distprof/empirical.hpp"
#include "distprof/metric.hpp"

namespace distprof {

// Distances over the pooled sample: indices [0, n) are the first sample,
// [n, n + m) the second.
struct PooledDistances {
    std::size_t n = 0;
    std::size_t m = 0;
    DistanceMatrix d;

    PooledDistances(std::size_t n_x, std::size_t n_y, DistanceMatrix pooled);
};

PooledDistances pool_distances(const MetricSpec& spec, const ObjectSample& x, const ObjectSample& y);

// Group membership per pooled index: 0 = first sample, 1 = second.
using Labels = std::vector<std::uint8_t>;
using LabelStatistic = std::function<double(std::span<const std::uint8_t>)>;

// Labels of the observed split: n zeros followed by m ones.
Labels observed_labels(std::size_t n, std::size_t m);

// Either one weight profile shared by all objects, or one per pooled index.
// Per-object weights travel with their object under relabelling.
class WeightProfile {
public:
    WeightProfile() = default;
    static WeightProfile global(StepWeight w);
    static WeightProfile per_object(std::vector<StepWeight> weights);

    const StepWeight& at(std::size_t pooled_index) const;
    bool is_unit() const;
    bool per_object() const { return weights_.size() > 1; }
    std::size_t size() const { return weights_.size(); }

private:
    std::vector<StepWeight> weights_{StepWeight()};
};

struct TestResult {
    std::string method;
    double statistic = 0.0;
    std::vector<double> replicates;
    double p_value = 1.0;
    double q_alpha_hat = 0.0;
    double alpha = 0.05;
    std::size_t K = 0;
    std::uint64_t seed = 0;
    std::size_t n = 0;
    std::size_t m = 0;
};

// The distance-profile statistic for any relabelling of a pooled sample.
//
// Each pooled row is sorted once at construction. For a given labelling the
// in-sample (leave-one-out) and out-of-sample profile CDFs of an object are
// then read off its sorted row in a single sweep, so one evaluation costs
// O((n + m)^2) with no re-sorting and no distance re-evaluation.
class DpStatistic {
public:
    struct Components {
        double tx = 0.0; // mean over first-sample objects of int w (F_in - F_out)^2
        double ty = 0.0; // same over second-sample objects
    };

    DpStatistic(const DistanceMatrix& pooled, WeightProfile weights);

    Components components(std::span<const std::uint8_t> labels) const;
    // nm / (n + m) * (tx + ty)
    double statistic(std::span<const std::uint8_t> labels) const;
    // tx + ty
    double plugin(std::span<const std::uint8_t> labels) const;

    std::size_t size() const { return size_; }

private:
    double object_integral(std::size_t i, std::span<const std::uint8_t> labels,
                           std::size_t same_count, std::size_t other_count) const;

    std::size_t size_ = 0;
    // row i: (distance, neighbour) pairs, j != i, ascending by distance
    std::vector<std::vector<std::pair<double, std::uint32_t>>> sorted_rows_;
    WeightProfile weights_;
};

double dp_statistic(const PooledDistances& pooled, const WeightProfile& w = {});

// Plug-in estimate of the population discrepancy D^w; equals
// (n + m) / (nm) times the statistic.
double dw_plugin(const PooledDistances& pooled, const WeightProfile& w = {});

// K statistics on uniformly random relabellings. Replicate j uses the
// permutation drawn from substream (seed, j), so the vector is identical for
// any thread count.
std::vector<double> permutation_replicates(std::size_t n, std::size_t m, std::size_t K,
                                           std::uint64_t seed, const LabelStatistic& statistic);

std::vector<double> permutation_replicates(const PooledDistances& pooled, const WeightProfile& w,
                                           std::size_t K, std::uint64_t seed);

// (1 + #{replicates >= statistic}) / (K + 1)
double p_value(double statistic, std::span<const double> replicates);

// inf{t : Gamma_K(t) >= 1 - alpha}, the ceil((1 - alpha) K)-th order statistic.
double critical_value(std::span<const double> replicates, double alpha);

// Observed statistic, K permutation replicates, p-value and critical value.
TestResult permutation_test(std::string method, std::size_t n, std::size_t m,
                            const LabelStatistic& statistic, std::size_t K, double alpha,
                            std::uint64_t seed);

TestResult dp_test(const PooledDistances& pooled, const WeightProfile& w, std::size_t K,
                   double alpha, std::uint64_t seed);

} // namespace distprof
