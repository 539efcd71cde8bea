#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "distprof/empirical.hpp"
#include "distprof/metric.hpp"
#include "distprof/profiles.hpp"

namespace distprof {

using IndexSet = std::vector<std::size_t>;

struct QuantileGroups {
    // Label per object in 1..k; 1 is the most central bin.
    std::vector<int> labels;
    // The (j/k)-quantiles of the ranks, j = 1..k-1, ascending.
    std::vector<double> thresholds;
};

struct RankReport {
    std::vector<double> ranks;
    IndexSet median_indices;
    QuantileGroups groups;
};

struct QuantileSet {
    double alpha = 0.0;
    IndexSet indices;
};

// expit of the average over sample profiles of int_0^1 (Q_i - Q_query) du.
// Requires with_self profiles.
double transport_rank(const EmpiricalDistribution& query, const ProfileSet& profiles);

std::vector<double> rank_all(const ProfileSet& profiles);

// All indices attaining the maximal rank.
IndexSet transport_median(std::span<const double> ranks);

// Bins [0, q_{1/k}], (q_{1/k}, q_{2/k}], ..., (q_{(k-1)/k}, 1] labelled k..1.
QuantileGroups quantile_groups(std::span<const double> ranks, int k);

// Smallest superlevel set {rank >= alpha} holding at least ceil(zeta * n)
// objects; alpha is the smallest included rank.
QuantileSet transport_quantile_set(std::span<const double> ranks, double zeta);

// Indices with rank >= alpha0.
IndexSet trim(std::span<const double> ranks, double alpha0);

double hausdorff_distance(std::span<const std::size_t> a, std::span<const std::size_t> b,
                          const DistanceMatrix& d);

// Ranks, median set and k-bin groups of a with_self profile set.
RankReport rank_report(const ProfileSet& profiles, int bins);

} // namespace distprof
