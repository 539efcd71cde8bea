#include "distprof/ranks.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "distprof/error.hpp"
#include "distprof/numeric.hpp"
#include "distprof/parallel.hpp"

namespace distprof {

namespace {

void require_rank_profiles(const ProfileSet& profiles) {
    require(profiles.size() > 0, "transport ranks need a nonempty profile set");
    require(profiles.mode == ProfileMode::with_self,
            "transport ranks are defined on with_self profiles");
}

// Left-continuous inverse of the empirical CDF of `sorted` at level j/k.
double rank_quantile(std::span<const double> sorted, std::size_t j, std::size_t k) {
    const std::size_t n = sorted.size();
    const std::size_t position = (j * n + k - 1) / k; // ceil(j n / k), >= 1 for j >= 1
    return sorted[std::max<std::size_t>(position, 1) - 1];
}

} // namespace

double transport_rank(const EmpiricalDistribution& query, const ProfileSet& profiles) {
    require_rank_profiles(profiles);
    std::vector<double> transfers(profiles.size());
    for (std::size_t i = 0; i < profiles.size(); ++i) {
        transfers[i] = integral_quantile_diff(profiles[i], query);
    }
    return expit(ordered_sum(std::move(transfers)) / static_cast<double>(profiles.size()));
}

std::vector<double> rank_all(const ProfileSet& profiles) {
    require_rank_profiles(profiles);
    // (1/n) sum_i int (Q_i - Q_j) = int (Qbar - Q_j) with Qbar the averaged
    // quantile function, so one integral per object suffices.
    const EmpiricalDistribution center = barycenter_exact(profiles.profiles);
    std::vector<double> ranks(profiles.size());
    parallel_for(profiles.size(), [&](std::size_t j) {
        ranks[j] = expit(integral_quantile_diff(center, profiles[j]));
    });
    return ranks;
}

IndexSet transport_median(std::span<const double> ranks) {
    require(!ranks.empty(), "transport_median: no ranks");
    const double best = *std::max_element(ranks.begin(), ranks.end());
    IndexSet out;
    for (std::size_t i = 0; i < ranks.size(); ++i) {
        if (ranks[i] == best) {
            out.push_back(i);
        }
    }
    return out;
}

QuantileGroups quantile_groups(std::span<const double> ranks, int k) {
    require(k >= 1, "quantile_groups: need at least one bin");
    require(!ranks.empty(), "quantile_groups: no ranks");
    std::vector<double> sorted(ranks.begin(), ranks.end());
    std::sort(sorted.begin(), sorted.end());
    const auto bins = static_cast<std::size_t>(k);

    QuantileGroups groups;
    for (std::size_t j = 1; j < bins; ++j) {
        groups.thresholds.push_back(rank_quantile(sorted, j, bins));
    }
    groups.labels.resize(ranks.size());
    for (std::size_t i = 0; i < ranks.size(); ++i) {
        // number of thresholds strictly below the rank
        const auto below = std::lower_bound(groups.thresholds.begin(), groups.thresholds.end(),
                                            ranks[i]) -
                           groups.thresholds.begin();
        groups.labels[i] = k - static_cast<int>(below);
    }
    return groups;
}

QuantileSet transport_quantile_set(std::span<const double> ranks, double zeta) {
    require(!ranks.empty(), "transport_quantile_set: no ranks");
    require(zeta > 0.0 && zeta < 1.0, "transport_quantile_set: zeta must lie in (0, 1)");
    std::vector<double> sorted(ranks.begin(), ranks.end());
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    const std::size_t keep = order_statistic_index(ranks.size(), zeta);
    QuantileSet out;
    out.alpha = sorted[keep - 1];
    out.indices = trim(ranks, out.alpha);
    return out;
}

IndexSet trim(std::span<const double> ranks, double alpha0) {
    IndexSet out;
    for (std::size_t i = 0; i < ranks.size(); ++i) {
        if (ranks[i] >= alpha0) {
            out.push_back(i);
        }
    }
    return out;
}

double hausdorff_distance(std::span<const std::size_t> a, std::span<const std::size_t> b,
                          const DistanceMatrix& d) {
    require(!a.empty() && !b.empty(), "hausdorff_distance: sets must be nonempty");
    for (auto i : a) {
        require(i < d.size(), "hausdorff_distance: index " + std::to_string(i) + " out of range");
    }
    for (auto i : b) {
        require(i < d.size(), "hausdorff_distance: index " + std::to_string(i) + " out of range");
    }
    auto directed = [&](std::span<const std::size_t> from, std::span<const std::size_t> to) {
        double worst = 0.0;
        for (auto i : from) {
            double nearest = d(i, to.front());
            for (auto j : to) {
                nearest = std::min(nearest, d(i, j));
            }
            worst = std::max(worst, nearest);
        }
        return worst;
    };
    return std::max(directed(a, b), directed(b, a));
}

RankReport rank_report(const ProfileSet& profiles, int bins) {
    RankReport report;
    report.ranks = rank_all(profiles);
    report.median_indices = transport_median(report.ranks);
    report.groups = quantile_groups(report.ranks, bins);
    return report;
}

} // namespace distprof
