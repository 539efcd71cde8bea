#include "distprof/profiles.hpp"

#include <cmath>
#include <string>

#include "distprof/error.hpp"
#include "distprof/parallel.hpp"

namespace distprof {

ProfileSet build_profiles(const DistanceMatrix& d, ProfileMode mode) {
    const std::size_t n = d.size();
    require(n >= 1, "build_profiles: empty distance matrix");
    require(mode == ProfileMode::with_self || n >= 2,
            "build_profiles: leave-one-out profiles need at least 2 objects");
    ProfileSet set;
    set.mode = mode;
    set.profiles.resize(n);
    parallel_for(n, [&](std::size_t i) {
        const auto row = d.row(i);
        std::vector<double> values;
        values.reserve(n);
        for (std::size_t j = 0; j < n; ++j) {
            if (mode == ProfileMode::leave_one_out && j == i) {
                continue;
            }
            values.push_back(row[j]);
        }
        set.profiles[i] = EmpiricalDistribution::from_samples(std::move(values));
    });
    return set;
}

EmpiricalDistribution out_of_sample_profile(std::span<const double> cross_row) {
    require(!cross_row.empty(), "out_of_sample_profile: empty row");
    for (std::size_t k = 0; k < cross_row.size(); ++k) {
        require(std::isfinite(cross_row[k]) && cross_row[k] >= 0.0,
                "out_of_sample_profile: distances must be finite and nonnegative (entry " +
                    std::to_string(k) + ")");
    }
    return EmpiricalDistribution::from_samples({cross_row.begin(), cross_row.end()});
}

double profile_metric(const EmpiricalDistribution& p1, const EmpiricalDistribution& p2) {
    return wasserstein2(p1, p2);
}

DistanceMatrix profile_distance_matrix(const ProfileSet& profiles) {
    const std::size_t n = profiles.size();
    Matrix m(n, n);
    parallel_for(n, [&](std::size_t i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = profile_metric(profiles[i], profiles[j]);
            m(i, j) = v;
            m(j, i) = v;
        }
    });
    return DistanceMatrix(std::move(m));
}

} // namespace distprof
