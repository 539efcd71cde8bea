#pragma once

#include <span>
#include <vector>

#include "distprof/empirical.hpp"
#include "distprof/metric.hpp"

namespace distprof {

enum class ProfileMode {
    with_self,     // row i including the zero self-distance (n atoms)
    leave_one_out, // row i without the diagonal (n - 1 atoms)
};

// Empirical distance profiles of the objects behind a distance matrix.
struct ProfileSet {
    ProfileMode mode = ProfileMode::with_self;
    std::vector<EmpiricalDistribution> profiles;

    std::size_t size() const { return profiles.size(); }
    const EmpiricalDistribution& operator[](std::size_t i) const { return profiles[i]; }
};

ProfileSet build_profiles(const DistanceMatrix& d, ProfileMode mode);

// Profile of an object that is not part of the sample, from its distances
// to the sample members.
EmpiricalDistribution out_of_sample_profile(std::span<const double> cross_row);

// d_P(a, b) = W2(F_a, F_b). A pseudo-metric: distinct objects with the same
// profile are at distance 0.
double profile_metric(const EmpiricalDistribution& p1, const EmpiricalDistribution& p2);

DistanceMatrix profile_distance_matrix(const ProfileSet& profiles);

} // namespace distprof
