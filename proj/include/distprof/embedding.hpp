#pragma once

#include <vector>

#include "distprof/metric.hpp"
#include "distprof/profiles.hpp"

namespace distprof {

struct MDSEmbedding {
    std::size_t q = 0;
    Matrix coordinates;               // n x q, column means 0
    std::vector<double> eigenvalues;  // q leading eigenvalues of B, descending
};

// Classical (Torgerson) scaling: B = -1/2 J D^2 J with J = I - 11^T/n, then
// the q leading eigenvectors of B scaled by sqrt(max(lambda, 0)). Columns
// whose eigenvalue is not positive are zero; the eigenvalue is still
// reported. Each column's largest-magnitude entry is made nonnegative.
MDSEmbedding classical_mds(const DistanceMatrix& d, std::size_t q);

// Classical scaling on the profile metric.
MDSEmbedding profile_mds(const ProfileSet& profiles, std::size_t q);

} // namespace distprof
