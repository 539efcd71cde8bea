#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace distprof {

// Logistic function e^x / (1 + e^x), evaluated without overflow.
inline double expit(double x) {
    if (x >= 0.0) {
        return 1.0 / (1.0 + std::exp(-x));
    }
    const double e = std::exp(x);
    return e / (1.0 + e);
}

// Compensated sum of the terms taken in descending order of magnitude.
// The result depends only on the multiset of terms, not on their order.
double ordered_sum(std::vector<double> terms);

// Smallest k in [1, K] with k / K >= level; the order-statistic index of
// the left-continuous inverse of an empirical CDF with K equal atoms.
std::size_t order_statistic_index(std::size_t count, double level);

} // namespace distprof
