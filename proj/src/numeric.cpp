#include "distprof/numeric.hpp"

#include <algorithm>

namespace distprof {

double ordered_sum(std::vector<double> terms) {
    std::sort(terms.begin(), terms.end(), [](double a, double b) {
        const double fa = std::fabs(a);
        const double fb = std::fabs(b);
        return fa != fb ? fa > fb : a > b;
    });
    // Neumaier compensation
    double sum = 0.0;
    double carry = 0.0;
    for (double t : terms) {
        const double s = sum + t;
        if (std::fabs(sum) >= std::fabs(t)) {
            carry += (sum - s) + t;
        } else {
            carry += (t - s) + sum;
        }
        sum = s;
    }
    return sum + carry;
}

std::size_t order_statistic_index(std::size_t count, double level) {
    const double K = static_cast<double>(count);
    auto reaches = [&](std::size_t k) { return static_cast<double>(k) / K >= level; };
    std::size_t k = static_cast<std::size_t>(std::ceil(level * K));
    k = std::clamp<std::size_t>(k, 1, count);
    while (k > 1 && reaches(k - 1)) {
        --k;
    }
    while (k < count && !reaches(k)) {
        ++k;
    }
    return k;
}

} // namespace distprof
