#include "distprof/empirical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "distprof/error.hpp"
#include "distprof/numeric.hpp"

namespace distprof {

namespace {

// Two cumulative weights closer than this mark the same u-breakpoint.
constexpr double kBreakTol = 1e-14;

void require_nonempty(const EmpiricalDistribution& d, const char* what) {
    if (d.empty()) fail(std::string(what) + ": empty distribution");
}

// Visits the intervals (u_prev, u_next] of the merged u-breakpoints of two
// step quantile functions, passing both quantile values and the length.
template <typename Visit>
void for_each_u_interval(const EmpiricalDistribution& d1, const EmpiricalDistribution& d2,
                         Visit&& visit) {
    const auto a1 = d1.atoms();
    const auto a2 = d2.atoms();
    const auto c1 = d1.cumulative();
    const auto c2 = d2.cumulative();
    std::size_t i = 0;
    std::size_t j = 0;
    double prev = 0.0;
    while (i < a1.size() && j < a2.size()) {
        const double next = std::min(c1[i], c2[j]);
        visit(a1[i], a2[j], next - prev);
        prev = next;
        if (c1[i] <= next + kBreakTol) {
            ++i;
        }
        if (c2[j] <= next + kBreakTol) {
            ++j;
        }
    }
}

bool same_equal_grid(const EmpiricalDistribution& d1, const EmpiricalDistribution& d2) {
    return d1.equal_weights() && d2.equal_weights() && d1.size() == d2.size();
}

// Visits maximal t-intervals [t_prev, t_next) between merged atom positions
// on which both step CDFs are constant, with the CDF values there.
template <typename Visit>
void for_each_t_interval(const EmpiricalDistribution& d1, const EmpiricalDistribution& d2,
                         Visit&& visit) {
    const auto a1 = d1.atoms();
    const auto a2 = d2.atoms();
    const auto c1 = d1.cumulative();
    const auto c2 = d2.cumulative();
    std::size_t i = 0;
    std::size_t j = 0;
    double f1 = 0.0;
    double f2 = 0.0;
    double prev = 0.0;
    bool started = false;
    constexpr double inf = std::numeric_limits<double>::infinity();
    while (i < a1.size() || j < a2.size()) {
        const double t = std::min(i < a1.size() ? a1[i] : inf, j < a2.size() ? a2[j] : inf);
        if (started) {
            visit(prev, t, f1, f2);
        }
        while (i < a1.size() && a1[i] == t) {
            f1 = c1[i++];
        }
        while (j < a2.size() && a2[j] == t) {
            f2 = c2[j++];
        }
        prev = t;
        started = true;
    }
}

void require_nonnegative_support(const EmpiricalDistribution& d) {
    require(d.min() >= 0.0, "distance distribution has a negative atom " + std::to_string(d.min()));
}

} // namespace

EmpiricalDistribution EmpiricalDistribution::from_samples(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    return from_sorted(std::move(values));
}

EmpiricalDistribution EmpiricalDistribution::from_sorted(std::vector<double> values) {
    require(!values.empty(), "empirical distribution needs at least one atom");
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (!std::isfinite(values[k])) fail("non-finite atom at position " + std::to_string(k));
        if (k > 0 && !(values[k - 1] <= values[k])) {
            fail("atoms must be nondecreasing; violated at position " + std::to_string(k));
        }
    }
    EmpiricalDistribution d;
    const std::size_t n = values.size();
    const double n_real = static_cast<double>(n);
    d.atoms_ = std::move(values);
    d.weights_.assign(n, 1.0 / n_real);
    d.cumulative_.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        d.cumulative_[k] = static_cast<double>(k + 1) / n_real;
    }
    d.equal_weights_ = true;
    return d;
}

EmpiricalDistribution EmpiricalDistribution::weighted(std::vector<double> atoms,
                                                      std::vector<double> weights) {
    require(!atoms.empty(), "empirical distribution needs at least one atom");
    require(atoms.size() == weights.size(), "atom and weight counts differ");
    for (std::size_t k = 0; k < atoms.size(); ++k) {
        if (!std::isfinite(atoms[k])) fail("non-finite atom at position " + std::to_string(k));
        if (k > 0 && !(atoms[k - 1] <= atoms[k])) {
            fail("atoms must be nondecreasing; violated at position " + std::to_string(k));
        }
        if (!(std::isfinite(weights[k]) && weights[k] > 0.0)) {
            fail("weights must be positive; violated at position " + std::to_string(k));
        }
    }
    const double total = ordered_sum(weights);
    require(std::fabs(total - 1.0) <= 1e-12, "weights must sum to 1");

    EmpiricalDistribution d;
    d.atoms_ = std::move(atoms);
    d.weights_ = std::move(weights);
    d.cumulative_.resize(d.atoms_.size());
    double running = 0.0;
    for (std::size_t k = 0; k < d.atoms_.size(); ++k) {
        running += d.weights_[k];
        d.cumulative_[k] = std::min(running, 1.0);
    }
    d.cumulative_.back() = 1.0;
    const double w0 = d.weights_.front();
    d.equal_weights_ = std::all_of(d.weights_.begin(), d.weights_.end(),
                                   [w0](double w) { return w == w0; }) &&
                       w0 == 1.0 / static_cast<double>(d.atoms_.size());
    if (d.equal_weights_) {
        const double n_real = static_cast<double>(d.atoms_.size());
        for (std::size_t k = 0; k < d.atoms_.size(); ++k) {
            d.cumulative_[k] = static_cast<double>(k + 1) / n_real;
        }
    }
    return d;
}

EmpiricalDistribution EmpiricalDistribution::point_mass(double at) {
    return from_sorted({at});
}

StepWeight::StepWeight(std::vector<double> breakpoints, std::vector<double> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
    require(values_.size() == breakpoints_.size() + 1,
            "weight profile needs one more value than breakpoints");
    for (std::size_t k = 0; k < breakpoints_.size(); ++k) {
        require(std::isfinite(breakpoints_[k]) && breakpoints_[k] > 0.0,
                "weight breakpoints must be positive and finite");
        require(k == 0 || breakpoints_[k - 1] < breakpoints_[k],
                "weight breakpoints must be strictly increasing");
    }
    for (double v : values_) {
        require(std::isfinite(v) && v >= 0.0, "weight values must be finite and nonnegative");
    }
    integral_at_break_.resize(breakpoints_.size());
    double acc = 0.0;
    double left = 0.0;
    for (std::size_t k = 0; k < breakpoints_.size(); ++k) {
        acc += values_[k] * (breakpoints_[k] - left);
        integral_at_break_[k] = acc;
        left = breakpoints_[k];
    }
}

StepWeight StepWeight::constant(double value) {
    return StepWeight({}, {value});
}

double StepWeight::operator()(double t) const {
    const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
    return values_[static_cast<std::size_t>(it - breakpoints_.begin())];
}

double StepWeight::cumulative(double t) const {
    const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
    const auto piece = static_cast<std::size_t>(it - breakpoints_.begin());
    if (piece == 0) {
        return values_[0] * t;
    }
    return integral_at_break_[piece - 1] + values_[piece] * (t - breakpoints_[piece - 1]);
}

double cdf_eval(const EmpiricalDistribution& dist, double t) {
    require_nonempty(dist, "cdf_eval");
    const auto atoms = dist.atoms();
    const auto count = static_cast<std::size_t>(std::upper_bound(atoms.begin(), atoms.end(), t) -
                                                atoms.begin());
    return count == 0 ? 0.0 : dist.cumulative()[count - 1];
}

double quantile_eval(const EmpiricalDistribution& dist, double u) {
    require_nonempty(dist, "quantile_eval");
    if (!(u > 0.0 && u <= 1.0)) fail("quantile level must lie in (0, 1], got " + std::to_string(u));
    const auto cum = dist.cumulative();
    const auto k = static_cast<std::size_t>(std::lower_bound(cum.begin(), cum.end(), u) - cum.begin());
    return dist.atoms()[std::min(k, dist.size() - 1)];
}

double mean(const EmpiricalDistribution& dist) {
    require_nonempty(dist, "mean");
    if (dist.equal_weights()) {
        return ordered_sum({dist.atoms().begin(), dist.atoms().end()}) /
               static_cast<double>(dist.size());
    }
    std::vector<double> terms(dist.size());
    for (std::size_t k = 0; k < dist.size(); ++k) {
        terms[k] = dist.atoms()[k] * dist.weights()[k];
    }
    return ordered_sum(std::move(terms));
}

double wasserstein2(const EmpiricalDistribution& d1, const EmpiricalDistribution& d2) {
    require_nonempty(d1, "wasserstein2");
    require_nonempty(d2, "wasserstein2");
    std::vector<double> terms;
    if (same_equal_grid(d1, d2)) {
        terms.resize(d1.size());
        for (std::size_t k = 0; k < d1.size(); ++k) {
            const double diff = d1.atoms()[k] - d2.atoms()[k];
            terms[k] = diff * diff;
        }
        return std::sqrt(ordered_sum(std::move(terms)) / static_cast<double>(d1.size()));
    }
    terms.reserve(d1.size() + d2.size());
    for_each_u_interval(d1, d2, [&](double q1, double q2, double du) {
        terms.push_back((q1 - q2) * (q1 - q2) * du);
    });
    return std::sqrt(std::max(0.0, ordered_sum(std::move(terms))));
}

double integral_quantile_diff(const EmpiricalDistribution& d1, const EmpiricalDistribution& d2) {
    require_nonempty(d1, "integral_quantile_diff");
    require_nonempty(d2, "integral_quantile_diff");
    std::vector<double> terms;
    if (same_equal_grid(d1, d2)) {
        terms.resize(d1.size());
        for (std::size_t k = 0; k < d1.size(); ++k) {
            terms[k] = d1.atoms()[k] - d2.atoms()[k];
        }
        return ordered_sum(std::move(terms)) / static_cast<double>(d1.size());
    }
    terms.reserve(d1.size() + d2.size());
    for_each_u_interval(d1, d2, [&](double q1, double q2, double du) {
        terms.push_back((q1 - q2) * du);
    });
    return ordered_sum(std::move(terms));
}

double transport_map_eval(const EmpiricalDistribution& source, const EmpiricalDistribution& target,
                          double u) {
    require_nonempty(source, "transport_map_eval");
    require(u >= 0.0, "transport map argument must be nonnegative");
    double level = cdf_eval(source, u);
    if (level <= 0.0) {
        level = source.weights().front();
    }
    return quantile_eval(target, level) - u;
}

EmpiricalDistribution barycenter(std::span<const EmpiricalDistribution> dists, std::size_t m) {
    require(!dists.empty(), "barycenter of an empty list");
    require(m >= 2, "barycenter grid needs at least 2 points");
    const double m_real = static_cast<double>(m);
    const double count = static_cast<double>(dists.size());
    std::vector<double> atoms(m);
    for (std::size_t k = 0; k < m; ++k) {
        const double u = (static_cast<double>(k) + 0.5) / m_real;
        double acc = 0.0;
        for (const auto& d : dists) {
            acc += quantile_eval(d, u);
        }
        atoms[k] = acc / count;
    }
    return EmpiricalDistribution::from_sorted(std::move(atoms));
}

EmpiricalDistribution barycenter_exact(std::span<const EmpiricalDistribution> dists) {
    require(!dists.empty(), "barycenter of an empty list");
    const double count = static_cast<double>(dists.size());
    const std::size_t n = dists.front().size();
    const bool common_grid = std::all_of(dists.begin(), dists.end(), [n](const auto& d) {
        return d.equal_weights() && d.size() == n;
    });
    if (common_grid) {
        std::vector<double> atoms(n, 0.0);
        for (const auto& d : dists) {
            for (std::size_t k = 0; k < n; ++k) {
                atoms[k] += d.atoms()[k];
            }
        }
        for (auto& a : atoms) {
            a /= count;
        }
        return EmpiricalDistribution::from_sorted(std::move(atoms));
    }

    std::vector<double> breaks;
    for (const auto& d : dists) {
        require_nonempty(d, "barycenter_exact");
        breaks.insert(breaks.end(), d.cumulative().begin(), d.cumulative().end());
    }
    std::sort(breaks.begin(), breaks.end());
    std::vector<double> merged;
    for (double b : breaks) {
        if (merged.empty() || b > merged.back() + kBreakTol) {
            merged.push_back(b);
        }
    }
    merged.back() = 1.0;

    std::vector<std::size_t> cursor(dists.size(), 0);
    std::vector<double> atoms;
    std::vector<double> weights;
    double prev = 0.0;
    for (double next : merged) {
        double acc = 0.0;
        for (std::size_t i = 0; i < dists.size(); ++i) {
            const auto cum = dists[i].cumulative();
            while (cursor[i] + 1 < cum.size() && cum[cursor[i]] < next - kBreakTol) {
                ++cursor[i];
            }
            acc += dists[i].atoms()[cursor[i]];
        }
        atoms.push_back(acc / count);
        weights.push_back(next - prev);
        prev = next;
    }
    // Renormalize away the rounding in the interval lengths.
    const double total = ordered_sum(weights);
    for (auto& w : weights) {
        w /= total;
    }
    return EmpiricalDistribution::weighted(std::move(atoms), std::move(weights));
}

double integral_sq_cdf_diff(const EmpiricalDistribution& d1, const EmpiricalDistribution& d2) {
    require_nonempty(d1, "integral_sq_cdf_diff");
    require_nonempty(d2, "integral_sq_cdf_diff");
    require_nonnegative_support(d1);
    require_nonnegative_support(d2);
    std::vector<double> terms;
    terms.reserve(d1.size() + d2.size());
    for_each_t_interval(d1, d2, [&](double a, double b, double f1, double f2) {
        terms.push_back((f1 - f2) * (f1 - f2) * (b - a));
    });
    return ordered_sum(std::move(terms));
}

double integral_weighted_sq_cdf_diff(const EmpiricalDistribution& d1,
                                     const EmpiricalDistribution& d2, const StepWeight& w) {
    require_nonempty(d1, "integral_weighted_sq_cdf_diff");
    require_nonempty(d2, "integral_weighted_sq_cdf_diff");
    require_nonnegative_support(d1);
    require_nonnegative_support(d2);
    std::vector<double> terms;
    terms.reserve(d1.size() + d2.size() + w.breakpoints().size());
    for_each_t_interval(d1, d2, [&](double a, double b, double f1, double f2) {
        const double gap = (f1 - f2) * (f1 - f2);
        if (gap > 0.0) {
            terms.push_back(gap * (w.cumulative(b) - w.cumulative(a)));
        }
    });
    return ordered_sum(std::move(terms));
}

} // namespace distprof
