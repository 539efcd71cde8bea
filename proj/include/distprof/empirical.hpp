#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace distprof {

// A one-dimensional distribution with finitely many weighted atoms.
//
// Atoms are kept sorted ascending; weights are positive and sum to one. The
// cumulative weights are stored alongside so that the step CDF and its
// left-continuous inverse are evaluated from the same numbers: for the
// equal-weight case the k-th cumulative weight is exactly (k+1)/n.
class EmpiricalDistribution {
public:
    EmpiricalDistribution() = default;

    // Equal-weight atoms in any order.
    static EmpiricalDistribution from_samples(std::vector<double> values);
    // Equal-weight atoms that the caller guarantees are nondecreasing.
    static EmpiricalDistribution from_sorted(std::vector<double> values);
    // Weighted atoms, sorted ascending; weights positive, summing to 1 within 1e-12.
    static EmpiricalDistribution weighted(std::vector<double> atoms, std::vector<double> weights);
    static EmpiricalDistribution point_mass(double at);

    std::size_t size() const { return atoms_.size(); }
    bool empty() const { return atoms_.empty(); }
    bool equal_weights() const { return equal_weights_; }
    std::span<const double> atoms() const { return atoms_; }
    std::span<const double> weights() const { return weights_; }
    // cumulative()[k] = weight of atoms 0..k; the last entry is exactly 1.
    std::span<const double> cumulative() const { return cumulative_; }
    double min() const { return atoms_.front(); }
    double max() const { return atoms_.back(); }

    bool operator==(const EmpiricalDistribution&) const = default;

private:
    std::vector<double> atoms_;
    std::vector<double> weights_;
    std::vector<double> cumulative_;
    bool equal_weights_ = true;
};

// Nonnegative piecewise-constant function on [0, inf):
// value(t) = values[j] for t in [breakpoints[j-1], breakpoints[j]), with
// breakpoints[-1] = 0 and breakpoints[r] = inf.
class StepWeight {
public:
    StepWeight() : values_{1.0} {}
    StepWeight(std::vector<double> breakpoints, std::vector<double> values);
    static StepWeight constant(double value);

    double operator()(double t) const;
    // Integral of the weight over [0, t].
    double cumulative(double t) const;
    bool is_unit() const { return breakpoints_.empty() && values_.front() == 1.0; }

    std::span<const double> breakpoints() const { return breakpoints_; }
    std::span<const double> values() const { return values_; }

private:
    std::vector<double> breakpoints_;
    std::vector<double> values_;
    std::vector<double> integral_at_break_;
};

// sum_i w_i 1[atom_i <= t]
double cdf_eval(const EmpiricalDistribution& dist, double t);

// inf{x : F(x) >= u} for u in (0, 1].
double quantile_eval(const EmpiricalDistribution& dist, double u);

double mean(const EmpiricalDistribution& dist);

// (int_0^1 (Q1(u) - Q2(u))^2 du)^{1/2}, exact on the step quantile functions.
double wasserstein2(const EmpiricalDistribution& d1, const EmpiricalDistribution& d2);

// int_0^1 (Q1(u) - Q2(u)) du over the merged u-breakpoints.
double integral_quantile_diff(const EmpiricalDistribution& d1, const EmpiricalDistribution& d2);

// H(u) = Q_target(F_source(u)) - u. Where F_source(u) = 0 the target quantile
// is taken at the weight of the smallest source atom.
double transport_map_eval(const EmpiricalDistribution& source, const EmpiricalDistribution& target,
                          double u);

// m equal-weight atoms: the averaged quantile functions at u = (k - 1/2)/m.
EmpiricalDistribution barycenter(std::span<const EmpiricalDistribution> dists, std::size_t m);

// The exact pointwise average of the member quantile functions, carried on
// the union of their u-breakpoints.
EmpiricalDistribution barycenter_exact(std::span<const EmpiricalDistribution> dists);

// int_0^inf (F1(t) - F2(t))^2 dt for distributions on [0, inf).
double integral_sq_cdf_diff(const EmpiricalDistribution& d1, const EmpiricalDistribution& d2);

// int_0^inf w(t) (F1(t) - F2(t))^2 dt.
double integral_weighted_sq_cdf_diff(const EmpiricalDistribution& d1,
                                     const EmpiricalDistribution& d2, const StepWeight& w);

} // namespace distprof
