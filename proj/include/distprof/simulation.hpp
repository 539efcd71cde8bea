#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "distprof/metric.hpp"
#include "distprof/rng.hpp"

namespace distprof {

enum class Scenario {
    mvnorm_mean_shift,         // N(0, U L U^T) vs N(delta 1, U L U^T)
    mvnorm_scale_change,       // N(0, 0.8 I) vs N(0, (0.8 - delta) I)
    mvnorm_vs_mixture,         // N(0, I) vs A Z1 + (1 - A) Z2
    mvnorm_vs_t,               // N(0, I) vs iid t(df) components
    gauss2d_distn_mean_shift,  // N(Z, 0.25 I) with Z ~ N(0, .25 I) vs N((delta, 0), .25 I)
    gauss2d_distn_scale_change,// N(Z, 0.25 I) with Z ~ N(0, .4^2 I) vs N(0, (.4 + delta)^2 I)
    prefattach_network,        // attachment prob ~ degree^0 vs degree^theta
};

Scenario parse_scenario(std::string_view name);
std::string_view to_string(Scenario scenario);

struct ScenarioSpec {
    Scenario scenario = Scenario::mvnorm_mean_shift;
    // Vector dimension p, or node count for networks.
    std::size_t dim = 30;
    // delta_1..delta_6, degrees of freedom, or theta depending on the scenario.
    double parameter = 0.0;
    std::size_t n = 100;
    std::size_t m = 100;
    // Grid for the 2-D distribution scenarios: nodes lo + k h, k = 1..res.
    std::size_t grid_resolution = 64;
    double grid_lo = -4.0;
    double grid_hi = 4.0;
};

struct SamplePair {
    ObjectSample x;
    ObjectSample y;
};

// Metric the scenario's objects are compared with.
MetricSpec scenario_metric(const ScenarioSpec& spec);

// Diagonal of Lambda: cos(k pi / p) + 1.5, k = 1..p.
std::vector<double> mean_shift_eigenvalues(std::size_t p);
// Orthogonal U whose first column is p^{-1/2} 1, completed by Gram-Schmidt
// over the standard basis.
Matrix mean_shift_basis(std::size_t p);

SamplePair gen_mvnorm_pair(const ScenarioSpec& spec, std::uint64_t seed);
SamplePair gen_mixture_pair(const ScenarioSpec& spec, std::uint64_t seed);
SamplePair gen_t_pair(const ScenarioSpec& spec, std::uint64_t seed);
SamplePair gen_gauss2d_distributions(const ScenarioSpec& spec, std::uint64_t seed);
SamplePair gen_prefattach(const ScenarioSpec& spec, std::uint64_t seed);

// Dispatches on spec.scenario.
SamplePair generate_pair(const ScenarioSpec& spec, std::uint64_t seed);

// CDF of N(center, sd^2 I_2) on the grid described by spec, row-major with
// the first coordinate along rows.
Object gaussian_cdf_grid(double center_x, double center_y, double sd, const ScenarioSpec& spec);

// Node chosen with probability proportional to degree^theta.
std::size_t attachment_choice(std::span<const double> degrees, double theta, Engine& engine);

// Growth network: nodes 0-1 joined, then every new node attaches one edge to
// an existing node picked by attachment_choice. Returns the 0/1 adjacency
// matrix, row-major.
Object prefattach_network(std::size_t nodes, double theta, Engine& engine);

enum class TestMethod { dp, energy, hotelling };

TestMethod parse_test_method(std::string_view name);
std::string_view to_string(TestMethod method);

struct PowerPoint {
    double parameter = 0.0;
    double rate = 0.0;
    std::size_t runs = 0;
    double se = 0.0;
};

struct PowerCurve {
    Scenario scenario{};
    TestMethod method{};
    std::size_t K = 0;
    double alpha = 0.05;
    std::uint64_t seed = 0;
    std::vector<PowerPoint> points;
};

// Rejection rate at level alpha of the chosen permutation test over `runs`
// fresh sample pairs for each grid value. Run r at grid index g draws its data
// from substream (seed, g, r, 0) and its permutations from (seed, g, r, 1).
PowerCurve power_study(const ScenarioSpec& base, std::span<const double> grid, TestMethod method,
                       std::size_t runs, std::size_t K, double alpha, std::uint64_t seed);

// Monotone (nondecreasing) least-squares fit by pool-adjacent-violators.
std::vector<double> isotonic_fit(std::span<const double> values);

} // namespace distprof
