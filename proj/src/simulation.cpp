#include "distprof/simulation.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "distprof/baselines.hpp"
#include "distprof/error.hpp"
#include "distprof/parallel.hpp"
#include "distprof/two_sample.hpp"

namespace distprof {

namespace {

bool is_vector_scenario(Scenario s) {
    return s == Scenario::mvnorm_mean_shift || s == Scenario::mvnorm_scale_change ||
           s == Scenario::mvnorm_vs_mixture || s == Scenario::mvnorm_vs_t;
}

ObjectSample vector_sample(std::size_t count) {
    ObjectSample s;
    s.encoding = Encoding::vector;
    s.objects.reserve(count);
    return s;
}

Object standard_normal(std::size_t p, Engine& engine) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Object z(p);
    for (auto& v : z) {
        v = normal(engine);
    }
    return z;
}

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

} // namespace

Scenario parse_scenario(std::string_view name) {
    for (auto s : {Scenario::mvnorm_mean_shift, Scenario::mvnorm_scale_change,
                   Scenario::mvnorm_vs_mixture, Scenario::mvnorm_vs_t,
                   Scenario::gauss2d_distn_mean_shift, Scenario::gauss2d_distn_scale_change,
                   Scenario::prefattach_network}) {
        if (to_string(s) == name) {
            return s;
        }
    }
    throw ValidationError("unknown scenario '" + std::string(name) + "'");
}

std::string_view to_string(Scenario scenario) {
    switch (scenario) {
    case Scenario::mvnorm_mean_shift: return "mvnorm_mean_shift";
    case Scenario::mvnorm_scale_change: return "mvnorm_scale_change";
    case Scenario::mvnorm_vs_mixture: return "mvnorm_vs_mixture";
    case Scenario::mvnorm_vs_t: return "mvnorm_vs_t";
    case Scenario::gauss2d_distn_mean_shift: return "gauss2d_distn_mean_shift";
    case Scenario::gauss2d_distn_scale_change: return "gauss2d_distn_scale_change";
    case Scenario::prefattach_network: return "prefattach_network";
    }
    return "?";
}

MetricSpec scenario_metric(const ScenarioSpec& spec) {
    if (is_vector_scenario(spec.scenario)) {
        return {MetricKind::euclidean, 1.0};
    }
    if (spec.scenario == Scenario::prefattach_network) {
        return {MetricKind::frobenius, 1.0};
    }
    const double h = (spec.grid_hi - spec.grid_lo) / static_cast<double>(spec.grid_resolution);
    return {MetricKind::l2cdf, h * h};
}

std::vector<double> mean_shift_eigenvalues(std::size_t p) {
    std::vector<double> lambda(p);
    for (std::size_t k = 1; k <= p; ++k) {
        lambda[k - 1] = std::cos(static_cast<double>(k) * std::numbers::pi / static_cast<double>(p)) + 1.5;
    }
    return lambda;
}

Matrix mean_shift_basis(std::size_t p) {
    require(p >= 1, "basis dimension must be positive");
    std::vector<std::vector<double>> columns;
    columns.emplace_back(p, 1.0 / std::sqrt(static_cast<double>(p)));
    for (std::size_t e = 0; e < p && columns.size() < p; ++e) {
        std::vector<double> v(p, 0.0);
        v[e] = 1.0;
        // modified Gram-Schmidt, applied twice for orthogonality to rounding
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& c : columns) {
                double dot = 0.0;
                for (std::size_t k = 0; k < p; ++k) {
                    dot += c[k] * v[k];
                }
                for (std::size_t k = 0; k < p; ++k) {
                    v[k] -= dot * c[k];
                }
            }
        }
        double norm = 0.0;
        for (double x : v) {
            norm += x * x;
        }
        norm = std::sqrt(norm);
        if (norm < 1e-8) {
            continue;
        }
        for (auto& x : v) {
            x /= norm;
        }
        columns.push_back(std::move(v));
    }
    Matrix u(p, p);
    for (std::size_t c = 0; c < p; ++c) {
        for (std::size_t r = 0; r < p; ++r) {
            u(r, c) = columns[c][r];
        }
    }
    return u;
}

SamplePair gen_mvnorm_pair(const ScenarioSpec& spec, std::uint64_t seed) {
    const std::size_t p = spec.dim;
    require(p >= 2, "multivariate scenarios need p >= 2");
    Engine engine(seed);
    SamplePair pair{vector_sample(spec.n), vector_sample(spec.m)};

    if (spec.scenario == Scenario::mvnorm_mean_shift) {
        const auto lambda = mean_shift_eigenvalues(p);
        const Matrix u = mean_shift_basis(p);
        auto draw = [&](double shift) {
            const Object z = standard_normal(p, engine);
            Object v(p, shift);
            for (std::size_t r = 0; r < p; ++r) {
                for (std::size_t c = 0; c < p; ++c) {
                    v[r] += u(r, c) * std::sqrt(lambda[c]) * z[c];
                }
            }
            return v;
        };
        for (std::size_t i = 0; i < spec.n; ++i) pair.x.objects.push_back(draw(0.0));
        for (std::size_t i = 0; i < spec.m; ++i) pair.y.objects.push_back(draw(spec.parameter));
        return pair;
    }

    require(spec.scenario == Scenario::mvnorm_scale_change, "gen_mvnorm_pair: wrong scenario");
    require(spec.parameter < 0.8, "scale change needs delta < 0.8");
    auto draw = [&](double variance) {
        Object z = standard_normal(p, engine);
        const double sd = std::sqrt(variance);
        for (auto& v : z) v *= sd;
        return z;
    };
    for (std::size_t i = 0; i < spec.n; ++i) pair.x.objects.push_back(draw(0.8));
    for (std::size_t i = 0; i < spec.m; ++i) pair.y.objects.push_back(draw(0.8 - spec.parameter));
    return pair;
}

SamplePair gen_mixture_pair(const ScenarioSpec& spec, std::uint64_t seed) {
    const std::size_t p = spec.dim;
    require(p >= 2, "multivariate scenarios need p >= 2");
    const auto shifted = static_cast<std::size_t>(std::llround(0.1 * static_cast<double>(p)));
    require(shifted >= 1, "mixture scenario needs round(0.1 p) >= 1");
    Engine engine(seed);
    std::bernoulli_distribution coin(0.5);
    SamplePair pair{vector_sample(spec.n), vector_sample(spec.m)};
    for (std::size_t i = 0; i < spec.n; ++i) {
        pair.x.objects.push_back(standard_normal(p, engine));
    }
    for (std::size_t i = 0; i < spec.m; ++i) {
        // A = 1 selects Z1 ~ N(-mu, I), A = 0 selects Z2 ~ N(mu, I)
        const double sign = coin(engine) ? -1.0 : 1.0;
        Object v = standard_normal(p, engine);
        for (std::size_t k = 0; k < shifted; ++k) {
            v[k] += sign * spec.parameter;
        }
        pair.y.objects.push_back(std::move(v));
    }
    return pair;
}

SamplePair gen_t_pair(const ScenarioSpec& spec, std::uint64_t seed) {
    const std::size_t p = spec.dim;
    require(p >= 1, "t scenario needs p >= 1");
    require(spec.parameter > 0.0, "t distribution needs positive degrees of freedom");
    Engine engine(seed);
    std::student_t_distribution<double> student(spec.parameter);
    SamplePair pair{vector_sample(spec.n), vector_sample(spec.m)};
    for (std::size_t i = 0; i < spec.n; ++i) {
        pair.x.objects.push_back(standard_normal(p, engine));
    }
    for (std::size_t i = 0; i < spec.m; ++i) {
        Object v(p);
        for (auto& c : v) c = student(engine);
        pair.y.objects.push_back(std::move(v));
    }
    return pair;
}

Object gaussian_cdf_grid(double center_x, double center_y, double sd, const ScenarioSpec& spec) {
    const std::size_t res = spec.grid_resolution;
    const double h = (spec.grid_hi - spec.grid_lo) / static_cast<double>(res);
    std::vector<double> fx(res);
    std::vector<double> fy(res);
    for (std::size_t k = 0; k < res; ++k) {
        const double node = spec.grid_lo + static_cast<double>(k + 1) * h;
        fx[k] = normal_cdf((node - center_x) / sd);
        fy[k] = normal_cdf((node - center_y) / sd);
    }
    Object grid(res * res);
    for (std::size_t r = 0; r < res; ++r) {
        for (std::size_t c = 0; c < res; ++c) {
            grid[r * res + c] = fx[r] * fy[c];
        }
    }
    return grid;
}

SamplePair gen_gauss2d_distributions(const ScenarioSpec& spec, std::uint64_t seed) {
    require(spec.grid_resolution >= 16, "2-D distribution grid needs resolution >= 16");
    require(spec.grid_hi > spec.grid_lo, "2-D distribution grid needs lo < hi");
    Engine engine(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    ObjectSample base;
    base.encoding = Encoding::cdf_grid;
    base.rows = spec.grid_resolution;
    base.cols = spec.grid_resolution;
    SamplePair pair{base, base};

    double x_sd = 0.5;
    double y_sd = 0.5;
    double y_shift = 0.0;
    if (spec.scenario == Scenario::gauss2d_distn_mean_shift) {
        y_shift = spec.parameter;
    } else {
        require(spec.scenario == Scenario::gauss2d_distn_scale_change,
                "gen_gauss2d_distributions: wrong scenario");
        x_sd = 0.4;
        y_sd = 0.4 + spec.parameter;
        require(y_sd > 0.0, "scale change must keep 0.4 + delta positive");
    }
    constexpr double object_sd = 0.5; // each object is N(Z, 0.25 I)
    for (std::size_t i = 0; i < spec.n; ++i) {
        const double zx = x_sd * normal(engine);
        const double zy = x_sd * normal(engine);
        pair.x.objects.push_back(gaussian_cdf_grid(zx, zy, object_sd, spec));
    }
    for (std::size_t i = 0; i < spec.m; ++i) {
        const double zx = y_shift + y_sd * normal(engine);
        const double zy = y_sd * normal(engine);
        pair.y.objects.push_back(gaussian_cdf_grid(zx, zy, object_sd, spec));
    }
    return pair;
}

std::size_t attachment_choice(std::span<const double> degrees, double theta, Engine& engine) {
    require(!degrees.empty(), "attachment needs at least one node");
    require(theta >= 0.0, "attachment exponent must be nonnegative");
    if (theta == 0.0) {
        std::uniform_int_distribution<std::size_t> pick(0, degrees.size() - 1);
        return pick(engine);
    }
    double total = 0.0;
    for (double d : degrees) {
        total += std::pow(d, theta);
    }
    std::uniform_real_distribution<double> unit(0.0, total);
    const double target = unit(engine);
    double acc = 0.0;
    for (std::size_t s = 0; s < degrees.size(); ++s) {
        acc += std::pow(degrees[s], theta);
        if (target < acc) {
            return s;
        }
    }
    return degrees.size() - 1;
}

Object prefattach_network(std::size_t nodes, double theta, Engine& engine) {
    require(nodes >= 2, "network needs at least 2 nodes");
    require(theta >= 0.0, "attachment exponent must be nonnegative");
    Object adjacency(nodes * nodes, 0.0);
    std::vector<double> degree(nodes, 0.0);
    std::vector<double> weight(nodes, 0.0);
    auto link = [&](std::size_t a, std::size_t b) {
        adjacency[a * nodes + b] = 1.0;
        adjacency[b * nodes + a] = 1.0;
        degree[a] += 1.0;
        degree[b] += 1.0;
        weight[a] = std::pow(degree[a], theta);
        weight[b] = std::pow(degree[b], theta);
    };
    link(0, 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t t = 2; t < nodes; ++t) {
        std::size_t target = 0;
        if (theta == 0.0) {
            std::uniform_int_distribution<std::size_t> pick(0, t - 1);
            target = pick(engine);
        } else {
            double total = 0.0;
            for (std::size_t s = 0; s < t; ++s) total += weight[s];
            const double draw = unit(engine) * total;
            double acc = 0.0;
            target = t - 1;
            for (std::size_t s = 0; s < t; ++s) {
                acc += weight[s];
                if (draw < acc) {
                    target = s;
                    break;
                }
            }
        }
        link(t, target);
    }
    return adjacency;
}

SamplePair gen_prefattach(const ScenarioSpec& spec, std::uint64_t seed) {
    require(spec.parameter >= 0.0, "attachment exponent must be nonnegative");
    Engine engine(seed);
    ObjectSample base;
    base.encoding = Encoding::adjacency;
    base.rows = spec.dim;
    base.cols = spec.dim;
    SamplePair pair{base, base};
    for (std::size_t i = 0; i < spec.n; ++i) {
        pair.x.objects.push_back(prefattach_network(spec.dim, 0.0, engine));
    }
    for (std::size_t i = 0; i < spec.m; ++i) {
        pair.y.objects.push_back(prefattach_network(spec.dim, spec.parameter, engine));
    }
    return pair;
}

SamplePair generate_pair(const ScenarioSpec& spec, std::uint64_t seed) {
    switch (spec.scenario) {
    case Scenario::mvnorm_mean_shift:
    case Scenario::mvnorm_scale_change:
        return gen_mvnorm_pair(spec, seed);
    case Scenario::mvnorm_vs_mixture:
        return gen_mixture_pair(spec, seed);
    case Scenario::mvnorm_vs_t:
        return gen_t_pair(spec, seed);
    case Scenario::gauss2d_distn_mean_shift:
    case Scenario::gauss2d_distn_scale_change:
        return gen_gauss2d_distributions(spec, seed);
    case Scenario::prefattach_network:
        return gen_prefattach(spec, seed);
    }
    throw ValidationError("unsupported scenario");
}

TestMethod parse_test_method(std::string_view name) {
    if (name == "dp") return TestMethod::dp;
    if (name == "energy") return TestMethod::energy;
    if (name == "hotelling") return TestMethod::hotelling;
    throw ValidationError("unknown test method '" + std::string(name) + "'");
}

std::string_view to_string(TestMethod method) {
    switch (method) {
    case TestMethod::dp: return "dp";
    case TestMethod::energy: return "energy";
    case TestMethod::hotelling: return "hotelling";
    }
    return "?";
}

PowerCurve power_study(const ScenarioSpec& base, std::span<const double> grid, TestMethod method,
                       std::size_t runs, std::size_t K, double alpha, std::uint64_t seed) {
    require(runs >= 1, "power study needs at least one run");
    require(K >= 1, "power study needs at least one permutation");
    require(!grid.empty(), "power study needs at least one parameter value");
    require(method != TestMethod::hotelling || is_vector_scenario(base.scenario),
            "Hotelling's T^2 needs a vector scenario");

    const std::size_t jobs = grid.size() * runs;
    std::vector<std::uint8_t> rejected(jobs, 0);
    parallel_for(jobs, [&](std::size_t job) {
        const std::size_t g = job / runs;
        const std::size_t r = job % runs;
        ScenarioSpec spec = base;
        spec.parameter = grid[g];
        const SamplePair data = generate_pair(spec, substream_seed(seed, {g, r, 0}));
        const std::uint64_t perm_seed = substream_seed(seed, {g, r, 1});
        double p = 1.0;
        if (method == TestMethod::hotelling) {
            p = hotelling_test(data.x, data.y, K, alpha, perm_seed).p_value;
        } else {
            const PooledDistances pooled = pool_distances(scenario_metric(spec), data.x, data.y);
            p = method == TestMethod::dp ? dp_test(pooled, WeightProfile{}, K, alpha, perm_seed).p_value
                                         : energy_test(pooled, K, alpha, perm_seed).p_value;
        }
        rejected[job] = p <= alpha ? 1 : 0;
    });

    PowerCurve curve;
    curve.scenario = base.scenario;
    curve.method = method;
    curve.K = K;
    curve.alpha = alpha;
    curve.seed = seed;
    for (std::size_t g = 0; g < grid.size(); ++g) {
        std::size_t count = 0;
        for (std::size_t r = 0; r < runs; ++r) {
            count += rejected[g * runs + r];
        }
        PowerPoint point;
        point.parameter = grid[g];
        point.runs = runs;
        point.rate = static_cast<double>(count) / static_cast<double>(runs);
        point.se = std::sqrt(point.rate * (1.0 - point.rate) / static_cast<double>(runs));
        curve.points.push_back(point);
    }
    return curve;
}

std::vector<double> isotonic_fit(std::span<const double> values) {
    struct Block {
        double sum;
        std::size_t count;
    };
    std::vector<Block> blocks;
    for (double v : values) {
        blocks.push_back({v, 1});
        while (blocks.size() > 1) {
            const auto& last = blocks.back();
            const auto& prev = blocks[blocks.size() - 2];
            if (prev.sum / static_cast<double>(prev.count) <= last.sum / static_cast<double>(last.count)) {
                break;
            }
            Block merged{prev.sum + last.sum, prev.count + last.count};
            blocks.pop_back();
            blocks.back() = merged;
        }
    }
    std::vector<double> fit;
    fit.reserve(values.size());
    for (const auto& b : blocks) {
        fit.insert(fit.end(), b.count, b.sum / static_cast<double>(b.count));
    }
    return fit;
}

} // namespace distprof
