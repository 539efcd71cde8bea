// distprof command line: ingest objects, compute distances, profiles, ranks,
// tests, embeddings and simulations, and write CSV/JSON results.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "distprof/baselines.hpp"
#include "distprof/descriptive.hpp"
#include "distprof/embedding.hpp"
#include "distprof/error.hpp"
#include "distprof/io.hpp"
#include "distprof/profiles.hpp"
#include "distprof/ranks.hpp"
#include "distprof/simulation.hpp"
#include "distprof/two_sample.hpp"

namespace fs = std::filesystem;
using namespace distprof;

namespace {

struct InputArgs {
    std::string path;
    std::string metric = "euclidean";
    std::string format;
    bool header = false;
    std::size_t grid_rows = 0;
    std::size_t grid_cols = 0;
    double cell_area = 1.0;
};

void add_input_options(CLI::App* cmd, InputArgs& in, const std::string& flag = "--input,-i") {
    cmd->add_option(flag, in.path, "input file or directory")->required();
    cmd->add_option("--metric", in.metric,
                    "euclidean|wasserstein1d|l2cdf|sphere_geodesic|fisher_rao|frobenius|precomputed");
    cmd->add_option("--format", in.format, "input format (default follows the metric)");
    cmd->add_flag("--header", in.header, "skip the first non-comment line of each CSV");
    cmd->add_option("--grid-rows", in.grid_rows, "grid rows for cdfgrid/densitygrid input");
    cmd->add_option("--grid-cols", in.grid_cols, "grid columns for cdfgrid/densitygrid input");
    cmd->add_option("--cell-area", in.cell_area, "grid cell area for l2cdf and fisher_rao");
}

MetricSpec metric_of(const InputArgs& in) {
    return {parse_metric_kind(in.metric), in.cell_area};
}

InputFormat format_of(const InputArgs& in) {
    return in.format.empty() ? default_format(parse_metric_kind(in.metric)) : parse_input_format(in.format);
}

bool is_precomputed(const InputArgs& in) {
    return format_of(in) == InputFormat::distmatrix_csv;
}

ObjectSample load_sample(const InputArgs& in, const std::string& path) {
    const InputFormat format = format_of(in);
    require(format != InputFormat::distmatrix_csv, "this command needs objects, not a distance matrix");
    IngestOptions options;
    options.header = in.header;
    options.grid_rows = in.grid_rows;
    options.grid_cols = in.grid_cols;
    return ingest_sample(path, format, options);
}

DistanceMatrix load_distances(const InputArgs& in) {
    if (is_precomputed(in)) {
        return ingest_distances(in.path, in.header);
    }
    return distance_matrix(metric_of(in), load_sample(in, in.path));
}

// Destination for tabular output: a file when given, stdout otherwise.
class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
            require(file_->good(), "cannot write " + path);
        }
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

std::string join(const std::vector<std::size_t>& v) {
    std::string s;
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (k > 0) s += ' ';
        s += std::to_string(v[k]);
    }
    return s;
}

void write_indices(std::ostream& out, const IndexSet& indices) {
    out << "index\n";
    for (auto i : indices) out << i << '\n';
}

std::vector<double> quantile_grid(const EmpiricalDistribution& dist, std::size_t m) {
    std::vector<double> q(m);
    for (std::size_t k = 0; k < m; ++k) {
        q[k] = quantile_eval(dist, (static_cast<double>(k) + 0.5) / static_cast<double>(m));
    }
    return q;
}

// Gaussian kernel density of the atoms on `points` equally spaced abscissae,
// Silverman's rule-of-thumb bandwidth.
struct Density {
    double bandwidth = 0.0;
    std::vector<double> x;
    std::vector<double> f;
};

Density kernel_density(std::span<const double> atoms, std::size_t points) {
    const auto n = static_cast<double>(atoms.size());
    double mu = 0.0;
    for (double a : atoms) mu += a;
    mu /= n;
    double var = 0.0;
    for (double a : atoms) var += (a - mu) * (a - mu);
    const double sd = atoms.size() > 1 ? std::sqrt(var / (n - 1.0)) : 0.0;
    std::vector<double> sorted(atoms.begin(), atoms.end());
    std::sort(sorted.begin(), sorted.end());
    auto quantile = [&](double u) {
        const double pos = u * (n - 1.0);
        const auto lo = static_cast<std::size_t>(std::floor(pos));
        const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
        return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
    };
    const double iqr = quantile(0.75) - quantile(0.25);
    double spread = std::min(sd, iqr / 1.34);
    if (spread <= 0.0) spread = sd > 0.0 ? sd : 1.0;
    Density d;
    d.bandwidth = 0.9 * spread * std::pow(n, -0.2);
    const double lo = sorted.front() - 3.0 * d.bandwidth;
    const double hi = sorted.back() + 3.0 * d.bandwidth;
    const double norm = 1.0 / (n * d.bandwidth * std::sqrt(2.0 * std::numbers::pi));
    for (std::size_t k = 0; k < points; ++k) {
        const double x = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(points - 1);
        double s = 0.0;
        for (double a : atoms) {
            const double z = (x - a) / d.bandwidth;
            s += std::exp(-0.5 * z * z);
        }
        d.x.push_back(x);
        d.f.push_back(s * norm);
    }
    return d;
}

nlohmann::ordered_json result_json(const TestResult& r) {
    nlohmann::ordered_json j;
    j["method"] = r.method;
    j["statistic"] = r.statistic;
    j["p_value"] = r.p_value;
    j["K"] = r.K;
    j["q_alpha_hat"] = r.q_alpha_hat;
    j["seed"] = r.seed;
    j["n"] = r.n;
    j["m"] = r.m;
    return j;
}

void write_sample(const ObjectSample& s, const fs::path& target, std::uint64_t seed,
                  const std::string& description) {
    if (s.encoding == Encoding::adjacency) {
        fs::create_directories(target);
        for (std::size_t i = 0; i < s.size(); ++i) {
            char name[32];
            std::snprintf(name, sizeof name, "object_%05zu.csv", i);
            std::ofstream out(target / name, std::ios::binary);
            require(out.good(), "cannot write " + (target / name).string());
            out << "# seed=" << seed << ' ' << description << '\n';
            for (std::size_t r = 0; r < s.rows; ++r) {
                write_row(out, std::span<const double>(s.objects[i]).subspan(r * s.cols, s.cols));
            }
        }
        return;
    }
    std::ofstream out(target.string() + ".csv", std::ios::binary);
    require(out.good(), "cannot write " + target.string() + ".csv");
    out << "# seed=" << seed << ' ' << description << '\n';
    for (const auto& obj : s.objects) write_row(out, obj);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Distance profiles, transport ranks and two-sample tests for random objects"};
    app.require_subcommand(1);
    std::string output;

    // dist
    InputArgs dist_in;
    auto* dist = app.add_subcommand("dist", "pairwise distance matrix");
    add_input_options(dist, dist_in);
    dist->add_option("--output,-o", output);

    // profiles
    InputArgs prof_in;
    std::string prof_mode = "with_self";
    auto* prof = app.add_subcommand("profiles", "distance profiles, one sorted atom list per object");
    add_input_options(prof, prof_in);
    prof->add_option("--mode", prof_mode, "with_self|leave_one_out");
    prof->add_option("--output,-o", output);

    // ranks
    InputArgs rank_in;
    int bins = 10;
    std::string bary_path;
    std::string density_path;
    std::size_t bary_grid = 100;
    auto* ranks = app.add_subcommand("ranks", "transport ranks, median and rank groups");
    add_input_options(ranks, rank_in);
    ranks->add_option("--bins", bins, "number of rank groups");
    ranks->add_option("--barycenters", bary_path, "write per-group barycenter quantile grids (wasserstein1d)");
    ranks->add_option("--barycenter-grid", bary_grid, "quantile levels per barycenter");
    ranks->add_option("--emit-density", density_path, "write kernel density curves of the barycenters");
    ranks->add_option("--output,-o", output);

    // quantile-set
    InputArgs qs_in;
    double zeta = 0.5;
    auto* qs = app.add_subcommand("quantile-set", "transport quantile set at level zeta");
    add_input_options(qs, qs_in);
    qs->add_option("--zeta", zeta)->required();
    qs->add_option("--output,-o", output);

    // trim
    InputArgs trim_in;
    double alpha0 = 0.0;
    auto* trim_cmd = app.add_subcommand("trim", "objects with rank at least alpha0");
    add_input_options(trim_cmd, trim_in);
    trim_cmd->add_option("--alpha0", alpha0)->required();
    trim_cmd->add_option("--output,-o", output);

    // test
    InputArgs test_in;
    std::string test_y;
    std::string test_method = "dp";
    std::size_t pooled_n = 0;
    std::size_t K = 1000;
    double alpha = 0.05;
    std::uint64_t seed = 42;
    std::vector<double> weight_breaks;
    std::vector<double> weight_values;
    std::string replicate_path;
    auto* test = app.add_subcommand("test", "two-sample permutation test");
    add_input_options(test, test_in, "--x,--pooled");
    test->add_option("--y", test_y, "second sample (omit with a pooled distance matrix)");
    test->add_option("--n", pooled_n, "size of the first sample inside a pooled distance matrix");
    test->add_option("--method", test_method, "dp|energy|hotelling");
    test->add_option("--K", K, "number of permutations");
    test->add_option("--alpha", alpha);
    test->add_option("--seed", seed);
    test->add_option("--weight-breaks", weight_breaks, "step weight breakpoints")->delimiter(',');
    test->add_option("--weight-values", weight_values, "step weight values")->delimiter(',');
    test->add_option("--replicates", replicate_path, "write the permutation replicates");
    test->add_option("--output,-o", output);

    // mds
    InputArgs mds_in;
    std::string mds_kind = "object";
    std::size_t mds_dim = 2;
    auto* mds = app.add_subcommand("mds", "classical multidimensional scaling");
    add_input_options(mds, mds_in);
    mds->add_option("--kind", mds_kind, "object|profile");
    mds->add_option("--dim", mds_dim);
    mds->add_option("--output,-o", output);

    // describe
    InputArgs desc_in;
    std::string desc_y;
    auto* desc = app.add_subcommand("describe", "Frechet mean, variance and metric (co)variance");
    add_input_options(desc, desc_in);
    desc->add_option("--y", desc_y, "paired second sample for metric covariance and correlation");
    desc->add_option("--output,-o", output);

    // simulate / power share the scenario options
    ScenarioSpec scenario;
    std::string scenario_name = "mvnorm_mean_shift";
    auto add_scenario = [&](CLI::App* cmd) {
        cmd->add_option("--scenario", scenario_name)->required();
        cmd->add_option("--dim", scenario.dim, "vector dimension or node count");
        cmd->add_option("--n", scenario.n);
        cmd->add_option("--m", scenario.m);
        cmd->add_option("--grid-res", scenario.grid_resolution, "2-D distribution grid resolution");
        cmd->add_option("--seed", seed);
    };
    std::string sim_dir;
    auto* sim = app.add_subcommand("simulate", "draw one sample pair from a scenario");
    add_scenario(sim);
    sim->add_option("--param", scenario.parameter);
    sim->add_option("--out-dir", sim_dir)->required();

    std::vector<double> power_grid;
    std::size_t runs = 100;
    auto* power = app.add_subcommand("power", "Monte-Carlo rejection rates over a parameter grid");
    add_scenario(power);
    power->add_option("--grid", power_grid, "parameter values")->delimiter(',')->required();
    power->add_option("--method", test_method, "dp|energy|hotelling");
    power->add_option("--runs", runs);
    power->add_option("--K", K);
    power->add_option("--alpha", alpha);
    power->add_option("--output,-o", output);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        Output out_file(output);
        std::ostream& out = out_file.stream();

        if (*dist) {
            write_matrix(out, load_distances(dist_in).matrix());
        } else if (*prof) {
            require(prof_mode == "with_self" || prof_mode == "leave_one_out",
                    "--mode must be with_self or leave_one_out");
            const auto mode = prof_mode == "with_self" ? ProfileMode::with_self : ProfileMode::leave_one_out;
            const ProfileSet set = build_profiles(load_distances(prof_in), mode);
            for (const auto& p : set.profiles) write_row(out, p.atoms());
        } else if (*ranks) {
            require(bins >= 1, "--bins must be at least 1");
            const bool want_bary = !bary_path.empty() || !density_path.empty();
            ObjectSample objects;
            DistanceMatrix d;
            if (want_bary) {
                require(parse_metric_kind(rank_in.metric) == MetricKind::wasserstein1d,
                        "--barycenters and --emit-density need --metric wasserstein1d");
                objects = load_sample(rank_in, rank_in.path);
                d = distance_matrix(metric_of(rank_in), objects);
            } else {
                d = load_distances(rank_in);
            }
            const RankReport report = rank_report(build_profiles(d, ProfileMode::with_self), bins);
            out << "# median=" << join(report.median_indices) << '\n';
            out << "index,rank,group\n";
            for (std::size_t i = 0; i < report.ranks.size(); ++i) {
                out << i << ',' << format_double(report.ranks[i]) << ',' << report.groups.labels[i] << '\n';
            }
            if (want_bary) {
                require(bary_grid >= 1, "--barycenter-grid must be positive");
                std::vector<std::vector<double>> grids;
                std::vector<int> groups;
                for (int g = 1; g <= bins; ++g) {
                    std::vector<EmpiricalDistribution> members;
                    for (std::size_t i = 0; i < objects.size(); ++i) {
                        if (report.groups.labels[i] == g) {
                            members.push_back(EmpiricalDistribution::from_sorted(objects.objects[i]));
                        }
                    }
                    if (members.empty()) continue;
                    groups.push_back(g);
                    grids.push_back(quantile_grid(barycenter_exact(members), bary_grid));
                }
                if (!bary_path.empty()) {
                    Output bo(bary_path);
                    bo.stream() << "# quantile levels (k - 0.5) / " << bary_grid << ", k = 1.." << bary_grid << '\n';
                    for (std::size_t g = 0; g < grids.size(); ++g) {
                        std::vector<double> row{static_cast<double>(groups[g])};
                        row.insert(row.end(), grids[g].begin(), grids[g].end());
                        write_row(bo.stream(), row);
                    }
                }
                if (!density_path.empty()) {
                    Output dout(density_path);
                    dout.stream() << "group,x,density\n";
                    for (std::size_t g = 0; g < grids.size(); ++g) {
                        const Density dens = kernel_density(grids[g], 200);
                        dout.stream() << "# group " << groups[g] << " gaussian kernel bandwidth="
                                      << format_double(dens.bandwidth) << '\n';
                        for (std::size_t k = 0; k < dens.x.size(); ++k) {
                            dout.stream() << groups[g] << ',' << format_double(dens.x[k]) << ','
                                          << format_double(dens.f[k]) << '\n';
                        }
                    }
                }
            }
        } else if (*qs) {
            const auto r = rank_all(build_profiles(load_distances(qs_in), ProfileMode::with_self));
            const QuantileSet set = transport_quantile_set(r, zeta);
            out << "# zeta=" << format_double(zeta) << " alpha=" << format_double(set.alpha) << '\n';
            write_indices(out, set.indices);
        } else if (*trim_cmd) {
            const auto r = rank_all(build_profiles(load_distances(trim_in), ProfileMode::with_self));
            out << "# alpha0=" << format_double(alpha0) << '\n';
            write_indices(out, trim(r, alpha0));
        } else if (*test) {
            const TestMethod method = parse_test_method(test_method);
            WeightProfile weights;
            if (!weight_breaks.empty() || !weight_values.empty()) {
                require(method == TestMethod::dp, "weights apply only to the dp test");
                weights = WeightProfile::global(StepWeight(weight_breaks, weight_values));
            }
            TestResult result;
            if (is_precomputed(test_in)) {
                require(test_y.empty(), "a pooled distance matrix takes --n, not --y");
                require(method != TestMethod::hotelling, "Hotelling's T^2 needs vector samples");
                DistanceMatrix d = ingest_distances(test_in.path, test_in.header);
                require(pooled_n >= 1 && pooled_n < d.size(), "--n must split the pooled matrix");
                const PooledDistances pooled(pooled_n, d.size() - pooled_n, std::move(d));
                result = method == TestMethod::dp ? dp_test(pooled, weights, K, alpha, seed)
                                                  : energy_test(pooled, K, alpha, seed);
            } else {
                require(!test_y.empty(), "--y is required unless the input is a distance matrix");
                const ObjectSample x = load_sample(test_in, test_in.path);
                const ObjectSample y = load_sample(test_in, test_y);
                if (method == TestMethod::hotelling) {
                    require(x.encoding == Encoding::vector, "Hotelling's T^2 needs vector samples");
                    result = hotelling_test(x, y, K, alpha, seed);
                } else {
                    const PooledDistances pooled = pool_distances(metric_of(test_in), x, y);
                    result = method == TestMethod::dp ? dp_test(pooled, weights, K, alpha, seed)
                                                      : energy_test(pooled, K, alpha, seed);
                }
            }
            out << result_json(result).dump(2) << '\n';
            if (!replicate_path.empty()) {
                Output ro(replicate_path);
                ro.stream() << "# seed=" << seed << " K=" << K << '\n';
                for (double r : result.replicates) ro.stream() << format_double(r) << '\n';
            }
        } else if (*mds) {
            require(mds_kind == "object" || mds_kind == "profile", "--kind must be object or profile");
            const DistanceMatrix d = load_distances(mds_in);
            const MDSEmbedding e = mds_kind == "object"
                                       ? classical_mds(d, mds_dim)
                                       : profile_mds(build_profiles(d, ProfileMode::with_self), mds_dim);
            out << "# eigenvalues=";
            for (std::size_t k = 0; k < e.eigenvalues.size(); ++k) {
                out << (k ? "," : "") << format_double(e.eigenvalues[k]);
            }
            out << '\n';
            write_matrix(out, e.coordinates);
        } else if (*desc) {
            const MetricSpec spec = metric_of(desc_in);
            ObjectSample x;
            DistanceMatrix d;
            if (is_precomputed(desc_in)) {
                d = ingest_distances(desc_in.path, desc_in.header);
            } else {
                x = load_sample(desc_in, desc_in.path);
                d = distance_matrix(spec, x);
            }
            const FrechetSummary f = frechet_mean_sample(d);
            out << "n," << d.size() << '\n';
            out << "frechet_mean_index," << f.mean_index << '\n';
            out << "frechet_variance," << format_double(f.frechet_variance) << '\n';
            out << "metric_variance," << format_double(metric_variance(d)) << '\n';
            if (spec.kind == MetricKind::euclidean || spec.kind == MetricKind::wasserstein1d) {
                if (!is_precomputed(desc_in)) {
                    const MeanObject mean_obj = frechet_mean_exact(x, spec);
                    out << "frechet_mean_exact";
                    if (const auto* v = std::get_if<Object>(&mean_obj)) {
                        for (double c : *v) out << ',' << format_double(c);
                    } else {
                        for (double c : std::get<EmpiricalDistribution>(mean_obj).atoms()) {
                            out << ',' << format_double(c);
                        }
                    }
                    out << '\n';
                }
            }
            if (!desc_y.empty()) {
                require(!is_precomputed(desc_in), "--y needs object samples");
                const ObjectSample y = load_sample(desc_in, desc_y);
                require(y.size() == x.size(), "--y must pair with --input object by object");
                const DistanceMatrix dy = distance_matrix(spec, y);
                const Matrix cross = cross_distance_matrix(spec, x, y);
                out << "metric_covariance," << format_double(metric_covariance(cross)) << '\n';
                out << "metric_correlation," << format_double(metric_correlation(d, dy, cross)) << '\n';
            }
        } else if (*sim) {
            scenario.scenario = parse_scenario(scenario_name);
            const SamplePair pair = generate_pair(scenario, seed);
            fs::create_directories(sim_dir);
            std::ostringstream desc_line;
            desc_line << "scenario=" << scenario_name << " param=" << format_double(scenario.parameter);
            write_sample(pair.x, fs::path(sim_dir) / "x", seed, desc_line.str());
            write_sample(pair.y, fs::path(sim_dir) / "y", seed, desc_line.str());
            std::cout << "wrote " << pair.x.size() << " + " << pair.y.size() << " objects to " << sim_dir;
            if (pair.x.encoding == Encoding::cdf_grid) {
                std::cout << " (grid " << pair.x.rows << "x" << pair.x.cols
                          << ", cell area " << format_double(scenario_metric(scenario).cell_area) << ")";
            }
            std::cout << '\n';
        } else if (*power) {
            scenario.scenario = parse_scenario(scenario_name);
            const PowerCurve curve =
                power_study(scenario, power_grid, parse_test_method(test_method), runs, K, alpha, seed);
            out << "# seed=" << seed << " K=" << K << " alpha=" << format_double(alpha)
                << " scenario=" << scenario_name << " method=" << test_method << '\n';
            out << "parameter,rate,runs,se\n";
            for (const auto& p : curve.points) {
                out << format_double(p.parameter) << ',' << format_double(p.rate) << ',' << p.runs << ','
                    << format_double(p.se) << '\n';
            }
        }
        out.flush();
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
