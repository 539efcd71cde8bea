#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "distprof/error.hpp"
#include "distprof/profiles.hpp"
#include "distprof/ranks.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace distprof;
using ED = EmpiricalDistribution;

namespace {

ProfileSet line_profiles(const std::vector<double>& x) {
    return build_profiles(to_distance_matrix(oracle::line_distances(x)), ProfileMode::with_self);
}

} // namespace

TEST_CASE("transport_rank examples") {
    const auto zero = build_profiles(DistanceMatrix::zeros(3), ProfileMode::with_self);
    CHECK(transport_rank(ED::point_mass(0.0), zero) == 0.5);

    const auto p = line_profiles({0, 1, 3});
    CHECK(transport_rank(p[1], p) == doctest::Approx(oracle::expit(1.0 / 3.0)).epsilon(1e-14));
    CHECK(transport_rank(p[2], p) == doctest::Approx(oracle::expit(-1.0 / 3.0)).epsilon(1e-14));
    CHECK(transport_rank(p[1], p) == doctest::Approx(0.5825702064623147).epsilon(1e-14));

    const auto loo = build_profiles(DistanceMatrix::zeros(3), ProfileMode::leave_one_out);
    CHECK_THROWS_AS(transport_rank(ED::point_mass(0.0), loo), ValidationError);
}

TEST_CASE("rank_all examples") {
    const auto same = rank_all(build_profiles(DistanceMatrix::zeros(5), ProfileMode::with_self));
    for (double r : same) CHECK(r == 0.5);

    const auto r = rank_all(line_profiles({0, 1, 3}));
    CHECK(r[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(r[1] == doctest::Approx(oracle::expit(1.0 / 3.0)).epsilon(1e-14));
    CHECK(r[2] == doctest::Approx(oracle::expit(-1.0 / 3.0)).epsilon(1e-14));
}

TEST_CASE("rank identity: quantile integral equals expit(grand mean - row mean)") {
    std::mt19937_64 rng(123);
    for (int rep = 0; rep < 30; ++rep) {
        const std::size_t n = 2 + rng() % 25;
        const auto raw = oracle::random_dissimilarity(n, rng, 3.0);
        const auto p = build_profiles(to_distance_matrix(raw), ProfileMode::with_self);
        double grand = 0;
        std::vector<double> row(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (double v : raw[i]) row[i] += v;
            grand += row[i];
            row[i] /= static_cast<double>(n);
        }
        grand /= static_cast<double>(n * n);
        const auto all = rank_all(p);
        for (std::size_t j = 0; j < n; ++j) {
            const double expected = oracle::expit(grand - row[j]);
            CHECK(std::fabs(transport_rank(p[j], p) - expected) < 1e-10);
            CHECK(std::fabs(all[j] - expected) < 1e-10);
            CHECK(all[j] > 0.0);
            CHECK(all[j] < 1.0);
        }
    }
}

TEST_CASE("ranks follow a relabelling of the objects") {
    std::mt19937_64 rng(5);
    const std::size_t n = 12;
    const auto raw = oracle::random_dissimilarity(n, rng);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    const auto d = to_distance_matrix(raw);
    const auto r = rank_all(build_profiles(d, ProfileMode::with_self));
    const auto rp = rank_all(build_profiles(d.gather(perm), ProfileMode::with_self));
    for (std::size_t k = 0; k < n; ++k) CHECK(std::fabs(rp[k] - r[perm[k]]) < 1e-12);
}

TEST_CASE("transport_median examples") {
    CHECK(transport_median(rank_all(line_profiles({0, 1, 3}))) == IndexSet{1});
    const auto all = transport_median(std::vector<double>(4, 0.5));
    CHECK(all == IndexSet{0, 1, 2, 3});
    // two mirrored clusters: the swap maps the median set onto itself
    const auto m = transport_median(rank_all(line_profiles({-5, -4, -3.5, 3.5, 4, 5})));
    CHECK(m == IndexSet{2, 3});
}

TEST_CASE("transport_median is the argmin of row means") {
    std::mt19937_64 rng(77);
    for (int rep = 0; rep < 20; ++rep) {
        const std::size_t n = 3 + rng() % 15;
        std::uniform_int_distribution<int> pt(0, 6);
        std::vector<double> x(n);
        for (auto& v : x) v = pt(rng); // integer points force ties
        const auto raw = oracle::line_distances(x);
        std::vector<double> row(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (double v : raw[i]) row[i] += v;
        }
        const double best = *std::min_element(row.begin(), row.end());
        IndexSet expected;
        for (std::size_t i = 0; i < n; ++i) {
            if (row[i] == best) expected.push_back(i);
        }
        CHECK(transport_median(rank_all(line_profiles(x))) == expected);
    }
}

TEST_CASE("quantile_groups examples") {
    const std::vector<double> r{0.3, 0.5, 0.7, 0.9};
    const auto one = quantile_groups(r, 1);
    for (int l : one.labels) CHECK(l == 1);
    CHECK(quantile_groups(r, 2).labels == std::vector<int>{2, 2, 1, 1});
    // a rank equal to a threshold falls in the lower bin
    const std::vector<double> tied{0.2, 0.5, 0.5, 0.5, 0.8, 0.9};
    const auto g = quantile_groups(tied, 2);
    CHECK(g.thresholds.front() == 0.5);
    CHECK(g.labels == std::vector<int>{2, 2, 2, 2, 1, 1});
}

TEST_CASE("deciles of 500 distinct ranks hold 50 each") {
    std::vector<double> r(500);
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0.1, 0.9);
    for (auto& v : r) v = u(rng);
    const auto g = quantile_groups(r, 10);
    std::vector<int> counts(11, 0);
    for (int l : g.labels) {
        REQUIRE(l >= 1);
        REQUIRE(l <= 10);
        counts[l]++;
    }
    for (int k = 1; k <= 10; ++k) CHECK(counts[k] == 50);
}

TEST_CASE("transport_quantile_set examples and nesting") {
    const std::vector<double> r{0.3, 0.5, 0.7, 0.9};
    const auto half = transport_quantile_set(r, 0.5);
    CHECK(half.alpha == 0.7);
    CHECK(half.indices == IndexSet{2, 3});
    CHECK(transport_quantile_set(r, 1e-6).indices == IndexSet{3});
    CHECK(transport_quantile_set(r, 0.999).indices.size() == 4);
    CHECK_THROWS_AS(transport_quantile_set(r, 0.0), ValidationError);
    CHECK_THROWS_AS(transport_quantile_set(r, 1.0), ValidationError);

    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.2, 0.8);
    std::vector<double> many(57);
    for (auto& v : many) v = u(rng);
    IndexSet prev;
    for (double zeta = 0.01; zeta < 1.0; zeta += 0.07) {
        const auto s = transport_quantile_set(many, zeta);
        CHECK(std::includes(s.indices.begin(), s.indices.end(), prev.begin(), prev.end()));
        prev = s.indices;
    }
}

TEST_CASE("trim examples") {
    const auto r = rank_all(line_profiles({0, 1, 3}));
    CHECK(trim(r, 0.0).size() == 3);
    CHECK(trim(r, 1.0).empty());
    CHECK(trim(r, 0.45) == IndexSet{0, 1});
}

TEST_CASE("hausdorff_distance examples") {
    const auto d = to_distance_matrix(oracle::line_distances({0, 1, 3}));
    const IndexSet a{0, 2};
    CHECK(hausdorff_distance(a, a, d) == 0.0);
    CHECK(hausdorff_distance(IndexSet{0}, IndexSet{2}, d) == 3.0);
    // the point at 3 is 3 away from {0}
    CHECK(hausdorff_distance(IndexSet{0}, IndexSet{1, 2}, d) == 3.0);
    CHECK(hausdorff_distance(IndexSet{1, 2}, IndexSet{0}, d) == 3.0);
    CHECK(hausdorff_distance(IndexSet{0, 1}, IndexSet{1}, d) == 1.0);
}

TEST_CASE("rank_report bundles ranks, median and groups") {
    const auto rep = rank_report(line_profiles({0, 1, 3, 4, 10}), 2);
    CHECK(rep.ranks.size() == 5);
    CHECK(rep.median_indices == transport_median(rep.ranks));
    CHECK(rep.groups.labels == quantile_groups(rep.ranks, 2).labels);
}
