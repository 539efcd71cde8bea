#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace distprof {

enum class MetricKind {
    euclidean,
    wasserstein1d,
    l2cdf,
    sphere_geodesic,
    fisher_rao,
    frobenius,
    precomputed,
};

// How an object is stored. Each metric kind accepts exactly one encoding.
enum class Encoding {
    vector,          // point in R^p
    distribution1d,  // nondecreasing quantile values / equal-weight atoms
    cdf_grid,        // CDF values on a rectangular grid, row-major
    density_grid,    // nonnegative density values on a rectangular grid
    composition,     // nonnegative proportions summing to 1
    adjacency,       // symmetric nonnegative matrix with zero diagonal
};

struct MetricSpec {
    MetricKind kind = MetricKind::euclidean;
    // Area of one grid cell; used by l2cdf and fisher_rao.
    double cell_area = 1.0;
};

MetricKind parse_metric_kind(std::string_view name);
std::string_view to_string(MetricKind kind);
std::string_view to_string(Encoding encoding);

// Encoding a metric kind operates on. Throws for precomputed, which has no
// object encoding.
Encoding required_encoding(MetricKind kind);

using Object = std::vector<double>;

struct ObjectSample {
    Encoding encoding = Encoding::vector;
    // Grid or matrix shape for cdf_grid, density_grid and adjacency.
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Object> objects;

    std::size_t size() const { return objects.size(); }
};

// Checks every encoding invariant (monotone quantiles and CDFs, terminal CDF
// value, composition sums, adjacency symmetry, finiteness). Errors name the
// offending object and position.
void validate(const ObjectSample& sample);

// Dense row-major real matrix.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
    std::span<const double> row(std::size_t i) const { return {data.data() + i * cols, cols}; }
};

// Symmetric, nonnegative, zero-diagonal square matrix.
class DistanceMatrix {
public:
    DistanceMatrix() = default;
    // Validates the invariants exactly; throws ValidationError otherwise.
    explicit DistanceMatrix(Matrix values);

    // n x n zero matrix
    static DistanceMatrix zeros(std::size_t n);

    std::size_t size() const { return values_.rows; }
    double operator()(std::size_t i, std::size_t j) const { return values_(i, j); }
    std::span<const double> row(std::size_t i) const { return values_.row(i); }
    const Matrix& matrix() const { return values_; }

    // Principal submatrix on the given indices, in the given order.
    DistanceMatrix gather(std::span<const std::size_t> indices) const;

private:
    Matrix values_;
};

double distance(const MetricSpec& spec, Encoding encoding, std::span<const double> a,
                std::span<const double> b);

// Distance between two objects of a sample (shape taken from the sample).
double distance(const MetricSpec& spec, const ObjectSample& sample, std::size_t i, std::size_t j);

DistanceMatrix distance_matrix(const MetricSpec& spec, const ObjectSample& sample);

// Entry (i, j) = d(x_i, y_j).
Matrix cross_distance_matrix(const MetricSpec& spec, const ObjectSample& x, const ObjectSample& y);

// Concatenation x_1..x_n, y_1..y_m. Shapes and encodings must agree.
ObjectSample pool(const ObjectSample& x, const ObjectSample& y);

} // namespace distprof
