#include "distprof/metric.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "distprof/empirical.hpp"
#include "distprof/error.hpp"
#include "distprof/parallel.hpp"

namespace distprof {

namespace {

std::string at(std::size_t object, std::size_t position) {
    return " (object " + std::to_string(object) + ", entry " + std::to_string(position) + ")";
}

void require_finite(std::span<const double> v, const char* what) {
    for (double x : v) {
        if (std::isnan(x)) fail(std::string(what) + ": NaN in input");
        if (!std::isfinite(x)) fail(std::string(what) + ": infinite value in input");
    }
}

void require_same_length(std::span<const double> a, std::span<const double> b, const char* what) {
    if (a.size() != b.size()) fail(std::string(what) + ": objects have different shapes (" +
                                      std::to_string(a.size()) + " vs " +
                                      std::to_string(b.size()) + ")");
}

// Four interleaved accumulators so the loop vectorizes; adjacency matrices
// make this the hot path of the network scenarios.
double sum_sq_diff(std::span<const double> a, std::span<const double> b) {
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    const std::size_t n = a.size();
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        for (std::size_t l = 0; l < 4; ++l) {
            const double diff = a[k + l] - b[k + l];
            acc[l] += diff * diff;
        }
    }
    for (; k < n; ++k) {
        const double diff = a[k] - b[k];
        acc[0] += diff * diff;
    }
    return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

double euclidean(std::span<const double> a, std::span<const double> b) {
    return std::sqrt(sum_sq_diff(a, b));
}

// Angle between the vectors (sqrt a_k) and (sqrt b_k), each weighted by
// `cell`. Normalizing by both norms makes d(a, a) = 0 exactly.
double root_angle(std::span<const double> a, std::span<const double> b, double cell) {
    long double ab = 0.0L;
    long double aa = 0.0L;
    long double bb = 0.0L;
    for (std::size_t k = 0; k < a.size(); ++k) {
        ab += std::sqrt(static_cast<long double>(a[k]) * b[k]);
        aa += a[k];
        bb += b[k];
    }
    require(aa > 0.0L && bb > 0.0L, "root_angle: object with zero total mass");
    const long double cosine_raw = (ab * cell) / std::sqrt((aa * cell) * (bb * cell));
    const long double cosine = std::clamp(cosine_raw, -1.0L, 1.0L);
    return static_cast<double>(std::acos(cosine));
}

} // namespace

MetricKind parse_metric_kind(std::string_view name) {
    if (name == "euclidean") return MetricKind::euclidean;
    if (name == "wasserstein1d") return MetricKind::wasserstein1d;
    if (name == "l2cdf") return MetricKind::l2cdf;
    if (name == "sphere_geodesic") return MetricKind::sphere_geodesic;
    if (name == "fisher_rao") return MetricKind::fisher_rao;
    if (name == "frobenius") return MetricKind::frobenius;
    if (name == "precomputed") return MetricKind::precomputed;
    throw ValidationError("unknown metric '" + std::string(name) + "'");
}

std::string_view to_string(MetricKind kind) {
    switch (kind) {
    case MetricKind::euclidean: return "euclidean";
    case MetricKind::wasserstein1d: return "wasserstein1d";
    case MetricKind::l2cdf: return "l2cdf";
    case MetricKind::sphere_geodesic: return "sphere_geodesic";
    case MetricKind::fisher_rao: return "fisher_rao";
    case MetricKind::frobenius: return "frobenius";
    case MetricKind::precomputed: return "precomputed";
    }
    return "?";
}

std::string_view to_string(Encoding encoding) {
    switch (encoding) {
    case Encoding::vector: return "vector";
    case Encoding::distribution1d: return "distribution1d";
    case Encoding::cdf_grid: return "cdf_grid";
    case Encoding::density_grid: return "density_grid";
    case Encoding::composition: return "composition";
    case Encoding::adjacency: return "adjacency";
    }
    return "?";
}

Encoding required_encoding(MetricKind kind) {
    switch (kind) {
    case MetricKind::euclidean: return Encoding::vector;
    case MetricKind::wasserstein1d: return Encoding::distribution1d;
    case MetricKind::l2cdf: return Encoding::cdf_grid;
    case MetricKind::sphere_geodesic: return Encoding::composition;
    case MetricKind::fisher_rao: return Encoding::density_grid;
    case MetricKind::frobenius: return Encoding::adjacency;
    case MetricKind::precomputed: break;
    }
    throw ValidationError("the precomputed metric has no object encoding");
}

void validate(const ObjectSample& sample) {
    require(!sample.objects.empty(), "sample must contain at least one object");
    const bool shaped = sample.encoding == Encoding::cdf_grid ||
                        sample.encoding == Encoding::density_grid ||
                        sample.encoding == Encoding::adjacency;
    if (shaped) {
        require(sample.rows > 0 && sample.cols > 0, "grid shape must be declared");
        require(sample.encoding != Encoding::adjacency || sample.rows == sample.cols,
                "adjacency matrices must be square");
    }
    const std::size_t width = shaped ? sample.rows * sample.cols : sample.objects.front().size();

    for (std::size_t i = 0; i < sample.size(); ++i) {
        const auto& obj = sample.objects[i];
        require(!obj.empty(), "object " + std::to_string(i) + " is empty");
        for (std::size_t k = 0; k < obj.size(); ++k) {
            if (!std::isfinite(obj[k])) fail("non-finite value" + at(i, k));
        }
        if (sample.encoding != Encoding::distribution1d) {
            require(obj.size() == width, "object " + std::to_string(i) + " has " +
                                             std::to_string(obj.size()) + " entries, expected " +
                                             std::to_string(width));
        }
        switch (sample.encoding) {
        case Encoding::vector:
            break;
        case Encoding::distribution1d:
            for (std::size_t k = 1; k < obj.size(); ++k) {
                if (!(obj[k - 1] <= obj[k])) fail("quantile values decrease" + at(i, k));
            }
            break;
        case Encoding::cdf_grid: {
            const std::size_t R = sample.rows;
            const std::size_t C = sample.cols;
            for (std::size_t r = 0; r < R; ++r) {
                for (std::size_t c = 0; c < C; ++c) {
                    const double v = obj[r * C + c];
                    if (!(v >= 0.0 && v <= 1.0 + 1e-9)) fail("CDF value outside [0, 1]" + at(i, r * C + c));
                    if (!(c == 0 || obj[r * C + c - 1] <= v)) fail("CDF decreases along a row" + at(i, r * C + c));
                    if (!(r == 0 || obj[(r - 1) * C + c] <= v)) fail("CDF decreases along a column" + at(i, r * C + c));
                }
            }
            require(std::fabs(obj.back() - 1.0) <= 1e-9,
                    "terminal CDF value differs from 1 by more than 1e-9 (object " +
                        std::to_string(i) + ")");
            break;
        }
        case Encoding::density_grid:
            for (std::size_t k = 0; k < obj.size(); ++k) {
                if (!(obj[k] >= 0.0)) fail("negative density" + at(i, k));
            }
            break;
        case Encoding::composition: {
            long double total = 0.0L;
            for (std::size_t k = 0; k < obj.size(); ++k) {
                if (!(obj[k] >= 0.0)) fail("negative composition entry" + at(i, k));
                total += obj[k];
            }
            require(std::fabs(static_cast<double>(total) - 1.0) <= 1e-9,
                    "composition does not sum to 1 (object " + std::to_string(i) + ")");
            break;
        }
        case Encoding::adjacency: {
            const std::size_t N = sample.rows;
            for (std::size_t r = 0; r < N; ++r) {
                if (obj[r * N + r] != 0.0) fail("nonzero adjacency diagonal" + at(i, r * N + r));
                for (std::size_t c = 0; c < N; ++c) {
                    if (!(obj[r * N + c] >= 0.0)) fail("negative adjacency weight" + at(i, r * N + c));
                    if (obj[r * N + c] != obj[c * N + r]) fail("adjacency not symmetric" + at(i, r * N + c));
                }
            }
            break;
        }
        }
    }
}

DistanceMatrix::DistanceMatrix(Matrix values) : values_(std::move(values)) {
    require(values_.rows == values_.cols, "distance matrix must be square");
    const std::size_t n = values_.rows;
    for (std::size_t i = 0; i < n; ++i) {
        if (values_(i, i) != 0.0) fail("distance matrix diagonal must be 0 at row " + std::to_string(i));
        for (std::size_t j = 0; j < n; ++j) {
            const double v = values_(i, j);
            if (!(std::isfinite(v) && v >= 0.0)) fail("distance must be finite and nonnegative at (" +
                                                      std::to_string(i) + ", " + std::to_string(j) + ")");
            if (v != values_(j, i)) fail("distance matrix not symmetric at (" + std::to_string(i) +
                                            ", " + std::to_string(j) + ")");
        }
    }
}

DistanceMatrix DistanceMatrix::zeros(std::size_t n) {
    return DistanceMatrix(Matrix(n, n));
}

DistanceMatrix DistanceMatrix::gather(std::span<const std::size_t> indices) const {
    Matrix sub(indices.size(), indices.size());
    for (std::size_t a = 0; a < indices.size(); ++a) {
        for (std::size_t b = 0; b < indices.size(); ++b) {
            sub(a, b) = values_(indices[a], indices[b]);
        }
    }
    return DistanceMatrix(std::move(sub));
}

double distance(const MetricSpec& spec, Encoding encoding, std::span<const double> a,
                std::span<const double> b) {
    if (spec.kind == MetricKind::precomputed) {
        throw ValidationError("precomputed metric: distances come from a matrix, not objects");
    }
    const Encoding expected = required_encoding(spec.kind);
    if (encoding != expected) fail("metric " + std::string(to_string(spec.kind)) + " expects " +
                                      std::string(to_string(expected)) + " objects, got " +
                                      std::string(to_string(encoding)));
    require_finite(a, "distance");
    require_finite(b, "distance");

    switch (spec.kind) {
    case MetricKind::euclidean:
    case MetricKind::frobenius:
        require_same_length(a, b, "distance");
        return euclidean(a, b);
    case MetricKind::wasserstein1d:
        return wasserstein2(EmpiricalDistribution::from_sorted({a.begin(), a.end()}),
                            EmpiricalDistribution::from_sorted({b.begin(), b.end()}));
    case MetricKind::l2cdf: {
        require_same_length(a, b, "distance");
        return std::sqrt(sum_sq_diff(a, b) * spec.cell_area);
    }
    case MetricKind::sphere_geodesic:
        require_same_length(a, b, "distance");
        return root_angle(a, b, 1.0);
    case MetricKind::fisher_rao:
        require_same_length(a, b, "distance");
        require(spec.cell_area > 0.0, "fisher_rao needs a positive cell area");
        return root_angle(a, b, spec.cell_area);
    case MetricKind::precomputed:
        break;
    }
    throw ValidationError("unsupported metric");
}

double distance(const MetricSpec& spec, const ObjectSample& sample, std::size_t i, std::size_t j) {
    return distance(spec, sample.encoding, sample.objects[i], sample.objects[j]);
}

DistanceMatrix distance_matrix(const MetricSpec& spec, const ObjectSample& sample) {
    const std::size_t n = sample.size();
    Matrix d(n, n);
    parallel_for(n, [&](std::size_t i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double value = 0.0;
            try {
                value = distance(spec, sample, i, j);
            } catch (const ValidationError& e) {
                throw ValidationError(std::string(e.what()) + " [pair " + std::to_string(i) + ", " +
                                      std::to_string(j) + "]");
            }
            d(i, j) = value;
            d(j, i) = value;
        }
    });
    return DistanceMatrix(std::move(d));
}

Matrix cross_distance_matrix(const MetricSpec& spec, const ObjectSample& x, const ObjectSample& y) {
    require(x.encoding == y.encoding, "samples use different encodings");
    require(x.rows == y.rows && x.cols == y.cols, "samples use different grid shapes");
    Matrix d(x.size(), y.size());
    parallel_for(x.size(), [&](std::size_t i) {
        for (std::size_t j = 0; j < y.size(); ++j) {
            try {
                d(i, j) = distance(spec, x.encoding, x.objects[i], y.objects[j]);
            } catch (const ValidationError& e) {
                throw ValidationError(std::string(e.what()) + " [pair " + std::to_string(i) + ", " +
                                      std::to_string(j) + "]");
            }
        }
    });
    return d;
}

ObjectSample pool(const ObjectSample& x, const ObjectSample& y) {
    require(x.encoding == y.encoding, "samples use different encodings");
    require(x.rows == y.rows && x.cols == y.cols, "samples use different grid shapes");
    ObjectSample pooled = x;
    pooled.objects.insert(pooled.objects.end(), y.objects.begin(), y.objects.end());
    return pooled;
}

} // namespace distprof
