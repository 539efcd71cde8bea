#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "distprof/metric.hpp"

namespace distprof {

enum class InputFormat {
    vectors_csv,      // one vector per row
    quantiles_csv,    // one sorted quantile/atom list per row, rows may differ in length
    cdfgrid_csv,      // one row-major CDF grid per row
    densitygrid_csv,  // one row-major density grid per row
    compositions_csv, // one composition per row
    adjacency_dir,    // one square CSV per object, files in lexicographic order
    distmatrix_csv,   // a single square distance matrix
};

InputFormat parse_input_format(std::string_view name);
std::string_view to_string(InputFormat format);
// Format whose objects the metric reads.
InputFormat default_format(MetricKind kind);

struct IngestOptions {
    bool header = false;
    std::size_t grid_rows = 0;
    std::size_t grid_cols = 0;
};

using Table = std::vector<std::vector<double>>;

// Numeric CSV. Blank lines and '#' comment lines are skipped; with header = true the first line is.
// Errors carry "path:line:field".
Table read_csv(const std::filesystem::path& path, bool header);

// Objects in `format` (anything except distmatrix_csv), validated.
ObjectSample ingest_sample(const std::filesystem::path& path, InputFormat format,
                           const IngestOptions& options);

// Square distance CSV. Asymmetry above 1e-9 is an error naming the worst
// entry; smaller asymmetry is averaged away.
DistanceMatrix ingest_distances(const std::filesystem::path& path, bool header);

// Shortest decimal string that parses back to the same double.
std::string format_double(double value);

void write_row(std::ostream& out, std::span<const double> values);
void write_matrix(std::ostream& out, const Matrix& m);

} // namespace distprof
