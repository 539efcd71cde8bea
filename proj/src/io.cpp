#include "distprof/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>

#include "distprof/error.hpp"

namespace distprof {

namespace {

std::string where(const std::filesystem::path& path, std::size_t line) {
    return path.string() + ":" + std::to_string(line);
}

double parse_field(std::string_view field, const std::filesystem::path& path, std::size_t line,
                   std::size_t column) {
    while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
    while (!field.empty() && (field.back() == ' ' || field.back() == '\t' || field.back() == '\r')) {
        field.remove_suffix(1);
    }
    if (!field.empty() && field.front() == '+') field.remove_prefix(1);
    double value = 0.0;
    const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    require(ec == std::errc() && end == field.data() + field.size() && !field.empty(),
            where(path, line) + ":" + std::to_string(column + 1) + ": not a number: '" +
                std::string(field) + "'");
    return value;
}

std::vector<std::filesystem::path> sorted_files(const std::filesystem::path& dir) {
    require(std::filesystem::is_directory(dir), "not a directory: " + dir.string());
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file()) {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end(),
              [](const auto& a, const auto& b) { return a.filename().string() < b.filename().string(); });
    require(!files.empty(), "no files in " + dir.string());
    return files;
}

void require_rectangular(const Table& table, const std::filesystem::path& path) {
    for (std::size_t r = 1; r < table.size(); ++r) {
        require(table[r].size() == table[0].size(),
                path.string() + ": data row " + std::to_string(r) + " has " +
                    std::to_string(table[r].size()) + " fields, expected " +
                    std::to_string(table[0].size()));
    }
}

} // namespace

InputFormat parse_input_format(std::string_view name) {
    for (auto f : {InputFormat::vectors_csv, InputFormat::quantiles_csv, InputFormat::cdfgrid_csv,
                   InputFormat::densitygrid_csv, InputFormat::compositions_csv,
                   InputFormat::adjacency_dir, InputFormat::distmatrix_csv}) {
        if (to_string(f) == name) return f;
    }
    throw ValidationError("unknown input format '" + std::string(name) + "'");
}

std::string_view to_string(InputFormat format) {
    switch (format) {
    case InputFormat::vectors_csv: return "vectors_csv";
    case InputFormat::quantiles_csv: return "quantiles_csv";
    case InputFormat::cdfgrid_csv: return "cdfgrid_csv";
    case InputFormat::densitygrid_csv: return "densitygrid_csv";
    case InputFormat::compositions_csv: return "compositions_csv";
    case InputFormat::adjacency_dir: return "adjacency_dir";
    case InputFormat::distmatrix_csv: return "distmatrix_csv";
    }
    return "?";
}

InputFormat default_format(MetricKind kind) {
    switch (kind) {
    case MetricKind::euclidean: return InputFormat::vectors_csv;
    case MetricKind::wasserstein1d: return InputFormat::quantiles_csv;
    case MetricKind::l2cdf: return InputFormat::cdfgrid_csv;
    case MetricKind::sphere_geodesic: return InputFormat::compositions_csv;
    case MetricKind::fisher_rao: return InputFormat::densitygrid_csv;
    case MetricKind::frobenius: return InputFormat::adjacency_dir;
    case MetricKind::precomputed: return InputFormat::distmatrix_csv;
    }
    return InputFormat::vectors_csv;
}

Table read_csv(const std::filesystem::path& path, bool header) {
    std::ifstream in(path);
    require(in.good(), "cannot read " + path.string());
    Table table;
    std::string line;
    std::size_t number = 0;
    bool skipped_header = !header;
    while (std::getline(in, line)) {
        ++number;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        if (!skipped_header) {
            skipped_header = true;
            continue;
        }
        std::vector<double> row;
        std::string_view rest(line);
        std::size_t column = 0;
        while (true) {
            const auto comma = rest.find(',');
            row.push_back(parse_field(rest.substr(0, comma), path, number, column++));
            if (comma == std::string_view::npos) break;
            rest.remove_prefix(comma + 1);
        }
        table.push_back(std::move(row));
    }
    require(!in.bad(), "error while reading " + path.string());
    return table;
}

ObjectSample ingest_sample(const std::filesystem::path& path, InputFormat format,
                           const IngestOptions& options) {
    require(format != InputFormat::distmatrix_csv, "distance matrices are not object samples");
    ObjectSample sample;
    if (format == InputFormat::adjacency_dir) {
        sample.encoding = Encoding::adjacency;
        for (const auto& file : sorted_files(path)) {
            const Table t = read_csv(file, options.header);
            require(!t.empty(), file.string() + ": empty adjacency matrix");
            require_rectangular(t, file);
            require(t.size() == t[0].size(), file.string() + ": adjacency matrix is " +
                                                 std::to_string(t.size()) + "x" +
                                                 std::to_string(t[0].size()) + ", not square");
            if (sample.objects.empty()) {
                sample.rows = sample.cols = t.size();
            }
            require(t.size() == sample.rows, file.string() + ": has " + std::to_string(t.size()) +
                                                 " nodes, expected " + std::to_string(sample.rows));
            Object obj;
            obj.reserve(t.size() * t.size());
            for (const auto& row : t) obj.insert(obj.end(), row.begin(), row.end());
            sample.objects.push_back(std::move(obj));
        }
        validate(sample);
        return sample;
    }

    Table table = read_csv(path, options.header);
    require(!table.empty(), path.string() + ": no data rows");
    switch (format) {
    case InputFormat::vectors_csv:
        sample.encoding = Encoding::vector;
        require_rectangular(table, path);
        break;
    case InputFormat::quantiles_csv:
        sample.encoding = Encoding::distribution1d;
        break;
    case InputFormat::compositions_csv:
        sample.encoding = Encoding::composition;
        require_rectangular(table, path);
        break;
    case InputFormat::cdfgrid_csv:
    case InputFormat::densitygrid_csv:
        sample.encoding =
            format == InputFormat::cdfgrid_csv ? Encoding::cdf_grid : Encoding::density_grid;
        require(options.grid_rows > 0 && options.grid_cols > 0,
                "grid formats need --grid-rows and --grid-cols");
        sample.rows = options.grid_rows;
        sample.cols = options.grid_cols;
        for (std::size_t r = 0; r < table.size(); ++r) {
            require(table[r].size() == sample.rows * sample.cols,
                    path.string() + ": data row " + std::to_string(r) + " has " +
                        std::to_string(table[r].size()) + " values, grid needs " +
                        std::to_string(sample.rows * sample.cols));
        }
        break;
    default:
        break;
    }
    sample.objects = std::move(table);
    validate(sample);
    return sample;
}

DistanceMatrix ingest_distances(const std::filesystem::path& path, bool header) {
    const Table t = read_csv(path, header);
    require(!t.empty(), path.string() + ": no data rows");
    require_rectangular(t, path);
    const std::size_t n = t.size();
    require(t[0].size() == n, path.string() + ": distance matrix is " + std::to_string(n) + "x" +
                                  std::to_string(t[0].size()) + ", not square");
    double worst = 0.0;
    std::size_t wi = 0;
    std::size_t wj = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (!std::isfinite(t[i][j])) fail(path.string() + ": non-finite distance at (" +
                                                std::to_string(i) + ", " + std::to_string(j) + ")");
            const double gap = std::fabs(t[i][j] - t[j][i]);
            if (gap > worst) {
                worst = gap;
                wi = i;
                wj = j;
            }
        }
    }
    require(worst <= 1e-9, path.string() + ": distance matrix not symmetric, worst entry (" +
                               std::to_string(wi) + ", " + std::to_string(wj) + ") differs from its " +
                               "transpose by " + format_double(worst));
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            m(i, j) = i == j ? t[i][i] : 0.5 * (t[i][j] + t[j][i]);
        }
    }
    return DistanceMatrix(std::move(m));
}

std::string format_double(double value) {
    char buffer[64];
    const auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
    return std::string(buffer, end);
}

void write_row(std::ostream& out, std::span<const double> values) {
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (k > 0) out << ',';
        out << format_double(values[k]);
    }
    out << '\n';
}

void write_matrix(std::ostream& out, const Matrix& m) {
    for (std::size_t i = 0; i < m.rows; ++i) {
        write_row(out, m.row(i));
    }
}

} // namespace distprof
