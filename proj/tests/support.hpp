#pragma once

#include <vector>

#include "distprof/metric.hpp"

inline distprof::DistanceMatrix to_distance_matrix(const std::vector<std::vector<double>>& d) {
    distprof::Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        for (std::size_t j = 0; j < d.size(); ++j) m(i, j) = d[i][j];
    }
    return distprof::DistanceMatrix(std::move(m));
}

inline distprof::ObjectSample vectors(std::vector<std::vector<double>> rows) {
    distprof::ObjectSample s;
    s.encoding = distprof::Encoding::vector;
    s.objects = std::move(rows);
    return s;
}

inline distprof::ObjectSample points_on_line(const std::vector<double>& x) {
    std::vector<std::vector<double>> rows;
    for (double v : x) rows.push_back({v});
    return vectors(std::move(rows));
}
