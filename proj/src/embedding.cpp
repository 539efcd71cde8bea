#include "distprof/embedding.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <string>

#include "distprof/error.hpp"

namespace distprof {

MDSEmbedding classical_mds(const DistanceMatrix& d, std::size_t q) {
    const std::size_t n = d.size();
    require(q >= 1 && q + 1 <= n, "MDS dimension must lie in [1, n-1], got " + std::to_string(q) +
                                      " for n = " + std::to_string(n));
    const auto N = static_cast<Eigen::Index>(n);

    Eigen::MatrixXd sq(N, N);
    for (Eigen::Index i = 0; i < N; ++i) {
        for (Eigen::Index j = 0; j < N; ++j) {
            const double v = d(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
            sq(i, j) = v * v;
        }
    }
    // Double centering
    const Eigen::VectorXd row_means = sq.rowwise().mean();
    const double grand = row_means.mean();
    Eigen::MatrixXd b(N, N);
    for (Eigen::Index i = 0; i < N; ++i) {
        for (Eigen::Index j = 0; j < N; ++j) {
            b(i, j) = -0.5 * (sq(i, j) - row_means(i) - row_means(j) + grand);
        }
    }
    b = 0.5 * (b + b.transpose()).eval();

    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(b);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eigen-decomposition of the centred Gram matrix failed");
    }
    const Eigen::VectorXd& values = solver.eigenvalues(); // ascending
    const Eigen::MatrixXd& vectors = solver.eigenvectors();
    const double largest = std::max(values.cwiseAbs().maxCoeff(), 1.0);

    MDSEmbedding out;
    out.q = q;
    out.coordinates = Matrix(n, q);
    for (std::size_t k = 0; k < q; ++k) {
        const Eigen::Index col = N - 1 - static_cast<Eigen::Index>(k);
        const double lambda = values(col);
        out.eigenvalues.push_back(lambda);
        if (!(lambda > 1e-12 * largest)) {
            continue;
        }
        Eigen::VectorXd v = vectors.col(col);
        Eigen::Index arg = 0;
        v.cwiseAbs().maxCoeff(&arg);
        if (v(arg) < 0.0) {
            v = -v;
        }
        v *= std::sqrt(lambda);
        v.array() -= v.mean();
        for (std::size_t i = 0; i < n; ++i) {
            out.coordinates(i, k) = v(static_cast<Eigen::Index>(i));
        }
    }
    return out;
}

MDSEmbedding profile_mds(const ProfileSet& profiles, std::size_t q) {
    return classical_mds(profile_distance_matrix(profiles), q);
}

} // namespace distprof
