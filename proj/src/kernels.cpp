#include "kdist/kernels.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "kdist/threads.hpp"

namespace kdist {

double squared_distance(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size())
        throw std::invalid_argument("dimension mismatch: " +
                                    std::to_string(x.size()) + " vs " +
                                    std::to_string(y.size()));
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double d = x[i] - y[i];
        s += d * d;
    }
    return s;
}

double eval_kernel(const KernelSpec& k, std::span<const double> x,
                   std::span<const double> y) {
    if (x.empty()) throw std::invalid_argument("points must have dimension >= 1");
    return eval_kernel_sq(k, squared_distance(x, y));
}

Eigen::MatrixXd gram_matrix(const KernelSpec& k, std::span<const double> points,
                            int dim) {
    if (dim < 1) throw std::invalid_argument("dimension must be >= 1");
    if (points.empty()) throw std::invalid_argument("gram_matrix: empty point list");
    if (points.size() % static_cast<std::size_t>(dim) != 0)
        throw std::invalid_argument("point buffer size not a multiple of dimension");
    const auto n = static_cast<Eigen::Index>(points.size() / dim);
    Eigen::MatrixXd g(n, n);
    const double* base = points.data();
#pragma omp parallel for schedule(dynamic, 8) num_threads(kdist::thread_count())
    for (Eigen::Index i = 0; i < n; ++i) {
        g(i, i) = 1.0;
        std::span<const double> xi{base + i * dim, static_cast<std::size_t>(dim)};
        for (Eigen::Index j = i + 1; j < n; ++j) {
            std::span<const double> xj{base + j * dim, static_cast<std::size_t>(dim)};
            double v = eval_kernel_sq(k, squared_distance(xi, xj));
            g(i, j) = v;
            g(j, i) = v;
        }
    }
    return g;
}

GramReport check_positive_definite(const Eigen::MatrixXd& g, double tolerance) {
    if (g.rows() != g.cols())
        throw std::invalid_argument("check_positive_definite: matrix not square");
    if (tolerance < 0) throw std::invalid_argument("tolerance must be >= 0");
    double asym = (g - g.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-10)
        throw std::invalid_argument("matrix not symmetric (max asymmetry " +
                                    std::to_string(asym) + ")");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(g,
                                                          Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("symmetric eigensolve failed");
    GramReport r;
    r.n = static_cast<std::size_t>(g.rows());
    r.min_eigenvalue = solver.eigenvalues().minCoeff();
    r.tolerance = tolerance;
    r.is_positive_semidefinite = r.min_eigenvalue >= -tolerance;
    return r;
}

GramReport check_positive_definite(const Eigen::MatrixXd& g) {
    return check_positive_definite(g, 1e-8 * static_cast<double>(g.rows()));
}

}  // namespace kdist
