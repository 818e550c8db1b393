#include "kdist/spectral.hpp"

#include <Eigen/Eigenvalues>

namespace kdist {

SpectralLift spectral_lift(const KernelSpec& k, std::span<const double> points,
                           int dim) {
    if (dim < 1) throw std::invalid_argument("dimension must be >= 1");
    const std::size_t n = points.size() / static_cast<std::size_t>(dim);
    if (n == 0) throw std::invalid_argument("spectral_lift: empty point list");
    if (n > 4096)
        throw std::invalid_argument("spectral_lift: dense eigensolve capped at 4096 points");

    Eigen::MatrixXd g = gram_matrix(k, points, dim);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(g);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("symmetric eigensolve failed");

    // Eigen returns ascending order; we keep descending, retain
    // lambda >= -1e-10*n (clamped to 0), and record the worst discard.
    const double clamp = -1e-10 * static_cast<double>(n);
    const auto& vals = solver.eigenvalues();
    const auto& vecs = solver.eigenvectors();

    SpectralLift lift;
    lift.dim = dim;
    lift.coords.assign(points.begin(), points.end());

    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < vals.size(); ++i) {
        if (vals[i] >= clamp)
            ++r;
        else
            lift.dropped_negative = std::min(lift.dropped_negative, vals[i]);
    }

    lift.eigenvalues.resize(r);
    lift.B.resize(r, static_cast<Eigen::Index>(n));
    for (Eigen::Index out = 0; out < r; ++out) {
        Eigen::Index in = vals.size() - 1 - out;  // descending
        double lambda = std::max(vals[in], 0.0);
        lift.eigenvalues[out] = lambda;
        Eigen::VectorXd v = vecs.col(in);
        // sign convention: first nonzero entry positive
        for (Eigen::Index j = 0; j < v.size(); ++j) {
            if (v[j] != 0.0) {
                if (v[j] < 0.0) v = -v;
                break;
            }
        }
        lift.B.row(out) = std::sqrt(lambda) * v.transpose();
    }
    return lift;
}

double lifted_distance_sq(const SpectralLift& L, std::span<const double> wP,
                          std::span<const double> wQ) {
    const auto n = static_cast<std::size_t>(L.B.cols());
    if (wP.size() != n || wQ.size() != n)
        throw std::invalid_argument("weight vector length does not match lift");
    Eigen::VectorXd delta(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i)
        delta[static_cast<Eigen::Index>(i)] = wP[i] - wQ[i];
    return (L.B * delta).squaredNorm();
}

}  // namespace kdist
