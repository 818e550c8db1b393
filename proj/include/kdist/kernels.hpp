#pragma once

#include <Eigen/Core>
#include <span>
#include <stdexcept>

namespace kdist {

enum class KernelKind { gaussian, box };

/// Similarity function identifier plus parameters.
///
/// Gaussian: K(x,y) = exp(-||x-y||^2 / sigma^2). Note the exponent has no
/// factor 2 in the denominator; conventions differ across the literature
/// and this one is load-bearing for the feature-map sampling constant.
///
/// Box: K(x,y) = 1 if ||x-y|| <= width, else 0. Width defaults to 2,
/// which reproduces the classic indefiniteness counterexample.
struct KernelSpec {
    KernelKind kind = KernelKind::gaussian;
    double sigma = 1.0;
    double width = 2.0;

    static KernelSpec gaussian(double sigma) {
        if (!(sigma > 0)) throw std::invalid_argument("gaussian kernel requires sigma > 0");
        return {KernelKind::gaussian, sigma, 2.0};
    }
    static KernelSpec box(double width = 2.0) {
        if (!(width > 0)) throw std::invalid_argument("box kernel requires width > 0");
        return {KernelKind::box, 1.0, width};
    }
};

struct GramReport {
    std::size_t n = 0;
    double min_eigenvalue = 0.0;
    bool is_positive_semidefinite = false;
    double tolerance = 0.0;
};

/// Squared Euclidean distance between two points of equal dimension.
double squared_distance(std::span<const double> x, std::span<const double> y);

/// K(x,y). Symmetric, K(x,x) = 1 exactly for both kinds.
double eval_kernel(const KernelSpec& k, std::span<const double> x,
                   std::span<const double> y);

/// Kernel value given a precomputed squared distance. Hot path for the
/// double-sum kernels; eval_kernel is the checked front door.
inline double eval_kernel_sq(const KernelSpec& k, double dist_sq) {
    if (k.kind == KernelKind::gaussian)
        return std::exp(-dist_sq / (k.sigma * k.sigma));
    return dist_sq <= k.width * k.width ? 1.0 : 0.0;
}

/// n x n Gram matrix, entry (i,j) = K(points_i, points_j). Unit diagonal,
/// bit-for-bit symmetric (upper triangle computed, lower mirrored).
/// points: n*dim row-major.
Eigen::MatrixXd gram_matrix(const KernelSpec& k, std::span<const double> points,
                            int dim);

/// PSD verdict from a symmetric eigensolve. Default tolerance 1e-8 * n.
/// Throws if g deviates from symmetry by more than 1e-10.
GramReport check_positive_definite(const Eigen::MatrixXd& g, double tolerance);
GramReport check_positive_definite(const Eigen::MatrixXd& g);

}  // namespace kdist
