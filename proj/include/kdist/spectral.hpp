#pragma once

#include <Eigen/Core>

#include "kdist/kernels.hpp"
#include "kdist/shapes.hpp"

namespace kdist {

/// Finite-sample lifting realized by eigendecomposing the Gram matrix:
/// G = Q Lambda Q^T, B = Lambda^{1/2} Q^T restricted to nonnegative
/// eigenvalues. Column i of B is the lifted coordinate of point i, so
/// B^T B reproduces G exactly when G is PSD. This is the exact oracle
/// behind every Hilbertian-embedding claim; n is capped at 4096.
struct SpectralLift {
    int dim = 0;
    std::vector<double> coords;   // the n input points, n*dim row-major
    Eigen::MatrixXd B;            // r x n
    Eigen::VectorXd eigenvalues;  // r, descending, all >= 0
    double dropped_negative = 0.0;  // most negative discarded eigenvalue, or 0
};

SpectralLift spectral_lift(const KernelSpec& k, std::span<const double> points,
                           int dim);

/// ||B (wP - wQ)||^2, with P and Q encoded as weight vectors over the
/// lift's point list (zero where absent). Equals kernel_distance_sq for
/// PSD kernels.
double lifted_distance_sq(const SpectralLift& L, std::span<const double> wP,
                          std::span<const double> wQ);

}  // namespace kdist
