#pragma once

#include <cstdint>
#include <utility>

#include "kdist/currents.hpp"
#include "kdist/kernels.hpp"
#include "kdist/shapes.hpp"

namespace kdist {

/// Random Fourier feature map for the Gaussian kernel with exponent
/// ||x-y||^2 / sigma^2 (no half). Frequencies are i.i.d. Gaussian with
/// per-coordinate standard deviation sqrt(2)/sigma. Each frequency w_k
/// yields a feature pair sqrt(2/rho) * (cos(w_k.x), sin(w_k.x)); when rho
/// is odd the last frequency instead yields the single feature
/// sqrt(2/rho) * cos(w.x + b) with b uniform on [0, 2*pi), which keeps
/// <phi(x), phi(y)> unbiased for every rho. The paired form has strictly
/// lower variance than rho cosine-with-phase features at equal rho.
///
/// Sampling is a pure function of (seed, rho, sigma, d): a seeded
/// mt19937_64 feeds a Box-Muller transform; frequencies are filled
/// row-major, then the phase (odd rho only).
struct FeatureMapSpec {
    int rho = 0;
    int dim = 0;
    double sigma = 1.0;
    std::uint64_t seed = 0;
    std::vector<double> frequencies;  // ceil(rho/2)*dim row-major
    std::vector<double> phases;       // 1 if rho odd, else empty

    std::size_t frequency_count() const {
        return frequencies.size() / static_cast<std::size_t>(dim);
    }
    std::span<const double> frequency(std::size_t k) const {
        return {frequencies.data() + k * static_cast<std::size_t>(dim),
                static_cast<std::size_t>(dim)};
    }
};

/// rho-vector mean-map embedding of a measure: sum_p w(p) phi(p).
struct LiftedMeasure {
    std::vector<double> vector;
};

/// rho x d embedding of a current: sum_i outer(phi(pos_i), vec_i).
/// Frobenius inner products approximate current_cross_similarity.
struct LiftedCurrent {
    int rho = 0;
    int dim = 0;
    std::vector<double> matrix;  // rho*dim row-major
};

FeatureMapSpec sample_feature_map(double sigma, int d, int rho,
                                  std::uint64_t seed);

LiftedMeasure lift_point(const FeatureMapSpec& f, std::span<const double> x);

LiftedMeasure embed_measure(const FeatureMapSpec& f, const DiscreteMeasure& P);

LiftedCurrent embed_current(const FeatureMapSpec& f, const CurrentAtoms& S);

/// Squared Euclidean / Frobenius norm of the difference. Always >= 0.
double approx_distance_sq(const LiftedMeasure& a, const LiftedMeasure& b);
double approx_distance_sq(const LiftedCurrent& a, const LiftedCurrent& b);

double dot(const LiftedMeasure& a, const LiftedMeasure& b);

struct FeatureErrorStats {
    double max_abs = 0.0;
    double mean_abs = 0.0;
    double rmse = 0.0;
};

/// Statistics of |<phi(x),phi(y)> - K(x,y)| over point pairs.
/// Gaussian kernels only; the box kernel has no unbiased feature map here.
FeatureErrorStats feature_error_report(
    const KernelSpec& k, const FeatureMapSpec& f,
    std::span<const std::pair<std::vector<double>, std::vector<double>>> pairs);

namespace ref {
LiftedMeasure embed_measure(const FeatureMapSpec& f, const DiscreteMeasure& P);
}

}  // namespace kdist
