#pragma once

#include <optional>

#include "kdist/kernels.hpp"
#include "kdist/shapes.hpp"

namespace kdist {

struct DistanceResult {
    double d_squared = 0.0;
    std::optional<double> d;  // absent when d_squared < -clamp_tolerance
    bool clamped = false;
};

/// kappa(P,Q) = sum_p sum_q w(p) K(p,q) w'(q).
/// Parallel over rows of P; row partials are reduced serially in index
/// order so the result is deterministic at any thread count.
double cross_similarity(const KernelSpec& k, const DiscreteMeasure& P,
                        const DiscreteMeasure& Q);

/// kappa(P,P) + kappa(Q,Q) - 2 kappa(P,Q). Can be negative for
/// indefinite kernels (box); that is a real answer, not an error.
double kernel_distance_sq(const KernelSpec& k, const DiscreteMeasure& P,
                          const DiscreteMeasure& Q);

/// Square root with explicit clamp policy: a tiny negative square
/// (floating-point noise) is clamped to 0 and flagged; a negative square
/// beyond clamp_tolerance leaves d absent so indefiniteness stays visible.
/// clamp_tolerance < 0 selects the default 1e-9 * max(kPP, kQQ, 1).
DistanceResult kernel_distance(const KernelSpec& k, const DiscreteMeasure& P,
                               const DiscreteMeasure& Q,
                               double clamp_tolerance = -1.0);

/// Turns a raw d_squared into a DistanceResult under the same clamp policy.
DistanceResult clamp_distance_sq(double d_squared, double clamp_tolerance);

namespace ref {
/// Serial reference: single accumulator, outer loop P, inner loop Q,
/// plain 64-bit summation. The parallel path must agree within 1e-12
/// relative. Kept for tests and the serial-vs-parallel bench.
double cross_similarity(const KernelSpec& k, const DiscreteMeasure& P,
                        const DiscreteMeasure& Q);
}  // namespace ref

}  // namespace kdist
