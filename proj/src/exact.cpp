#include "kdist/exact.hpp"

#include <cmath>
#include <vector>

#include "kdist/threads.hpp"

namespace kdist {

namespace {

void check_dims(const KernelSpec&, const DiscreteMeasure& P,
                const DiscreteMeasure& Q) {
    if (P.dim != Q.dim)
        throw std::invalid_argument("dimension mismatch: " + std::to_string(P.dim) +
                                    " vs " + std::to_string(Q.dim));
}

double row_sum(const KernelSpec& k, std::span<const double> p, double wp,
               const DiscreteMeasure& Q) {
    double acc = 0.0;
    const std::size_t nq = Q.size();
    for (std::size_t j = 0; j < nq; ++j)
        acc += eval_kernel_sq(k, squared_distance(p, Q.point(j))) * Q.weights[j];
    return wp * acc;
}

}  // namespace

double ref::cross_similarity(const KernelSpec& k, const DiscreteMeasure& P,
                             const DiscreteMeasure& Q) {
    check_dims(k, P, Q);
    double acc = 0.0;
    for (std::size_t i = 0; i < P.size(); ++i)
        acc += row_sum(k, P.point(i), P.weights[i], Q);
    return acc;
}

double cross_similarity(const KernelSpec& k, const DiscreteMeasure& P,
                        const DiscreteMeasure& Q) {
    check_dims(k, P, Q);
    const auto n = static_cast<std::ptrdiff_t>(P.size());
    std::vector<double> partial(P.size());
#pragma omp parallel for schedule(static) num_threads(kdist::thread_count())
    for (std::ptrdiff_t i = 0; i < n; ++i)
        partial[i] = row_sum(k, P.point(i), P.weights[i], Q);
    // serial reduction in index order keeps the result thread-count invariant
    double acc = 0.0;
    for (double v : partial) acc += v;
    return acc;
}

namespace {

// kappa(P,Q) and kappa(Q,P) agree mathematically but accumulate in
// different orders; picking a canonical argument order makes
// kernel_distance_sq(P,Q) == kernel_distance_sq(Q,P) bit-exact.
bool canonical_before(const DiscreteMeasure& P, const DiscreteMeasure& Q) {
    if (P.size() != Q.size()) return P.size() < Q.size();
    if (P.coords != Q.coords) return P.coords < Q.coords;
    return P.weights <= Q.weights;
}

double symmetric_cross(const KernelSpec& k, const DiscreteMeasure& P,
                       const DiscreteMeasure& Q) {
    return canonical_before(P, Q) ? cross_similarity(k, P, Q)
                                  : cross_similarity(k, Q, P);
}

}  // namespace

double kernel_distance_sq(const KernelSpec& k, const DiscreteMeasure& P,
                          const DiscreteMeasure& Q) {
    return cross_similarity(k, P, P) + cross_similarity(k, Q, Q) -
           2.0 * symmetric_cross(k, P, Q);
}

DistanceResult clamp_distance_sq(double d_squared, double clamp_tolerance) {
    DistanceResult r;
    r.d_squared = d_squared;
    if (d_squared >= 0.0) {
        r.d = std::sqrt(d_squared);
    } else if (d_squared >= -clamp_tolerance) {
        r.d = 0.0;
        r.clamped = true;
    }
    return r;
}

DistanceResult kernel_distance(const KernelSpec& k, const DiscreteMeasure& P,
                               const DiscreteMeasure& Q,
                               double clamp_tolerance) {
    double kpp = cross_similarity(k, P, P);
    double kqq = cross_similarity(k, Q, Q);
    double d2 = kpp + kqq - 2.0 * symmetric_cross(k, P, Q);
    if (clamp_tolerance < 0)
        clamp_tolerance = 1e-9 * std::max({kpp, kqq, 1.0});
    return clamp_distance_sq(d2, clamp_tolerance);
}

}  // namespace kdist
