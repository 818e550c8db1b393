#pragma once

#include <cstdint>

#include "kdist/kernels.hpp"
#include "kdist/shapes.hpp"

namespace kdist {

/// RKHS function f(x) = sum_i a_i K(x, x_i) over a finite support.
/// The canonical witness for (P,Q) has coefficients (wP - wQ) / D_K and
/// unit RKHS norm; it attains the IPM supremum.
struct WitnessFunction {
    KernelSpec kernel;
    int dim = 0;
    std::vector<double> support;       // n*dim row-major (union of P, Q)
    std::vector<double> coefficients;  // n

    double operator()(std::span<const double> x) const;
};

/// Total-variation / l1 distance: sum over the merged support of
/// |wP(x) - wQ(x)|. Points are merged on exact coordinate equality.
double tv_distance(const DiscreteMeasure& P, const DiscreteMeasure& Q);

/// Canonical unit-norm witness. Gaussian kernels only; throws when
/// D_K(P,Q) <= 1e-9 (measures indistinguishable under K).
WitnessFunction witness(const KernelSpec& k, const DiscreteMeasure& P,
                        const DiscreteMeasure& Q);

/// sqrt(a^T G a) over the support Gram, with the usual tiny-negative clamp.
/// Throws if the Gram is indefinite beyond tolerance.
double rkhs_norm(const WitnessFunction& f);

/// f integrated against P minus f integrated against Q.
double witness_gap(const WitnessFunction& f, const DiscreteMeasure& P,
                   const DiscreteMeasure& Q);

/// Max over `trials` random unit-RKHS-norm functions on the union support
/// of |action on P - action on Q|. Never exceeds D_K + 1e-9. Trial t uses
/// seed + t so trials are reproducible and parallelizable.
double ipm_lower_bound(const KernelSpec& k, const DiscreteMeasure& P,
                       const DiscreteMeasure& Q, int trials,
                       std::uint64_t seed);

}  // namespace kdist
