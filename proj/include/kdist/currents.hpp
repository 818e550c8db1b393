#pragma once

#include "kdist/exact.hpp"
#include "kdist/kernels.hpp"
#include "kdist/shapes.hpp"

namespace kdist {

/// Discretized current: one (position, vector) atom per curve segment or
/// triangle. For curves the vector is the full edge vector (length encodes
/// the measure of the segment); for meshes it is the area-weighted normal
/// (b-a) x (c-a) / 2.
struct CurrentAtoms {
    int dim = 0;
    std::vector<double> positions;  // n*dim row-major
    std::vector<double> vectors;    // n*dim row-major

    std::size_t size() const {
        return dim == 0 ? 0 : positions.size() / static_cast<std::size_t>(dim);
    }
    std::span<const double> position(std::size_t i) const {
        return {positions.data() + i * static_cast<std::size_t>(dim),
                static_cast<std::size_t>(dim)};
    }
    std::span<const double> vector(std::size_t i) const {
        return {vectors.data() + i * static_cast<std::size_t>(dim),
                static_cast<std::size_t>(dim)};
    }
};

/// One atom per segment: midpoint + edge vector. sum ||vector|| = length.
CurrentAtoms curve_atoms(const PolyCurve& c);

/// One atom per triangle: centroid + area-weighted normal.
/// sum ||vector|| = surface area.
CurrentAtoms mesh_atoms(const TriMesh& m);

/// kappa(S,T) = sum_i sum_j K(pos_i, pos_j) <vec_i, vec_j>.
double current_cross_similarity(const KernelSpec& k, const CurrentAtoms& S,
                                const CurrentAtoms& T);

double current_distance_sq(const KernelSpec& k, const CurrentAtoms& S,
                           const CurrentAtoms& T);

DistanceResult current_distance(const KernelSpec& k, const CurrentAtoms& S,
                                const CurrentAtoms& T,
                                double clamp_tolerance = -1.0);

/// Splits every segment into 2^levels equal parts. Same image and
/// orientation; total length preserved exactly up to rounding.
PolyCurve refine_curve(const PolyCurve& c, int levels);

namespace ref {
double current_cross_similarity(const KernelSpec& k, const CurrentAtoms& S,
                                const CurrentAtoms& T);
}

}  // namespace kdist
