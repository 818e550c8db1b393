#pragma once

#include <span>
#include <vector>

namespace kdist {

/// Weighted point set in d dimensions; the universal input for exact
/// kernel distances. Coordinates are stored row-major (n x d). Weights
/// may be negative (signed measures are fine for every formula here).
struct DiscreteMeasure {
    int dim = 0;
    std::vector<double> coords;   // size n*dim
    std::vector<double> weights;  // size n

    std::size_t size() const { return weights.size(); }
    std::span<const double> point(std::size_t i) const {
        return {coords.data() + i * static_cast<std::size_t>(dim),
                static_cast<std::size_t>(dim)};
    }
};

/// Oriented polyline; orientation is the vertex order.
/// Invariant: >= 2 vertices, no zero-length segment.
struct PolyCurve {
    int dim = 0;
    std::vector<double> vertices;  // size n*dim, traversal order

    std::size_t vertex_count() const {
        return dim == 0 ? 0 : vertices.size() / static_cast<std::size_t>(dim);
    }
    std::span<const double> vertex(std::size_t i) const {
        return {vertices.data() + i * static_cast<std::size_t>(dim),
                static_cast<std::size_t>(dim)};
    }
};

/// Oriented triangle mesh in R^3. Face orientation is the index order.
/// Invariant: indices in range, every triangle has positive area.
struct TriMesh {
    std::vector<double> vertices;       // size nv*3
    std::vector<unsigned> triangles;    // size nf*3

    std::size_t vertex_count() const { return vertices.size() / 3; }
    std::size_t triangle_count() const { return triangles.size() / 3; }
    std::span<const double> vertex(std::size_t i) const {
        return {vertices.data() + i * 3, 3};
    }
};

}  // namespace kdist
