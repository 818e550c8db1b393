#pragma once

#include <Eigen/Core>
#include <string>

#include "kdist/features.hpp"

namespace kdist {

enum class EmbeddingKind { measure, current };

/// Shapes reduced to single vectors in the lifted space, all under one
/// feature map. Measures (rho-vectors) and currents (rho x d matrices)
/// cannot be mixed; their embeddings are not comparable.
struct ShapeCollection {
    FeatureMapSpec feature_map;
    EmbeddingKind kind = EmbeddingKind::measure;
    std::vector<std::string> names;
    std::vector<std::vector<double>> embeddings;  // flat, all same length

    std::size_t size() const { return embeddings.size(); }
    void add(std::string name, const LiftedMeasure& e);
    void add(std::string name, const LiftedCurrent& e);
};

/// Pairwise Euclidean distances between embeddings. Zero diagonal,
/// symmetric, and a genuine metric (it lives in R^{rho*d}).
Eigen::MatrixXd distance_matrix(const ShapeCollection& c);

/// Linear scan; ties broken by lowest index.
std::pair<std::size_t, double> nearest_neighbor(const ShapeCollection& c,
                                                std::span<const double> query);

std::vector<double> mean_shape_embedding(const ShapeCollection& c);

}  // namespace kdist
