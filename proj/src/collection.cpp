#include "kdist/collection.hpp"

#include <cmath>
#include <stdexcept>

namespace kdist {

namespace {
void check_shape(const ShapeCollection& c, std::size_t len, EmbeddingKind kind) {
    if (!c.embeddings.empty()) {
        if (kind != c.kind)
            throw std::invalid_argument("cannot mix measure and current embeddings");
        if (len != c.embeddings.front().size())
            throw std::invalid_argument("embedding shape mismatch");
    }
}
}  // namespace

void ShapeCollection::add(std::string name, const LiftedMeasure& e) {
    check_shape(*this, e.vector.size(), EmbeddingKind::measure);
    kind = EmbeddingKind::measure;
    names.push_back(std::move(name));
    embeddings.push_back(e.vector);
}

void ShapeCollection::add(std::string name, const LiftedCurrent& e) {
    check_shape(*this, e.matrix.size(), EmbeddingKind::current);
    kind = EmbeddingKind::current;
    names.push_back(std::move(name));
    embeddings.push_back(e.matrix);
}

namespace {
double euclidean(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}
}  // namespace

Eigen::MatrixXd distance_matrix(const ShapeCollection& c) {
    if (c.size() == 0) throw std::invalid_argument("empty collection");
    const auto n = static_cast<Eigen::Index>(c.size());
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        m(i, i) = 0.0;
        for (Eigen::Index j = i + 1; j < n; ++j) {
            double d = euclidean(c.embeddings[static_cast<std::size_t>(i)],
                                 c.embeddings[static_cast<std::size_t>(j)]);
            m(i, j) = d;
            m(j, i) = d;
        }
    }
    return m;
}

std::pair<std::size_t, double> nearest_neighbor(const ShapeCollection& c,
                                                std::span<const double> query) {
    if (c.size() == 0) throw std::invalid_argument("empty collection");
    if (query.size() != c.embeddings.front().size())
        throw std::invalid_argument("query embedding shape mismatch");
    std::size_t best = 0;
    double best_d = euclidean(c.embeddings[0], query);
    for (std::size_t i = 1; i < c.size(); ++i) {
        double d = euclidean(c.embeddings[i], query);
        if (d < best_d) {
            best = i;
            best_d = d;
        }
    }
    return {best, best_d};
}

std::vector<double> mean_shape_embedding(const ShapeCollection& c) {
    if (c.size() == 0) throw std::invalid_argument("empty collection");
    std::vector<double> mean(c.embeddings.front().size(), 0.0);
    for (const auto& e : c.embeddings)
        for (std::size_t i = 0; i < mean.size(); ++i) mean[i] += e[i];
    for (double& v : mean) v /= static_cast<double>(c.size());
    return mean;
}

}  // namespace kdist
