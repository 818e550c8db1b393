#include "kdist/ipm.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "kdist/detail/gaussian_stream.hpp"
#include "kdist/exact.hpp"
#include "kdist/threads.hpp"

namespace kdist {

double WitnessFunction::operator()(std::span<const double> x) const {
    double s = 0.0;
    const std::size_t n = coefficients.size();
    for (std::size_t i = 0; i < n; ++i) {
        std::span<const double> xi{support.data() + i * static_cast<std::size_t>(dim),
                                   static_cast<std::size_t>(dim)};
        s += coefficients[i] * eval_kernel(kernel, x, xi);
    }
    return s;
}

double tv_distance(const DiscreteMeasure& P, const DiscreteMeasure& Q) {
    if (P.dim != Q.dim)
        throw std::invalid_argument("dimension mismatch: " + std::to_string(P.dim) +
                                    " vs " + std::to_string(Q.dim));
    // exact-coordinate merge; fuzzy matching is what the kernel distance is for
    std::map<std::vector<double>, double> delta;
    for (std::size_t i = 0; i < P.size(); ++i) {
        auto p = P.point(i);
        delta[std::vector<double>(p.begin(), p.end())] += P.weights[i];
    }
    for (std::size_t j = 0; j < Q.size(); ++j) {
        auto q = Q.point(j);
        delta[std::vector<double>(q.begin(), q.end())] -= Q.weights[j];
    }
    double total = 0.0;
    for (const auto& [_, w] : delta) total += std::abs(w);
    return total;
}

namespace {

struct UnionSupport {
    std::vector<double> coords;  // n*dim
    std::vector<double> wP, wQ;  // length n each
};

UnionSupport union_support(const DiscreteMeasure& P, const DiscreteMeasure& Q) {
    UnionSupport u;
    u.coords = P.coords;
    u.coords.insert(u.coords.end(), Q.coords.begin(), Q.coords.end());
    u.wP = P.weights;
    u.wP.resize(P.size() + Q.size(), 0.0);
    u.wQ.assign(P.size(), 0.0);
    u.wQ.insert(u.wQ.end(), Q.weights.begin(), Q.weights.end());
    return u;
}

}  // namespace

WitnessFunction witness(const KernelSpec& k, const DiscreteMeasure& P,
                        const DiscreteMeasure& Q) {
    if (k.kind != KernelKind::gaussian)
        throw std::invalid_argument("witness requires a positive definite kernel");
    if (P.dim != Q.dim)
        throw std::invalid_argument("dimension mismatch: " + std::to_string(P.dim) +
                                    " vs " + std::to_string(Q.dim));
    double d2 = kernel_distance_sq(k, P, Q);
    if (d2 <= 1e-18)  // D_K <= 1e-9
        throw std::invalid_argument("measures indistinguishable under K");
    double dk = std::sqrt(d2);
    auto u = union_support(P, Q);
    WitnessFunction f;
    f.kernel = k;
    f.dim = P.dim;
    f.support = std::move(u.coords);
    f.coefficients.resize(u.wP.size());
    for (std::size_t i = 0; i < u.wP.size(); ++i)
        f.coefficients[i] = (u.wP[i] - u.wQ[i]) / dk;
    return f;
}

double rkhs_norm(const WitnessFunction& f) {
    const auto n = static_cast<Eigen::Index>(f.coefficients.size());
    if (n == 0) return 0.0;
    Eigen::MatrixXd g = gram_matrix(f.kernel, f.support, f.dim);
    Eigen::Map<const Eigen::VectorXd> a(f.coefficients.data(), n);
    double norm_sq = a.dot(g * a);
    double tol = 1e-9 * std::max(1.0, a.cwiseAbs().sum());
    if (norm_sq < -tol)
        throw std::invalid_argument("indefinite Gram: squared RKHS norm " +
                                    std::to_string(norm_sq));
    return std::sqrt(std::max(norm_sq, 0.0));
}

double witness_gap(const WitnessFunction& f, const DiscreteMeasure& P,
                   const DiscreteMeasure& Q) {
    double s = 0.0;
    for (std::size_t i = 0; i < P.size(); ++i) s += P.weights[i] * f(P.point(i));
    for (std::size_t j = 0; j < Q.size(); ++j) s -= Q.weights[j] * f(Q.point(j));
    return s;
}

double ipm_lower_bound(const KernelSpec& k, const DiscreteMeasure& P,
                       const DiscreteMeasure& Q, int trials,
                       std::uint64_t seed) {
    if (k.kind != KernelKind::gaussian)
        throw std::invalid_argument("ipm_lower_bound requires a positive definite kernel");
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    auto u = union_support(P, Q);
    const auto n = static_cast<Eigen::Index>(u.wP.size());
    Eigen::MatrixXd g = gram_matrix(k, u.coords, P.dim);
    Eigen::VectorXd delta(n);
    for (Eigen::Index i = 0; i < n; ++i) delta[i] = u.wP[i] - u.wQ[i];
    Eigen::VectorXd g_delta = g * delta;

    // per-trial seeds keep the loop order-free; reduction is a plain max
    std::vector<double> value(static_cast<std::size_t>(trials), 0.0);
#pragma omp parallel for schedule(static) num_threads(kdist::thread_count())
    for (int t = 0; t < trials; ++t) {
        detail::GaussianStream gs(seed + static_cast<std::uint64_t>(t));
        Eigen::VectorXd a(n);
        for (Eigen::Index i = 0; i < n; ++i) a[i] = gs.normal();
        double norm_sq = a.dot(g * a);
        if (norm_sq <= 0.0) continue;  // degenerate direction, contributes 0
        value[static_cast<std::size_t>(t)] =
            std::abs(a.dot(g_delta)) / std::sqrt(norm_sq);
    }
    return *std::max_element(value.begin(), value.end());
}

}  // namespace kdist
