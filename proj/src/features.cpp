#include "kdist/features.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "kdist/detail/gaussian_stream.hpp"
#include "kdist/threads.hpp"

namespace kdist {

using detail::GaussianStream;

namespace {

void check_dim(const FeatureMapSpec& f, std::size_t d) {
    if (static_cast<std::size_t>(f.dim) != d)
        throw std::invalid_argument("dimension mismatch: feature map expects " +
                                    std::to_string(f.dim) + ", got " +
                                    std::to_string(d));
}

}  // namespace

FeatureMapSpec sample_feature_map(double sigma, int d, int rho,
                                  std::uint64_t seed) {
    if (rho < 1) throw std::invalid_argument("rho must be >= 1");
    if (!(sigma > 0)) throw std::invalid_argument("sigma must be > 0");
    if (d < 1) throw std::invalid_argument("dimension must be >= 1");
    FeatureMapSpec f;
    f.rho = rho;
    f.dim = d;
    f.sigma = sigma;
    f.seed = seed;
    const std::size_t m = (static_cast<std::size_t>(rho) + 1) / 2;
    f.frequencies.resize(m * d);
    GaussianStream g(seed);
    // E[cos(w.(x-y))] = exp(-||x-y||^2 s^2 / 2) for w ~ N(0, s^2 I);
    // matching exp(-||x-y||^2 / sigma^2) needs s = sqrt(2)/sigma.
    const double s = std::numbers::sqrt2 / sigma;
    for (double& w : f.frequencies) w = s * g.normal();
    if (rho % 2 == 1)
        f.phases.push_back(2.0 * std::numbers::pi * g.uniform01());
    return f;
}

LiftedMeasure lift_point(const FeatureMapSpec& f, std::span<const double> x) {
    check_dim(f, x.size());
    LiftedMeasure out;
    out.vector.resize(f.rho);
    const double scale = std::sqrt(2.0 / f.rho);
    const std::size_t m = f.frequency_count();
    for (std::size_t kk = 0; kk < m; ++kk) {
        auto w = f.frequency(kk);
        double arg = 0.0;
        for (int j = 0; j < f.dim; ++j) arg += w[j] * x[j];
        if (2 * kk + 1 < out.vector.size()) {
            out.vector[2 * kk] = scale * std::cos(arg);
            out.vector[2 * kk + 1] = scale * std::sin(arg);
        } else {
            // odd rho: final frequency yields one phase-shifted cosine
            out.vector[2 * kk] = scale * std::cos(arg + f.phases[0]);
        }
    }
    return out;
}

LiftedMeasure ref::embed_measure(const FeatureMapSpec& f,
                                 const DiscreteMeasure& P) {
    check_dim(f, static_cast<std::size_t>(P.dim));
    LiftedMeasure acc;
    acc.vector.assign(f.rho, 0.0);
    for (std::size_t i = 0; i < P.size(); ++i) {
        LiftedMeasure phi = lift_point(f, P.point(i));
        for (int kk = 0; kk < f.rho; ++kk)
            acc.vector[kk] += P.weights[i] * phi.vector[kk];
    }
    return acc;
}

LiftedMeasure embed_measure(const FeatureMapSpec& f, const DiscreteMeasure& P) {
    check_dim(f, static_cast<std::size_t>(P.dim));
    LiftedMeasure acc;
    acc.vector.assign(f.rho, 0.0);
    const std::ptrdiff_t m = static_cast<std::ptrdiff_t>(f.frequency_count());
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(P.size());
    const std::size_t rho = static_cast<std::size_t>(f.rho);
    const double scale = std::sqrt(2.0 / f.rho);
    // parallel over frequencies: each one accumulates points in index order,
    // so the sum matches the serial reference bit-for-bit
#pragma omp parallel for schedule(static) num_threads(kdist::thread_count())
    for (std::ptrdiff_t kk = 0; kk < m; ++kk) {
        auto w = f.frequency(static_cast<std::size_t>(kk));
        const std::size_t c = 2 * static_cast<std::size_t>(kk);
        const bool pair = c + 1 < rho;
        double sum_c = 0.0, sum_s = 0.0;
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            auto x = P.point(static_cast<std::size_t>(i));
            double arg = 0.0;
            for (int j = 0; j < f.dim; ++j) arg += w[j] * x[j];
            if (pair) {
                sum_c += P.weights[i] * (scale * std::cos(arg));
                sum_s += P.weights[i] * (scale * std::sin(arg));
            } else {
                sum_c += P.weights[i] * (scale * std::cos(arg + f.phases[0]));
            }
        }
        acc.vector[c] = sum_c;
        if (pair) acc.vector[c + 1] = sum_s;
    }
    return acc;
}

LiftedCurrent embed_current(const FeatureMapSpec& f, const CurrentAtoms& S) {
    check_dim(f, static_cast<std::size_t>(S.dim));
    LiftedCurrent out;
    out.rho = f.rho;
    out.dim = S.dim;
    out.matrix.assign(static_cast<std::size_t>(f.rho) * S.dim, 0.0);
    const std::ptrdiff_t m = static_cast<std::ptrdiff_t>(f.frequency_count());
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(S.size());
    const std::size_t rho = static_cast<std::size_t>(f.rho);
    const double scale = std::sqrt(2.0 / f.rho);
#pragma omp parallel for schedule(static) num_threads(kdist::thread_count())
    for (std::ptrdiff_t kk = 0; kk < m; ++kk) {
        auto w = f.frequency(static_cast<std::size_t>(kk));
        const std::size_t c = 2 * static_cast<std::size_t>(kk);
        const bool pair = c + 1 < rho;
        double* row_c = out.matrix.data() + c * S.dim;
        double* row_s = pair ? out.matrix.data() + (c + 1) * S.dim : nullptr;
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            auto pos = S.position(static_cast<std::size_t>(i));
            auto vec = S.vector(static_cast<std::size_t>(i));
            double arg = 0.0;
            for (int j = 0; j < f.dim; ++j) arg += w[j] * pos[j];
            if (pair) {
                double phi_c = scale * std::cos(arg);
                double phi_s = scale * std::sin(arg);
                for (int j = 0; j < S.dim; ++j) {
                    row_c[j] += phi_c * vec[j];
                    row_s[j] += phi_s * vec[j];
                }
            } else {
                double phi = scale * std::cos(arg + f.phases[0]);
                for (int j = 0; j < S.dim; ++j) row_c[j] += phi * vec[j];
            }
        }
    }
    return out;
}

namespace {
double diff_norm_sq(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}
}  // namespace

double approx_distance_sq(const LiftedMeasure& a, const LiftedMeasure& b) {
    if (a.vector.size() != b.vector.size())
        throw std::invalid_argument("lifted measures have different rho");
    return diff_norm_sq(a.vector, b.vector);
}

double approx_distance_sq(const LiftedCurrent& a, const LiftedCurrent& b) {
    if (a.rho != b.rho || a.dim != b.dim)
        throw std::invalid_argument("lifted currents have different shape");
    return diff_norm_sq(a.matrix, b.matrix);
}

double dot(const LiftedMeasure& a, const LiftedMeasure& b) {
    if (a.vector.size() != b.vector.size())
        throw std::invalid_argument("lifted measures have different rho");
    double s = 0.0;
    for (std::size_t i = 0; i < a.vector.size(); ++i) s += a.vector[i] * b.vector[i];
    return s;
}

FeatureErrorStats feature_error_report(
    const KernelSpec& k, const FeatureMapSpec& f,
    std::span<const std::pair<std::vector<double>, std::vector<double>>> pairs) {
    if (k.kind != KernelKind::gaussian)
        throw std::invalid_argument(
            "no unbiased feature map implemented for the box kernel");
    if (pairs.empty()) throw std::invalid_argument("pairs must be non-empty");
    FeatureErrorStats st;
    double sum = 0.0, sum_sq = 0.0;
    for (const auto& [x, y] : pairs) {
        double approx = dot(lift_point(f, x), lift_point(f, y));
        double exact = eval_kernel(k, x, y);
        double err = std::abs(approx - exact);
        st.max_abs = std::max(st.max_abs, err);
        sum += err;
        sum_sq += err * err;
    }
    st.mean_abs = sum / static_cast<double>(pairs.size());
    st.rmse = std::sqrt(sum_sq / static_cast<double>(pairs.size()));
    return st;
}

}  // namespace kdist
