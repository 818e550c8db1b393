#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "kdist/exact.hpp"
#include "test_util.hpp"

using namespace kdist;
using kdist_test::measure_1d;
using kdist_test::random_measure;

namespace {

// independent brute-force oracle: naive triple of loops, no shared code
// with the library's accumulation
double oracle_cross(const KernelSpec& k, const DiscreteMeasure& P,
                    const DiscreteMeasure& Q) {
    double s = 0.0;
    for (std::size_t i = 0; i < P.size(); ++i)
        for (std::size_t j = 0; j < Q.size(); ++j) {
            double d2 = 0.0;
            for (int c = 0; c < P.dim; ++c) {
                double d = P.coords[i * P.dim + c] - Q.coords[j * Q.dim + c];
                d2 += d * d;
            }
            double kv = k.kind == KernelKind::gaussian
                            ? std::exp(-d2 / (k.sigma * k.sigma))
                            : (std::sqrt(d2) <= k.width ? 1.0 : 0.0);
            s += P.weights[i] * kv * Q.weights[j];
        }
    return s;
}

}  // namespace

TEST_CASE("zero weights give zero cross-similarity") {
    auto P = measure_1d({0.0, 1.0, 2.0});
    P.weights.assign(3, 0.0);
    auto Q = measure_1d({0.5});
    CHECK(cross_similarity(KernelSpec::gaussian(1.0), P, Q) == 0.0);
}

TEST_CASE("box counterexample cross-similarities") {
    auto k = KernelSpec::box(2.0);
    auto A = measure_1d({0.0, 0.0, 0.0});
    auto B = measure_1d({-1.1, 1.1, 0.0});
    CHECK(cross_similarity(k, A, A) == 9.0);
    CHECK(cross_similarity(k, B, B) == 7.0);
    CHECK(cross_similarity(k, A, B) == 9.0);
}

TEST_CASE("gaussian cross-similarity four-term sum") {
    auto P = measure_1d({0.0, 1.0});
    double expected = 2.0 + 2.0 * std::exp(-1.0);
    CHECK(cross_similarity(KernelSpec::gaussian(1.0), P, P) ==
          doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("cross-similarity matches brute-force oracle") {
    std::mt19937_64 rng(5);
    auto k = KernelSpec::gaussian(0.9);
    for (int t = 0; t < 20; ++t) {
        auto P = random_measure(rng, 17, 3, -1, 1, true);
        auto Q = random_measure(rng, 23, 3, -1, 1, true);
        double got = cross_similarity(k, P, Q);
        CHECK(got == doctest::Approx(oracle_cross(k, P, Q)).epsilon(1e-12));
        CHECK(got == doctest::Approx(cross_similarity(k, Q, P)).epsilon(1e-13));
    }
}

TEST_CASE("distance of a set to itself is zero") {
    std::mt19937_64 rng(6);
    auto P = random_measure(rng, 20, 2, -1, 1, true);
    double d2 = kernel_distance_sq(KernelSpec::gaussian(1.0), P, P);
    CHECK(std::abs(d2) <= 1e-12 * 400.0);
}

TEST_CASE("box counterexample gives exactly -2") {
    auto A = measure_1d({0.0, 0.0, 0.0});
    auto B = measure_1d({-1.1, 1.1, 0.0});
    CHECK(kernel_distance_sq(KernelSpec::box(2.0), A, B) == -2.0);
}

TEST_CASE("gaussian singleton closed form") {
    auto P = measure_1d({0.0});
    auto Q = measure_1d({1.0});
    double expected = 2.0 * (1.0 - std::exp(-1.0));
    CHECK(kernel_distance_sq(KernelSpec::gaussian(1.0), P, Q) ==
          doctest::Approx(expected).epsilon(1e-15));
    auto r = kernel_distance(KernelSpec::gaussian(1.0), P, Q);
    REQUIRE(r.d.has_value());
    CHECK(*r.d == doctest::Approx(std::sqrt(expected)).epsilon(1e-14));
    CHECK(*r.d == doctest::Approx(1.12438477).epsilon(1e-8));
}

TEST_CASE("negative square beyond tolerance leaves d absent") {
    auto A = measure_1d({0.0, 0.0, 0.0});
    auto B = measure_1d({-1.1, 1.1, 0.0});
    auto r = kernel_distance(KernelSpec::box(2.0), A, B);
    CHECK(r.d_squared == -2.0);
    CHECK_FALSE(r.d.has_value());
    CHECK_FALSE(r.clamped);
}

TEST_CASE("tiny negative square is clamped and flagged") {
    auto r = clamp_distance_sq(-1e-15, 1e-9);
    CHECK(r.clamped);
    REQUIRE(r.d.has_value());
    CHECK(*r.d == 0.0);
}

TEST_CASE("symmetry of kernel_distance_sq is exact") {
    std::mt19937_64 rng(8);
    for (int t = 0; t < 20; ++t) {
        auto P = random_measure(rng, 9, 2, -1, 1, true);
        auto Q = random_measure(rng, 13, 2, -1, 1, true);
        auto k = KernelSpec::gaussian(0.6);
        CHECK(kernel_distance_sq(k, P, Q) == kernel_distance_sq(k, Q, P));
    }
}

TEST_CASE("gaussian nonnegativity over random pairs") {
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<std::size_t> size(1, 32);
    std::uniform_int_distribution<int> dim(1, 4);
    auto k = KernelSpec::gaussian(1.0);
    for (int t = 0; t < 10000; ++t) {
        int d = dim(rng);
        auto P = random_measure(rng, size(rng), d);
        auto Q = random_measure(rng, size(rng), d);
        CHECK(kernel_distance_sq(k, P, Q) >= -1e-9);
    }
}

TEST_CASE("weight bilinearity") {
    std::mt19937_64 rng(10);
    auto P = random_measure(rng, 12, 2, -1, 1, true);
    auto Q = random_measure(rng, 10, 2, -1, 1, true);
    auto k = KernelSpec::gaussian(1.0);
    double base = cross_similarity(k, P, Q);
    auto scaled = P;
    for (double& w : scaled.weights) w *= 3.5;
    CHECK(cross_similarity(k, scaled, Q) ==
          doctest::Approx(3.5 * base).epsilon(1e-13));
}

TEST_CASE("box width -> 0 recovers symmetric difference on integer points") {
    auto k = KernelSpec::box(0.1);
    auto P = measure_1d({0.0, 1.0, 2.0, 3.0});
    auto Q = measure_1d({2.0, 3.0, 4.0});
    // |P delta Q| = |{0,1}| + |{4}| = 3
    CHECK(kernel_distance_sq(k, P, Q) == 3.0);
}

TEST_CASE("dimension mismatch is rejected") {
    auto P = measure_1d({0.0});
    kdist::DiscreteMeasure Q;
    Q.dim = 2;
    Q.coords = {0.0, 0.0};
    Q.weights = {1.0};
    CHECK_THROWS_AS(cross_similarity(KernelSpec::gaussian(1.0), P, Q),
                    std::invalid_argument);
}
