#include <stdexcept>
#include <cmath>
#include <random>

#include "doctest.h"
#include "keygraph/model.hpp"
#include "oracles.hpp"

using namespace keygraph;

namespace {

ModelParams two_class(int pool, int k1, int k2, double alpha = 1.0, int n = 500) {
    return ModelParams(n, {0.5, 0.5}, {k1, k2}, pool, alpha);
}

}  // namespace

TEST_CASE("ModelParams validation") {
    CHECK_THROWS_AS(ModelParams(1, {1.0}, {2}, 10, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(ModelParams(10, {}, {}, 10, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(ModelParams(10, {0.5, 0.5}, {2}, 10, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(ModelParams(10, {0.5, 0.0}, {2, 3}, 10, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(ModelParams(10, {0.5, 0.5}, {3, 2}, 10, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(ModelParams(10, {1.0}, {11}, 10, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(ModelParams(10, {1.0}, {0}, 10, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(ModelParams(10, {1.0}, {2}, 10, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(ModelParams(10, {1.0}, {2}, 10, 1.5), std::invalid_argument);
    CHECK_NOTHROW(ModelParams(10, {1.0}, {2}, 10, 1.0));
    CHECK_NOTHROW(ModelParams(10, {1.0}, {2}, 10, 1e-12));
}

TEST_CASE("unnormalized class weights are normalized once") {
    const ModelParams p(10, {1.0, 3.0}, {2, 4}, 20, 0.5);
    CHECK(p.class_prob(0) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(p.class_prob(1) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(std::abs(p.class_prob(0) + p.class_prob(1) - 1.0) < 1e-12);
    CHECK_THROWS_AS((void)p.class_prob(2), std::out_of_range);
}

TEST_CASE("key_edge_prob examples") {
    const auto oracle_62_3 = oracle::enumerate_overlap(6, 2, 3);
    const auto oracle_62_2 = oracle::enumerate_overlap(6, 2, 2);
    CHECK(oracle_62_3.num * 5 == oracle_62_3.den * 4);  // 0.8
    CHECK(oracle_62_2.num * 5 == oracle_62_2.den * 3);  // 0.6

    CHECK(key_overlap_prob(6, 2, 3) == doctest::Approx(0.8).epsilon(1e-14));
    CHECK(key_overlap_prob(6, 2, 2) == doctest::Approx(0.6).epsilon(1e-14));
    CHECK(key_overlap_prob(4, 2, 3) == 1.0);

    const ModelParams p(10, {0.5, 0.5}, {2, 3}, 6, 1.0);
    CHECK(key_edge_prob(p, 0, 1) == doctest::Approx(0.8).epsilon(1e-14));
    CHECK(key_edge_prob(p, 0, 0) == doctest::Approx(0.6).epsilon(1e-14));
    CHECK_THROWS_AS((void)key_edge_prob(p, 0, 2), std::out_of_range);
    CHECK_THROWS_AS((void)key_edge_prob(p, -1, 0), std::out_of_range);
}

TEST_CASE("key_edge_prob matches exhaustive enumeration for P <= 12") {
    for (int pool = 2; pool <= 12; ++pool) {
        for (int a = 1; 2 * a <= pool; ++a) {
            for (int b = 1; 2 * b <= pool; ++b) {
                const auto f = oracle::enumerate_overlap(pool, a, b);
                const double p = key_overlap_prob(pool, a, b);
                const double exact = static_cast<double>(f.num) / static_cast<double>(f.den);
                CAPTURE(pool);
                CAPTURE(a);
                CAPTURE(b);
                CHECK(std::llround(p * static_cast<double>(f.den)) == static_cast<long long>(f.num));
                CHECK(std::abs(p - exact) <= 0x1.0p-50);
            }
        }
    }
}

TEST_CASE("product form matches exact binomial ratio for P <= 60") {
    for (int pool = 1; pool <= 60; ++pool) {
        for (int a = 0; a <= pool; ++a) {
            for (int b = 0; b <= pool; ++b) {
                const double p = key_overlap_prob(pool, a, b);
                if (a + b > pool) {
                    CHECK(p == 1.0);
                    continue;
                }
                const long double ratio = static_cast<long double>(oracle::binomial(pool - a, b)) /
                                          static_cast<long double>(oracle::binomial(pool, b));
                CHECK(std::abs(p - static_cast<double>(1.0L - ratio)) < 1e-12);
            }
        }
    }
}

TEST_CASE("lambda and Lambda examples") {
    const ModelParams p(10, {0.5, 0.5}, {2, 3}, 6, 1.0);
    CHECK(class_key_edge_prob(p, 0) == doctest::Approx(0.7).epsilon(1e-14));
    CHECK(class_key_edge_prob(p, 0) <= class_key_edge_prob(p, 1));
    CHECK(class_edge_prob(p, 0) == class_key_edge_prob(p, 0));
    CHECK(class_edge_prob(p.with_channel_on_prob(0.5), 0) == doctest::Approx(0.35).epsilon(1e-14));

    const ModelParams single(10, {1.0}, {3}, 20, 0.3);
    CHECK(class_key_edge_prob(single, 0) == key_edge_prob(single, 0, 0));
}

TEST_CASE("gamma_deviation") {
    const ModelParams fig4 = ModelParams(500, {0.5, 0.5}, {30, 40}, 10000, 0.4);
    CHECK(gamma_deviation(fig4, 8) > 0.0);
    CHECK(gamma_deviation(fig4.with_ring_sizes({29, 39}), 8) < 0.0);
    CHECK_THROWS_AS((void)gamma_deviation(ModelParams(2, {1.0}, {2}, 10, 0.5), 1), std::invalid_argument);

    // choose alpha so that Lambda_1 sits exactly on the critical scaling
    const int n = 1000;
    const int k = 3;
    const ModelParams base(n, {0.3, 0.7}, {10, 20}, 5000, 1.0);
    const double ln_n = std::log(static_cast<double>(n));
    const double target = (ln_n + (k - 1) * std::log(ln_n)) / n;
    const ModelParams at = base.with_channel_on_prob(target / class_key_edge_prob(base, 0));
    CHECK(std::abs(gamma_deviation(at, k)) < 1e-12);
}

TEST_CASE("asymptotic lambda_1") {
    const ModelParams homogeneous(100, {1.0}, {20}, 10000, 1.0);
    CHECK(asymptotic_min_class_key_edge_prob(homogeneous) == doctest::Approx(0.04).epsilon(1e-14));

    const ModelParams p = two_class(10000, 30, 40);
    const double approx = asymptotic_min_class_key_edge_prob(p);
    CHECK(approx == doctest::Approx(0.105).epsilon(1e-14));
    const double exact = class_key_edge_prob(p, 0);
    CHECK(std::abs(approx - exact) / exact < 0.06);

    const ModelParams tiny = two_class(1000000, 2, 2);
    CHECK(asymptotic_min_class_key_edge_prob(tiny) == doctest::Approx(4e-6).epsilon(1e-12));
    CHECK(std::abs(asymptotic_min_class_key_edge_prob(tiny) - key_edge_prob(tiny, 0, 0)) / 4e-6 < 0.01);

    // clamped when K_1 K_avg exceeds P
    const ModelParams saturated(10, {1.0}, {8}, 20, 1.0);
    CHECK(asymptotic_min_class_key_edge_prob(saturated) == 1.0);
}

TEST_CASE("scaling_report") {
    const ScalingReport good = scaling_report(two_class(10000, 30, 40, 0.4), 8);
    CHECK(good.admissible);
    CHECK(good.gamma > 0.0);
    CHECK(good.lambda1_exact == class_key_edge_prob(two_class(10000, 30, 40, 0.4), 0));
    CHECK(good.pool_per_node == doctest::Approx(20.0));
    CHECK(good.max_ring_per_pool == doctest::Approx(0.004));
    CHECK(good.ring_spread_per_log_n == doctest::Approx(40.0 / 30.0 / std::log(500.0)));

    CHECK_FALSE(scaling_report(ModelParams(50, {0.5, 0.5}, {1, 4}, 100, 0.5), 1).admissible);
    CHECK_FALSE(scaling_report(ModelParams(50, {0.5, 0.5}, {3, 51}, 100, 0.5), 1).admissible);
    CHECK(scaling_report(ModelParams(50, {0.5, 0.5}, {3, 50}, 100, 0.5), 1).admissible);
    CHECK(std::isnan(scaling_report(ModelParams(2, {1.0}, {2}, 10, 0.5), 1).gamma));
}

TEST_CASE("properties over random parameter sets") {
    std::mt19937_64 gen(20240611);
    for (int iter = 0; iter < 500; ++iter) {
        const int pool = std::uniform_int_distribution<int>(2, 400)(gen);
        const int r = std::uniform_int_distribution<int>(1, 5)(gen);
        std::vector<int> ring;
        std::vector<double> mu;
        for (int i = 0; i < r; ++i) {
            ring.push_back(std::uniform_int_distribution<int>(1, pool)(gen));
            mu.push_back(std::uniform_real_distribution<double>(0.01, 1.0)(gen));
        }
        std::sort(ring.begin(), ring.end());
        const ModelParams p(100, mu, ring, pool, std::uniform_real_distribution<double>(0.01, 1.0)(gen));
        CAPTURE(pool);
        for (int i = 0; i < r; ++i) {
            for (int j = 0; j < r; ++j) {
                const double pij = key_edge_prob(p, i, j);
                CHECK(std::abs(pij - key_edge_prob(p, j, i)) < 1e-12);
                CHECK(pij >= 0.0);
                CHECK(pij <= 1.0);
                if (p.ring_size(i) + p.ring_size(j) > pool) CHECK(pij == 1.0);
            }
            if (i > 0) {
                CHECK(class_key_edge_prob(p, i - 1) <= class_key_edge_prob(p, i));
                CHECK(class_edge_prob(p, i - 1) <= class_edge_prob(p, i));
            }
        }
        // monotone in each ring size with the other fixed
        const int a = std::uniform_int_distribution<int>(0, pool - 1)(gen);
        const int b = std::uniform_int_distribution<int>(0, pool)(gen);
        CHECK(key_overlap_prob(pool, a, b) <= key_overlap_prob(pool, a + 1, b));
        if (b < pool) CHECK(key_overlap_prob(pool, a, b) <= key_overlap_prob(pool, a, b + 1));
    }
}
