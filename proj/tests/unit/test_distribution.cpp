#include "ocy/distribution.hpp"
#include "ocy/error.hpp"
#include "ocy/renorm.hpp"
#include "unit/test_support.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

using namespace ocy;
using test::dist;

TEST_CASE("build normalizes counts")
{
    const Distribution two = build({FeatureKind::Gray, {0, 0, 255, 255}});
    CHECK(two.mass(0) == 0.5);
    CHECK(two.mass(255) == 0.5);
    CHECK(std::count(two.masses().begin(), two.masses().end(), 0.0) == 254);

    const Distribution constant = build({FeatureKind::Diff, std::vector<std::uint16_t>(9, 300)});
    CHECK(constant.mass(300) == 1.0);

    const Distribution d = build({FeatureKind::Gray, {1, 2, 2, 3}});
    CHECK(d.mass(1) == 0.25);
    CHECK(d.mass(2) == 0.5);
    CHECK(d.mass(3) == 0.25);
}

TEST_CASE("build agrees with direct counting over raw arrays")
{
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<int> bin(0, 510);
    for (int i = 0; i < 20; ++i) {
        std::vector<std::uint16_t> bins(1 + rng() % 500);
        for (auto& b : bins)
            b = static_cast<std::uint16_t>(bin(rng));
        std::map<int, int> counts;
        for (auto b : bins)
            ++counts[b];
        const Distribution d = build({FeatureKind::Diff, bins});
        for (std::size_t b = 0; b < d.size(); ++b) {
            const auto it = counts.find(static_cast<int>(b));
            const double expected = it == counts.end() ? 0.0 : double(it->second) / double(bins.size());
            CHECK(d.mass(b) == doctest::Approx(expected).epsilon(1e-15));
        }
        CHECK(std::abs(total_mass(d) - 1.0) <= 1e-12);
    }
}

TEST_CASE("build rejects empty streams")
{
    try {
        build({FeatureKind::Gray, {}});
        FAIL("expected EmptyStream");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::EmptyStream);
    }
}

TEST_CASE("Distribution enforces its invariants")
{
    CHECK_THROWS_AS(Distribution(FeatureKind::Gray, std::vector<double>(255, 1.0)), Error);
    CHECK_THROWS_AS(Distribution(FeatureKind::Gray, std::vector<double>(256, 0.0)), Error);
    std::vector<double> negative(256, 0.1);
    negative[3] = -0.01;
    CHECK_THROWS_AS(Distribution(FeatureKind::Gray, negative), Error);
    std::vector<double> nan(256, 0.1);
    nan[0] = std::nan("");
    CHECK_THROWS_AS(Distribution(FeatureKind::Gray, nan), Error);
}

TEST_CASE("total_mass")
{
    const Distribution d = build({FeatureKind::Gray, {5, 6, 7}});
    CHECK(std::abs(total_mass(d) - 1.0) <= 1e-12);
    CHECK(std::abs(total_mass(d.scaled(0.5)) - 0.5) <= 1e-12);
    const Distribution other = dist(FeatureKind::Gray, {{4, 2.0}});
    CHECK(std::abs(total_mass(renorm_mass(d, other).adjusted) - 1.0) <= 1e-12);
}

TEST_CASE("mean_level")
{
    CHECK(mean_level(dist(FeatureKind::Gray, {{0, 0.5}, {255, 0.5}})) == 127.5);
    CHECK(mean_level(dist(FeatureKind::Gray, {{42, 1.0}})) == 42.0);
    CHECK(mean_level(dist(FeatureKind::Gray, {{1, 0.25}, {2, 0.5}, {3, 0.25}})) == 2.0);
    CHECK(mean_level(dist(FeatureKind::Diff, {{250, 1.0}})) == -5.0);
    // mass scaling does not move the mean
    CHECK(mean_level(dist(FeatureKind::Gray, {{10, 3.0}, {20, 1.0}})) == 12.5);
}

TEST_CASE("entropy")
{
    CHECK(entropy(dist(FeatureKind::Gray, {{17, 1.0}})) == 0.0);
    CHECK(entropy(dist(FeatureKind::Gray, {{0, 0.5}, {9, 0.5}})) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK(std::abs(entropy(Distribution::uniform(FeatureKind::Gray)) - std::log(256.0)) <= 1e-12);
    CHECK(std::abs(entropy(Distribution::uniform(FeatureKind::Diff)) - std::log(511.0)) <= 1e-12);
}

TEST_CASE("entropy is bounded by ln(bin count)")
{
    std::mt19937_64 rng(29);
    for (int i = 0; i < 100; ++i) {
        const FeatureKind k = all_feature_kinds[i % 4];
        const Distribution d = test::random_distribution(rng, k, 0.5);
        const double s = entropy(d);
        CHECK(s >= 0.0);
        CHECK(s <= std::log(double(bin_count(k))) + 1e-12);
    }
}

TEST_CASE("entropy is permutation and scale invariant")
{
    std::mt19937_64 rng(31);
    for (int i = 0; i < 50; ++i) {
        const Distribution d = test::random_distribution(rng, FeatureKind::Gray, 0.3);
        std::vector<double> perm(d.masses().begin(), d.masses().end());
        std::shuffle(perm.begin(), perm.end(), rng);
        CHECK(std::abs(entropy(Distribution(FeatureKind::Gray, perm)) - entropy(d)) <= 1e-12);
        const double c = std::exp(std::uniform_real_distribution<double>(-10, 10)(rng));
        CHECK(std::abs(entropy(d.scaled(c)) - entropy(d)) <= 1e-12);
    }
}

TEST_CASE("mean level moves linearly with an axis shift")
{
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> shift(-20.0, 20.0);
    for (int i = 0; i < 50; ++i) {
        // keep mass away from the edges so nothing clips
        std::vector<double> m(256, 0.0);
        for (std::size_t b = 40; b < 200; ++b)
            m[b] = double(rng() % 100);
        m[100] += 1.0;
        const Distribution d(FeatureKind::Gray, m);
        const double delta = shift(rng);
        const auto [moved, clipped] = shift_levels(d, delta);
        CHECK(clipped == 0.0);
        CHECK(std::abs(mean_level(moved) - (mean_level(d) + delta)) <= 1e-9);
    }
}
