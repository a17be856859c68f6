#include "ocy/error.hpp"
#include "ocy/features.hpp"
#include "unit/test_support.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace ocy;

namespace {

PixelSequence seq_of(std::vector<std::uint8_t> v)
{
    const std::size_t n = v.size();
    return PixelSequence{std::move(v), Traversal::RowMajor, n, 1};
}

// Exact ratio bin without floating point: the bin b satisfies
// 2^((b-128)/16) <= r, i.e. (cur+1)^16 * 2^128 >= 2^b * (prev+1)^16, for the
// largest such b, clamped to [0, 255].
int ratio_bin_oracle(int prev, int cur)
{
    using boost::multiprecision::cpp_int;
    const cpp_int lhs = boost::multiprecision::pow(cpp_int(cur + 1), 16) << 128;
    const cpp_int base = boost::multiprecision::pow(cpp_int(prev + 1), 16);
    int bin = 0;
    for (int b = 0; b <= 256; ++b)
        if (lhs >= (base << b))
            bin = b;
    return std::min(bin, 255);
}

} // namespace

TEST_CASE("bin counts and names")
{
    CHECK(bin_count(FeatureKind::Gray) == 256);
    CHECK(bin_count(FeatureKind::Diff) == 511);
    CHECK(bin_count(FeatureKind::AbsDiff) == 256);
    CHECK(bin_count(FeatureKind::Ratio) == 256);
    for (FeatureKind k : all_feature_kinds)
        CHECK(parse_feature_kind(to_string(k)) == k);
    CHECK_FALSE(parse_feature_kind("Gray").has_value());
}

TEST_CASE("bin levels are strictly increasing")
{
    for (FeatureKind k : all_feature_kinds)
        for (std::size_t b = 1; b < bin_count(k); ++b)
            CHECK(bin_level(k, b) > bin_level(k, b - 1));
    CHECK(bin_level(FeatureKind::Diff, 0) == -255.0);
    CHECK(bin_level(FeatureKind::Diff, 510) == 255.0);
    // bin 128 spans r in [1, 2^(1/16)); its geometric center
    CHECK(bin_level(FeatureKind::Ratio, 128) == doctest::Approx(std::exp2(0.5 / 16.0)).epsilon(1e-15));
}

TEST_CASE("extract examples")
{
    CHECK(extract(seq_of({10, 10, 10}), FeatureKind::Diff).bin_indices == std::vector<std::uint16_t>{255, 255});
    CHECK(extract(seq_of({0, 255}), FeatureKind::AbsDiff).bin_indices == std::vector<std::uint16_t>{255});
    CHECK(extract(seq_of({0, 255}), FeatureKind::Diff).bin_indices == std::vector<std::uint16_t>{510});
    // r = 51/101, 256 (ln r + ln 256) / (2 ln 256) = 112.227...
    CHECK(extract(seq_of({100, 50}), FeatureKind::Ratio).bin_indices == std::vector<std::uint16_t>{112});
    CHECK(extract(seq_of({3, 1, 4}), FeatureKind::Gray).bin_indices == std::vector<std::uint16_t>{3, 1, 4});
}

TEST_CASE("extract errors")
{
    try {
        extract(seq_of({7}), FeatureKind::Diff);
        FAIL("expected SequenceTooShort");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::SequenceTooShort);
    }
    CHECK(extract(seq_of({7}), FeatureKind::Gray).count() == 1);
    try {
        extract(seq_of({}), FeatureKind::Gray);
        FAIL("expected EmptyStream");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::EmptyStream);
    }
}

TEST_CASE("ratio bins match the exact integer oracle for every pair")
{
    int mismatches = 0;
    for (int prev = 0; prev < 256; ++prev)
        for (int cur = 0; cur < 256; ++cur)
            if (ratio_bin(static_cast<std::uint8_t>(prev), static_cast<std::uint8_t>(cur))
                != ratio_bin_oracle(prev, cur))
                ++mismatches;
    CHECK(mismatches == 0);
    CHECK(ratio_bin(0, 255) == 255);
    CHECK(ratio_bin(255, 0) == 0);
    CHECK(ratio_bin(9, 9) == 128);
    CHECK(ratio_bin(2, 5) == 144); // r = 2 sits on a bin edge
}

TEST_CASE("neighbor pairs cross row seams")
{
    // boustrophedon of [[1,2],[3,4]] is [1,2,4,3]
    const PixelSequence s = boustrophedon(PixelGrid(2, 2, {1, 2, 3, 4}));
    CHECK(extract(s, FeatureKind::Diff).bin_indices == std::vector<std::uint16_t>{256, 257, 254});
}

TEST_CASE("stream lengths")
{
    std::mt19937_64 rng(5);
    for (int i = 0; i < 20; ++i) {
        const PixelGrid g = test::random_grid(rng, 16);
        const PixelSequence s = boustrophedon(g);
        CHECK(extract(s, FeatureKind::Gray).count() == g.pixel_count());
        if (g.pixel_count() >= 2)
            for (FeatureKind k : {FeatureKind::Diff, FeatureKind::AbsDiff, FeatureKind::Ratio})
                CHECK(extract(s, k).count() == g.pixel_count() - 1);
    }
}

TEST_CASE("absdiff bins are the magnitude of diff bins")
{
    std::mt19937_64 rng(11);
    for (int i = 0; i < 30; ++i) {
        const PixelSequence s = boustrophedon(test::random_grid(rng, 24));
        if (s.values.size() < 2)
            continue;
        const auto diff = extract(s, FeatureKind::Diff).bin_indices;
        const auto absd = extract(s, FeatureKind::AbsDiff).bin_indices;
        for (std::size_t t = 0; t < diff.size(); ++t)
            CHECK(absd[t] == std::abs(int(diff[t]) - 255));
    }
}

TEST_CASE("ratio bins of r and 1/r are mirror images")
{
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<int> level(0, 255);
    for (int i = 0; i < 5000; ++i) {
        const auto a = static_cast<std::uint8_t>(level(rng));
        const auto b = static_cast<std::uint8_t>(level(rng));
        const int sum = ratio_bin(a, b) + ratio_bin(b, a);
        CHECK(sum >= 254);
        CHECK(sum <= 256);
    }
}

TEST_CASE("constant sequences concentrate every feature in one bin")
{
    const auto s = seq_of(std::vector<std::uint8_t>(50, 77));
    const auto all_equal = [](const std::vector<std::uint16_t>& v, std::uint16_t bin) {
        return std::all_of(v.begin(), v.end(), [&](auto x) { return x == bin; });
    };
    CHECK(all_equal(extract(s, FeatureKind::Diff).bin_indices, 255));
    CHECK(all_equal(extract(s, FeatureKind::AbsDiff).bin_indices, 0));
    CHECK(all_equal(extract(s, FeatureKind::Ratio).bin_indices, 128));
}

TEST_CASE("gray histogram is traversal invariant")
{
    std::mt19937_64 rng(19);
    for (int i = 0; i < 20; ++i) {
        const PixelGrid g = test::random_grid(rng, 32);
        auto a = extract(boustrophedon(g), FeatureKind::Gray).bin_indices;
        auto b = extract(row_major(g), FeatureKind::Gray).bin_indices;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        CHECK(a == b);
    }
}
