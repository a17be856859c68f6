#include "ocy/features.hpp"

#include "ocy/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace ocy {

namespace {

using RatioTable = std::array<std::array<std::uint16_t, 256>, 256>;

// Indexed [previous][current]. Power-of-two ratios divide exactly and log2
// of an exact power of two is exact, so bin edges land where they should.
const RatioTable& ratio_table()
{
    static const RatioTable table = [] {
        RatioTable t{};
        for (int prev = 0; prev < 256; ++prev) {
            for (int cur = 0; cur < 256; ++cur) {
                const double r = double(cur + 1) / double(prev + 1);
                const double pos = std::floor(128.0 + 16.0 * std::log2(r));
                t[prev][cur] = static_cast<std::uint16_t>(std::clamp(pos, 0.0, 255.0));
            }
        }
        return t;
    }();
    return table;
}

} // namespace

std::uint16_t ratio_bin(std::uint8_t previous, std::uint8_t current)
{
    return ratio_table()[previous][current];
}

double bin_level(FeatureKind kind, std::size_t bin)
{
    switch (kind) {
    case FeatureKind::Gray:
    case FeatureKind::AbsDiff: return static_cast<double>(bin);
    case FeatureKind::Diff: return static_cast<double>(bin) - 255.0;
    case FeatureKind::Ratio: return std::exp2((static_cast<double>(bin) - 127.5) / 16.0);
    }
    return 0.0;
}

std::string_view to_string(FeatureKind kind)
{
    switch (kind) {
    case FeatureKind::Gray: return "gray";
    case FeatureKind::Diff: return "diff";
    case FeatureKind::AbsDiff: return "absdiff";
    case FeatureKind::Ratio: return "ratio";
    }
    return "?";
}

std::optional<FeatureKind> parse_feature_kind(std::string_view name)
{
    for (FeatureKind k : all_feature_kinds)
        if (to_string(k) == name)
            return k;
    return std::nullopt;
}

FeatureStream extract(const PixelSequence& seq, FeatureKind kind)
{
    const auto& v = seq.values;
    if (v.empty())
        throw Error(ErrorCode::EmptyStream, "cannot extract features from an empty sequence");

    FeatureStream out{kind, {}};
    if (kind == FeatureKind::Gray) {
        out.bin_indices.assign(v.begin(), v.end());
        return out;
    }
    if (v.size() < 2)
        throw Error(ErrorCode::SequenceTooShort,
                    std::string("feature '") + std::string(to_string(kind)) + "' needs at least two pixels");

    out.bin_indices.resize(v.size() - 1);
    auto* bins = out.bin_indices.data();
    switch (kind) {
    case FeatureKind::Diff:
        for (std::size_t t = 1; t < v.size(); ++t)
            bins[t - 1] = static_cast<std::uint16_t>(int(v[t]) - int(v[t - 1]) + 255);
        break;
    case FeatureKind::AbsDiff:
        for (std::size_t t = 1; t < v.size(); ++t)
            bins[t - 1] = static_cast<std::uint16_t>(std::abs(int(v[t]) - int(v[t - 1])));
        break;
    case FeatureKind::Ratio: {
        const auto& table = ratio_table();
        for (std::size_t t = 1; t < v.size(); ++t)
            bins[t - 1] = table[v[t - 1]][v[t]];
        break;
    }
    case FeatureKind::Gray: break;
    }
    return out;
}

} // namespace ocy
