#ifndef OCY_FEATURES_HPP
#define OCY_FEATURES_HPP

#include "ocy/ingest.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace ocy {

/// Value derived per pixel (Gray) or per neighbor pair in the linearized
/// sequence (Diff, AbsDiff, Ratio).
///
///   Gray     levels 0..255                       256 bins
///   Diff     v[t] - v[t-1] in -255..255          511 bins, bin = d + 255
///   AbsDiff  |v[t] - v[t-1]|                     256 bins
///   Ratio    (v[t]+1) / (v[t-1]+1) in [1/256,256] 256 log-spaced bins,
///            bin = floor(128 + 16 log2 r), clamped to [0, 255]
enum class FeatureKind { Gray, Diff, AbsDiff, Ratio };

inline constexpr std::array<FeatureKind, 4> all_feature_kinds = {
    FeatureKind::Gray, FeatureKind::Diff, FeatureKind::AbsDiff, FeatureKind::Ratio};

constexpr std::size_t bin_count(FeatureKind kind)
{
    return kind == FeatureKind::Diff ? 511 : 256;
}

constexpr bool is_neighbor_kind(FeatureKind kind) { return kind != FeatureKind::Gray; }

/// Representative level of a bin: the gray value, signed difference or
/// magnitude for the additive kinds, the geometric bin center for Ratio.
double bin_level(FeatureKind kind, std::size_t bin);

/// Ratio bin for the pair (previous, current).
std::uint16_t ratio_bin(std::uint8_t previous, std::uint8_t current);

std::string_view to_string(FeatureKind kind);
std::optional<FeatureKind> parse_feature_kind(std::string_view name);

struct FeatureStream {
    FeatureKind kind;
    std::vector<std::uint16_t> bin_indices;

    std::size_t count() const noexcept { return bin_indices.size(); }
};

/// Neighbor pairs cross row seams; the sequence is one continuous stream.
/// Throws Error(EmptyStream) on an empty sequence and Error(SequenceTooShort)
/// for a neighbor kind on a single pixel.
FeatureStream extract(const PixelSequence& seq, FeatureKind kind);

} // namespace ocy

#endif
