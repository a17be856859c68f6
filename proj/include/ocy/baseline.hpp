#ifndef OCY_BASELINE_HPP
#define OCY_BASELINE_HPP

#include "ocy/ingest.hpp"
#include "ocy/order.hpp"

#include <cstdint>

namespace ocy {

/// SplitMix64 (Steele, Lea, Flood 2014): 64-bit state, increment
/// 0x9E3779B97F4A7C15, two xor-shift-multiply rounds. Part of the external
/// contract; noise baselines are reproducible to the bit from the seed.
class SplitMix64 {
public:
    explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    constexpr std::uint64_t next() noexcept
    {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

enum class BaselineKind { UniformNoise, Constant };

struct BaselineSpec {
    BaselineKind kind = BaselineKind::UniformNoise;
    std::size_t width = 0;
    std::size_t height = 0;
    std::uint64_t seed = 0;   // UniformNoise
    int level = 0;            // Constant; 0 is the "black square"
};

/// Constant: every pixel = level. UniformNoise: pixel i is the top byte of
/// the i-th SplitMix64 output for the seed, row-major.
/// Throws Error(InvalidArgument) on non-positive dimensions or a level
/// outside [0, 255].
PixelGrid generate(const BaselineSpec& spec);

/// Order of `image` against a generated baseline: baseline is the first
/// image, `image` the second, evaluated in `mode`. With reference First,
/// positive delta_s means the image is more ordered than the baseline.
OrderValue absolute_order(const PixelGrid& image, const BaselineSpec& spec, const Mode& mode,
                          double epsilon = 0.0, bool strict = true);

/// Same, against the exact uniform gray-level density instead of a realized
/// noise sample. Gray feature with MassScale only.
OrderValue absolute_order_ideal(const PixelGrid& image, double epsilon = 0.0);

} // namespace ocy

#endif
