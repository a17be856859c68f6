#ifndef OCY_INGEST_HPP
#define OCY_INGEST_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace ocy {

/// 8-bit grayscale raster, row-major.
class PixelGrid {
public:
    /// Throws Error(InvalidArgument) unless width, height > 0 and
    /// values.size() == width * height.
    PixelGrid(std::size_t width, std::size_t height, std::vector<std::uint8_t> values);

    std::size_t width() const noexcept { return width_; }
    std::size_t height() const noexcept { return height_; }
    std::size_t pixel_count() const noexcept { return values_.size(); }
    std::span<const std::uint8_t> values() const noexcept { return values_; }

    std::uint8_t at(std::size_t row, std::size_t col) const { return values_[row * width_ + col]; }

    friend bool operator==(const PixelGrid&, const PixelGrid&) = default;

private:
    std::size_t width_;
    std::size_t height_;
    std::vector<std::uint8_t> values_;
};

enum class Traversal { Boustrophedon, RowMajor };

/// Linearized grid. The traversal tag records how values were produced.
struct PixelSequence {
    std::vector<std::uint8_t> values;
    Traversal traversal;
    std::size_t source_width;
    std::size_t source_height;
};

enum class ImageFormat { Png, Pgm, Bmp };

/// Sniffs the magic bytes. Returns nullopt for anything that is not one of
/// the supported containers.
std::optional<ImageFormat> detect_format(std::span<const std::uint8_t> bytes);

/// BT.601 integer luma, rounded half up: round(0.299 R + 0.587 G + 0.114 B).
constexpr std::uint8_t luma(std::uint8_t r, std::uint8_t g, std::uint8_t b)
{
    return static_cast<std::uint8_t>((299u * r + 587u * g + 114u * b + 500u) / 1000u);
}

/// Decodes an image to gray levels. Color inputs are reduced with luma(),
/// alpha is ignored. Throws Error(MalformedFile) or Error(UnsupportedBitDepth);
/// 16-bit sources are rejected, never rescaled.
PixelGrid decode_grayscale(std::span<const std::uint8_t> bytes, ImageFormat format);

/// Binary P5 PGM, maxval 255.
std::vector<std::uint8_t> encode_pgm(const PixelGrid& grid);

/// Row 0 left-to-right, row 1 right-to-left, alternating. Consecutive
/// elements are always spatially adjacent, including across row seams.
PixelSequence boustrophedon(const PixelGrid& grid);

PixelSequence row_major(const PixelGrid& grid);

PixelSequence linearize(const PixelGrid& grid, Traversal traversal);

std::string_view to_string(Traversal traversal);
std::optional<Traversal> parse_traversal(std::string_view name);

} // namespace ocy

#endif
