#include "ocy/ingest.hpp"

#include "ocy/error.hpp"

#include <png.h>

#include <algorithm>
#include <csetjmp>
#include <cstring>
#include <string>

namespace ocy {

PixelGrid::PixelGrid(std::size_t width, std::size_t height, std::vector<std::uint8_t> values)
    : width_(width), height_(height), values_(std::move(values))
{
    if (width == 0 || height == 0)
        throw Error(ErrorCode::InvalidArgument, "grid dimensions must be positive");
    if (values_.size() != width * height)
        throw Error(ErrorCode::InvalidArgument,
                    "grid holds " + std::to_string(values_.size()) + " values, expected "
                        + std::to_string(width) + "x" + std::to_string(height));
}

std::optional<ImageFormat> detect_format(std::span<const std::uint8_t> bytes)
{
    static constexpr std::uint8_t png_sig[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
    if (bytes.size() >= 8 && std::equal(png_sig, png_sig + 8, bytes.begin()))
        return ImageFormat::Png;
    if (bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] == '5')
        return ImageFormat::Pgm;
    if (bytes.size() >= 2 && bytes[0] == 'B' && bytes[1] == 'M')
        return ImageFormat::Bmp;
    return std::nullopt;
}

namespace {

[[noreturn]] void malformed(const std::string& what)
{
    throw Error(ErrorCode::MalformedFile, what);
}

// Pixel budget guard so a corrupt header cannot request absurd allocations.
constexpr std::size_t max_dimension = 1u << 16;

//
// PGM
//

class PgmHeaderReader {
public:
    explicit PgmHeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes), pos_(2) {}

    std::size_t number()
    {
        skip_space_and_comments();
        if (pos_ >= bytes_.size() || !is_digit(bytes_[pos_]))
            malformed("PGM: expected a decimal number in header");
        std::size_t value = 0;
        while (pos_ < bytes_.size() && is_digit(bytes_[pos_])) {
            value = value * 10 + (bytes_[pos_] - '0');
            if (value > 1u << 20)
                malformed("PGM: header value out of range");
            ++pos_;
        }
        return value;
    }

    // Exactly one whitespace byte separates maxval from the raster.
    std::size_t raster_offset()
    {
        if (pos_ >= bytes_.size() || !is_space(bytes_[pos_]))
            malformed("PGM: missing whitespace before raster");
        return pos_ + 1;
    }

private:
    static bool is_digit(std::uint8_t c) { return c >= '0' && c <= '9'; }
    static bool is_space(std::uint8_t c)
    {
        return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
    }

    void skip_space_and_comments()
    {
        while (pos_ < bytes_.size()) {
            if (is_space(bytes_[pos_])) {
                ++pos_;
            } else if (bytes_[pos_] == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n')
                    ++pos_;
            } else {
                break;
            }
        }
    }

    std::span<const std::uint8_t> bytes_;
    std::size_t pos_;
};

PixelGrid decode_pgm(std::span<const std::uint8_t> bytes)
{
    if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5')
        malformed("PGM: missing P5 magic");
    PgmHeaderReader reader(bytes);
    const std::size_t width = reader.number();
    const std::size_t height = reader.number();
    const std::size_t maxval = reader.number();
    if (width == 0 || height == 0 || width > max_dimension || height > max_dimension)
        malformed("PGM: invalid dimensions");
    if (maxval == 0)
        malformed("PGM: maxval must be positive");
    if (maxval > 255)
        throw Error(ErrorCode::UnsupportedBitDepth,
                    "PGM: maxval " + std::to_string(maxval) + " implies 16-bit samples");
    const std::size_t offset = reader.raster_offset();
    const std::size_t count = width * height;
    if (bytes.size() < offset || bytes.size() - offset < count)
        malformed("PGM: truncated raster");
    auto first = bytes.begin() + static_cast<std::ptrdiff_t>(offset);
    return PixelGrid(width, height,
                     std::vector<std::uint8_t>(first, first + static_cast<std::ptrdiff_t>(count)));
}

//
// PNG (libpng)
//

struct PngSource {
    std::span<const std::uint8_t> bytes;
    std::size_t pos = 0;
};

struct PngErrorState {
    char message[256] = {};
};

void png_read_from_span(png_structp png, png_bytep out, png_size_t length)
{
    auto* src = static_cast<PngSource*>(png_get_io_ptr(png));
    if (src->bytes.size() - src->pos < length)
        png_error(png, "unexpected end of data");
    std::memcpy(out, src->bytes.data() + src->pos, length);
    src->pos += length;
}

void png_on_error(png_structp png, png_const_charp msg)
{
    auto* state = static_cast<PngErrorState*>(png_get_error_ptr(png));
    std::strncpy(state->message, msg, sizeof(state->message) - 1);
    png_longjmp(png, 1);
}

void png_on_warning(png_structp, png_const_charp) {}

struct PngRaw {
    std::size_t width = 0;
    std::size_t height = 0;
    int channels = 0;
    bool sixteen_bit = false;
    std::vector<std::uint8_t> pixels;
};

// Everything touched after setjmp lives in objects created before it, so a
// longjmp never skips a destructor.
bool png_decode_raw(std::span<const std::uint8_t> bytes, PngRaw& raw, PngErrorState& err)
{
    PngSource src{bytes};
    std::vector<png_bytep> rows;

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &err, png_on_error, png_on_warning);
    if (!png) {
        std::strncpy(err.message, "out of memory", sizeof(err.message) - 1);
        return false;
    }
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        std::strncpy(err.message, "out of memory", sizeof(err.message) - 1);
        return false;
    }

    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        return false;
    }

    png_set_read_fn(png, &src, png_read_from_span);
    png_read_info(png, info);

    const png_uint_32 width = png_get_image_width(png, info);
    const png_uint_32 height = png_get_image_height(png, info);
    const int bit_depth = png_get_bit_depth(png, info);
    const int color_type = png_get_color_type(png, info);

    if (bit_depth == 16) {
        raw.sixteen_bit = true;
        png_destroy_read_struct(&png, &info, nullptr);
        return true;
    }
    if (width == 0 || height == 0 || width > max_dimension || height > max_dimension)
        png_error(png, "invalid dimensions");

    if (color_type == PNG_COLOR_TYPE_PALETTE)
        png_set_palette_to_rgb(png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8)
        png_set_expand_gray_1_2_4_to_8(png);
    if (color_type & PNG_COLOR_MASK_ALPHA)
        png_set_strip_alpha(png);
    png_read_update_info(png, info);

    raw.width = width;
    raw.height = height;
    raw.channels = png_get_channels(png, info);
    const std::size_t stride = png_get_rowbytes(png, info);
    raw.pixels.resize(stride * height);
    rows.resize(height);
    for (std::size_t y = 0; y < height; ++y)
        rows[y] = raw.pixels.data() + y * stride;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    return true;
}

PixelGrid decode_png(std::span<const std::uint8_t> bytes)
{
    PngRaw raw;
    PngErrorState err;
    if (!png_decode_raw(bytes, raw, err))
        malformed(std::string("PNG: ") + err.message);
    if (raw.sixteen_bit)
        throw Error(ErrorCode::UnsupportedBitDepth, "PNG: 16-bit channels are not supported");

    std::vector<std::uint8_t> gray(raw.width * raw.height);
    if (raw.channels == 1) {
        gray = std::move(raw.pixels);
    } else if (raw.channels == 3) {
        for (std::size_t i = 0; i < gray.size(); ++i) {
            const std::uint8_t* p = raw.pixels.data() + 3 * i;
            gray[i] = luma(p[0], p[1], p[2]);
        }
    } else {
        malformed("PNG: unexpected channel count " + std::to_string(raw.channels));
    }
    return PixelGrid(raw.width, raw.height, std::move(gray));
}

//
// BMP (BITMAPINFOHEADER and later, BI_RGB only)
//

std::uint32_t le32(std::span<const std::uint8_t> b, std::size_t at)
{
    return std::uint32_t(b[at]) | std::uint32_t(b[at + 1]) << 8 | std::uint32_t(b[at + 2]) << 16
        | std::uint32_t(b[at + 3]) << 24;
}

std::uint16_t le16(std::span<const std::uint8_t> b, std::size_t at)
{
    return static_cast<std::uint16_t>(b[at] | b[at + 1] << 8);
}

PixelGrid decode_bmp(std::span<const std::uint8_t> bytes)
{
    if (bytes.size() < 54 || bytes[0] != 'B' || bytes[1] != 'M')
        malformed("BMP: missing header");
    const std::uint32_t data_offset = le32(bytes, 10);
    const std::uint32_t header_size = le32(bytes, 14);
    if (header_size < 40 || 14u + header_size > bytes.size())
        malformed("BMP: unsupported info header");
    const auto raw_width = static_cast<std::int32_t>(le32(bytes, 18));
    const auto raw_height = static_cast<std::int32_t>(le32(bytes, 22));
    const std::uint16_t bpp = le16(bytes, 28);
    const std::uint32_t compression = le32(bytes, 30);
    std::uint32_t palette_size = le32(bytes, 46);

    if (bpp == 16 || bpp == 32 || bpp == 48 || bpp == 64)
        throw Error(ErrorCode::UnsupportedBitDepth, "BMP: " + std::to_string(bpp) + "-bit pixels are not supported");
    if (bpp != 8 && bpp != 24)
        malformed("BMP: unsupported bit depth " + std::to_string(bpp));
    if (compression != 0)
        malformed("BMP: compressed bitmaps are not supported");
    if (raw_width <= 0 || raw_height == 0 || raw_height == INT32_MIN)
        malformed("BMP: invalid dimensions");

    const bool top_down = raw_height < 0;
    const std::size_t width = static_cast<std::size_t>(raw_width);
    const std::size_t height = static_cast<std::size_t>(top_down ? -raw_height : raw_height);
    if (width > max_dimension || height > max_dimension)
        malformed("BMP: invalid dimensions");

    std::uint8_t palette_gray[256] = {};
    if (bpp == 8) {
        if (palette_size == 0)
            palette_size = 256;
        if (palette_size > 256)
            malformed("BMP: palette too large");
        const std::size_t pal_at = 14 + header_size;
        if (pal_at + 4 * std::size_t(palette_size) > bytes.size())
            malformed("BMP: truncated palette");
        for (std::size_t i = 0; i < palette_size; ++i) {
            const std::size_t e = pal_at + 4 * i; // B, G, R, reserved
            palette_gray[i] = luma(bytes[e + 2], bytes[e + 1], bytes[e]);
        }
    }

    const std::size_t stride = ((width * bpp / 8) + 3) & ~std::size_t(3);
    if (data_offset > bytes.size() || bytes.size() - data_offset < stride * height)
        malformed("BMP: truncated pixel data");

    std::vector<std::uint8_t> gray(width * height);
    for (std::size_t row = 0; row < height; ++row) {
        const std::size_t src_row = top_down ? row : height - 1 - row;
        const std::uint8_t* line = bytes.data() + data_offset + src_row * stride;
        std::uint8_t* out = gray.data() + row * width;
        if (bpp == 8) {
            for (std::size_t x = 0; x < width; ++x) {
                if (line[x] >= palette_size)
                    malformed("BMP: palette index out of range");
                out[x] = palette_gray[line[x]];
            }
        } else {
            for (std::size_t x = 0; x < width; ++x)
                out[x] = luma(line[3 * x + 2], line[3 * x + 1], line[3 * x]);
        }
    }
    return PixelGrid(width, height, std::move(gray));
}

} // namespace

PixelGrid decode_grayscale(std::span<const std::uint8_t> bytes, ImageFormat format)
{
    switch (format) {
    case ImageFormat::Pgm: return decode_pgm(bytes);
    case ImageFormat::Png: return decode_png(bytes);
    case ImageFormat::Bmp: return decode_bmp(bytes);
    }
    malformed("unknown image format");
}

std::vector<std::uint8_t> encode_pgm(const PixelGrid& grid)
{
    const std::string header =
        "P5\n" + std::to_string(grid.width()) + " " + std::to_string(grid.height()) + "\n255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.insert(out.end(), grid.values().begin(), grid.values().end());
    return out;
}

PixelSequence boustrophedon(const PixelGrid& grid)
{
    PixelSequence seq{{}, Traversal::Boustrophedon, grid.width(), grid.height()};
    seq.values.reserve(grid.pixel_count());
    const auto v = grid.values();
    for (std::size_t row = 0; row < grid.height(); ++row) {
        const auto line = v.subspan(row * grid.width(), grid.width());
        if (row % 2 == 0)
            seq.values.insert(seq.values.end(), line.begin(), line.end());
        else
            seq.values.insert(seq.values.end(), line.rbegin(), line.rend());
    }
    return seq;
}

PixelSequence row_major(const PixelGrid& grid)
{
    return PixelSequence{std::vector<std::uint8_t>(grid.values().begin(), grid.values().end()),
                         Traversal::RowMajor, grid.width(), grid.height()};
}

PixelSequence linearize(const PixelGrid& grid, Traversal traversal)
{
    return traversal == Traversal::Boustrophedon ? boustrophedon(grid) : row_major(grid);
}

std::string_view to_string(Traversal traversal)
{
    return traversal == Traversal::Boustrophedon ? "boustrophedon" : "rowmajor";
}

std::optional<Traversal> parse_traversal(std::string_view name)
{
    if (name == "boustrophedon")
        return Traversal::Boustrophedon;
    if (name == "rowmajor")
        return Traversal::RowMajor;
    return std::nullopt;
}

} // namespace ocy
