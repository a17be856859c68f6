#include "ocy/baseline.hpp"

#include "ocy/error.hpp"

#include <string>

namespace ocy {

PixelGrid generate(const BaselineSpec& spec)
{
    if (spec.width == 0 || spec.height == 0)
        throw Error(ErrorCode::InvalidArgument, "baseline dimensions must be positive");
    const std::size_t n = spec.width * spec.height;
    if (spec.kind == BaselineKind::Constant) {
        if (spec.level < 0 || spec.level > 255)
            throw Error(ErrorCode::InvalidArgument, "baseline level " + std::to_string(spec.level)
                                                        + " is outside [0, 255]");
        return PixelGrid(spec.width, spec.height, std::vector<std::uint8_t>(n, static_cast<std::uint8_t>(spec.level)));
    }
    SplitMix64 rng(spec.seed);
    std::vector<std::uint8_t> values(n);
    for (auto& v : values)
        v = static_cast<std::uint8_t>(rng.next() >> 56);
    return PixelGrid(spec.width, spec.height, std::move(values));
}

OrderValue absolute_order(const PixelGrid& image, const BaselineSpec& spec, const Mode& mode, double epsilon,
                          bool strict)
{
    const PixelGrid base = generate(spec);
    if (strict && base.pixel_count() != image.pixel_count())
        throw Error(ErrorCode::SizeMismatch, "baseline " + std::to_string(base.width()) + "x"
                                                 + std::to_string(base.height()) + " does not match image "
                                                 + std::to_string(image.width()) + "x"
                                                 + std::to_string(image.height()));
    return evaluate_mode(base, image, mode, epsilon).value;
}

OrderValue absolute_order_ideal(const PixelGrid& image, double epsilon)
{
    const Distribution ideal = Distribution::uniform(FeatureKind::Gray);
    const Distribution observed = build(extract(row_major(image), FeatureKind::Gray));
    const RenormOutcome outcome = renorm_mass(ideal, observed);
    return lyapunov(outcome.reference, outcome.adjusted, epsilon);
}

} // namespace ocy
