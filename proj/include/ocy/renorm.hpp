#ifndef OCY_RENORM_HPP
#define OCY_RENORM_HPP

#include "ocy/distribution.hpp"

#include <array>
#include <optional>
#include <string_view>

namespace ocy {

/// How a pair of distributions is made comparable before evaluating the
/// order functional.
///
///   MassScale    other *= total(reference) / total(other)
///   ShiftOther   other translated along the level axis onto mean(reference)
///   OpposedShift both translated halfway toward each other
///   AxisScale    other's levels stretched by mean(reference) / mean(other)
enum class RenormMethod { MassScale, ShiftOther, OpposedShift, AxisScale };

inline constexpr std::array<RenormMethod, 4> all_renorm_methods = {
    RenormMethod::MassScale, RenormMethod::ShiftOther, RenormMethod::OpposedShift, RenormMethod::AxisScale};

std::string_view to_string(RenormMethod method);
std::optional<RenormMethod> parse_renorm_method(std::string_view name);

/// True if `method` can be applied to distributions of `kind`. Ratio has a
/// logarithmic axis and only admits MassScale; Diff has no stretch.
constexpr bool admissible(FeatureKind kind, RenormMethod method)
{
    switch (method) {
    case RenormMethod::MassScale: return true;
    case RenormMethod::ShiftOther:
    case RenormMethod::OpposedShift: return kind != FeatureKind::Ratio;
    case RenormMethod::AxisScale: return kind == FeatureKind::Gray || kind == FeatureKind::AbsDiff;
    }
    return false;
}

struct RenormOutcome {
    Distribution reference; // changed only by OpposedShift
    Distribution adjusted;
    RenormMethod method;
    double residual_mean_gap; // |mean(reference) - mean(adjusted)|
    double clipped_mass;      // mass that landed past a domain edge and was clamped
};

/// Literal mass renormalization. Leaves any mean gap in place.
RenormOutcome renorm_mass(const Distribution& reference, const Distribution& other);

/// Translates `other` by mean(reference) - mean(other). A fractional shift
/// splits each bin's mass linearly between the two neighboring bins; mass
/// pushed past the domain collects in the edge bin. `other` is first scaled
/// to the reference's total mass.
RenormOutcome shift_to_mean(const Distribution& reference, const Distribution& other);

/// Shifts `a` by -delta/2 and `b` by +delta/2, delta = mean(a) - mean(b).
/// The outcome's reference is the shifted `a`, adjusted is the shifted `b`.
RenormOutcome opposed_shift(const Distribution& a, const Distribution& b);

/// Maps every level l of `other` to l * mean(reference) / mean(other),
/// depositing mass by linear interpolation. Gray and AbsDiff only.
/// Throws Error(ZeroMean) when mean(other) is zero but the means differ.
RenormOutcome axis_scale(const Distribution& reference, const Distribution& other);

RenormOutcome renormalize(RenormMethod method, const Distribution& reference, const Distribution& other);

/// Fractional translation by `delta` bins. Returns the shifted distribution
/// and the clipped mass.
std::pair<Distribution, double> shift_levels(const Distribution& d, double delta);

} // namespace ocy

#endif
