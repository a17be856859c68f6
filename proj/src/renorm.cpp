#include "ocy/renorm.hpp"

#include "ocy/error.hpp"

#include <cmath>
#include <string>

namespace ocy {

std::string_view to_string(RenormMethod method)
{
    switch (method) {
    case RenormMethod::MassScale: return "mass";
    case RenormMethod::ShiftOther: return "shift";
    case RenormMethod::OpposedShift: return "opposed";
    case RenormMethod::AxisScale: return "scale";
    }
    return "?";
}

std::optional<RenormMethod> parse_renorm_method(std::string_view name)
{
    for (RenormMethod m : all_renorm_methods)
        if (to_string(m) == name)
            return m;
    return std::nullopt;
}

namespace {

void require_same_kind(const Distribution& a, const Distribution& b)
{
    if (a.kind() != b.kind())
        throw Error(ErrorCode::KindMismatch, "cannot renormalize '" + std::string(to_string(a.kind()))
                                                 + "' against '" + std::string(to_string(b.kind())) + "'");
}

void require_admissible(FeatureKind kind, RenormMethod method)
{
    if (!admissible(kind, method))
        throw Error(ErrorCode::UnsupportedKind, "renorm method '" + std::string(to_string(method))
                                                    + "' does not apply to feature '"
                                                    + std::string(to_string(kind)) + "'");
}

// Deposits `mass` at fractional bin position `pos`, splitting linearly
// between floor(pos) and floor(pos) + 1. Returns the share that fell
// outside [0, n) and was clamped onto an edge bin.
double deposit(std::vector<double>& out, double pos, double mass)
{
    const double lo = std::floor(pos);
    const double frac = pos - lo;
    const auto last = static_cast<double>(out.size() - 1);
    double clipped = 0.0;
    const double parts[2] = {mass * (1.0 - frac), mass * frac};
    for (int k = 0; k < 2; ++k) {
        if (parts[k] == 0.0)
            continue;
        double bin = lo + k;
        if (bin < 0.0 || bin > last) {
            clipped += parts[k];
            bin = bin < 0.0 ? 0.0 : last;
        }
        out[static_cast<std::size_t>(bin)] += parts[k];
    }
    return clipped;
}

double mean_gap(const Distribution& a, const Distribution& b)
{
    return std::abs(mean_level(a) - mean_level(b));
}

Distribution match_mass(const Distribution& reference, const Distribution& other)
{
    const double factor = total_mass(reference) / total_mass(other);
    return factor == 1.0 ? other : other.scaled(factor);
}

} // namespace

std::pair<Distribution, double> shift_levels(const Distribution& d, double delta)
{
    // Split delta once so every bin sees the same fraction; an integral
    // delta is then an exact translation.
    const double whole = std::floor(delta);
    const double frac = delta - whole;
    std::vector<double> out(d.size(), 0.0);
    double clipped = 0.0;
    for (std::size_t b = 0; b < d.size(); ++b) {
        if (d.mass(b) == 0.0)
            continue;
        clipped += deposit(out, static_cast<double>(b) + whole + frac, d.mass(b));
    }
    return {Distribution(d.kind(), std::move(out)), clipped};
}

RenormOutcome renorm_mass(const Distribution& reference, const Distribution& other)
{
    require_same_kind(reference, other);
    Distribution adjusted = match_mass(reference, other);
    const double gap = mean_gap(reference, adjusted);
    return {reference, std::move(adjusted), RenormMethod::MassScale, gap, 0.0};
}

RenormOutcome shift_to_mean(const Distribution& reference, const Distribution& other)
{
    require_same_kind(reference, other);
    require_admissible(reference.kind(), RenormMethod::ShiftOther);
    const Distribution scaled = match_mass(reference, other);
    const double delta = mean_level(reference) - mean_level(scaled);
    auto [adjusted, clipped] = shift_levels(scaled, delta);
    const double gap = mean_gap(reference, adjusted);
    return {reference, std::move(adjusted), RenormMethod::ShiftOther, gap, clipped};
}

RenormOutcome opposed_shift(const Distribution& a, const Distribution& b)
{
    require_same_kind(a, b);
    require_admissible(a.kind(), RenormMethod::OpposedShift);
    const Distribution b_scaled = match_mass(a, b);
    const double delta = mean_level(a) - mean_level(b_scaled);
    auto [a_shifted, clipped_a] = shift_levels(a, -delta / 2.0);
    auto [b_shifted, clipped_b] = shift_levels(b_scaled, delta / 2.0);
    const double gap = mean_gap(a_shifted, b_shifted);
    return {std::move(a_shifted), std::move(b_shifted), RenormMethod::OpposedShift, gap, clipped_a + clipped_b};
}

RenormOutcome axis_scale(const Distribution& reference, const Distribution& other)
{
    require_same_kind(reference, other);
    require_admissible(reference.kind(), RenormMethod::AxisScale);
    const Distribution scaled = match_mass(reference, other);
    const double target = mean_level(reference);
    const double current = mean_level(scaled);
    if (current == 0.0 && target != 0.0)
        throw Error(ErrorCode::ZeroMean, "cannot stretch a distribution whose mean level is zero");
    const double factor = current == 0.0 ? 1.0 : target / current;

    std::vector<double> out(scaled.size(), 0.0);
    double clipped = 0.0;
    for (std::size_t b = 0; b < scaled.size(); ++b) {
        if (scaled.mass(b) == 0.0)
            continue;
        clipped += deposit(out, static_cast<double>(b) * factor, scaled.mass(b));
    }
    Distribution adjusted(scaled.kind(), std::move(out));
    const double gap = mean_gap(reference, adjusted);
    return {reference, std::move(adjusted), RenormMethod::AxisScale, gap, clipped};
}

RenormOutcome renormalize(RenormMethod method, const Distribution& reference, const Distribution& other)
{
    switch (method) {
    case RenormMethod::MassScale: return renorm_mass(reference, other);
    case RenormMethod::ShiftOther: return shift_to_mean(reference, other);
    case RenormMethod::OpposedShift: return opposed_shift(reference, other);
    case RenormMethod::AxisScale: return axis_scale(reference, other);
    }
    throw Error(ErrorCode::InvalidArgument, "unknown renorm method");
}

} // namespace ocy
