#include "ocy/order.hpp"

#include "ocy/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace ocy {

OrderValue lyapunov(const Distribution& f_ref, const Distribution& f_adj, double epsilon)
{
    if (f_ref.kind() != f_adj.kind())
        throw Error(ErrorCode::KindMismatch, "order functional needs distributions of the same kind");
    if (!(epsilon >= 0.0))
        throw Error(ErrorCode::InvalidArgument, "epsilon must be non-negative");
    const double ref_total = total_mass(f_ref);
    const double adj_total = total_mass(f_adj);
    if (std::abs(ref_total - adj_total) > mass_tolerance)
        throw Error(ErrorCode::MassMismatch, "total masses differ (" + std::to_string(ref_total) + " vs "
                                                 + std::to_string(adj_total) + "); renormalize first");

    OrderValue out;
    out.delta_s = entropy(f_ref) - entropy(f_adj);
    if (out.delta_s == 0.0)
        out.delta_s = 0.0;

    const double n = static_cast<double>(f_ref.size());
    const double smoothing_norm = 1.0 + n * epsilon;
    double kl = 0.0;
    double mismatch = 0.0;
    for (std::size_t b = 0; b < f_ref.size(); ++b) {
        const double p = f_ref.mass(b) / ref_total;
        if (p == 0.0)
            continue;
        const double q_raw = f_adj.mass(b) / adj_total;
        if (q_raw == 0.0)
            mismatch += p;
        const double q = epsilon > 0.0 ? (q_raw + epsilon) / smoothing_norm : q_raw;
        if (q == 0.0) {
            kl = std::numeric_limits<double>::infinity();
            continue;
        }
        if (std::isfinite(kl))
            kl += p * std::log(p / q);
    }
    out.kl = kl == 0.0 ? 0.0 : kl;
    out.support_mismatch_mass = mismatch;
    out.forms_agree = std::isfinite(out.kl) && std::abs(out.delta_s + out.kl) <= mass_tolerance;
    return out;
}

std::string_view to_string(ReferenceChoice ref)
{
    return ref == ReferenceChoice::First ? "first" : "second";
}

std::optional<ReferenceChoice> parse_reference_choice(std::string_view name)
{
    if (name == "first")
        return ReferenceChoice::First;
    if (name == "second")
        return ReferenceChoice::Second;
    return std::nullopt;
}

std::vector<Mode> all_modes()
{
    std::vector<Mode> modes;
    modes.reserve(32);
    for (FeatureKind f : all_feature_kinds)
        for (RenormMethod r : all_renorm_methods)
            for (ReferenceChoice c : {ReferenceChoice::First, ReferenceChoice::Second})
                modes.push_back({f, r, c});
    return modes;
}

bool admissible(const Mode& mode) { return admissible(mode.feature, mode.renorm); }

std::string to_string(const Mode& mode)
{
    return std::string(to_string(mode.feature)) + ":" + std::string(to_string(mode.renorm)) + ":"
        + std::string(to_string(mode.reference));
}

Mode parse_mode(std::string_view text)
{
    const auto bad = [&] {
        return Error(ErrorCode::InvalidArgument,
                     "malformed mode '" + std::string(text) + "', expected feature:renorm:reference");
    };
    const auto c1 = text.find(':');
    if (c1 == std::string_view::npos)
        throw bad();
    const auto c2 = text.find(':', c1 + 1);
    if (c2 == std::string_view::npos || text.find(':', c2 + 1) != std::string_view::npos)
        throw bad();
    const auto feature = parse_feature_kind(text.substr(0, c1));
    const auto renorm = parse_renorm_method(text.substr(c1 + 1, c2 - c1 - 1));
    const auto reference = parse_reference_choice(text.substr(c2 + 1));
    if (!feature || !renorm || !reference)
        throw bad();
    return {*feature, *renorm, *reference};
}

std::vector<Mode> parse_mode_list(std::string_view text)
{
    std::vector<Mode> modes;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = std::min(text.find(',', start), text.size());
        modes.push_back(parse_mode(text.substr(start, comma - start)));
        start = comma + 1;
    }
    return modes;
}

namespace {

// Per-image feature distributions, built once and shared by every mode.
class FeatureCache {
public:
    FeatureCache(const PixelGrid& grid, Traversal traversal) : seq_(linearize(grid, traversal)) {}

    const Distribution& get(FeatureKind kind)
    {
        auto& slot = slots_[static_cast<std::size_t>(kind)];
        if (!slot)
            slot = build(extract(seq_, kind));
        return *slot;
    }

private:
    PixelSequence seq_;
    std::optional<Distribution> slots_[4];
};

std::string inadmissible_reason(const Mode& mode)
{
    return "renorm '" + std::string(to_string(mode.renorm)) + "' is inadmissible for feature '"
        + std::string(to_string(mode.feature)) + "'";
}

// Throws on any failure.
ReportEntry evaluate_or_throw(FeatureCache& a, FeatureCache& b, const Mode& mode, double epsilon)
{
    if (!admissible(mode))
        throw Error(ErrorCode::UnsupportedKind, inadmissible_reason(mode));
    const Distribution& da = a.get(mode.feature);
    const Distribution& db = b.get(mode.feature);
    const bool first = mode.reference == ReferenceChoice::First;
    const RenormOutcome outcome = renormalize(mode.renorm, first ? da : db, first ? db : da);
    return {mode, lyapunov(outcome.reference, outcome.adjusted, epsilon), outcome.residual_mean_gap,
            outcome.clipped_mass, false, {}};
}

ReportEntry evaluate(FeatureCache& a, FeatureCache& b, const Mode& mode, double epsilon)
{
    if (!admissible(mode))
        return {mode, {}, 0.0, 0.0, true, inadmissible_reason(mode)};
    try {
        return evaluate_or_throw(a, b, mode, epsilon);
    } catch (const Error& e) {
        return {mode, {}, 0.0, 0.0, true, std::string(to_string(e.code())) + ": " + e.what()};
    }
}

void check_sizes(const PixelGrid& a, const PixelGrid& b, bool strict)
{
    if (strict && a.pixel_count() != b.pixel_count())
        throw Error(ErrorCode::SizeMismatch,
                    "strict comparison needs equal pixel counts: " + std::to_string(a.width()) + "x"
                        + std::to_string(a.height()) + " vs " + std::to_string(b.width()) + "x"
                        + std::to_string(b.height()));
}

} // namespace

ReportEntry evaluate_mode(const PixelGrid& a, const PixelGrid& b, const Mode& mode, double epsilon,
                          Traversal traversal)
{
    FeatureCache ca(a, traversal);
    FeatureCache cb(b, traversal);
    return evaluate_or_throw(ca, cb, mode, epsilon);
}

OrderReport compare(const PixelGrid& a, const PixelGrid& b, const CompareOptions& options)
{
    check_sizes(a, b, options.strict);
    if (!(options.epsilon >= 0.0))
        throw Error(ErrorCode::InvalidArgument, "epsilon must be non-negative");

    FeatureCache ca(a, options.traversal);
    FeatureCache cb(b, options.traversal);

    OrderReport report;
    report.epsilon = options.epsilon;
    report.strict = options.strict;
    for (const Mode& mode : all_modes()) {
        const bool selected = !options.modes
            || std::find(options.modes->begin(), options.modes->end(), mode) != options.modes->end();
        if (!selected) {
            report.entries.push_back({mode, {}, 0.0, 0.0, true, "mode not selected"});
            continue;
        }
        report.entries.push_back(evaluate(ca, cb, mode, options.epsilon));
    }
    report.headline = evaluate(ca, cb, headline_mode, options.epsilon);
    return report;
}

double headline_ocy(const OrderReport& report) { return report.headline.value.delta_s; }

} // namespace ocy
