#ifndef OCY_ORDER_HPP
#define OCY_ORDER_HPP

#include "ocy/distribution.hpp"
#include "ocy/ingest.hpp"
#include "ocy/renorm.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ocy {

inline constexpr double mass_tolerance = 1e-9;

/// Both forms of the order functional for a renormalized pair.
struct OrderValue {
    /// S(ref) - S(adj) in nats. Positive: the adjusted (second) distribution
    /// has lower entropy, i.e. the second image is more ordered.
    double delta_s = 0.0;
    /// sum over ref > 0 of p ln(p / q); +infinity on support mismatch when
    /// epsilon == 0.
    double kl = 0.0;
    /// |delta_s - (-kl)| <= 1e-9, i.e. the entropy-difference form equals the
    /// printed divergence form -sum p ln(p/q). Only guaranteed for identical
    /// inputs.
    bool forms_agree = true;
    /// Reference mass sitting on bins where the adjusted distribution is zero.
    double support_mismatch_mass = 0.0;
};

/// Evaluates the functional. Both inputs are normalized to unit mass before
/// the sums; epsilon > 0 smooths the adjusted side as (q + eps) / (1 + n eps)
/// with n the bin count of the kind. Throws Error(KindMismatch) and
/// Error(MassMismatch) when total masses differ by more than 1e-9 (the
/// caller forgot to renormalize).
OrderValue lyapunov(const Distribution& f_ref, const Distribution& f_adj, double epsilon = 0.0);

enum class ReferenceChoice { First, Second };

std::string_view to_string(ReferenceChoice ref);
std::optional<ReferenceChoice> parse_reference_choice(std::string_view name);

struct Mode {
    FeatureKind feature;
    RenormMethod renorm;
    ReferenceChoice reference;

    friend bool operator==(const Mode&, const Mode&) = default;
};

inline constexpr Mode headline_mode{FeatureKind::Gray, RenormMethod::MassScale, ReferenceChoice::First};

/// 4 features x 4 renorm methods x 2 reference choices, feature-major.
std::vector<Mode> all_modes();

bool admissible(const Mode& mode);

/// "gray:mass:first"
std::string to_string(const Mode& mode);
/// Parses one "feature:renorm:reference" triple; throws Error(InvalidArgument).
Mode parse_mode(std::string_view text);
/// Comma-separated list of triples.
std::vector<Mode> parse_mode_list(std::string_view text);

struct ImageId {
    std::string path;
    std::string sha256;
};

struct ReportEntry {
    Mode mode;
    OrderValue value;
    double residual_mean_gap = 0.0;
    double clipped_mass = 0.0;
    bool skipped = false;
    std::string skip_reason;
};

/// Clipped mass above this is flagged in reports: the equal-mean premise
/// only holds approximately.
inline constexpr double clipped_mass_warning = 0.01;

struct OrderReport {
    ImageId image_a;
    ImageId image_b;
    double epsilon = 0.0;
    bool strict = true;
    /// Always 32 rows in all_modes() order.
    std::vector<ReportEntry> entries;
    ReportEntry headline;
};

struct CompareOptions {
    /// nullopt selects every mode. Unselected modes are reported as skipped.
    std::optional<std::vector<Mode>> modes;
    double epsilon = 0.0;
    /// Strict comparison requires equal pixel counts.
    bool strict = true;
    Traversal traversal = Traversal::Boustrophedon;
};

/// Runs the mode matrix on one image pair. Throws Error(SizeMismatch) in
/// strict mode; per-mode failures become skipped entries.
OrderReport compare(const PixelGrid& a, const PixelGrid& b, const CompareOptions& options = {});

/// Evaluates one mode on a pair. Throws whatever the renorm step throws.
ReportEntry evaluate_mode(const PixelGrid& a, const PixelGrid& b, const Mode& mode, double epsilon,
                          Traversal traversal = Traversal::Boustrophedon);

double headline_ocy(const OrderReport& report);

} // namespace ocy

#endif
