#ifndef OCY_DISTRIBUTION_HPP
#define OCY_DISTRIBUTION_HPP

#include "ocy/features.hpp"

#include <span>
#include <vector>

namespace ocy {

/// Binned empirical density over a feature domain. Masses are reals, not
/// counts, so mass rescaling and fractional shifts share one representation.
/// Invariants: one mass per bin of the kind, all masses >= 0, total > 0.
class Distribution {
public:
    /// Throws Error(InvalidDistribution) if the invariants do not hold.
    Distribution(FeatureKind kind, std::vector<double> masses);

    FeatureKind kind() const noexcept { return kind_; }
    std::span<const double> masses() const noexcept { return masses_; }
    double mass(std::size_t bin) const { return masses_[bin]; }
    std::size_t size() const noexcept { return masses_.size(); }

    /// Level of each bin, strictly increasing (see bin_level()).
    std::vector<double> bin_levels() const;

    Distribution scaled(double factor) const;

    /// Uniform density over every bin of the kind.
    static Distribution uniform(FeatureKind kind);

    friend bool operator==(const Distribution&, const Distribution&) = default;

private:
    FeatureKind kind_;
    std::vector<double> masses_;
};

/// Unit-mass histogram of the stream. Throws Error(EmptyStream).
Distribution build(const FeatureStream& stream);

/// Sum of masses in bin order.
double total_mass(const Distribution& d);

double mean_level(const Distribution& d);

/// Gibbs-Shannon entropy in nats of the unit-normalized masses, with
/// 0 ln 0 taken as 0.
double entropy(const Distribution& d);

} // namespace ocy

#endif
