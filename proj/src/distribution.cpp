#include "ocy/distribution.hpp"

#include "ocy/error.hpp"

#include <cmath>
#include <string>

namespace ocy {

Distribution::Distribution(FeatureKind kind, std::vector<double> masses)
    : kind_(kind), masses_(std::move(masses))
{
    if (masses_.size() != bin_count(kind))
        throw Error(ErrorCode::InvalidDistribution,
                    "distribution of kind '" + std::string(to_string(kind)) + "' needs "
                        + std::to_string(bin_count(kind)) + " bins, got " + std::to_string(masses_.size()));
    double total = 0.0;
    for (double m : masses_) {
        if (!(m >= 0.0) || !std::isfinite(m))
            throw Error(ErrorCode::InvalidDistribution, "bin masses must be finite and non-negative");
        total += m;
    }
    if (!(total > 0.0))
        throw Error(ErrorCode::InvalidDistribution, "distribution has zero total mass");
}

std::vector<double> Distribution::bin_levels() const
{
    std::vector<double> levels(masses_.size());
    for (std::size_t b = 0; b < levels.size(); ++b)
        levels[b] = bin_level(kind_, b);
    return levels;
}

Distribution Distribution::scaled(double factor) const
{
    std::vector<double> out(masses_);
    for (double& m : out)
        m *= factor;
    return Distribution(kind_, std::move(out));
}

Distribution Distribution::uniform(FeatureKind kind)
{
    const std::size_t n = bin_count(kind);
    return Distribution(kind, std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

Distribution build(const FeatureStream& stream)
{
    if (stream.count() == 0)
        throw Error(ErrorCode::EmptyStream, "cannot build a distribution from an empty stream");
    std::vector<std::size_t> counts(bin_count(stream.kind), 0);
    for (std::uint16_t b : stream.bin_indices)
        ++counts.at(b);
    const double n = static_cast<double>(stream.count());
    std::vector<double> masses(counts.size());
    for (std::size_t b = 0; b < counts.size(); ++b)
        masses[b] = static_cast<double>(counts[b]) / n;
    return Distribution(stream.kind, std::move(masses));
}

double total_mass(const Distribution& d)
{
    double total = 0.0;
    for (double m : d.masses())
        total += m;
    return total;
}

double mean_level(const Distribution& d)
{
    double weighted = 0.0;
    double total = 0.0;
    for (std::size_t b = 0; b < d.size(); ++b) {
        weighted += bin_level(d.kind(), b) * d.mass(b);
        total += d.mass(b);
    }
    return weighted / total;
}

double entropy(const Distribution& d)
{
    const double total = total_mass(d);
    double s = 0.0;
    for (double m : d.masses()) {
        if (m == 0.0)
            continue;
        const double p = m / total;
        s -= p * std::log(p);
    }
    // a lone bin gives p == 1 exactly, but keep -0 out of reports
    return s == 0.0 ? 0.0 : s;
}

} // namespace ocy
