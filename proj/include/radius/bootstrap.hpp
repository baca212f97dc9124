#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "radius/errors.hpp"
#include "radius/model.hpp"
#include "radius/rng.hpp"

namespace radius {

struct ConfidenceInterval {
    double lower = 0.0;
    double upper = 0.0;
    double level = 0.0;
};

/// Empirical quantile with linear interpolation between order statistics
/// (R type 7). Input must be sorted ascending and non-empty.
inline double quantile_sorted(const std::vector<double>& sorted, double q) {
    const double h = static_cast<double>(sorted.size() - 1) * q;
    const auto lo = static_cast<std::size_t>(h);
    if (lo + 1 >= sorted.size()) {
        return sorted.back();
    }
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

/// Percentile-bootstrap confidence intervals for each option's proportion:
/// resample n_boot multinomial draws of the observed total with p = observed
/// proportions, then take the empirical [(1-level)/2, 1-(1-level)/2]
/// quantiles per option.
inline std::vector<ConfidenceInterval> bootstrap_proportion_cis(RngStream& rng,
                                                                const std::vector<std::int64_t>& counts,
                                                                int n_boot, double level) {
    if (n_boot < 2) {
        throw ValidationError("bootstrap requires n_boot >= 2");
    }
    if (!(level > 0.0 && level < 1.0)) {
        throw ValidationError("bootstrap requires 0 < level < 1");
    }
    const ResponseDistribution observed = to_distribution(counts);
    const std::size_t k = observed.size();
    const double inv_total = 1.0 / static_cast<double>(observed.total);

    std::vector<std::vector<double>> draws(k, std::vector<double>(static_cast<std::size_t>(n_boot)));
    for (int b = 0; b < n_boot; ++b) {
        const auto sample = multinomial_sample(rng, observed.total, observed.proportions);
        for (std::size_t i = 0; i < k; ++i) {
            draws[i][static_cast<std::size_t>(b)] = static_cast<double>(sample[i]) * inv_total;
        }
    }

    const double tail = (1.0 - level) / 2.0;
    std::vector<ConfidenceInterval> cis(k);
    for (std::size_t i = 0; i < k; ++i) {
        std::sort(draws[i].begin(), draws[i].end());
        cis[i].lower = quantile_sorted(draws[i], tail);
        cis[i].upper = quantile_sorted(draws[i], 1.0 - tail);
        cis[i].level = level;
    }
    return cis;
}

}  // namespace radius
