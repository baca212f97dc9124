#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "radius/errors.hpp"
#include "radius/model.hpp"
#include "radius/special_functions.hpp"

namespace radius {

namespace detail {

inline void require_same_k(const ResponseDistribution& a, const ResponseDistribution& b,
                           const char* op) {
    if (a.size() != b.size()) {
        throw ValidationError(std::string(op) + ": human and agent must have the same number of options");
    }
}

struct Chi2Table {
    double statistic = 0.0;
    int df = 0;
    double n = 0.0;  // grand total
    double min_expected = std::numeric_limits<double>::infinity();
    bool degenerate = false;
};

// Plain chi-square statistic on the 2 x k human/agent contingency table.
// Columns empty in both rows are dropped (they contribute 0/0); no Yates
// correction; df = columns_after_drop - 1.
inline Chi2Table chi2_homogeneity(const ResponseDistribution& human,
                                  const ResponseDistribution& agent) {
    require_same_k(human, agent, "chi2_homogeneity");
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < human.size(); ++i) {
        if (human.counts[i] + agent.counts[i] > 0) {
            kept.push_back(i);
        }
    }

    Chi2Table result;
    result.n = static_cast<double>(human.total + agent.total);
    if (kept.size() < 2) {
        result.degenerate = true;
        result.min_expected = 0.0;
        return result;
    }

    const double row_h = static_cast<double>(human.total);
    const double row_a = static_cast<double>(agent.total);
    double statistic = 0.0;
    for (std::size_t i : kept) {
        const double col = static_cast<double>(human.counts[i] + agent.counts[i]);
        const double eh = row_h * col / result.n;
        const double ea = row_a * col / result.n;
        const double dh = static_cast<double>(human.counts[i]) - eh;
        const double da = static_cast<double>(agent.counts[i]) - ea;
        statistic += dh * dh / eh + da * da / ea;
        result.min_expected = std::min({result.min_expected, eh, ea});
    }
    result.statistic = statistic;
    result.df = static_cast<int>(kept.size()) - 1;
    return result;
}

}  // namespace detail

/// Total variation distance: half the L1 distance between proportion
/// vectors; the minimum probability mass that must move to equate them.
inline double tvd(const ResponseDistribution& human, const ResponseDistribution& agent) {
    detail::require_same_k(human, agent, "tvd");
    double sum = 0.0;
    for (std::size_t i = 0; i < human.size(); ++i) {
        sum += std::fabs(human.proportions[i] - agent.proportions[i]);
    }
    return 0.5 * sum;
}

struct HomogeneityResult {
    int dh = 1;  // 1 = distributions statistically indistinguishable at alpha
    double p_value = 1.0;
    double statistic = 0.0;
    int df = 0;
    bool degenerate = false;
    double min_expected = 0.0;
};

/// Chi-square test of homogeneity on the 2 x k count table. dh = 1 when
/// p >= alpha. Fewer than 2 non-empty columns is degenerate: the test is
/// vacuous and reports dh=1, p=1, statistic=0, df=0 with the flag set.
inline HomogeneityResult homogeneity_test(const ResponseDistribution& human,
                                          const ResponseDistribution& agent, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw ValidationError("homogeneity_test requires 0 < alpha < 1");
    }
    const auto table = detail::chi2_homogeneity(human, agent);
    HomogeneityResult result;
    result.degenerate = table.degenerate;
    result.min_expected = table.degenerate ? 0.0 : table.min_expected;
    if (table.degenerate) {
        return result;
    }
    result.statistic = table.statistic;
    result.df = table.df;
    result.p_value = chi_square_sf(table.statistic, static_cast<double>(table.df));
    result.dh = result.p_value >= alpha ? 1 : 0;
    return result;
}

/// Cramér's V on the same 2 x k table: sqrt(chi2 / (N * (min(2,k)-1))) =
/// sqrt(chi2 / N). Lower values mean closer distributions. Degenerate
/// tables give 0.
inline double cramers_v(const ResponseDistribution& human, const ResponseDistribution& agent) {
    const auto table = detail::chi2_homogeneity(human, agent);
    if (table.degenerate) {
        return 0.0;
    }
    return std::sqrt(table.statistic / table.n);
}

/// Jensen-Shannon divergence with natural logarithm: 0.5*KL(H||M) +
/// 0.5*KL(A||M) with M the midpoint distribution. Zero-probability entries
/// contribute zero. Range [0, ln 2].
inline double jsd(const ResponseDistribution& human, const ResponseDistribution& agent) {
    detail::require_same_k(human, agent, "jsd");
    double sum = 0.0;
    for (std::size_t i = 0; i < human.size(); ++i) {
        const double h = human.proportions[i];
        const double a = agent.proportions[i];
        const double m = 0.5 * (h + a);
        if (h > 0.0) {
            sum += 0.5 * h * std::log(h / m);
        }
        if (a > 0.0) {
            sum += 0.5 * a * std::log(a / m);
        }
    }
    return std::max(sum, 0.0);
}

/// 1-D Wasserstein (earth mover's) distance over option indices with unit
/// spacing: the sum of absolute CDF differences. Assumes option order is
/// ordinal.
inline double wasserstein_1d(const ResponseDistribution& human, const ResponseDistribution& agent) {
    detail::require_same_k(human, agent, "wasserstein_1d");
    double cdf_h = 0.0, cdf_a = 0.0, sum = 0.0;
    for (std::size_t i = 0; i + 1 < human.size(); ++i) {
        cdf_h += human.proportions[i];
        cdf_a += agent.proportions[i];
        sum += std::fabs(cdf_h - cdf_a);
    }
    return sum;
}

struct DistributionScores {
    double tvd = 0.0;
    int dh = 1;
    double dh_p_value = 1.0;
    double dh_statistic = 0.0;
    int dh_df = 0;
    bool dh_degenerate = false;
    double cv = 0.0;
    double jsd = 0.0;
    double wd = 0.0;
};

}  // namespace radius
