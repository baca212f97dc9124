#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "radius/bootstrap.hpp"
#include "radius/errors.hpp"
#include "radius/model.hpp"
#include "radius/rng.hpp"

namespace radius {

/// The set of options statistically tied with the highest-voted human option.
/// Membership is direct overlap with the anchor's confidence interval, not
/// transitive chaining.
struct TopGroup {
    std::size_t anchor_index = 0;
    std::vector<std::size_t> member_indices;  // sorted ascending
    std::vector<ConfidenceInterval> intervals;

    bool contains(std::size_t index) const {
        return std::binary_search(member_indices.begin(), member_indices.end(), index);
    }
};

/// Builds the top option group for the human distribution. The anchor is the
/// lowest-index option with the maximum observed count; options whose exact
/// count equals the maximum are members outright, and any option whose
/// bootstrap CI overlaps the anchor's CI joins as well.
inline TopGroup top_group(const ResponseDistribution& human, RngStream& rng, int n_boot,
                          double level) {
    TopGroup group;
    group.intervals = bootstrap_proportion_cis(rng, human.counts, n_boot, level);

    const std::int64_t max_count = *std::max_element(human.counts.begin(), human.counts.end());
    group.anchor_index = static_cast<std::size_t>(
        std::find(human.counts.begin(), human.counts.end(), max_count) - human.counts.begin());

    const ConfidenceInterval& anchor_ci = group.intervals[group.anchor_index];
    for (std::size_t i = 0; i < human.counts.size(); ++i) {
        const bool exact_tie = human.counts[i] == max_count;
        const bool overlaps = group.intervals[i].lower <= anchor_ci.upper &&
                              anchor_ci.lower <= group.intervals[i].upper;
        if (exact_tie || overlaps) {
            group.member_indices.push_back(i);
        }
    }
    return group;
}

/// Top Rank Match: 1 iff the agent's most frequent option falls inside the
/// human top group. Ties for the agent maximum count as a match if any tied
/// index is in the group.
inline int trm(const ResponseDistribution& human, const ResponseDistribution& agent,
               const TopGroup& group) {
    if (human.size() != agent.size()) {
        throw ValidationError("trm: human and agent must have the same number of options");
    }
    const std::int64_t max_count = *std::max_element(agent.counts.begin(), agent.counts.end());
    for (std::size_t i = 0; i < agent.counts.size(); ++i) {
        if (agent.counts[i] == max_count && group.contains(i)) {
            return 1;
        }
    }
    return 0;
}

struct RankCorrelation {
    double rc_raw = 0.0;
    double rc_norm = 0.5;
    /// True when one side has all counts equal (zero rank variance); rc_raw
    /// is then reported as 0 instead of being undefined.
    bool degenerate = false;
};

/// Spearman correlation of the two option rankings, computed as the Pearson
/// correlation of midrank vectors. This is the tie-correct generalization of
/// RC = 1 - 6*sum(d^2) / (n(n^2-1)), and equals it exactly on tie-free input.
/// rc_norm maps [-1, 1] to [0, 1].
inline RankCorrelation rank_correlation(const ResponseDistribution& human,
                                        const ResponseDistribution& agent) {
    if (human.size() != agent.size()) {
        throw ValidationError("rank_correlation: human and agent must have the same number of options");
    }
    const RankVector rh = rank_counts(human.counts);
    const RankVector ra = rank_counts(agent.counts);
    const std::size_t k = rh.size();

    const double mean = (static_cast<double>(k) + 1.0) / 2.0;  // rank conservation
    double cov = 0.0, var_h = 0.0, var_a = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        const double dh = rh[i] - mean;
        const double da = ra[i] - mean;
        cov += dh * da;
        var_h += dh * dh;
        var_a += da * da;
    }
    if (var_h == 0.0 || var_a == 0.0) {
        return {0.0, 0.5, true};
    }
    double rc = cov / std::sqrt(var_h * var_a);
    rc = std::clamp(rc, -1.0, 1.0);
    return {rc, (rc + 1.0) / 2.0, false};
}

struct RankingScores {
    int trm = 0;
    double rc_raw = 0.0;
    double rc_norm = 0.5;
    bool rc_degenerate = false;
    TopGroup top_group;
};

}  // namespace radius
