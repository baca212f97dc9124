#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "radius/errors.hpp"

namespace radius {

/// A count vector over k response options with its derived proportions.
/// Counts are the source of truth; proportions are always counts[i] / total.
struct ResponseDistribution {
    std::vector<std::int64_t> counts;
    std::int64_t total = 0;
    std::vector<double> proportions;

    std::size_t size() const { return counts.size(); }
};

inline ResponseDistribution to_distribution(const std::vector<std::int64_t>& counts) {
    std::int64_t total = 0;
    for (auto c : counts) {
        if (c < 0) {
            throw ValidationError("counts must be non-negative");
        }
        total += c;
    }
    if (total < 1) {
        throw ValidationError("empty distribution: counts sum to zero");
    }
    ResponseDistribution dist;
    dist.counts = counts;
    dist.total = total;
    dist.proportions.resize(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i) {
        dist.proportions[i] = static_cast<double>(counts[i]) / static_cast<double>(total);
    }
    return dist;
}

/// Ranks over options, 1 = most-chosen. Tied counts receive the average of
/// the ranks they span (midranks), so sum(ranks) == k(k+1)/2 always holds.
using RankVector = std::vector<double>;

inline RankVector rank_counts(const std::vector<std::int64_t>& counts) {
    const std::size_t k = counts.size();
    if (k < 2) {
        throw ValidationError("rank_counts requires at least 2 options");
    }
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return counts[a] > counts[b]; });

    RankVector ranks(k);
    std::size_t i = 0;
    while (i < k) {
        std::size_t j = i;
        while (j + 1 < k && counts[order[j + 1]] == counts[order[i]]) {
            ++j;
        }
        const double avg = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (std::size_t m = i; m <= j; ++m) {
            ranks[order[m]] = avg;
        }
        i = j + 1;
    }
    return ranks;
}

/// One survey question: ordered option labels plus paired human and agent
/// response counts. Option order is positional and authoritative; labels are
/// display-only metadata.
struct QuestionRecord {
    std::string question_id;
    std::string text;  // empty = absent
    std::vector<std::string> options;
    std::vector<std::int64_t> human_counts;
    std::vector<std::int64_t> agent_counts;

    std::size_t option_count() const { return options.size(); }

    ResponseDistribution human() const { return to_distribution(human_counts); }
    ResponseDistribution agent() const { return to_distribution(agent_counts); }

    void validate() const {
        const std::string who = question_id.empty() ? std::string("<unnamed>") : question_id;
        if (options.size() < 2) {
            throw ValidationError("question " + who + ": needs at least 2 options");
        }
        if (human_counts.size() != options.size() || agent_counts.size() != options.size()) {
            throw ValidationError("question " + who +
                                  ": options, human_counts and agent_counts must have equal length");
        }
        std::int64_t human_total = 0, agent_total = 0;
        for (std::size_t i = 0; i < options.size(); ++i) {
            if (human_counts[i] < 0 || agent_counts[i] < 0) {
                throw ValidationError("question " + who + ": counts must be non-negative");
            }
            human_total += human_counts[i];
            agent_total += agent_counts[i];
        }
        if (human_total < 1) {
            throw ValidationError("question " + who + ": human_counts sum to zero");
        }
        if (agent_total < 1) {
            throw ValidationError("question " + who + ": agent_counts sum to zero");
        }
    }
};

struct Survey {
    std::string survey_id;
    std::vector<QuestionRecord> questions;
    /// Compact JSON blob describing how agent_counts were generated (written
    /// by the baseline command); empty when not applicable.
    std::string generator_json;

    void validate() const {
        std::vector<std::string> seen;
        for (const auto& q : questions) {
            q.validate();
            if (std::find(seen.begin(), seen.end(), q.question_id) != seen.end()) {
                throw ValidationError("duplicate question_id: " + q.question_id);
            }
            seen.push_back(q.question_id);
        }
    }
};

}  // namespace radius
