#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "radius/errors.hpp"
#include "radius/model.hpp"
#include "radius/rng.hpp"

namespace radius {

enum class BaselineKind { kUniform, kDirichlet, kNormal };
enum class NormalMeanMode { kMidpoint, kHumanMean };

inline const char* to_string(BaselineKind kind) {
    switch (kind) {
        case BaselineKind::kUniform: return "uniform";
        case BaselineKind::kDirichlet: return "dirichlet";
        case BaselineKind::kNormal: return "normal";
    }
    return "?";
}

inline const char* to_string(NormalMeanMode mode) {
    return mode == NormalMeanMode::kMidpoint ? "midpoint" : "human_mean";
}

/// Configuration for the non-parametric baseline generators.
struct BaselineSpec {
    BaselineKind kind = BaselineKind::kUniform;
    /// Number of simulated agents per question; unset = match the question's
    /// human total (keeps the homogeneity test's sample sizes comparable).
    std::optional<std::int64_t> n_agents;
    double dirichlet_alpha = 1.0;
    NormalMeanMode normal_mean_mode = NormalMeanMode::kMidpoint;
    double normal_std_factor = 0.25;  // std = factor * k

    void validate() const {
        if (n_agents && *n_agents < 1) {
            throw ValidationError("baseline n_agents must be >= 1");
        }
        if (!(dirichlet_alpha > 0.0)) {
            throw ValidationError("baseline dirichlet_alpha must be > 0");
        }
        if (!(normal_std_factor > 0.0)) {
            throw ValidationError("baseline normal_std_factor must be > 0");
        }
    }
};

/// Draws baseline agent counts for one question. The output always sums to
/// the effective agent total.
///   uniform:   one multinomial draw with p_i = 1/k.
///   dirichlet: p ~ Dirichlet(alpha * 1_k), then one multinomial draw.
///   normal:    each agent draws x ~ Normal(mu, std_factor * k) and selects
///              round(x) clipped to [0, k-1]; mu is the index midpoint
///              (k-1)/2 or the human mean index.
inline std::vector<std::int64_t> generate_baseline(const BaselineSpec& spec,
                                                   const QuestionRecord& question,
                                                   RngStream& rng) {
    spec.validate();
    question.validate();
    const std::size_t k = question.option_count();
    const auto human = question.human();
    const std::int64_t n_agents = spec.n_agents.value_or(human.total);

    switch (spec.kind) {
        case BaselineKind::kUniform: {
            const std::vector<double> p(k, 1.0 / static_cast<double>(k));
            return multinomial_sample(rng, n_agents, p);
        }
        case BaselineKind::kDirichlet: {
            const auto p = dirichlet_sample(rng, spec.dirichlet_alpha, k);
            return multinomial_sample(rng, n_agents, p);
        }
        case BaselineKind::kNormal: {
            double mu = (static_cast<double>(k) - 1.0) / 2.0;
            if (spec.normal_mean_mode == NormalMeanMode::kHumanMean) {
                mu = 0.0;
                for (std::size_t i = 0; i < k; ++i) {
                    mu += static_cast<double>(i) * human.proportions[i];
                }
            }
            const double sigma = spec.normal_std_factor * static_cast<double>(k);
            std::vector<std::int64_t> counts(k, 0);
            const auto max_index = static_cast<double>(k - 1);
            for (std::int64_t agent = 0; agent < n_agents; ++agent) {
                const double x = mu + sigma * rng.next_normal();
                const double idx = std::clamp(std::round(x), 0.0, max_index);
                ++counts[static_cast<std::size_t>(idx)];
            }
            return counts;
        }
    }
    throw ValidationError("unknown baseline kind");
}

}  // namespace radius
