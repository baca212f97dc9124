#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <future>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "radius/distribution.hpp"
#include "radius/errors.hpp"
#include "radius/model.hpp"
#include "radius/ranking.hpp"
#include "radius/rng.hpp"
#include "radius/special_functions.hpp"
#include "radius/version.hpp"

namespace radius {

/// Canonical metric order used in reports and comparisons.
inline const std::vector<std::string>& all_metric_names() {
    static const std::vector<std::string> names = {"trm", "rc_norm", "tvd", "dh",
                                                   "cv",  "jsd",     "wd"};
    return names;
}

inline bool is_higher_better(const std::string& metric) {
    return metric == "trm" || metric == "rc_norm" || metric == "dh";
}

struct RunConfig {
    std::uint64_t seed = 42;
    int n_boot = 1000;
    double ci_level = 0.95;
    double alpha = 0.05;
    /// Metrics to aggregate into survey means; empty = all. Per-question
    /// detail is always computed in full.
    std::vector<std::string> metrics;
    /// When true, questions with degenerate ranks are left out of the rc_norm
    /// mean instead of contributing the 0.5 fallback.
    bool exclude_degenerate_rc = false;
    /// Worker threads for question evaluation. Results are independent of
    /// this value; it never appears in report metadata.
    int n_threads = 1;

    void validate() const {
        if (n_boot < 2) {
            throw ValidationError("n_boot must be >= 2");
        }
        if (!(ci_level > 0.0 && ci_level < 1.0)) {
            throw ValidationError("ci_level must be in (0, 1)");
        }
        if (!(alpha > 0.0 && alpha < 1.0)) {
            throw ValidationError("alpha must be in (0, 1)");
        }
        if (n_threads < 1) {
            throw ValidationError("threads must be >= 1");
        }
        for (const auto& m : metrics) {
            const auto& known = all_metric_names();
            if (std::find(known.begin(), known.end(), m) == known.end()) {
                throw ValidationError("unknown metric: " + m);
            }
        }
    }

    std::vector<std::string> selected_metrics() const {
        if (metrics.empty()) {
            return all_metric_names();
        }
        std::vector<std::string> out;  // canonical order, duplicates dropped
        for (const auto& name : all_metric_names()) {
            if (std::find(metrics.begin(), metrics.end(), name) != metrics.end()) {
                out.push_back(name);
            }
        }
        return out;
    }
};

struct QuestionAlignment {
    std::string question_id;
    RankingScores ranking;
    DistributionScores distribution;
    std::vector<std::string> warnings;
};

/// Per-question value of a named metric, as aggregated into survey means.
inline double metric_value(const QuestionAlignment& qa, const std::string& metric) {
    if (metric == "trm") return static_cast<double>(qa.ranking.trm);
    if (metric == "rc_norm") return qa.ranking.rc_norm;
    if (metric == "tvd") return qa.distribution.tvd;
    if (metric == "dh") return static_cast<double>(qa.distribution.dh);
    if (metric == "cv") return qa.distribution.cv;
    if (metric == "jsd") return qa.distribution.jsd;
    if (metric == "wd") return qa.distribution.wd;
    throw ValidationError("unknown metric: " + metric);
}

struct RunMeta {
    std::uint64_t seed = 42;
    int n_boot = 1000;
    double ci_level = 0.95;
    double alpha = 0.05;
    std::string jsd_log_base = "natural";
    std::string rng_algorithm = RngStream::kAlgorithmId;
    std::string tool_version = kVersion;
    std::vector<std::string> metrics;
    bool exclude_degenerate_rc = false;
    /// Compact JSON describing the baseline generator when the evaluated
    /// agent counts came from one; empty otherwise.
    std::string baseline_generator;
};

struct SurveyReport {
    std::string survey_id;
    std::size_t n_questions = 0;
    std::map<std::string, double> means;
    std::vector<QuestionAlignment> per_question;
    RunMeta run_meta;
};

/// Evaluates one question against the full metric set. The RNG substream is
/// derived from (master seed, question_id), so results do not depend on
/// evaluation order.
inline QuestionAlignment evaluate_question(const QuestionRecord& question, const RunConfig& config,
                                           const RngStream& master) {
    question.validate();
    RngStream rng = master.substream(question.question_id);
    const auto human = question.human();
    const auto agent = question.agent();

    QuestionAlignment qa;
    qa.question_id = question.question_id;

    qa.ranking.top_group = top_group(human, rng, config.n_boot, config.ci_level);
    qa.ranking.trm = trm(human, agent, qa.ranking.top_group);
    const auto rc = rank_correlation(human, agent);
    qa.ranking.rc_raw = rc.rc_raw;
    qa.ranking.rc_norm = rc.rc_norm;
    qa.ranking.rc_degenerate = rc.degenerate;

    qa.distribution.tvd = tvd(human, agent);
    const auto ht = homogeneity_test(human, agent, config.alpha);
    qa.distribution.dh = ht.dh;
    qa.distribution.dh_p_value = ht.p_value;
    qa.distribution.dh_statistic = ht.statistic;
    qa.distribution.dh_df = ht.df;
    qa.distribution.dh_degenerate = ht.degenerate;
    qa.distribution.cv = cramers_v(human, agent);
    qa.distribution.jsd = jsd(human, agent);
    qa.distribution.wd = wasserstein_1d(human, agent);

    if (rc.degenerate) {
        qa.warnings.push_back("degenerate ranks: one side has all counts equal; rc_raw reported as 0");
    }
    if (ht.degenerate) {
        qa.warnings.push_back("homogeneity test degenerate: fewer than 2 non-empty options");
    } else if (ht.min_expected < 5.0) {
        char buf[128];
        std::snprintf(buf, sizeof(buf),
                      "low expected count: minimum expected cell count %.2f is below 5", ht.min_expected);
        qa.warnings.emplace_back(buf);
    }
    if (question.option_count() >= 3) {
        qa.warnings.push_back("wd treats option order as ordinal with unit spacing");
    }
    return qa;
}

/// Evaluates every question and aggregates survey-level means. Question
/// evaluation may run on config.n_threads workers; output is byte-identical
/// for any thread count.
inline SurveyReport evaluate_survey(const Survey& survey, const RunConfig& config) {
    config.validate();
    survey.validate();
    if (survey.questions.empty()) {
        throw ValidationError("survey has no questions");
    }

    const RngStream master(config.seed);
    const std::size_t n = survey.questions.size();
    std::vector<QuestionAlignment> per_question(n);

    const int threads = std::min<int>(config.n_threads, static_cast<int>(n));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            per_question[i] = evaluate_question(survey.questions[i], config, master);
        }
    } else {
        std::vector<std::future<void>> workers;
        workers.reserve(static_cast<std::size_t>(threads));
        for (int w = 0; w < threads; ++w) {
            workers.push_back(std::async(std::launch::async, [&, w]() {
                for (std::size_t i = static_cast<std::size_t>(w); i < n;
                     i += static_cast<std::size_t>(threads)) {
                    per_question[i] = evaluate_question(survey.questions[i], config, master);
                }
            }));
        }
        for (auto& f : workers) {
            f.get();
        }
    }

    SurveyReport report;
    report.survey_id = survey.survey_id;
    report.n_questions = n;
    report.per_question = std::move(per_question);
    report.run_meta.seed = config.seed;
    report.run_meta.n_boot = config.n_boot;
    report.run_meta.ci_level = config.ci_level;
    report.run_meta.alpha = config.alpha;
    report.run_meta.metrics = config.selected_metrics();
    report.run_meta.exclude_degenerate_rc = config.exclude_degenerate_rc;
    report.run_meta.baseline_generator = survey.generator_json;

    for (const auto& metric : report.run_meta.metrics) {
        double sum = 0.0;
        std::size_t count = 0;
        for (const auto& qa : report.per_question) {
            if (metric == "rc_norm" && config.exclude_degenerate_rc && qa.ranking.rc_degenerate) {
                continue;
            }
            sum += metric_value(qa, metric);
            ++count;
        }
        report.means[metric] = count > 0 ? sum / static_cast<double>(count) : 0.5;
    }
    return report;
}

struct PairedTResult {
    double mean_diff = 0.0;
    double t_statistic = 0.0;
    int df = 0;
    double p_value = 1.0;
    bool zero_variance = false;
};

/// Paired t-test on per-question score differences d_i = a_i - b_i, with
/// sample standard deviation (n-1 denominator). Zero-variance differences
/// make t undefined; we report t = 0 with p = 1 when the mean difference is
/// zero, else p = 0, and set the flag. Differences whose sd is below 1e-12
/// of the mean's scale count as zero variance (a constant shift between
/// scores rarely subtracts to bit-identical doubles).
inline PairedTResult paired_t_test(const std::vector<double>& scores_a,
                                   const std::vector<double>& scores_b) {
    if (scores_a.size() != scores_b.size()) {
        throw ValidationError("paired_t_test: score vectors must have equal length");
    }
    const std::size_t n = scores_a.size();
    if (n < 2) {
        throw ValidationError("paired_t_test requires at least 2 paired scores");
    }

    PairedTResult result;
    result.df = static_cast<int>(n) - 1;
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mean += scores_a[i] - scores_b[i];
    }
    mean /= static_cast<double>(n);
    result.mean_diff = mean;

    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = scores_a[i] - scores_b[i] - mean;
        ss += d * d;
    }
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    if (sd <= 1e-12 * std::max(1.0, std::fabs(mean))) {
        result.zero_variance = true;
        result.t_statistic = 0.0;
        result.p_value = mean == 0.0 ? 1.0 : 0.0;
        return result;
    }
    result.t_statistic = mean / (sd / std::sqrt(static_cast<double>(n)));
    result.p_value = student_t_sf2(result.t_statistic, static_cast<double>(result.df));
    return result;
}

struct PairedComparison {
    std::string metric_name;
    double mean_diff = 0.0;
    double t_statistic = 0.0;
    int df = 0;
    double p_value = 1.0;
    bool significant = false;
    bool zero_variance = false;
};

/// Per-metric paired t-tests between two reports over the same ordered
/// question set. Metrics compared are those present in both reports' means.
inline std::vector<PairedComparison> paired_compare(const SurveyReport& report_a,
                                                    const SurveyReport& report_b, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw ValidationError("alpha must be in (0, 1)");
    }
    std::vector<std::string> ids_a, ids_b;
    for (const auto& qa : report_a.per_question) ids_a.push_back(qa.question_id);
    for (const auto& qb : report_b.per_question) ids_b.push_back(qb.question_id);
    if (ids_a != ids_b) {
        std::set<std::string> set_a(ids_a.begin(), ids_a.end());
        std::set<std::string> set_b(ids_b.begin(), ids_b.end());
        std::string only_a, only_b;
        for (const auto& id : set_a) {
            if (!set_b.count(id)) only_a += (only_a.empty() ? "" : ", ") + id;
        }
        for (const auto& id : set_b) {
            if (!set_a.count(id)) only_b += (only_b.empty() ? "" : ", ") + id;
        }
        if (only_a.empty() && only_b.empty()) {
            throw ValidationError("question sets match but are ordered differently");
        }
        throw ValidationError("question sets differ; only in A: [" + only_a + "], only in B: [" +
                              only_b + "]");
    }
    if (ids_a.size() < 2) {
        throw ValidationError("paired comparison requires at least 2 common questions");
    }

    std::vector<PairedComparison> comparisons;
    for (const auto& metric : all_metric_names()) {
        if (!report_a.means.count(metric) || !report_b.means.count(metric)) {
            continue;
        }
        std::vector<double> scores_a, scores_b;
        scores_a.reserve(ids_a.size());
        scores_b.reserve(ids_a.size());
        for (std::size_t i = 0; i < ids_a.size(); ++i) {
            scores_a.push_back(metric_value(report_a.per_question[i], metric));
            scores_b.push_back(metric_value(report_b.per_question[i], metric));
        }
        const auto t = paired_t_test(scores_a, scores_b);
        PairedComparison cmp;
        cmp.metric_name = metric;
        cmp.mean_diff = t.mean_diff;
        cmp.t_statistic = t.t_statistic;
        cmp.df = t.df;
        cmp.p_value = t.p_value;
        cmp.zero_variance = t.zero_variance;
        cmp.significant = t.p_value < alpha;
        comparisons.push_back(std::move(cmp));
    }
    return comparisons;
}

}  // namespace radius
