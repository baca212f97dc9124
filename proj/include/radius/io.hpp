#pragma once

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "radius/aggregate.hpp"
#include "radius/errors.hpp"
#include "radius/model.hpp"

namespace radius {

enum class InputFormat { kJson, kCsv };
enum class ReportFormat { kJson, kMarkdown };

namespace detail {

inline nlohmann::json parse_json_text(const std::string& text, const char* what) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string(what) + ": " + e.what());
    }
}

inline std::vector<std::int64_t> read_count_array(const nlohmann::json& node,
                                                  const std::string& question_id,
                                                  const char* field) {
    if (!node.is_array()) {
        throw ValidationError("question " + question_id + ": " + field + " must be an array");
    }
    std::vector<std::int64_t> counts;
    counts.reserve(node.size());
    for (const auto& v : node) {
        if (!v.is_number_integer() && !v.is_number_unsigned()) {
            throw ValidationError("question " + question_id + ": " + field +
                                  " entries must be integers");
        }
        counts.push_back(v.get<std::int64_t>());
    }
    return counts;
}

// Splits one CSV line, honoring double-quoted fields with "" escapes.
inline std::vector<std::string> split_csv_line(std::string_view line, std::size_t line_no) {
    std::vector<std::string> fields;
    std::string current;
    bool in_quotes = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    current += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                current += c;
            }
        } else if (c == '"') {
            in_quotes = true;
        } else if (c == ',') {
            fields.push_back(std::move(current));
            current.clear();
        } else {
            current += c;
        }
    }
    if (in_quotes) {
        throw ParseError("csv line " + std::to_string(line_no) + ": unterminated quote");
    }
    fields.push_back(std::move(current));
    return fields;
}

inline std::int64_t parse_int_field(const std::string& field, std::size_t line_no,
                                    const char* name) {
    std::int64_t value = 0;
    const auto* first = field.data();
    const auto* last = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
        throw ParseError("csv line " + std::to_string(line_no) + ": " + name +
                         " is not an integer: '" + field + "'");
    }
    return value;
}

}  // namespace detail

/// Parses the canonical survey JSON document:
///   { "survey_id": "...",
///     "questions": [ { "id", "text"?, "options", "human_counts", "agent_counts" } ] }
/// Unknown keys are ignored; a top-level "generator" object is preserved.
inline Survey parse_survey_json(const std::string& text) {
    const auto root = detail::parse_json_text(text, "survey json");
    if (!root.is_object()) {
        throw ValidationError("survey json: root must be an object");
    }
    Survey survey;
    if (root.contains("survey_id")) {
        if (!root["survey_id"].is_string()) {
            throw ValidationError("survey json: survey_id must be a string");
        }
        survey.survey_id = root["survey_id"].get<std::string>();
    }
    if (root.contains("generator")) {
        survey.generator_json = root["generator"].dump();
    }
    if (!root.contains("questions") || !root["questions"].is_array()) {
        throw ValidationError("survey json: missing questions array");
    }
    for (std::size_t i = 0; i < root["questions"].size(); ++i) {
        const auto& node = root["questions"][i];
        if (!node.is_object() || !node.contains("id") || !node["id"].is_string()) {
            throw ValidationError("survey json: question #" + std::to_string(i) +
                                  " must be an object with a string id");
        }
        QuestionRecord q;
        q.question_id = node["id"].get<std::string>();
        if (node.contains("text") && node["text"].is_string()) {
            q.text = node["text"].get<std::string>();
        }
        if (!node.contains("options") || !node["options"].is_array()) {
            throw ValidationError("question " + q.question_id + ": options must be an array");
        }
        for (const auto& opt : node["options"]) {
            if (!opt.is_string()) {
                throw ValidationError("question " + q.question_id + ": options must be strings");
            }
            q.options.push_back(opt.get<std::string>());
        }
        q.human_counts = detail::read_count_array(node.value("human_counts", nlohmann::json()),
                                                  q.question_id, "human_counts");
        q.agent_counts = detail::read_count_array(node.value("agent_counts", nlohmann::json()),
                                                  q.question_id, "agent_counts");
        survey.questions.push_back(std::move(q));
    }
    survey.validate();
    return survey;
}

/// Parses the long-format CSV alternative. Header must be exactly
/// question_id,option_index,option_label,human_count,agent_count; rows for a
/// question must be contiguous with a dense 0-based option_index.
inline Survey parse_survey_csv(const std::string& text, const std::string& survey_id) {
    static constexpr const char* kHeader =
        "question_id,option_index,option_label,human_count,agent_count";

    Survey survey;
    survey.survey_id = survey_id;

    std::vector<std::string_view> lines;
    std::string_view rest = text;
    while (!rest.empty()) {
        const auto pos = rest.find('\n');
        std::string_view line = rest.substr(0, pos);
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        lines.push_back(line);
        if (pos == std::string_view::npos) break;
        rest.remove_prefix(pos + 1);
    }
    while (!lines.empty() && lines.back().empty()) {
        lines.pop_back();
    }
    if (lines.empty() || lines[0] != kHeader) {
        throw ParseError(std::string("csv line 1: expected header '") + kHeader + "'");
    }

    QuestionRecord current;
    std::vector<std::string> closed_ids;
    auto close_current = [&]() {
        if (!current.question_id.empty()) {
            closed_ids.push_back(current.question_id);
            survey.questions.push_back(std::move(current));
            current = QuestionRecord{};
        }
    };

    for (std::size_t li = 1; li < lines.size(); ++li) {
        const std::size_t line_no = li + 1;
        if (lines[li].empty()) {
            continue;
        }
        const auto fields = detail::split_csv_line(lines[li], line_no);
        if (fields.size() != 5) {
            throw ParseError("csv line " + std::to_string(line_no) + ": expected 5 fields, got " +
                             std::to_string(fields.size()));
        }
        const std::string& qid = fields[0];
        const std::int64_t index = detail::parse_int_field(fields[1], line_no, "option_index");

        if (qid != current.question_id) {
            close_current();
            for (const auto& seen : closed_ids) {
                if (seen == qid) {
                    throw ParseError("csv line " + std::to_string(line_no) + ": rows for question " +
                                     qid + " must be contiguous");
                }
            }
            current.question_id = qid;
        }
        if (index != static_cast<std::int64_t>(current.options.size())) {
            throw ParseError("csv line " + std::to_string(line_no) +
                             ": option_index must be dense and 0-based (expected " +
                             std::to_string(current.options.size()) + ", got " +
                             std::to_string(index) + ")");
        }
        current.options.push_back(fields[2]);
        current.human_counts.push_back(detail::parse_int_field(fields[3], line_no, "human_count"));
        current.agent_counts.push_back(detail::parse_int_field(fields[4], line_no, "agent_count"));
    }
    close_current();
    survey.validate();
    return survey;
}

inline Survey parse_survey(const std::string& text, InputFormat format,
                           const std::string& fallback_survey_id = "survey") {
    if (format == InputFormat::kJson) {
        return parse_survey_json(text);
    }
    return parse_survey_csv(text, fallback_survey_id);
}

inline std::string write_survey_json(const Survey& survey) {
    nlohmann::json root;
    root["survey_id"] = survey.survey_id;
    auto& questions = root["questions"] = nlohmann::json::array();
    for (const auto& q : survey.questions) {
        nlohmann::json node;
        node["id"] = q.question_id;
        if (!q.text.empty()) {
            node["text"] = q.text;
        }
        node["options"] = q.options;
        node["human_counts"] = q.human_counts;
        node["agent_counts"] = q.agent_counts;
        questions.push_back(std::move(node));
    }
    if (!survey.generator_json.empty()) {
        root["generator"] = detail::parse_json_text(survey.generator_json, "generator json");
    }
    return root.dump(2) + "\n";
}

namespace detail {

inline nlohmann::json report_to_json(const SurveyReport& report) {
    nlohmann::json root;
    root["survey_id"] = report.survey_id;
    root["n_questions"] = report.n_questions;
    root["means"] = report.means;

    auto& per_question = root["per_question"] = nlohmann::json::array();
    for (const auto& qa : report.per_question) {
        nlohmann::json node;
        node["question_id"] = qa.question_id;

        nlohmann::json ranking;
        ranking["trm"] = qa.ranking.trm;
        ranking["rc_raw"] = qa.ranking.rc_raw;
        ranking["rc_norm"] = qa.ranking.rc_norm;
        ranking["rc_degenerate"] = qa.ranking.rc_degenerate;
        nlohmann::json group;
        group["anchor_index"] = qa.ranking.top_group.anchor_index;
        group["member_indices"] = qa.ranking.top_group.member_indices;
        auto& intervals = group["intervals"] = nlohmann::json::array();
        for (const auto& ci : qa.ranking.top_group.intervals) {
            intervals.push_back({{"lower", ci.lower}, {"upper", ci.upper}, {"level", ci.level}});
        }
        ranking["top_group"] = std::move(group);
        node["ranking"] = std::move(ranking);

        nlohmann::json dist;
        dist["tvd"] = qa.distribution.tvd;
        dist["dh"] = qa.distribution.dh;
        dist["dh_p_value"] = qa.distribution.dh_p_value;
        dist["dh_statistic"] = qa.distribution.dh_statistic;
        dist["dh_df"] = qa.distribution.dh_df;
        dist["dh_degenerate"] = qa.distribution.dh_degenerate;
        dist["cv"] = qa.distribution.cv;
        dist["jsd"] = qa.distribution.jsd;
        dist["wd"] = qa.distribution.wd;
        node["distribution"] = std::move(dist);

        node["warnings"] = qa.warnings;
        per_question.push_back(std::move(node));
    }

    nlohmann::json meta;
    meta["seed"] = report.run_meta.seed;
    meta["n_boot"] = report.run_meta.n_boot;
    meta["ci_level"] = report.run_meta.ci_level;
    meta["alpha"] = report.run_meta.alpha;
    meta["jsd_log_base"] = report.run_meta.jsd_log_base;
    meta["rng_algorithm"] = report.run_meta.rng_algorithm;
    meta["tool_version"] = report.run_meta.tool_version;
    meta["metrics"] = report.run_meta.metrics;
    meta["exclude_degenerate_rc"] = report.run_meta.exclude_degenerate_rc;
    if (!report.run_meta.baseline_generator.empty()) {
        meta["baseline_generator"] =
            parse_json_text(report.run_meta.baseline_generator, "baseline generator json");
    }
    root["run_meta"] = std::move(meta);
    return root;
}

inline const std::map<std::string, std::string>& metric_display_names() {
    static const std::map<std::string, std::string> names = {
        {"trm", "TRM"}, {"rc_norm", "RC"}, {"tvd", "TVD"}, {"dh", "DH"},
        {"cv", "CV"},   {"jsd", "JSD"},    {"wd", "WD"}};
    return names;
}

inline std::string metric_header(const std::string& metric) {
    return metric_display_names().at(metric) + (is_higher_better(metric) ? " ↑" : " ↓");
}

inline std::string fmt_double(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", value);
    return buf;
}

inline std::string report_to_markdown(const SurveyReport& report) {
    const auto& metrics = report.run_meta.metrics;
    std::string out;
    out += "# Survey alignment report\n\n";
    out += "- survey: " + (report.survey_id.empty() ? std::string("(unnamed)") : report.survey_id) +
           "\n";
    out += "- questions: " + std::to_string(report.n_questions) + "\n";
    char meta[256];
    std::snprintf(meta, sizeof(meta),
                  "- seed: %llu, bootstrap resamples: %d, CI level: %g, alpha: %g\n",
                  static_cast<unsigned long long>(report.run_meta.seed), report.run_meta.n_boot,
                  report.run_meta.ci_level, report.run_meta.alpha);
    out += meta;
    out += "- rng: " + report.run_meta.rng_algorithm +
           ", jsd log base: " + report.run_meta.jsd_log_base +
           ", version: " + report.run_meta.tool_version + "\n\n";

    out += "## Survey means\n\n|";
    for (const auto& m : metrics) out += " " + metric_header(m) + " |";
    out += "\n|";
    for (std::size_t i = 0; i < metrics.size(); ++i) out += "---:|";
    out += "\n|";
    for (const auto& m : metrics) out += " " + fmt_double(report.means.at(m)) + " |";
    out += "\n\n";

    out += "## Per-question scores\n\n| question |";
    for (const auto& m : metrics) out += " " + metric_header(m) + " |";
    out += "\n|---|";
    for (std::size_t i = 0; i < metrics.size(); ++i) out += "---:|";
    out += "\n";
    for (const auto& qa : report.per_question) {
        out += "| " + qa.question_id + " |";
        for (const auto& m : metrics) out += " " + fmt_double(metric_value(qa, m)) + " |";
        out += "\n";
    }

    out += "\n## Warnings\n\n";
    bool any = false;
    for (const auto& qa : report.per_question) {
        for (const auto& w : qa.warnings) {
            out += "- " + qa.question_id + ": " + w + "\n";
            any = true;
        }
    }
    if (!any) {
        out += "none\n";
    }
    return out;
}

}  // namespace detail

/// Serializes a report. JSON is schema-stable, round-trips exactly (reals are
/// emitted with shortest exact representation), and is byte-deterministic for
/// a given report.
inline std::string render_report(const SurveyReport& report, ReportFormat format) {
    if (format == ReportFormat::kJson) {
        return detail::report_to_json(report).dump(2) + "\n";
    }
    return detail::report_to_markdown(report);
}

inline SurveyReport parse_report_json(const std::string& text) {
    const auto root = detail::parse_json_text(text, "report json");
    if (!root.is_object() || !root.contains("per_question") || !root.contains("run_meta")) {
        throw ValidationError("report json: expected an object with per_question and run_meta");
    }
    SurveyReport report;
    report.survey_id = root.value("survey_id", std::string());
    report.n_questions = root.value("n_questions", std::size_t{0});
    if (root.contains("means")) {
        for (const auto& [key, value] : root["means"].items()) {
            report.means[key] = value.get<double>();
        }
    }
    for (const auto& node : root["per_question"]) {
        QuestionAlignment qa;
        qa.question_id = node.value("question_id", std::string());
        const auto& ranking = node.at("ranking");
        qa.ranking.trm = ranking.at("trm").get<int>();
        qa.ranking.rc_raw = ranking.at("rc_raw").get<double>();
        qa.ranking.rc_norm = ranking.at("rc_norm").get<double>();
        qa.ranking.rc_degenerate = ranking.value("rc_degenerate", false);
        const auto& group = ranking.at("top_group");
        qa.ranking.top_group.anchor_index = group.at("anchor_index").get<std::size_t>();
        qa.ranking.top_group.member_indices =
            group.at("member_indices").get<std::vector<std::size_t>>();
        for (const auto& ci : group.at("intervals")) {
            qa.ranking.top_group.intervals.push_back({ci.at("lower").get<double>(),
                                                      ci.at("upper").get<double>(),
                                                      ci.at("level").get<double>()});
        }
        const auto& dist = node.at("distribution");
        qa.distribution.tvd = dist.at("tvd").get<double>();
        qa.distribution.dh = dist.at("dh").get<int>();
        qa.distribution.dh_p_value = dist.at("dh_p_value").get<double>();
        qa.distribution.dh_statistic = dist.at("dh_statistic").get<double>();
        qa.distribution.dh_df = dist.at("dh_df").get<int>();
        qa.distribution.dh_degenerate = dist.value("dh_degenerate", false);
        qa.distribution.cv = dist.at("cv").get<double>();
        qa.distribution.jsd = dist.at("jsd").get<double>();
        qa.distribution.wd = dist.at("wd").get<double>();
        qa.warnings = node.value("warnings", std::vector<std::string>());
        report.per_question.push_back(std::move(qa));
    }
    const auto& meta = root["run_meta"];
    report.run_meta.seed = meta.at("seed").get<std::uint64_t>();
    report.run_meta.n_boot = meta.at("n_boot").get<int>();
    report.run_meta.ci_level = meta.at("ci_level").get<double>();
    report.run_meta.alpha = meta.at("alpha").get<double>();
    report.run_meta.jsd_log_base = meta.value("jsd_log_base", std::string("natural"));
    report.run_meta.rng_algorithm = meta.value("rng_algorithm", std::string());
    report.run_meta.tool_version = meta.value("tool_version", std::string());
    report.run_meta.metrics = meta.value("metrics", std::vector<std::string>());
    report.run_meta.exclude_degenerate_rc = meta.value("exclude_degenerate_rc", false);
    if (meta.contains("baseline_generator")) {
        report.run_meta.baseline_generator = meta["baseline_generator"].dump();
    }
    return report;
}

/// Serializes paired-comparison results; markdown marks significant rows
/// with a star.
inline std::string render_comparisons(const std::vector<PairedComparison>& comparisons,
                                      double alpha, ReportFormat format) {
    if (format == ReportFormat::kJson) {
        nlohmann::json root;
        root["alpha"] = alpha;
        auto& rows = root["comparisons"] = nlohmann::json::array();
        for (const auto& c : comparisons) {
            rows.push_back({{"metric", c.metric_name},
                            {"mean_diff", c.mean_diff},
                            {"t_statistic", c.t_statistic},
                            {"df", c.df},
                            {"p_value", c.p_value},
                            {"significant", c.significant},
                            {"zero_variance", c.zero_variance}});
        }
        return root.dump(2) + "\n";
    }

    std::string out;
    char header[64];
    std::snprintf(header, sizeof(header), "# Paired comparison (alpha = %g)\n\n", alpha);
    out += header;
    out += "| metric | mean diff | t | df | p | sig |\n|---|---:|---:|---:|---:|:---:|\n";
    for (const auto& c : comparisons) {
        std::string sig = c.significant ? "*" : "";
        if (c.zero_variance) {
            sig += sig.empty() ? "zero variance" : " (zero variance)";
        }
        char row[256];
        std::snprintf(row, sizeof(row), "| %s | %.6f | %.4f | %d | %.4g | %s |\n",
                      detail::metric_display_names().at(c.metric_name).c_str(), c.mean_diff,
                      c.t_statistic, c.df, c.p_value, sig.c_str());
        out += row;
    }
    return out;
}

}  // namespace radius
