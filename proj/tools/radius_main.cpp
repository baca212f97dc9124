// radius: command-line surface for the survey alignment suite.
// Exit codes: 0 success, 1 validation/configuration error, 2 I/O error.

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "radius/radius.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw radius::IoError("cannot open input file: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) {
        throw radius::IoError("failed reading input file: " + path);
    }
    return buffer.str();
}

void write_output(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        throw radius::IoError("cannot open output file: " + out_path);
    }
    out << content;
    if (!out) {
        throw radius::IoError("failed writing output file: " + out_path);
    }
}

radius::InputFormat resolve_input_format(const std::string& flag, const std::string& path) {
    if (flag == "json") return radius::InputFormat::kJson;
    if (flag == "csv") return radius::InputFormat::kCsv;
    // not forced: infer from the file extension, default json
    return std::filesystem::path(path).extension() == ".csv" ? radius::InputFormat::kCsv
                                                             : radius::InputFormat::kJson;
}

std::string file_stem(const std::string& path) {
    const auto stem = std::filesystem::path(path).stem().string();
    return stem.empty() ? "survey" : stem;
}

radius::Survey load_survey(const std::string& path, const std::string& format_flag) {
    const auto format = resolve_input_format(format_flag, path);
    return radius::parse_survey(read_file(path), format, file_stem(path));
}

// Canonical metric keys from the user-facing spelling ("rc" == "rc_norm").
std::vector<std::string> canonical_metrics(const std::vector<std::string>& metrics) {
    std::vector<std::string> out;
    for (auto name : metrics) {
        for (auto& c : name) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        if (name == "rc") name = "rc_norm";
        out.push_back(name);
    }
    return out;
}

struct EvalArgs {
    std::string input;
    std::string format;
    std::string agents_path;
    std::string out_path;
    std::string report_format = "json";
    std::uint64_t seed = 42;
    int n_boot = 1000;
    double ci_level = 0.95;
    double alpha = 0.05;
    std::vector<std::string> metrics;
    int threads = 1;
    bool exclude_degenerate_rc = false;
};

int run_eval(const EvalArgs& args) {
    auto survey = load_survey(args.input, args.format);

    if (!args.agents_path.empty()) {
        const auto agents = load_survey(args.agents_path, args.format);
        for (auto& question : survey.questions) {
            const radius::QuestionRecord* match = nullptr;
            for (const auto& candidate : agents.questions) {
                if (candidate.question_id == question.question_id) {
                    match = &candidate;
                    break;
                }
            }
            if (match == nullptr) {
                throw radius::ValidationError("agents file is missing question " +
                                              question.question_id);
            }
            if (match->agent_counts.size() != question.options.size()) {
                throw radius::ValidationError("agents file has wrong option count for question " +
                                              question.question_id);
            }
            question.agent_counts = match->agent_counts;
        }
        survey.generator_json = agents.generator_json;
        survey.validate();
    }

    radius::RunConfig config;
    config.seed = args.seed;
    config.n_boot = args.n_boot;
    config.ci_level = args.ci_level;
    config.alpha = args.alpha;
    config.metrics = canonical_metrics(args.metrics);
    config.n_threads = args.threads;
    config.exclude_degenerate_rc = args.exclude_degenerate_rc;

    const auto report = radius::evaluate_survey(survey, config);
    const auto format = args.report_format == "markdown" ? radius::ReportFormat::kMarkdown
                                                         : radius::ReportFormat::kJson;
    write_output(args.out_path, radius::render_report(report, format));
    return kExitOk;
}

struct BaselineArgs {
    std::string input;
    std::string format;
    std::string out_path;
    std::string kind;
    std::string agents = "match-human";
    std::uint64_t seed = 42;
    double dirichlet_alpha = 1.0;
    std::string normal_mean = "midpoint";
    double normal_std_factor = 0.25;
};

int run_baseline(const BaselineArgs& args) {
    auto survey = load_survey(args.input, args.format);

    radius::BaselineSpec spec;
    if (args.kind == "uniform") {
        spec.kind = radius::BaselineKind::kUniform;
    } else if (args.kind == "dirichlet") {
        spec.kind = radius::BaselineKind::kDirichlet;
    } else if (args.kind == "normal") {
        spec.kind = radius::BaselineKind::kNormal;
    } else {
        throw radius::ValidationError("unknown baseline kind: " + args.kind);
    }
    if (args.agents != "match-human") {
        std::int64_t n = 0;
        const auto* first = args.agents.data();
        const auto* last = first + args.agents.size();
        const auto [ptr, ec] = std::from_chars(first, last, n);
        if (ec != std::errc{} || ptr != last) {
            throw radius::ValidationError("--agents must be an integer or 'match-human'");
        }
        spec.n_agents = n;
    }
    spec.dirichlet_alpha = args.dirichlet_alpha;
    spec.normal_mean_mode = args.normal_mean == "human_mean" ? radius::NormalMeanMode::kHumanMean
                                                             : radius::NormalMeanMode::kMidpoint;
    spec.normal_std_factor = args.normal_std_factor;
    spec.validate();

    const radius::RngStream master(args.seed);
    for (auto& question : survey.questions) {
        radius::RngStream rng = master.substream(question.question_id);
        question.agent_counts = radius::generate_baseline(spec, question, rng);
    }

    nlohmann::json generator;
    generator["kind"] = radius::to_string(spec.kind);
    generator["seed"] = args.seed;
    if (spec.n_agents) {
        generator["n_agents"] = *spec.n_agents;
    } else {
        generator["n_agents"] = "match-human";
    }
    if (spec.kind == radius::BaselineKind::kDirichlet) {
        generator["dirichlet_alpha"] = spec.dirichlet_alpha;
    }
    if (spec.kind == radius::BaselineKind::kNormal) {
        generator["normal_mean_mode"] = radius::to_string(spec.normal_mean_mode);
        generator["normal_std_factor"] = spec.normal_std_factor;
    }
    generator["rng_algorithm"] = radius::RngStream::kAlgorithmId;
    generator["tool_version"] = radius::kVersion;
    survey.generator_json = generator.dump();

    write_output(args.out_path, radius::write_survey_json(survey));
    return kExitOk;
}

struct CompareArgs {
    std::string report_a;
    std::string report_b;
    std::string out_path;
    std::string report_format = "markdown";
    double alpha = 0.05;
};

int run_compare(const CompareArgs& args) {
    const auto a = radius::parse_report_json(read_file(args.report_a));
    const auto b = radius::parse_report_json(read_file(args.report_b));
    const auto comparisons = radius::paired_compare(a, b, args.alpha);
    const auto format = args.report_format == "json" ? radius::ReportFormat::kJson
                                                     : radius::ReportFormat::kMarkdown;
    write_output(args.out_path, radius::render_comparisons(comparisons, args.alpha, format));
    return kExitOk;
}

template <typename Fn>
int guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const radius::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const radius::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const radius::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"radius: ranking/distribution alignment metrics for simulated surveys"};
    app.require_subcommand(1);

    EvalArgs eval_args;
    auto* eval = app.add_subcommand("eval", "Evaluate agent responses against human responses");
    eval->add_option("--input", eval_args.input, "Survey file (json or csv)")->required();
    eval->add_option("--format", eval_args.format, "Input format (default: by file extension)")
        ->check(CLI::IsMember({"json", "csv"}));
    eval->add_option("--agents", eval_args.agents_path,
                     "Survey file whose agent_counts replace the input's, matched by question id");
    eval->add_option("--out", eval_args.out_path, "Output path (default: stdout)");
    eval->add_option("--report", eval_args.report_format, "Report format")
        ->check(CLI::IsMember({"json", "markdown"}))
        ->capture_default_str();
    eval->add_option("--seed", eval_args.seed, "RNG seed")
        ->envname("RADIUS_SEED")
        ->capture_default_str();
    eval->add_option("--boot", eval_args.n_boot, "Bootstrap resamples")->capture_default_str();
    eval->add_option("--level", eval_args.ci_level, "Bootstrap CI level")->capture_default_str();
    eval->add_option("--alpha", eval_args.alpha, "Homogeneity-test significance level")
        ->capture_default_str();
    eval->add_option("--metrics", eval_args.metrics,
                     "Comma-separated metric subset (trm,rc,tvd,dh,cv,jsd,wd)")
        ->delimiter(',');
    eval->add_option("--threads", eval_args.threads, "Worker threads (does not affect results)")
        ->capture_default_str();
    eval->add_flag("--exclude-degenerate-rc", eval_args.exclude_degenerate_rc,
                   "Leave degenerate-rank questions out of the rc_norm mean");

    BaselineArgs baseline_args;
    auto* baseline =
        app.add_subcommand("baseline", "Replace agent_counts with a non-parametric baseline");
    baseline->add_option("--input", baseline_args.input, "Survey file (json or csv)")->required();
    baseline->add_option("--format", baseline_args.format, "Input format (default: by file extension)")
        ->check(CLI::IsMember({"json", "csv"}));
    baseline->add_option("--kind", baseline_args.kind, "Baseline sampler")
        ->required()
        ->check(CLI::IsMember({"uniform", "dirichlet", "normal"}));
    baseline->add_option("--agents", baseline_args.agents,
                         "Agents per question: an integer or 'match-human'")
        ->capture_default_str();
    baseline->add_option("--seed", baseline_args.seed, "RNG seed")
        ->envname("RADIUS_SEED")
        ->capture_default_str();
    baseline->add_option("--alpha-dirichlet", baseline_args.dirichlet_alpha,
                         "Dirichlet concentration")
        ->capture_default_str();
    baseline->add_option("--normal-mean", baseline_args.normal_mean, "Normal baseline mean")
        ->check(CLI::IsMember({"midpoint", "human_mean"}))
        ->capture_default_str();
    baseline->add_option("--normal-std-factor", baseline_args.normal_std_factor,
                         "Normal baseline std = factor * k")
        ->capture_default_str();
    baseline->add_option("--out", baseline_args.out_path, "Output survey path (json)")->required();

    CompareArgs compare_args;
    auto* compare =
        app.add_subcommand("compare", "Paired t-tests between two eval reports (json)");
    compare->add_option("report_a", compare_args.report_a, "First report (json)")->required();
    compare->add_option("report_b", compare_args.report_b, "Second report (json)")->required();
    compare->add_option("--alpha", compare_args.alpha, "Significance level")->capture_default_str();
    compare->add_option("--report", compare_args.report_format, "Output format")
        ->check(CLI::IsMember({"json", "markdown"}))
        ->capture_default_str();
    compare->add_option("--out", compare_args.out_path, "Output path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }

    if (eval->parsed()) {
        return guarded([&] { return run_eval(eval_args); });
    }
    if (baseline->parsed()) {
        return guarded([&] { return run_baseline(baseline_args); });
    }
    return guarded([&] { return run_compare(compare_args); });
}
