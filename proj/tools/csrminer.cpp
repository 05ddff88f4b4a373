// csrminer: synth, score, clean, train, evaluate, sensitivity, run.
// Exit status: 0 ok, 1 usage or configuration, 2 data, 3 internal.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "csrminer/config.hpp"
#include "csrminer/error.hpp"
#include "csrminer/pipeline.hpp"
#include "csrminer/synth.hpp"

namespace {

using namespace csrminer;

int exit_code(ErrorCode code) {
    switch (code) {
        case ErrorCode::Usage:
        case ErrorCode::InvalidConfig:
        case ErrorCode::InvalidHyperparameter:
        case ErrorCode::BadRatios:
        case ErrorCode::BadFoldCount:
        case ErrorCode::InfeasibleProportions:
            return 1;
        case ErrorCode::Io:
        case ErrorCode::InvalidQuestionScore:
        case ErrorCode::InvalidQuestionCount:
        case ErrorCode::AllQuestionsNotApplicable:
        case ErrorCode::MixedEvaluationKinds:
        case ErrorCode::ScoreOutOfRange:
        case ErrorCode::MalformedRow:
        case ErrorCode::SchemaMismatch:
        case ErrorCode::EmptyDataset:
        case ErrorCode::InsufficientData:
        case ErrorCode::EmptyEvaluationSet:
        case ErrorCode::ArityMismatch:
        case ErrorCode::WrongModelKind:
        case ErrorCode::ModelFormat:
            return 2;
        case ErrorCode::NonFiniteLoss:
        case ErrorCode::IncompleteMatrix:
            return 3;
    }
    return 3;
}

struct Flags {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::string target;
    std::string models;
    std::string input;
};

RunConfig resolve(const Flags& flags) {
    RunConfig config;
    std::string path = flags.config;
    if (path.empty()) {
        if (const char* env = std::getenv("CSRMINER_CONFIG"); env && *env) path = env;
    }
    if (!path.empty()) config = load_run_config(path, config);
    if (flags.seed) config.seed = *flags.seed;
    if (!flags.out.empty()) config.out = flags.out;
    if (!flags.target.empty()) config.target = parse_evaluation_kind(flags.target);
    if (!flags.models.empty()) config.models = parse_model_list(flags.models);
    if (!flags.input.empty()) config.input = flags.input;
    return config;
}

void report(const OutputDigests& digests, const std::string& out) {
    for (const auto& [file, digest] : digests) std::cout << out << '/' << file << "  " << digest << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Call-center performance mining: scoring, synthetic data, classifiers and input ranking"};
    app.require_subcommand(1);
    app.fallthrough();

    Flags flags;
    app.add_option("--config", flags.config, "JSON run config (falls back to $CSRMINER_CONFIG)");
    app.add_option("--seed", flags.seed, "Seed for splits, folds, models and the generator");
    app.add_option("--out", flags.out, "Output directory");
    app.add_option("--target", flags.target, "customer-service or business-need");
    app.add_option("--models", flags.models, "Comma-separated model kinds, or 'all'");

    auto* synth = app.add_subcommand("synth", "Generate a synthetic evaluation CSV and its ground truth");
    bool paper_defaults = false;
    std::optional<std::size_t> n_records;
    std::string generator_path;
    synth->add_flag("--paper-defaults", paper_defaults, "Published class census for the target");
    synth->add_option("--n", n_records, "Number of records");
    synth->add_option("--generator", generator_path, "Generator config JSON");

    auto* score = app.add_subcommand("score", "Turn per-call question scores into monthly scores");
    std::string score_input;
    bool score_split = false;
    score->add_option("--input", score_input, "CSV of agent_id,month,kind,product_id,scores")->required();
    score->add_flag("--split-met", score_split, "Report Met1/Met2 instead of Met");

    std::vector<CLI::App*> data_commands;
    data_commands.push_back(app.add_subcommand("clean", "Clean an evaluation CSV and log rejections"));
    data_commands.push_back(app.add_subcommand("train", "Train one model per class and kind"));
    data_commands.push_back(app.add_subcommand("evaluate", "Evaluation matrix of every selected kind"));
    data_commands.push_back(app.add_subcommand("sensitivity", "Input importance by attribute removal"));
    auto* run = app.add_subcommand("run", "Clean, evaluate, rank inputs and write a manifest");
    data_commands.push_back(run);
    for (auto* cmd : data_commands) cmd->add_option("--input", flags.input, "Evaluation CSV");
    std::string manifest;
    run->add_option("--manifest", manifest, "Repeat the run recorded in this manifest");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int status = app.exit(e);
        return status == 0 ? 0 : 1;
    }

    const WarningSink sink = [](std::string_view message) { std::cerr << "warning: " << message << '\n'; };
    try {
        if (synth->parsed()) {
            if (paper_defaults && !generator_path.empty()) {
                throw Error(ErrorCode::Usage, "--paper-defaults and --generator are exclusive");
            }
            const auto target = flags.target.empty() ? EvaluationKind::CustomerService
                                                     : parse_evaluation_kind(flags.target);
            GeneratorConfig generator = paper_default_config(target);
            if (!generator_path.empty()) {
                std::ifstream in(generator_path);
                if (!in) throw Error(ErrorCode::Io, "cannot read '" + generator_path + "'");
                std::stringstream text;
                text << in.rdbuf();
                generator = GeneratorConfig::from_json(text.str());
            }
            if (n_records) generator.n_records = *n_records;
            if (flags.seed) generator.seed = *flags.seed;
            generator.validate();
            const std::string out = flags.out.empty() ? "." : flags.out;
            report(cmd_synth(generator, out), out);
        } else if (score->parsed()) {
            std::ifstream in(score_input);
            if (!in) throw Error(ErrorCode::Io, "cannot read '" + score_input + "'");
            const std::filesystem::path out = flags.out.empty() ? "." : flags.out;
            std::filesystem::create_directories(out);
            std::ofstream scores(out / "scores.csv", std::ios::binary);
            std::ofstream log(out / "score_log.csv", std::ios::binary);
            if (!scores || !log) throw Error(ErrorCode::Io, "cannot write into '" + out.string() + "'");
            const auto summary = score_calls(in, scores, log, score_split);
            std::cout << summary.months << " monthly scores from " << summary.rows << " calls, " << summary.skipped
                      << " skipped\n";
        } else if (run->parsed() && !manifest.empty()) {
            RunConfig config = config_from_manifest(manifest);
            if (!flags.out.empty()) config.out = flags.out;
            if (!flags.input.empty()) config.input = flags.input;
            report(cmd_run(config, sink), config.out);
        } else {
            const RunConfig config = resolve(flags);
            if (data_commands[0]->parsed()) report(cmd_clean(config), config.out);
            if (data_commands[1]->parsed()) report(cmd_train(config, sink), config.out);
            if (data_commands[2]->parsed()) report(cmd_evaluate(config, sink), config.out);
            if (data_commands[3]->parsed()) report(cmd_sensitivity(config, sink), config.out);
            if (run->parsed()) report(cmd_run(config, sink), config.out);
        }
    } catch (const Error& e) {
        std::cerr << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
        return exit_code(e.code());
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error [Io]: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
