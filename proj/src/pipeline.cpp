#include "csrminer/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "csrminer/evaluation.hpp"
#include "csrminer/hash.hpp"
#include "csrminer/report.hpp"
#include "csrminer/scoring.hpp"
#include "csrminer/sensitivity.hpp"

namespace csrminer {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

template <typename Fn>
auto in_stage(std::string_view stage, Fn&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const Error& e) {
        throw Error(e.code(), std::string(stage) + ": " + e.what());
    }
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

std::string trim(std::string s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.pop_back();
    std::size_t i = 0;
    while (i < s.size() && s[i] == ' ') ++i;
    return s.substr(i);
}

void write_file(const fs::path& root, const std::string& relative, const std::string& content,
                OutputDigests& digests) {
    const fs::path path = root / relative;
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot write '" + path.string() + "'");
    out << content;
    out.close();
    if (!out) throw Error(ErrorCode::Io, "write failed for '" + path.string() + "'");
    digests[relative] = hex_digest(fnv1a64(content));
}

std::string model_slug(ModelKind kind) {
    switch (kind) {
        case ModelKind::Linear: return "linear";
        case ModelKind::MlpBp: return "bp";
        case ModelKind::MlpBpCg: return "bp-cg";
        case ModelKind::Pnn: return "pnn";
        case ModelKind::Cart: return "cart";
        case ModelKind::Hybrid: return "hybrid";
        case ModelKind::Svm: return "svm";
    }
    return "model";
}

std::string train_fingerprint(const RunConfig& config, const CleanDataset& dataset) {
    if (config.scaling == ScalingMode::AllData) return dataset.scaling.fingerprint();
    const Split parts = split(dataset.size(), config.ratios, config.seed);
    std::vector<EvaluationRecord> fit;
    fit.reserve(parts.train.size());
    for (auto r : parts.train) fit.push_back(dataset.records[r]);
    return fit_scaling(fit).fingerprint();
}

void save_models(const RunConfig& config, const CleanDataset& dataset, const Problem& problem,
                 const std::map<std::pair<int, ModelKind>, std::shared_ptr<const Model>>& models,
                 OutputDigests& digests) {
    const std::string fingerprint = train_fingerprint(config, dataset);
    for (const auto& [key, model] : models) {
        const std::string name =
            "models/" + problem.class_names[static_cast<std::size_t>(key.first)] + "_" + model_slug(key.second) + ".json";
        write_file(config.out, name, save_model(*model, fingerprint), digests);
    }
}

std::string table_title(const RunConfig& config, std::string_view what) {
    const std::string target =
        config.target == EvaluationKind::CustomerService ? "Customer Service" : "Business Need";
    return std::string(what) + " of " + target + " Prediction";
}

EvaluationPlan make_plan(const RunConfig& config) {
    EvaluationPlan plan;
    for (auto kind : config.models) plan.specs.push_back(config.spec_for(kind));
    plan.holdout.ratios = config.ratios;
    plan.cart_kfold = config.cart_kfold;
    plan.folds = config.folds;
    return plan;
}

void warn_degenerate(const CleanDataset& dataset, const WarningSink& sink) {
    for (const auto& name : dataset.scaling.degenerate_ranges()) {
        warn(sink, "attribute range collapsed to a single value: " + name);
    }
}

OutputDigests evaluate_into(const RunConfig& config, const CleanDataset& dataset, const Problem& problem,
                            bool with_models) {
    OutputDigests digests;
    std::map<std::pair<int, ModelKind>, std::shared_ptr<const Model>> models;
    const auto matrix = in_stage("evaluate", [&] {
        return evaluate_all(make_plan(config), problem, config.seed, with_models ? &models : nullptr);
    });
    std::ostringstream csv;
    write_matrix_csv(csv, matrix);
    write_file(config.out, "evaluation.csv", csv.str(), digests);
    write_file(config.out, "evaluation.txt",
               format_matrix_text(matrix, table_title(config, "Classification Accuracy")), digests);
    if (with_models) in_stage("save models", [&] { save_models(config, dataset, problem, models, digests); });
    return digests;
}

OutputDigests sensitivity_into(const RunConfig& config, const Problem& problem) {
    OutputDigests digests;
    std::vector<ClassifierSpec> specs;
    for (auto kind : config.sensitivity_models) specs.push_back(config.spec_for(kind));
    std::vector<int> classes(problem.class_names.size());
    for (std::size_t c = 0; c < classes.size(); ++c) classes[c] = static_cast<int>(c);
    const auto grid =
        in_stage("sensitivity", [&] { return sensitivity_grid(specs, problem, classes, config.seed, config.folds); });
    std::ostringstream csv;
    write_grid_csv(csv, grid);
    write_file(config.out, "sensitivity.csv", csv.str(), digests);
    write_file(config.out, "sensitivity.txt",
               format_grid_text(grid, table_title(config, "Ranking of the Inputs (importance)")), digests);
    return digests;
}

}  // namespace

std::string file_digest(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot read '" + path.string() + "'");
    std::ostringstream bytes;
    bytes << in.rdbuf();
    return hex_digest(fnv1a64(bytes.str()));
}

ScoreSummary score_calls(std::istream& in, std::ostream& out, std::ostream& log, bool split_met) {
    static const std::vector<std::string> kColumns{"agent_id", "month", "kind", "product_id", "scores"};
    std::string line;
    if (!std::getline(in, line)) throw Error(ErrorCode::SchemaMismatch, "score file has no header");
    auto header = split_fields(line);
    for (auto& h : header) h = trim(h);
    std::map<std::string, std::size_t> column;
    for (std::size_t i = 0; i < header.size(); ++i) column[header[i]] = i;
    for (const auto& name : kColumns) {
        if (!column.count(name)) throw Error(ErrorCode::SchemaMismatch, "score file lacks column '" + name + "'");
    }
    if (column.size() != kColumns.size() || header.size() != kColumns.size()) {
        throw Error(ErrorCode::SchemaMismatch, "score file header must be agent_id,month,kind,product_id,scores");
    }

    using Key = std::tuple<std::string, int, EvaluationKind>;
    struct Group {
        Month month;
        std::size_t first_row = 0;
        std::vector<CallEvaluation> calls;
    };
    std::map<Key, Group> groups;
    ScoreSummary summary;
    log << "row,code,message\n";
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty()) continue;
        ++summary.rows;
        try {
            const auto fields = split_fields(line);
            if (fields.size() != kColumns.size()) {
                throw Error(ErrorCode::MalformedRow, "expected 5 fields, got " + std::to_string(fields.size()));
            }
            const std::string agent = trim(fields[column["agent_id"]]);
            const auto month = Month::parse(trim(fields[column["month"]]));
            if (!month) throw Error(ErrorCode::MalformedRow, "month must be mm/01/yyyy");
            const auto kind = parse_evaluation_kind(trim(fields[column["kind"]]));
            long product = 0;
            const std::string product_text = trim(fields[column["product_id"]]);
            if (!product_text.empty()) {
                std::size_t used = 0;
                try {
                    product = std::stol(product_text, &used);
                } catch (const std::exception&) {
                    used = 0;
                }
                if (used != product_text.size()) throw Error(ErrorCode::MalformedRow, "bad product_id");
            }
            std::vector<int> answers;
            std::istringstream scores(fields[column["scores"]]);
            std::string token;
            while (scores >> token) {
                std::size_t used = 0;
                int value = -1;
                try {
                    value = std::stoi(token, &used);
                } catch (const std::exception&) {
                    used = 0;
                }
                if (used != token.size()) throw Error(ErrorCode::InvalidQuestionScore, "bad answer '" + token + "'");
                answers.push_back(value);
            }
            CallEvaluation call(kind, answers, product);
            call_score(call);  // rejects all-not-applicable calls up front
            auto& group = groups[{agent, month->ordinal(), kind}];
            if (group.calls.empty()) {
                group.month = *month;
                group.first_row = row;
            }
            group.calls.push_back(std::move(call));
        } catch (const Error& e) {
            ++summary.skipped;
            log << row << ',' << to_string(e.code()) << ',' << '"' << e.what() << "\"\n";
        }
    }

    out << "agent_id,month,kind,calls,applicable_questions,score,category\n";
    for (const auto& [key, group] : groups) {
        const auto& [agent, ordinal, kind] = key;
        const auto monthly = monthly_score(group.calls, [&](std::string_view message) {
            log << group.first_row << ",warning,\"" << message << "\"\n";
        });
        const auto category = class_label(categorize(monthly.value, split_met));
        out << agent << ',' << group.month.to_string() << ',' << to_string(kind) << ',' << monthly.call_count << ','
            << monthly.applicable_count << ',' << monthly.value.to_fixed(2) << ',' << to_string(category) << '\n';
        ++summary.months;
    }
    return summary;
}

OutputDigests cmd_synth(const GeneratorConfig& generator, const fs::path& out) {
    const auto data = in_stage("synth", [&] { return generate(generator); });
    OutputDigests digests;
    std::ostringstream csv;
    write_csv(csv, data.records);
    write_file(out, "synthetic.csv", csv.str(), digests);
    write_file(out, "ground_truth.txt", data.truth.to_line() + "\n", digests);
    return digests;
}

CleanDataset load_dataset(const RunConfig& config, CleanResult* cleaned) {
    if (config.input.empty()) throw Error(ErrorCode::Usage, "no input CSV given");
    const auto records = in_stage("load", [&] { return load_csv(config.input); });
    CleanOptions options;
    options.target = config.target;
    options.min_class_size = config.min_class_size;
    options.split_met = config.effective_split_met();
    auto result = in_stage("clean", [&] { return clean(records, options); });
    auto dataset = in_stage("clean", [&] { return make_dataset(result.retained, config.target, options.split_met); });
    if (cleaned) *cleaned = std::move(result);
    return dataset;
}

OutputDigests cmd_clean(const RunConfig& config) {
    CleanResult cleaned;
    load_dataset(config, &cleaned);
    OutputDigests digests;
    std::ostringstream csv, log;
    write_csv(csv, cleaned.retained);
    write_rejection_log(log, cleaned.log);
    write_file(config.out, "clean.csv", csv.str(), digests);
    write_file(config.out, "rejections.csv", log.str(), digests);
    return digests;
}

OutputDigests cmd_train(const RunConfig& config, const WarningSink& sink) {
    config.validate();
    const auto dataset = load_dataset(config);
    warn_degenerate(dataset, sink);
    const auto problem = make_problem(dataset, config.scaling);
    std::map<std::pair<int, ModelKind>, std::shared_ptr<const Model>> models;
    for (auto kind : config.models) {
        HoldoutOptions options;
        options.ratios = config.ratios;
        options.keep_models = true;
        const auto result =
            in_stage("train", [&] { return evaluate_holdout(config.spec_for(kind), problem, config.seed, options); });
        for (std::size_t c = 0; c < result.models.size(); ++c) models[{static_cast<int>(c), kind}] = result.models[c];
    }
    OutputDigests digests;
    in_stage("save models", [&] { save_models(config, dataset, problem, models, digests); });
    return digests;
}

OutputDigests cmd_evaluate(const RunConfig& config, const WarningSink& sink) {
    config.validate();
    const auto dataset = load_dataset(config);
    warn_degenerate(dataset, sink);
    return evaluate_into(config, dataset, make_problem(dataset, config.scaling), false);
}

OutputDigests cmd_sensitivity(const RunConfig& config, const WarningSink& sink) {
    config.validate();
    const auto dataset = load_dataset(config);
    warn_degenerate(dataset, sink);
    return sensitivity_into(config, make_problem(dataset, config.scaling));
}

OutputDigests cmd_run(const RunConfig& config, const WarningSink& sink) {
    config.validate();
    CleanResult cleaned;
    const auto dataset = load_dataset(config, &cleaned);
    warn_degenerate(dataset, sink);
    const auto problem = make_problem(dataset, config.scaling);

    OutputDigests digests;
    std::ostringstream log;
    write_rejection_log(log, cleaned.log);
    write_file(config.out, "rejections.csv", log.str(), digests);
    digests.merge(evaluate_into(config, dataset, problem, config.save_models));
    if (config.sensitivity) digests.merge(sensitivity_into(config, problem));

    json manifest;
    manifest["format"] = "csrminer-manifest";
    manifest["version"] = 1;
    manifest["config"] = json::parse(config.to_json());
    manifest["config_hash"] = config.hash();
    manifest["input"] = {{"path", config.input}, {"fnv1a64", file_digest(config.input)}};
    json seeds;
    seeds["split"] = config.seed;
    for (auto kind : config.models) seeds["models"][std::string(to_string(kind))] = config.spec_for(kind).seed;
    manifest["seeds"] = seeds;
    manifest["records"] = {{"retained", dataset.size()}, {"rejected", cleaned.log.size()}};
    manifest["outputs"] = digests;
    OutputDigests all = digests;
    write_file(config.out, "manifest.json", manifest.dump(2) + "\n", all);
    return all;
}

RunConfig config_from_manifest(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot read manifest '" + path.string() + "'");
    json manifest;
    try {
        manifest = json::parse(in);
        if (manifest.value("format", "") != "csrminer-manifest") {
            throw Error(ErrorCode::InvalidConfig, "not a csrminer manifest");
        }
        return RunConfig::from_json(manifest.at("config").dump());
    } catch (const json::exception& e) {
        throw Error(ErrorCode::InvalidConfig, std::string("manifest: ") + e.what());
    }
}

}  // namespace csrminer
