#include "csrminer/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "csrminer/hash.hpp"

namespace csrminer {

using nlohmann::json;

namespace {

json kinds_to_json(const std::vector<ModelKind>& kinds) {
    json out = json::array();
    for (auto k : kinds) out.push_back(std::string(to_string(k)));
    return out;
}

std::vector<ModelKind> kinds_from_json(const json& j) {
    std::vector<ModelKind> out;
    for (const auto& item : j) out.push_back(parse_model_kind(item.get<std::string>()));
    return out;
}

void reject_unknown(const json& j, std::initializer_list<std::string_view> known, std::string_view where) {
    for (const auto& [key, value] : j.items()) {
        bool found = false;
        for (auto k : known) found = found || k == key;
        if (!found) {
            throw Error(ErrorCode::InvalidConfig, "unknown key '" + key + "' in " + std::string(where));
        }
    }
}

template <typename T>
void take(const json& j, const char* key, T& field) {
    if (j.contains(key)) field = j.at(key).get<T>();
}

}  // namespace

ClassifierSpec RunConfig::spec_for(ModelKind kind) const {
    ClassifierSpec spec;
    spec.kind = kind;
    spec.params = params;
    spec.params.mlp.phase2 =
        kind == ModelKind::MlpBpCg ? MlpParams::Phase2::ConjugateGradient : MlpParams::Phase2::None;
    spec.seed = derive_seed(seed, static_cast<std::uint64_t>(kind) + 1);
    return spec;
}

void RunConfig::validate() const {
    split_sizes(100, ratios);
    if (models.empty()) throw Error(ErrorCode::InvalidConfig, "no models selected");
    if (folds < 2) throw Error(ErrorCode::BadFoldCount, "folds must be at least 2");
    for (auto kind : models) spec_for(kind).validate();
    for (auto kind : sensitivity_models) spec_for(kind).validate();
}

std::string RunConfig::to_json() const {
    json j;
    j["input"] = input;
    j["out"] = out;
    j["target"] = std::string(csrminer::to_string(target));
    j["split_met"] = split_met ? json(*split_met) : json(nullptr);
    j["min_class_size"] = min_class_size;
    j["split"] = {{"train", ratios.train}, {"test", ratios.test}, {"validation", ratios.validation}};
    j["seed"] = seed;
    j["scaling"] = scaling == ScalingMode::TrainOnly ? "train-only" : "all-data";
    j["models"] = kinds_to_json(models);
    j["mlp"] = {{"hidden_neurons", params.mlp.hidden_neurons},
                {"epochs", params.mlp.epochs},
                {"learning_rate", params.mlp.learning_rate},
                {"momentum", params.mlp.momentum}};
    j["pnn"] = {{"sigma", params.pnn.sigma}};
    j["cart"] = {{"max_depth", params.cart.max_depth}, {"min_leaf", params.cart.min_leaf}};
    j["svm"] = {{"degree", params.svm.degree},
                {"c", params.svm.c},
                {"tolerance", params.svm.tolerance},
                {"max_iterations", params.svm.max_iterations},
                {"cache_mb", params.svm.cache_mb}};
    j["evaluation"] = {{"cart_kfold", cart_kfold}, {"folds", folds}};
    j["sensitivity"] = {{"enabled", sensitivity}, {"models", kinds_to_json(sensitivity_models)}};
    j["save_models"] = save_models;
    return j.dump(2) + "\n";
}

RunConfig RunConfig::from_json(const std::string& text, RunConfig base) {
    RunConfig c = std::move(base);
    try {
        const json j = json::parse(text);
        if (!j.is_object()) throw Error(ErrorCode::InvalidConfig, "config must be a JSON object");
        reject_unknown(j,
                       {"input", "out", "target", "split_met", "min_class_size", "split", "seed", "scaling",
                        "models", "mlp", "pnn", "cart", "svm", "evaluation", "sensitivity", "save_models"},
                       "config");
        take(j, "input", c.input);
        take(j, "out", c.out);
        if (j.contains("target")) c.target = parse_evaluation_kind(j.at("target").get<std::string>());
        if (j.contains("split_met")) {
            const auto& v = j.at("split_met");
            c.split_met = v.is_null() ? std::nullopt : std::optional<bool>(v.get<bool>());
        }
        take(j, "min_class_size", c.min_class_size);
        if (j.contains("split")) {
            const auto& s = j.at("split");
            reject_unknown(s, {"train", "test", "validation"}, "split");
            take(s, "train", c.ratios.train);
            take(s, "test", c.ratios.test);
            take(s, "validation", c.ratios.validation);
        }
        take(j, "seed", c.seed);
        if (j.contains("scaling")) {
            const auto mode = j.at("scaling").get<std::string>();
            if (mode == "train-only") {
                c.scaling = ScalingMode::TrainOnly;
            } else if (mode == "all-data") {
                c.scaling = ScalingMode::AllData;
            } else {
                throw Error(ErrorCode::InvalidConfig, "scaling must be train-only or all-data");
            }
        }
        if (j.contains("models")) c.models = kinds_from_json(j.at("models"));
        if (j.contains("mlp")) {
            const auto& m = j.at("mlp");
            reject_unknown(m, {"hidden_neurons", "epochs", "learning_rate", "momentum"}, "mlp");
            take(m, "hidden_neurons", c.params.mlp.hidden_neurons);
            take(m, "epochs", c.params.mlp.epochs);
            take(m, "learning_rate", c.params.mlp.learning_rate);
            take(m, "momentum", c.params.mlp.momentum);
        }
        if (j.contains("pnn")) {
            reject_unknown(j.at("pnn"), {"sigma"}, "pnn");
            take(j.at("pnn"), "sigma", c.params.pnn.sigma);
        }
        if (j.contains("cart")) {
            const auto& m = j.at("cart");
            reject_unknown(m, {"max_depth", "min_leaf"}, "cart");
            take(m, "max_depth", c.params.cart.max_depth);
            take(m, "min_leaf", c.params.cart.min_leaf);
        }
        if (j.contains("svm")) {
            const auto& m = j.at("svm");
            reject_unknown(m, {"degree", "c", "tolerance", "max_iterations", "cache_mb"}, "svm");
            take(m, "degree", c.params.svm.degree);
            take(m, "c", c.params.svm.c);
            take(m, "tolerance", c.params.svm.tolerance);
            take(m, "max_iterations", c.params.svm.max_iterations);
            take(m, "cache_mb", c.params.svm.cache_mb);
        }
        if (j.contains("evaluation")) {
            const auto& m = j.at("evaluation");
            reject_unknown(m, {"cart_kfold", "folds"}, "evaluation");
            take(m, "cart_kfold", c.cart_kfold);
            take(m, "folds", c.folds);
        }
        if (j.contains("sensitivity")) {
            const auto& m = j.at("sensitivity");
            reject_unknown(m, {"enabled", "models"}, "sensitivity");
            take(m, "enabled", c.sensitivity);
            if (m.contains("models")) c.sensitivity_models = kinds_from_json(m.at("models"));
        }
        take(j, "save_models", c.save_models);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::InvalidConfig, std::string("config: ") + e.what());
    }
    return c;
}

RunConfig RunConfig::from_json(const std::string& text) { return from_json(text, RunConfig{}); }

std::string RunConfig::hash() const { return hex_digest(fnv1a64(to_json())); }

RunConfig load_run_config(const std::string& path, RunConfig base) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot read config '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return RunConfig::from_json(text.str(), std::move(base));
}

std::vector<ModelKind> parse_model_list(std::string_view text) {
    if (text == "all") return {std::begin(kAllModelKinds), std::end(kAllModelKinds)};
    std::vector<ModelKind> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto item = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
        if (item.empty()) throw Error(ErrorCode::Usage, "empty entry in model list");
        const auto kind = parse_model_kind(item);
        if (std::find(out.begin(), out.end(), kind) == out.end()) out.push_back(kind);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    // table column order regardless of how the list was written
    std::vector<ModelKind> ordered;
    for (auto kind : kAllModelKinds) {
        if (std::find(out.begin(), out.end(), kind) != out.end()) ordered.push_back(kind);
    }
    return ordered;
}

}  // namespace csrminer
