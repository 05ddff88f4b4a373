#include "csrminer/models/model.hpp"

#include <algorithm>
#include <cctype>

#include "csrminer/models/cart.hpp"
#include "csrminer/models/hybrid.hpp"
#include "csrminer/models/linear.hpp"
#include "csrminer/models/mlp.hpp"
#include "csrminer/models/pnn.hpp"
#include "csrminer/models/svm.hpp"

namespace csrminer {

std::string_view to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::Linear: return "Linear";
        case ModelKind::MlpBp: return "BP";
        case ModelKind::MlpBpCg: return "BP/CG";
        case ModelKind::Pnn: return "PNN";
        case ModelKind::Cart: return "CART";
        case ModelKind::Hybrid: return "Hybrid";
        case ModelKind::Svm: return "SVM";
    }
    return "?";
}

ModelKind parse_model_kind(std::string_view text) {
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    if (lower == "linear" || lower == "lnn") return ModelKind::Linear;
    if (lower == "bp" || lower == "mlp" || lower == "mlp-bp") return ModelKind::MlpBp;
    if (lower == "bp/cg" || lower == "bpcg" || lower == "bp-cg" || lower == "mlp-bpcg") return ModelKind::MlpBpCg;
    if (lower == "pnn") return ModelKind::Pnn;
    if (lower == "cart") return ModelKind::Cart;
    if (lower == "hybrid") return ModelKind::Hybrid;
    if (lower == "svm") return ModelKind::Svm;
    throw Error(ErrorCode::Usage, "unknown model kind '" + std::string(text) + "'");
}

void ClassifierSpec::validate() const {
    auto bad = [](const std::string& what) { throw Error(ErrorCode::InvalidHyperparameter, what); };
    const bool uses_mlp = kind == ModelKind::MlpBp || kind == ModelKind::MlpBpCg || kind == ModelKind::Hybrid;
    const bool uses_cart = kind == ModelKind::Cart || kind == ModelKind::Hybrid;
    if (uses_mlp) {
        if (params.mlp.hidden_neurons < 1) bad("hidden_neurons must be >= 1");
        if (params.mlp.epochs < 1) bad("epochs must be >= 1");
        if (!(params.mlp.learning_rate > 0.0)) bad("learning_rate must be > 0");
        if (!(params.mlp.momentum >= 0.0 && params.mlp.momentum < 1.0)) bad("momentum must lie in [0,1)");
    }
    if (uses_cart) {
        if (params.cart.max_depth < 1) bad("max_depth must be >= 1");
        if (params.cart.min_leaf < 1) bad("min_leaf must be >= 1");
    }
    if (kind == ModelKind::Pnn && !(params.pnn.sigma > 0.0)) bad("sigma must be > 0");
    if (kind == ModelKind::Svm) {
        if (params.svm.degree < 1) bad("kernel degree must be >= 1");
        if (!(params.svm.c > 0.0)) bad("C must be > 0");
        if (!(params.svm.tolerance > 0.0)) bad("tolerance must be > 0");
    }
}

double Model::predict_score(std::span<const double> x) const {
    if (x.size() != arity()) {
        throw Error(ErrorCode::ArityMismatch, "model expects " + std::to_string(arity()) + " inputs, got " +
                                                  std::to_string(x.size()));
    }
    return score(x);
}

BinaryLabel Model::predict(std::span<const double> x) const {
    if (x.size() != arity()) {
        throw Error(ErrorCode::ArityMismatch, "model expects " + std::to_string(arity()) + " inputs, got " +
                                                  std::to_string(x.size()));
    }
    return decide(x);
}

namespace detail {

void check_binary_labels(std::span<const int> y, std::size_t rows, bool need_both) {
    if (y.size() != rows) throw Error(ErrorCode::InsufficientData, "label count does not match feature rows");
    bool seen[2] = {false, false};
    for (int v : y) {
        if (v != 0 && v != 1) throw Error(ErrorCode::InsufficientData, "binary labels must be 0 or 1");
        seen[v] = true;
    }
    if (need_both && !(seen[0] && seen[1])) {
        throw Error(ErrorCode::InsufficientData, "training data must contain both correct and wrong records");
    }
}

}  // namespace detail

std::unique_ptr<Model> train_model(const ClassifierSpec& spec, LabeledView train, LabeledView validation) {
    spec.validate();
    switch (spec.kind) {
        case ModelKind::Linear: return std::make_unique<LinearModel>(train_linear(train));
        case ModelKind::MlpBp: {
            MlpParams p = spec.params.mlp;
            p.phase2 = MlpParams::Phase2::None;
            return std::make_unique<MlpModel>(train_mlp(train, validation, p, spec.seed));
        }
        case ModelKind::MlpBpCg: {
            MlpParams p = spec.params.mlp;
            p.phase2 = MlpParams::Phase2::ConjugateGradient;
            return std::make_unique<MlpModel>(train_mlp(train, validation, p, spec.seed));
        }
        case ModelKind::Pnn: return std::make_unique<PnnModel>(train_pnn(train, spec.params.pnn));
        case ModelKind::Cart: return std::make_unique<CartModel>(train_cart(train, spec.params.cart));
        case ModelKind::Hybrid:
            return std::make_unique<HybridModel>(
                train_hybrid(train, validation, spec.params.cart, spec.params.mlp, spec.seed));
        case ModelKind::Svm: return std::make_unique<SvmModel>(train_svm(train, spec.params.svm));
    }
    throw Error(ErrorCode::WrongModelKind, "unsupported model kind");
}

namespace {

constexpr const char* kFormatTag = "csrminer-model";
constexpr int kFormatVersion = 1;

}  // namespace

std::string save_model(const Model& model, std::string_view scaling_fingerprint) {
    const auto& info = model.info();
    nlohmann::json j;
    j["format"] = kFormatTag;
    j["version"] = kFormatVersion;
    j["kind"] = to_string(model.kind());
    j["arity"] = model.arity();
    j["scaling"] = scaling_fingerprint;
    j["info"] = {{"epochs_run", info.epochs_run},
                 {"final_training_error", info.final_training_error},
                 {"converged", info.converged},
                 {"degenerate_design", info.degenerate_design},
                 {"note", info.note}};
    j["parameters"] = model.parameters_json();
    return j.dump(1);
}

std::unique_ptr<Model> load_model(std::string_view text) {
    try {
        const auto j = nlohmann::json::parse(text);
        if (j.at("format").get<std::string>() != kFormatTag) {
            throw Error(ErrorCode::ModelFormat, "not a csrminer model file");
        }
        if (j.at("version").get<int>() != kFormatVersion) {
            throw Error(ErrorCode::ModelFormat, "unsupported model format version");
        }
        const auto kind = parse_model_kind(j.at("kind").get<std::string>());
        const auto arity = j.at("arity").get<std::size_t>();
        const auto& p = j.at("parameters");
        std::unique_ptr<Model> model;
        switch (kind) {
            case ModelKind::Linear: model = LinearModel::from_json(p, arity); break;
            case ModelKind::MlpBp:
            case ModelKind::MlpBpCg: model = MlpModel::from_json(kind, p, arity); break;
            case ModelKind::Pnn: model = PnnModel::from_json(p, arity); break;
            case ModelKind::Cart: model = CartModel::from_json(p, arity); break;
            case ModelKind::Hybrid: model = HybridModel::from_json(p, arity); break;
            case ModelKind::Svm: model = SvmModel::from_json(p, arity); break;
        }
        const auto& info = j.at("info");
        model->info_.epochs_run = info.at("epochs_run").get<std::size_t>();
        model->info_.final_training_error = info.at("final_training_error").get<double>();
        model->info_.converged = info.at("converged").get<bool>();
        model->info_.degenerate_design = info.at("degenerate_design").get<bool>();
        model->info_.note = info.at("note").get<std::string>();
        return model;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ModelFormat, std::string("malformed model file: ") + e.what());
    }
}

}  // namespace csrminer
