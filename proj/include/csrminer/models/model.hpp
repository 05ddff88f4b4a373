#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "csrminer/error.hpp"
#include "csrminer/matrix.hpp"

namespace csrminer {

/// One-vs-rest target: membership in the class under study ("correct") or
/// any other class ("wrong").
enum class BinaryLabel { Wrong = 0, Correct = 1 };

enum class ModelKind { Linear, MlpBp, MlpBpCg, Pnn, Cart, Hybrid, Svm };

/// Column order of the result tables.
inline constexpr ModelKind kAllModelKinds[] = {ModelKind::Linear, ModelKind::MlpBp, ModelKind::MlpBpCg,
                                               ModelKind::Pnn,    ModelKind::Cart,  ModelKind::Hybrid,
                                               ModelKind::Svm};

std::string_view to_string(ModelKind kind);
/// Accepts table names ("BP/CG") and lowercase aliases ("bpcg", "cart", ...).
ModelKind parse_model_kind(std::string_view text);

struct MlpParams {
    enum class Phase2 { None, ConjugateGradient };
    std::size_t hidden_neurons = 113;
    std::size_t epochs = 100;  // BP epochs, and CG iterations when phase 2 runs
    double learning_rate = 0.1;
    double momentum = 0.9;
    Phase2 phase2 = Phase2::None;
};

struct PnnParams {
    double sigma = 0.1;
};

struct CartParams {
    std::size_t max_depth = 32;
    std::size_t min_leaf = 5;
};

struct SvmParams {
    int degree = 3;
    double c = 1.0;
    double tolerance = 1e-3;
    std::size_t max_iterations = 0;  // 0: ten per training record
    std::size_t cache_mb = 256;
};

struct Hyperparameters {
    MlpParams mlp;
    PnnParams pnn;
    CartParams cart;
    SvmParams svm;
};

struct ClassifierSpec {
    ModelKind kind = ModelKind::Cart;
    Hyperparameters params;
    std::uint64_t seed = 1;

    /// Throws InvalidHyperparameter for the fields the kind actually uses.
    void validate() const;
};

/// What training reports besides the learned parameters.
struct TrainingInfo {
    std::size_t epochs_run = 0;
    double final_training_error = 0.0;
    bool converged = true;
    bool degenerate_design = false;
    std::string note;
};

/// A trained binary classifier. Immutable once built, so a shared instance
/// can serve concurrent predictions.
class Model {
public:
    virtual ~Model() = default;

    virtual ModelKind kind() const = 0;
    virtual std::size_t arity() const = 0;

    /// Real-valued output before thresholding (linear output, network
    /// activation, posterior, leaf purity or SVM decision value).
    double predict_score(std::span<const double> x) const;
    BinaryLabel predict(std::span<const double> x) const;

    const TrainingInfo& info() const noexcept { return info_; }

    virtual nlohmann::json parameters_json() const = 0;

protected:
    friend std::unique_ptr<Model> load_model(std::string_view text);

    virtual double score(std::span<const double> x) const = 0;
    virtual BinaryLabel decide(std::span<const double> x) const = 0;

    TrainingInfo info_;
};

/// Binary training data; labels are 0 (wrong) / 1 (correct).
struct LabeledView {
    const Matrix& x;
    std::span<const int> y;
};

std::unique_ptr<Model> train_model(const ClassifierSpec& spec, LabeledView train, LabeledView validation);

/// Versioned JSON text: kind tag, arity, scaling fingerprint, parameters.
std::string save_model(const Model& model, std::string_view scaling_fingerprint = {});
std::unique_ptr<Model> load_model(std::string_view text);

namespace detail {
void check_binary_labels(std::span<const int> y, std::size_t rows, bool need_both);
}

}  // namespace csrminer
