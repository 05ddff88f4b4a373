#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "csrminer/dataset.hpp"
#include "csrminer/models/model.hpp"
#include "csrminer/problem.hpp"
#include "csrminer/scoring.hpp"

namespace csrminer {

/// Everything a pipeline run depends on. Defaults are the published values
/// where they exist (113 neurons, 100 epochs, depth 32, degree 3, 50/25/25,
/// k = 10).
struct RunConfig {
    std::string input;
    std::string out = "csrminer-out";
    EvaluationKind target = EvaluationKind::CustomerService;
    /// Split the met band into Met1/Met2. Unset: split for customer service only.
    std::optional<bool> split_met;
    std::size_t min_class_size = 50;
    SplitRatios ratios;
    std::uint64_t seed = 20030401;
    ScalingMode scaling = ScalingMode::TrainOnly;
    std::vector<ModelKind> models{std::begin(kAllModelKinds), std::end(kAllModelKinds)};
    Hyperparameters params;
    bool cart_kfold = true;
    std::size_t folds = 10;
    bool sensitivity = true;
    std::vector<ModelKind> sensitivity_models{ModelKind::Linear, ModelKind::MlpBp, ModelKind::MlpBpCg,
                                              ModelKind::Hybrid};
    bool save_models = true;

    bool effective_split_met() const { return split_met.value_or(target == EvaluationKind::CustomerService); }

    /// Spec for one model kind with its derived seed; BP/CG turns on phase 2.
    ClassifierSpec spec_for(ModelKind kind) const;
    /// Throws InvalidConfig / InvalidHyperparameter / BadRatios.
    void validate() const;

    /// Canonical JSON (every field, fixed key order).
    std::string to_json() const;
    /// Keys present in `text` override the fields of `base`; unknown keys
    /// are rejected.
    static RunConfig from_json(const std::string& text, RunConfig base);
    static RunConfig from_json(const std::string& text);
    std::string hash() const;
};

RunConfig load_run_config(const std::string& path, RunConfig base = {});

/// Comma-separated kinds ("cart,bp/cg,svm") or "all".
std::vector<ModelKind> parse_model_list(std::string_view text);

}  // namespace csrminer
