#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "csrminer/dataset.hpp"
#include "csrminer/models/model.hpp"
#include "csrminer/problem.hpp"

namespace csrminer {

/// One-vs-rest accounting for one class. Stores the four counts; the
/// accuracies are derived from them, so the overall/per-category identity
/// holds exactly.
struct ClassReport {
    std::string class_name;
    std::size_t case_count_correct = 0;  // records that belong to the class
    std::size_t case_count_wrong = 0;
    std::size_t hits_correct = 0;  // class members predicted "correct"
    std::size_t hits_wrong = 0;    // non-members predicted "wrong"

    std::size_t total() const noexcept { return case_count_correct + case_count_wrong; }
    double acc_correct() const noexcept;
    double acc_wrong() const noexcept;
    double overall() const noexcept;
    std::size_t misclassified() const noexcept { return total() - hits_correct - hits_wrong; }

    ClassReport& operator+=(const ClassReport& other);
    friend bool operator==(const ClassReport&, const ClassReport&) = default;
};

/// Percentage half-up to two decimals, computed exactly from counts:
/// percent(873, 1448) == "60.29".
std::string percent(std::size_t hits, std::size_t cases);

ClassReport confusion(const Model& model, const Matrix& x, std::span<const int> y, std::string class_name = {});

enum class Protocol { Holdout, KFold };
std::string_view to_string(Protocol protocol);

/// Balanced seeded folds; sizes differ by at most one.
std::vector<std::vector<std::size_t>> kfold_partition(std::size_t n, std::size_t k, std::uint64_t seed);

struct HoldoutOptions {
    SplitRatios ratios;
    /// Keep the trained per-class models in the result.
    bool keep_models = false;
};

struct ProtocolResult {
    Protocol protocol = Protocol::Holdout;
    std::vector<ClassReport> reports;  // one per class, in class order
    std::vector<std::shared_ptr<const Model>> models;  // holdout with keep_models only
};

/// Train on the 50% partition (validation 25% available for early
/// selection) and report on the validation 25%. Scaling is fitted on the
/// training partition. One row per class, same split for every class.
ProtocolResult evaluate_holdout(const ClassifierSpec& spec, const Problem& problem, std::uint64_t seed,
                                const HoldoutOptions& options = {});

/// Pooled k-fold: every record is evaluated exactly once, so the case counts
/// add up to the whole dataset. Scaling refit inside every fold.
ProtocolResult evaluate_kfold(const ClassifierSpec& spec, const Problem& problem, std::size_t k,
                              std::uint64_t seed);

struct MatrixCell {
    ModelKind kind;
    Protocol protocol = Protocol::Holdout;
    std::optional<ClassReport> report;
    std::string error;  // set when training failed for this cell
};

/// Table-shaped results: rows are classes, columns model kinds.
struct EvaluationMatrix {
    std::vector<std::string> classes;
    std::vector<std::size_t> class_sizes;  // members of each class in the whole dataset
    std::size_t dataset_size = 0;
    std::vector<ModelKind> kinds;
    std::vector<std::vector<MatrixCell>> cells;  // [class][kind]

    const MatrixCell& cell(std::size_t class_index, ModelKind kind) const;
};

struct EvaluationPlan {
    std::vector<ClassifierSpec> specs;
    HoldoutOptions holdout;
    bool cart_kfold = true;
    std::size_t folds = 10;
};

/// Runs every spec (CART through k-fold when `cart_kfold`, the rest through
/// holdout) and assembles the matrix. A failing spec is recorded per cell.
EvaluationMatrix evaluate_all(const EvaluationPlan& plan, const Problem& problem, std::uint64_t seed,
                              std::map<std::pair<int, ModelKind>, std::shared_ptr<const Model>>* models = nullptr);

/// Kinds ordered by mean overall accuracy over classes (descending), ties by
/// mean correct-class accuracy, then by column order.
std::vector<ModelKind> rank_models(const EvaluationMatrix& matrix);

/// Spread of one kind's mean overall accuracy across repeated runs.
struct SeedSpread {
    ModelKind kind;
    std::size_t runs = 0;  // seeds whose every cell succeeded
    double mean = 0.0;
    double stddev = 0.0;   // sample standard deviation, 0 for fewer than two runs
};

/// Repeats `evaluate_all` once per seed (new split, folds and model seeds)
/// and summarizes every kind of the plan.
std::vector<SeedSpread> seed_spread(const EvaluationPlan& plan, const Problem& problem,
                                    std::span<const std::uint64_t> seeds);

}  // namespace csrminer
