#include "csrminer/sensitivity.hpp"

#include <algorithm>
#include <numeric>

#include "csrminer/dataset.hpp"
#include "csrminer/evaluation.hpp"

namespace csrminer {

bool SensitivityRanking::complete() const {
    return std::all_of(error.begin(), error.end(), [](const std::string& e) { return e.empty(); });
}

int SensitivityRanking::rank_of(std::string_view attribute) const {
    for (std::size_t i = 0; i < attributes.size(); ++i) {
        if (attributes[i] == attribute) return rank[i];
    }
    return 0;
}

std::vector<int> ranks_from_errors(const std::vector<std::size_t>& errors) {
    std::vector<std::size_t> order(errors.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return errors[a] > errors[b]; });
    std::vector<int> rank(errors.size());
    for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = static_cast<int>(i + 1);
    return rank;
}

namespace {

std::vector<int> pick(std::span<const int> values, std::span<const std::size_t> rows) {
    std::vector<int> out;
    out.reserve(rows.size());
    for (auto r : rows) out.push_back(values[r]);
    return out;
}

/// Misclassifications of one train/evaluate round. `removed` indexes a
/// feature column, or equals the column count for the hybrid leaf input.
std::size_t misclassified(const ClassifierSpec& spec, const Matrix& all, std::span<const int> labels,
                          std::span<const std::size_t> train_rows, std::span<const std::size_t> validation_rows,
                          std::span<const std::size_t> eval_rows, std::size_t removed) {
    ClassifierSpec cell = spec;
    Matrix features = all;
    if (removed < all.cols()) {
        features = all.drop_column(removed);
    } else if (spec.kind == ModelKind::Hybrid) {
        cell.kind = ModelKind::MlpBp;
        cell.params.mlp.phase2 = MlpParams::Phase2::None;
    }
    const Matrix train_x = features.select_rows(train_rows);
    const Matrix validation_x = features.select_rows(validation_rows);
    const Matrix eval_x = features.select_rows(eval_rows);
    const auto train_y = pick(labels, train_rows);
    const auto validation_y = pick(labels, validation_rows);
    const auto eval_y = pick(labels, eval_rows);
    const auto model = train_model(cell, {train_x, train_y}, {validation_x, validation_y});
    return confusion(*model, eval_x, eval_y).misclassified();
}

}  // namespace

SensitivityRanking rank_inputs(const ClassifierSpec& spec, const Problem& problem, int class_index,
                               std::uint64_t seed, std::size_t folds) {
    if (problem.attributes.size() < 2) {
        throw Error(ErrorCode::InsufficientData, "sensitivity needs at least two attributes");
    }
    if (class_index < 0 || static_cast<std::size_t>(class_index) >= problem.class_names.size()) {
        throw Error(ErrorCode::InvalidConfig, "class index out of range");
    }
    SensitivityRanking out;
    out.class_name = problem.class_names[static_cast<std::size_t>(class_index)];
    out.kind = spec.kind;
    out.attributes = problem.attributes;
    if (spec.kind == ModelKind::Hybrid) out.attributes.emplace_back(kLeafAttribute);
    const std::size_t count = out.attributes.size();
    out.accumulated_error.assign(count, 0);
    out.error.assign(count, {});

    ClassifierSpec fixed = spec;
    fixed.seed = derive_seed(spec.seed, static_cast<std::uint64_t>(class_index));
    const auto labels = problem.one_vs_rest(class_index);

    struct Round {
        std::vector<std::size_t> train, validation, eval;
        Matrix features;
    };
    std::vector<Round> rounds;
    if (spec.kind == ModelKind::Cart) {
        const auto parts = kfold_partition(problem.size(), folds, seed);
        for (std::size_t f = 0; f < parts.size(); ++f) {
            Round round;
            for (std::size_t g = 0; g < parts.size(); ++g) {
                if (g != f) round.train.insert(round.train.end(), parts[g].begin(), parts[g].end());
            }
            std::sort(round.train.begin(), round.train.end());
            round.eval = parts[f];
            round.features = problem.features(round.train);
            rounds.push_back(std::move(round));
        }
    } else {
        const Split parts = split(problem.size(), SplitRatios{}, seed);
        Round round;
        round.train = parts.train;
        round.validation = parts.validation;
        round.eval = parts.validation;
        round.features = problem.features(round.train);
        rounds.push_back(std::move(round));
    }

    for (std::size_t a = 0; a < count; ++a) {
        try {
            for (const auto& round : rounds) {
                out.accumulated_error[a] +=
                    misclassified(fixed, round.features, labels, round.train, round.validation, round.eval, a);
            }
        } catch (const Error& e) {
            out.error[a] = std::string(to_string(e.code())) + ": " + e.what();
        }
    }

    std::vector<std::size_t> usable;
    std::vector<std::size_t> usable_errors;
    for (std::size_t a = 0; a < count; ++a) {
        if (out.error[a].empty()) {
            usable.push_back(a);
            usable_errors.push_back(out.accumulated_error[a]);
        }
    }
    const auto partial = ranks_from_errors(usable_errors);
    out.rank.assign(count, 0);
    for (std::size_t i = 0; i < usable.size(); ++i) out.rank[usable[i]] = partial[i];
    return out;
}

std::vector<SensitivityRanking> sensitivity_grid(const std::vector<ClassifierSpec>& specs, const Problem& problem,
                                                 const std::vector<int>& classes, std::uint64_t seed,
                                                 std::size_t folds) {
    if (specs.empty() || classes.empty()) throw Error(ErrorCode::InvalidConfig, "empty sensitivity grid");
    std::vector<SensitivityRanking> grid;
    grid.reserve(specs.size() * classes.size());
    for (int c : classes) {
        for (const auto& spec : specs) grid.push_back(rank_inputs(spec, problem, c, seed, folds));
    }
    return grid;
}

std::map<std::string, double> mean_ranks(const std::vector<SensitivityRanking>& grid) {
    std::map<std::string, double> sum;
    std::map<std::string, int> n;
    for (const auto& row : grid) {
        if (!row.complete()) continue;
        for (std::size_t i = 0; i < row.attributes.size(); ++i) {
            sum[row.attributes[i]] += row.rank[i];
            ++n[row.attributes[i]];
        }
    }
    for (auto& [name, total] : sum) total /= n[name];
    return sum;
}

}  // namespace csrminer
