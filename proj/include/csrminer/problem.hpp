#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "csrminer/dataset.hpp"
#include "csrminer/matrix.hpp"

namespace csrminer {

enum class ScalingMode {
    TrainOnly,  // scaling refit on the training portion of every split/fold
    AllData,    // scaling fit once on the whole cleaned dataset
};

/// A multiclass problem as the evaluation and sensitivity harnesses see it.
/// `features(fit_rows)` returns the feature matrix of every row, with any
/// data-dependent preprocessing fitted on `fit_rows` only.
struct Problem {
    std::vector<std::string> attributes;
    std::vector<std::string> class_names;
    std::vector<int> labels;  // index into class_names
    std::function<Matrix(std::span<const std::size_t> fit_rows)> features;

    std::size_t size() const noexcept { return labels.size(); }
    std::size_t class_count(int class_index) const;
    /// 1 where the row belongs to `class_index`, else 0.
    std::vector<int> one_vs_rest(int class_index) const;
    int class_index(std::string_view name) const;  // -1 when absent
};

Problem make_problem(const CleanDataset& dataset, ScalingMode mode = ScalingMode::TrainOnly);
/// Pre-scaled features; `features` ignores fit rows.
Problem make_problem(Matrix features, std::vector<int> labels, std::vector<std::string> class_names,
                     std::vector<std::string> attributes);

/// splitmix64 of base ^ tag; gives independent, reproducible seeds per cell.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag);

}  // namespace csrminer
