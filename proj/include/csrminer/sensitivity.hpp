#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "csrminer/models/model.hpp"
#include "csrminer/problem.hpp"

namespace csrminer {

/// Name of the hybrid's extra leaf input in rankings.
inline constexpr std::string_view kLeafAttribute = "Note";

struct SensitivityRanking {
    std::string class_name;
    ModelKind kind = ModelKind::Linear;
    std::vector<std::string> attributes;        // feature order (plus the leaf input for Hybrid)
    std::vector<std::size_t> accumulated_error;  // misclassifications with that attribute removed
    std::vector<int> rank;                       // 1 = most important; 0 when that retraining failed
    std::vector<std::string> error;              // failure reason per attribute, empty on success

    bool complete() const;
    int rank_of(std::string_view attribute) const;  // 0 when absent
};

/// Retrains `spec` once per removed attribute on a split (or folds, for CART)
/// that is fixed by `seed`, so only the removal changes between retrainings.
/// The model seed is also held fixed across removals.
SensitivityRanking rank_inputs(const ClassifierSpec& spec, const Problem& problem, int class_index,
                               std::uint64_t seed, std::size_t folds = 10);

/// Assigns 1..A by descending error; equal errors keep attribute order.
std::vector<int> ranks_from_errors(const std::vector<std::size_t>& errors);

/// Rows ordered class-major, spec-minor.
std::vector<SensitivityRanking> sensitivity_grid(const std::vector<ClassifierSpec>& specs, const Problem& problem,
                                                 const std::vector<int>& classes, std::uint64_t seed,
                                                 std::size_t folds = 10);

/// Extension: mean rank of every attribute over the complete rows of a grid.
std::map<std::string, double> mean_ranks(const std::vector<SensitivityRanking>& grid);

}  // namespace csrminer
