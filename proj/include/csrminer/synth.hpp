#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "csrminer/dataset.hpp"
#include "csrminer/scoring.hpp"

namespace csrminer {

/// Knobs of the synthetic call-center generator. Each record's latent quality
/// is a weighted sum of standardized per-attribute signals plus Gaussian
/// noise; quantile thresholding then turns it into scores whose class census
/// follows the requested proportions.
struct GeneratorConfig {
    std::size_t n_records = 14671;
    std::size_t n_agents = 200;
    std::size_t n_products = 8;
    std::size_t n_months = 12;
    Month start_month{2001, 1};
    double training_rate = 0.1;
    /// Proportions for each quality column; keys are class labels and may use
    /// either Met or the Met1/Met2 split, not both.
    std::map<ClassLabel, double> customer_service_proportions;
    std::map<ClassLabel, double> business_need_proportions;
    std::map<Attribute, double> effect_weights;
    double noise_sd = 1.0;
    /// Every listed class must receive at least this many records.
    std::size_t min_class_count = 0;
    std::uint64_t seed = 1;

    /// Throws InvalidConfig / InfeasibleProportions.
    void validate() const;
    std::string to_json() const;
    static GeneratorConfig from_json(const std::string& text);
};

struct GroundTruth {
    /// Attributes by descending effect weight; equal weights keep feature order.
    std::vector<Attribute> importance_order;

    /// One line, comma-separated attribute names.
    std::string to_line() const;
    static GroundTruth from_line(const std::string& line);
};

struct GeneratedData {
    std::vector<EvaluationRecord> records;
    GroundTruth truth;
};

GeneratedData generate(const GeneratorConfig& config);

/// Census of the customer-service (4 retained classes, met band split) or
/// business-need (5 classes) data, with effect weights that make product,
/// agent and date dominate the time-management attributes.
GeneratorConfig paper_default_config(EvaluationKind target);

/// Class counts realized from proportions by largest-remainder rounding.
std::map<ClassLabel, std::size_t> census_targets(const std::map<ClassLabel, double>& proportions, std::size_t n);

}  // namespace csrminer
