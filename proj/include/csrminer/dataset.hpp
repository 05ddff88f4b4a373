#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "csrminer/error.hpp"
#include "csrminer/matrix.hpp"
#include "csrminer/rational.hpp"
#include "csrminer/scoring.hpp"

namespace csrminer {

/// Calendar month; serialized as mm/01/yyyy.
struct Month {
    int year = 2001;
    int month = 1;

    int ordinal() const noexcept { return year * 12 + (month - 1); }
    static Month from_ordinal(int ordinal) { return Month{ordinal / 12, ordinal % 12 + 1}; }
    std::string to_string() const;
    /// Strict mm/01/yyyy; nullopt on anything else.
    static std::optional<Month> parse(std::string_view text);

    friend bool operator==(const Month&, const Month&) = default;
    friend auto operator<=>(const Month& a, const Month& b) { return a.ordinal() <=> b.ordinal(); }
};

/// One CSR-month row. Fields are optional because the raw export can have
/// holes; `clean` guarantees every field is present on retained records.
struct EvaluationRecord {
    std::size_t source_row = 0;  // 1-based data row in the originating file
    std::optional<long> agent_id;
    std::optional<Month> date;
    std::optional<bool> training;
    std::optional<long> product_id;
    std::optional<Rational> customer_service;
    std::optional<Rational> business_needs;
    std::optional<long> acw_seconds;
    std::optional<double> adherence;
    std::optional<long> attendance;
    std::optional<double> aux;

    bool complete() const noexcept;
    const std::optional<Rational>& quality(EvaluationKind kind) const noexcept {
        return kind == EvaluationKind::CustomerService ? customer_service : business_needs;
    }
};

inline constexpr std::array<std::string_view, 10> kCsvColumns = {
    "agent_id", "date", "training", "product_id", "customer_service",
    "business_needs", "acw_seconds", "adherence", "attendance", "aux"};

std::vector<EvaluationRecord> read_csv(std::istream& in);
std::vector<EvaluationRecord> load_csv(const std::filesystem::path& path);
void write_csv(std::ostream& out, std::span<const EvaluationRecord> records);

// ---------------------------------------------------------------------------
// cleaning

enum class RejectionReason { MissingValue, QualityOutOfRange, NegativeTimeManagement, SmallClass };
std::string_view to_string(RejectionReason reason);

struct Rejection {
    std::size_t row;
    RejectionReason reason;
};

struct CleanOptions {
    EvaluationKind target = EvaluationKind::CustomerService;
    std::size_t min_class_size = 50;
    bool split_met = false;
};

struct CleanResult {
    std::vector<EvaluationRecord> retained;
    std::vector<Rejection> log;
};

/// Drops incomplete records, target scores outside [1,5], negative
/// time-management values, and then every class smaller than
/// `min_class_size`. retained + log always accounts for the whole input.
CleanResult clean(std::span<const EvaluationRecord> records, const CleanOptions& options);
void write_rejection_log(std::ostream& out, std::span<const Rejection> log);

ClassLabel label_of(const EvaluationRecord& record, EvaluationKind target, bool split_met);

// ---------------------------------------------------------------------------
// feature space

enum class Attribute { Agent, Date, Training, Product, Acw, Adherence, Aux, Attendance };
inline constexpr std::size_t kFeatureCount = 8;
inline constexpr std::array<Attribute, kFeatureCount> kAttributes = {
    Attribute::Agent, Attribute::Date,      Attribute::Training, Attribute::Product,
    Attribute::Acw,   Attribute::Adherence, Attribute::Aux,      Attribute::Attendance};

/// Report names, in feature-vector order: Agent, Date, Training, Product,
/// ACW, Adherence, Aux, Attendance.
std::string_view attribute_name(Attribute attribute);
std::optional<Attribute> parse_attribute(std::string_view name);
std::vector<std::string> attribute_names();

using FeatureVector = std::array<double, kFeatureCount>;

struct Range {
    double min = 0.0;
    double max = 0.0;

    bool degenerate() const noexcept { return !(max > min); }
    /// Min-max into [0,1]; degenerate ranges give 0.5. Sets `clamped` when
    /// the value had to be pulled back into range.
    double scale(double value, bool& clamped) const noexcept;
    void include(double value) noexcept;
};

/// acw, adherence and aux are scaled per product because what counts as a
/// long after-call time depends on the product.
struct ScalingParams {
    struct ProductRanges {
        Range acw;
        Range adherence;
        Range aux;
    };
    std::map<long, ProductRanges> per_product;
    ProductRanges global;  // fallback for products unseen at fit time
    Range agent;
    Range product;
    Range attendance;
    Month date_origin;
    int date_span = 0;  // months between earliest and latest observed month

    /// Attributes whose fitted range collapsed to a single value.
    std::vector<std::string> degenerate_ranges() const;
    /// Stable digest of every parameter, recorded alongside saved models.
    std::string fingerprint() const;
};

ScalingParams fit_scaling(std::span<const EvaluationRecord> records);
FeatureVector apply_scaling(const EvaluationRecord& record, const ScalingParams& params,
                            const WarningSink& sink = {});
Matrix apply_scaling(std::span<const EvaluationRecord> records, const ScalingParams& params,
                     const WarningSink& sink = {});

// ---------------------------------------------------------------------------
// dataset

struct CleanDataset {
    EvaluationKind target = EvaluationKind::CustomerService;
    bool split_met = false;
    std::vector<EvaluationRecord> records;
    std::vector<ClassLabel> labels;
    ScalingParams scaling;  // fit on every retained record
    Matrix features;        // records scaled with `scaling`
    std::map<ClassLabel, std::size_t> class_census;

    std::size_t size() const noexcept { return labels.size(); }
    std::vector<ClassLabel> classes() const;
};

/// Builds the dataset from records that already went through `clean`.
CleanDataset make_dataset(std::vector<EvaluationRecord> retained, EvaluationKind target, bool split_met);

struct SplitRatios {
    double train = 0.50;
    double test = 0.25;
    double validation = 0.25;
};

struct Split {
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
    std::vector<std::size_t> validation;
};

/// Part sizes from cumulative half-up rounding of the ratio boundaries, so
/// they depend only on (n, ratios); membership is a seeded permutation.
std::array<std::size_t, 3> split_sizes(std::size_t n, const SplitRatios& ratios);
Split split(std::size_t n, const SplitRatios& ratios, std::uint64_t seed);

}  // namespace csrminer
