#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "csrminer/error.hpp"
#include "csrminer/rational.hpp"

namespace csrminer {

enum class EvaluationKind { CustomerService, BusinessNeed };

std::string_view to_string(EvaluationKind kind);
/// Accepts "customer-service" / "business-need".
EvaluationKind parse_evaluation_kind(std::string_view text);

/// One answer on the 0..5 evaluation scale; 0 means "not applicable".
class QuestionScore {
public:
    explicit QuestionScore(int value);
    int value() const noexcept { return value_; }
    bool applicable() const noexcept { return value_ != 0; }

private:
    int value_;
};

inline constexpr std::size_t kCustomerServiceQuestions = 11;
inline constexpr std::size_t kBusinessNeedMinQuestions = 8;
inline constexpr std::size_t kBusinessNeedMaxQuestions = 16;
inline constexpr std::size_t kCallsPerMonth = 6;

/// A single evaluated call. Customer-service calls always have 11 questions,
/// business-need calls between 8 and 16 depending on the product.
class CallEvaluation {
public:
    CallEvaluation(EvaluationKind kind, std::vector<QuestionScore> scores, long product_id = 0);
    /// Convenience: validates each raw integer.
    CallEvaluation(EvaluationKind kind, std::span<const int> scores, long product_id = 0);

    EvaluationKind kind() const noexcept { return kind_; }
    const std::vector<QuestionScore>& scores() const noexcept { return scores_; }
    long product_id() const noexcept { return product_id_; }

private:
    EvaluationKind kind_;
    std::vector<QuestionScore> scores_;
    long product_id_;
};

struct MonthlyScore {
    Rational value;
    int applicable_count = 0;
    int call_count = 0;
};

/// Sum of applicable answers over their count. Throws AllQuestionsNotApplicable.
Rational call_score(const CallEvaluation& evaluation);

/// Pools every applicable answer of every call (not a mean of call scores).
/// Warns through `sink` when the number of calls differs from six.
MonthlyScore monthly_score(std::span<const CallEvaluation> calls, const WarningSink& sink = {});

enum class Category { NotMet = 0, MetSome = 1, Met = 2, Exceeded = 3, FarExceeded = 4 };
enum class MetSub { Met1, Met2 };

struct PerformanceCategory {
    Category label;
    std::optional<MetSub> met_sub;

    friend bool operator==(const PerformanceCategory&, const PerformanceCategory&) = default;
};

/// Half-open intervals [1,2) [2,3) [3,4) [4,4.75) [4.75,5]; with `split_met`
/// the Met band is cut again at 3.5. Throws ScoreOutOfRange outside [1,5].
PerformanceCategory categorize(const Rational& score, bool split_met = false);

/// Class labels as they appear in datasets and reports. Met1/Met2 replace Met
/// when the met band is split.
enum class ClassLabel { NotMet, MetSome, Met, Met1, Met2, Exceeded, FarExceeded };

ClassLabel class_label(const PerformanceCategory& category);
std::string_view to_string(ClassLabel label);
std::optional<ClassLabel> parse_class_label(std::string_view text);
/// Display name used in report tables ("Met Some", "Met 1", ...).
std::string_view display_name(ClassLabel label);
/// [lower, upper) score band of a class; FarExceeded's upper bound (5) is inclusive.
std::pair<Rational, Rational> score_band(ClassLabel label);

}  // namespace csrminer
