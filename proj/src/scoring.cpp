#include "csrminer/scoring.hpp"

#include <string>

namespace csrminer {

std::string_view to_string(EvaluationKind kind) {
    return kind == EvaluationKind::CustomerService ? "customer-service" : "business-need";
}

EvaluationKind parse_evaluation_kind(std::string_view text) {
    if (text == "customer-service" || text == "customer_service") return EvaluationKind::CustomerService;
    if (text == "business-need" || text == "business_need" || text == "business-needs") {
        return EvaluationKind::BusinessNeed;
    }
    throw Error(ErrorCode::Usage, "unknown evaluation kind '" + std::string(text) +
                                      "' (expected customer-service or business-need)");
}

QuestionScore::QuestionScore(int value) : value_(value) {
    if (value < 0 || value > 5) {
        throw Error(ErrorCode::InvalidQuestionScore,
                    "question score " + std::to_string(value) + " outside 0..5");
    }
}

namespace {

void check_question_count(EvaluationKind kind, std::size_t count) {
    if (kind == EvaluationKind::CustomerService && count != kCustomerServiceQuestions) {
        throw Error(ErrorCode::InvalidQuestionCount,
                    "customer-service evaluation needs 11 questions, got " + std::to_string(count));
    }
    if (kind == EvaluationKind::BusinessNeed &&
        (count < kBusinessNeedMinQuestions || count > kBusinessNeedMaxQuestions)) {
        throw Error(ErrorCode::InvalidQuestionCount,
                    "business-need evaluation needs 8..16 questions, got " + std::to_string(count));
    }
}

std::vector<QuestionScore> to_scores(std::span<const int> raw) {
    std::vector<QuestionScore> out;
    out.reserve(raw.size());
    for (int v : raw) out.emplace_back(v);
    return out;
}

}  // namespace

CallEvaluation::CallEvaluation(EvaluationKind kind, std::vector<QuestionScore> scores, long product_id)
    : kind_(kind), scores_(std::move(scores)), product_id_(product_id) {
    check_question_count(kind_, scores_.size());
}

CallEvaluation::CallEvaluation(EvaluationKind kind, std::span<const int> scores, long product_id)
    : CallEvaluation(kind, to_scores(scores), product_id) {}

Rational call_score(const CallEvaluation& evaluation) {
    std::int64_t sum = 0;
    std::int64_t count = 0;
    for (const auto& q : evaluation.scores()) {
        if (!q.applicable()) continue;
        sum += q.value();
        ++count;
    }
    if (count == 0) {
        throw Error(ErrorCode::AllQuestionsNotApplicable, "no applicable questions on the call");
    }
    return Rational(sum, count);
}

MonthlyScore monthly_score(std::span<const CallEvaluation> calls, const WarningSink& sink) {
    if (calls.empty()) {
        throw Error(ErrorCode::AllQuestionsNotApplicable, "no calls supplied for the month");
    }
    const EvaluationKind kind = calls.front().kind();
    std::int64_t sum = 0;
    std::int64_t count = 0;
    for (const auto& call : calls) {
        if (call.kind() != kind) {
            throw Error(ErrorCode::MixedEvaluationKinds,
                        "customer-service and business-need calls cannot be pooled");
        }
        for (const auto& q : call.scores()) {
            if (!q.applicable()) continue;
            sum += q.value();
            ++count;
        }
    }
    if (count == 0) {
        throw Error(ErrorCode::AllQuestionsNotApplicable, "no applicable questions in any call");
    }
    if (calls.size() != kCallsPerMonth) {
        warn(sink, "monthly score pooled from " + std::to_string(calls.size()) +
                       " calls (six are normally evaluated)");
    }
    return MonthlyScore{Rational(sum, count), static_cast<int>(count), static_cast<int>(calls.size())};
}

PerformanceCategory categorize(const Rational& score, bool split_met) {
    if (score < Rational(1) || score > Rational(5)) {
        throw Error(ErrorCode::ScoreOutOfRange, "score " + score.to_fixed(4) + " outside [1,5]");
    }
    if (score < Rational(2)) return {Category::NotMet, std::nullopt};
    if (score < Rational(3)) return {Category::MetSome, std::nullopt};
    if (score < Rational(4)) {
        if (!split_met) return {Category::Met, std::nullopt};
        return {Category::Met, score < Rational(7, 2) ? MetSub::Met1 : MetSub::Met2};
    }
    if (score < Rational(19, 4)) return {Category::Exceeded, std::nullopt};
    return {Category::FarExceeded, std::nullopt};
}

ClassLabel class_label(const PerformanceCategory& category) {
    switch (category.label) {
        case Category::NotMet: return ClassLabel::NotMet;
        case Category::MetSome: return ClassLabel::MetSome;
        case Category::Met:
            if (!category.met_sub) return ClassLabel::Met;
            return *category.met_sub == MetSub::Met1 ? ClassLabel::Met1 : ClassLabel::Met2;
        case Category::Exceeded: return ClassLabel::Exceeded;
        case Category::FarExceeded: return ClassLabel::FarExceeded;
    }
    return ClassLabel::Met;
}

std::string_view to_string(ClassLabel label) {
    switch (label) {
        case ClassLabel::NotMet: return "NotMet";
        case ClassLabel::MetSome: return "MetSome";
        case ClassLabel::Met: return "Met";
        case ClassLabel::Met1: return "Met1";
        case ClassLabel::Met2: return "Met2";
        case ClassLabel::Exceeded: return "Exceeded";
        case ClassLabel::FarExceeded: return "FarExceeded";
    }
    return "?";
}

std::optional<ClassLabel> parse_class_label(std::string_view text) {
    for (auto label : {ClassLabel::NotMet, ClassLabel::MetSome, ClassLabel::Met, ClassLabel::Met1,
                       ClassLabel::Met2, ClassLabel::Exceeded, ClassLabel::FarExceeded}) {
        if (to_string(label) == text) return label;
    }
    return std::nullopt;
}

std::string_view display_name(ClassLabel label) {
    switch (label) {
        case ClassLabel::NotMet: return "Not met";
        case ClassLabel::MetSome: return "Met Some";
        case ClassLabel::Met: return "Met";
        case ClassLabel::Met1: return "Met 1";
        case ClassLabel::Met2: return "Met 2";
        case ClassLabel::Exceeded: return "Exceeded";
        case ClassLabel::FarExceeded: return "Far exceeded";
    }
    return "?";
}

std::pair<Rational, Rational> score_band(ClassLabel label) {
    switch (label) {
        case ClassLabel::NotMet: return {Rational(1), Rational(2)};
        case ClassLabel::MetSome: return {Rational(2), Rational(3)};
        case ClassLabel::Met: return {Rational(3), Rational(4)};
        case ClassLabel::Met1: return {Rational(3), Rational(7, 2)};
        case ClassLabel::Met2: return {Rational(7, 2), Rational(4)};
        case ClassLabel::Exceeded: return {Rational(4), Rational(19, 4)};
        case ClassLabel::FarExceeded: return {Rational(19, 4), Rational(5)};
    }
    return {Rational(1), Rational(5)};
}

}  // namespace csrminer
