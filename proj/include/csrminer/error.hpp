#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace csrminer {

enum class ErrorCode {
    // scoring
    InvalidQuestionScore,
    InvalidQuestionCount,
    AllQuestionsNotApplicable,
    MixedEvaluationKinds,
    ScoreOutOfRange,
    // dataset / synth
    MalformedRow,
    SchemaMismatch,
    EmptyDataset,
    BadRatios,
    InfeasibleProportions,
    InvalidConfig,
    // models
    InvalidHyperparameter,
    InsufficientData,
    NonFiniteLoss,
    ArityMismatch,
    WrongModelKind,
    ModelFormat,
    // evaluation
    EmptyEvaluationSet,
    BadFoldCount,
    IncompleteMatrix,
    // plumbing
    Io,
    Usage,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it onto a stable exit status.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Receives non-fatal diagnostics (clamped values, odd call counts, ...).
/// An empty sink discards them.
using WarningSink = std::function<void(std::string_view)>;

inline void warn(const WarningSink& sink, std::string_view message) {
    if (sink) sink(message);
}

}  // namespace csrminer
