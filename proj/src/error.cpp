#include "csrminer/error.hpp"

namespace csrminer {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidQuestionScore: return "InvalidQuestionScore";
        case ErrorCode::InvalidQuestionCount: return "InvalidQuestionCount";
        case ErrorCode::AllQuestionsNotApplicable: return "AllQuestionsNotApplicable";
        case ErrorCode::MixedEvaluationKinds: return "MixedEvaluationKinds";
        case ErrorCode::ScoreOutOfRange: return "ScoreOutOfRange";
        case ErrorCode::MalformedRow: return "MalformedRow";
        case ErrorCode::SchemaMismatch: return "SchemaMismatch";
        case ErrorCode::EmptyDataset: return "EmptyDataset";
        case ErrorCode::BadRatios: return "BadRatios";
        case ErrorCode::InfeasibleProportions: return "InfeasibleProportions";
        case ErrorCode::InvalidConfig: return "InvalidConfig";
        case ErrorCode::InvalidHyperparameter: return "InvalidHyperparameter";
        case ErrorCode::InsufficientData: return "InsufficientData";
        case ErrorCode::NonFiniteLoss: return "NonFiniteLoss";
        case ErrorCode::ArityMismatch: return "ArityMismatch";
        case ErrorCode::WrongModelKind: return "WrongModelKind";
        case ErrorCode::ModelFormat: return "ModelFormat";
        case ErrorCode::EmptyEvaluationSet: return "EmptyEvaluationSet";
        case ErrorCode::BadFoldCount: return "BadFoldCount";
        case ErrorCode::IncompleteMatrix: return "IncompleteMatrix";
        case ErrorCode::Io: return "Io";
        case ErrorCode::Usage: return "Usage";
    }
    return "Unknown";
}

}  // namespace csrminer
