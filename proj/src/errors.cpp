#include "hardchoice/errors.hpp"

namespace hardchoice {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::DuplicateName: return "DuplicateName";
        case ErrorKind::NonFiniteScore: return "NonFiniteScore";
        case ErrorKind::InvalidWeights: return "InvalidWeights";
        case ErrorKind::InvalidTolerance: return "InvalidTolerance";
        case ErrorKind::InvalidProblem: return "InvalidProblem";
        case ErrorKind::NonPositiveScoreForLogForm: return "NonPositiveScoreForLogForm";
        case ErrorKind::UnsupportedDimension: return "UnsupportedDimension";
        case ErrorKind::UnsupportedForm: return "UnsupportedForm";
        case ErrorKind::UnknownOption: return "UnknownOption";
        case ErrorKind::UnknownContextTag: return "UnknownContextTag";
        case ErrorKind::DegenerateCorpus: return "DegenerateCorpus";
        case ErrorKind::NotHard: return "NotHard";
        case ErrorKind::NoSupportingJuror: return "NoSupportingJuror";
        case ErrorKind::InfeasibleTransformation: return "InfeasibleTransformation";
        case ErrorKind::InfeasibleMix: return "InfeasibleMix";
        case ErrorKind::SyntaxError: return "SyntaxError";
        case ErrorKind::SemanticError: return "SemanticError";
        case ErrorKind::Io: return "Io";
    }
    return "Unknown";
}

}  // namespace hardchoice
