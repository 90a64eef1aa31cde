#ifndef CTXLAB_ERRORS_HPP
#define CTXLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ctxlab {

// Every failure the library reports, as a stable machine-readable code.
// The CLI maps these to exit statuses, so additions must keep the
// validation / resource-limit split intact.
enum class ErrorCode {
    ParseError,
    InvalidToken,
    EmptyScenario,
    EmptyContext,
    EmptyOutcomeSet,
    DuplicateContext,
    NestedContext,
    UncoveredMeasurement,
    UnknownMeasurement,
    EmptyKeepSet,
    UnknownCoordinate,
    MismatchedOutcomeSets,
    MissingContextTable,
    NegativeProbability,
    SumNotOne,
    NotASubset,
    EmptySubset,
    MeasurementNotInContext,
    MarginalMismatch,
    CouplingsEqual,
    CoordinateMismatch,
    DimensionMismatch,
    ProblemTooLarge,
    InfeasibleRegion,
    UnboundedObjective,
    ImageMismatch,
    NotMaximalCoupling,
    DegenerateBehaviour,
    InternalInconsistency,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

    // ProblemTooLarge is a resource refusal, everything else is bad input
    // or an internal bug.
    bool is_size_limit() const noexcept { return code_ == ErrorCode::ProblemTooLarge; }

private:
    ErrorCode code_;
};

inline const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::InvalidToken: return "InvalidToken";
        case ErrorCode::EmptyScenario: return "EmptyScenario";
        case ErrorCode::EmptyContext: return "EmptyContext";
        case ErrorCode::EmptyOutcomeSet: return "EmptyOutcomeSet";
        case ErrorCode::DuplicateContext: return "DuplicateContext";
        case ErrorCode::NestedContext: return "NestedContext";
        case ErrorCode::UncoveredMeasurement: return "UncoveredMeasurement";
        case ErrorCode::UnknownMeasurement: return "UnknownMeasurement";
        case ErrorCode::EmptyKeepSet: return "EmptyKeepSet";
        case ErrorCode::UnknownCoordinate: return "UnknownCoordinate";
        case ErrorCode::MismatchedOutcomeSets: return "MismatchedOutcomeSets";
        case ErrorCode::MissingContextTable: return "MissingContextTable";
        case ErrorCode::NegativeProbability: return "NegativeProbability";
        case ErrorCode::SumNotOne: return "SumNotOne";
        case ErrorCode::NotASubset: return "NotASubset";
        case ErrorCode::EmptySubset: return "EmptySubset";
        case ErrorCode::MeasurementNotInContext: return "MeasurementNotInContext";
        case ErrorCode::MarginalMismatch: return "MarginalMismatch";
        case ErrorCode::CouplingsEqual: return "CouplingsEqual";
        case ErrorCode::CoordinateMismatch: return "CoordinateMismatch";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::ProblemTooLarge: return "ProblemTooLarge";
        case ErrorCode::InfeasibleRegion: return "InfeasibleRegion";
        case ErrorCode::UnboundedObjective: return "UnboundedObjective";
        case ErrorCode::ImageMismatch: return "ImageMismatch";
        case ErrorCode::NotMaximalCoupling: return "NotMaximalCoupling";
        case ErrorCode::DegenerateBehaviour: return "DegenerateBehaviour";
        case ErrorCode::InternalInconsistency: return "InternalInconsistency";
    }
    return "UnknownError";
}

} // namespace ctxlab

#endif // CTXLAB_ERRORS_HPP
