#pragma once

#include <stdexcept>
#include <string>

namespace farey_nielsen {

// Precondition / input violations. The CLI maps these to exit code 2.
enum class Errc {
    NonUnimodular,
    ZeroVector,
    NotAdjacent,
    Backtrack,
    DegenerateTurn,
    PointOnEdge,
    BudgetExceeded,
    TurningTooSmall,
    NotInSA,
    NotTwoGenerated,
    CentralInput,
    NotGenerating,
    UnsupportedForm,
    NotHyperbolic,
    RangeEmpty,
    DepthOverflow,
    Parse,
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::NonUnimodular:   return "NonUnimodular";
        case Errc::ZeroVector:      return "ZeroVector";
        case Errc::NotAdjacent:     return "NotAdjacent";
        case Errc::Backtrack:       return "Backtrack";
        case Errc::DegenerateTurn:  return "DegenerateTurn";
        case Errc::PointOnEdge:     return "PointOnEdge";
        case Errc::BudgetExceeded:  return "BudgetExceeded";
        case Errc::TurningTooSmall: return "TurningTooSmall";
        case Errc::NotInSA:         return "NotInSA";
        case Errc::NotTwoGenerated: return "NotTwoGenerated";
        case Errc::CentralInput:    return "CentralInput";
        case Errc::NotGenerating:   return "NotGenerating";
        case Errc::UnsupportedForm: return "UnsupportedForm";
        case Errc::NotHyperbolic:   return "NotHyperbolic";
        case Errc::RangeEmpty:      return "RangeEmpty";
        case Errc::DepthOverflow:   return "DepthOverflow";
        case Errc::Parse:           return "Parse";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

// A broken internal invariant (oracle disagreement, impossible state).
// The CLI maps these to exit code 3; tests treat them as hard failures.
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& message)
        : std::logic_error("internal invariant violated: " + message) {}
};

}  // namespace farey_nielsen
