#ifndef BERKLINE_ERRORS_HPP
#define BERKLINE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace berkline {

// Base class for all domain errors raised by the library. CLI maps these to
// exit code 3; anything else (std::invalid_argument from parsing etc.) is a
// usage error.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct IndeterminateFormError : Error {
    explicit IndeterminateFormError(const std::string& m) : Error(m) {}
};

struct ShiftMismatchError : Error {
    explicit ShiftMismatchError(const std::string& m) : Error(m) {}
};

struct FractionalShiftUnsupportedError : Error {
    explicit FractionalShiftUnsupportedError(const std::string& m) : Error(m) {}
};

struct NotKeyPolynomialError : Error {
    explicit NotKeyPolynomialError(const std::string& m) : Error(m) {}
};

struct ValueNotIncreasedError : Error {
    explicit ValueNotIncreasedError(const std::string& m) : Error(m) {}
};

struct ReducibleMinimalPolynomialError : Error {
    explicit ReducibleMinimalPolynomialError(const std::string& m) : Error(m) {}
};

struct NonIntegralError : Error {
    explicit NonIntegralError(const std::string& m) : Error(m) {}
};

struct StabilizationBudgetExceededError : Error {
    explicit StabilizationBudgetExceededError(const std::string& m) : Error(m) {}
};

struct EmptyInputError : Error {
    explicit EmptyInputError(const std::string& m) : Error(m) {}
};

struct DegreeMismatchError : Error {
    explicit DegreeMismatchError(const std::string& m) : Error(m) {}
};

struct CenterIsRootError : Error {
    explicit CenterIsRootError(const std::string& m) : Error(m) {}
};

struct MissingEntryError : Error {
    explicit MissingEntryError(const std::string& m) : Error(m) {}
};

struct AllInfiniteError : Error {
    explicit AllInfiniteError(const std::string& m) : Error(m) {}
};

struct TooFewPointsError : Error {
    explicit TooFewPointsError(const std::string& m) : Error(m) {}
};

struct OverlappingDisksError : Error {
    explicit OverlappingDisksError(const std::string& m) : Error(m) {}
};

struct ZeroModulusError : Error {
    explicit ZeroModulusError(const std::string& m) : Error(m) {}
};

struct NoSuitableNormalizationError : Error {
    explicit NoSuitableNormalizationError(const std::string& m) : Error(m) {}
};

struct SingularQuarticError : Error {
    explicit SingularQuarticError(const std::string& m) : Error(m) {}
};

struct WildDiscriminantError : Error {
    explicit WildDiscriminantError(const std::string& m) : Error(m) {}
};

struct DegenerateNormError : Error {
    explicit DegenerateNormError(const std::string& m) : Error(m) {}
};

struct TowerConstructionFailureError : Error {
    explicit TowerConstructionFailureError(const std::string& m) : Error(m) {}
};

struct NonStraightPolygonError : Error {
    explicit NonStraightPolygonError(const std::string& m) : Error(m) {}
};

struct DecomposableFormError : Error {
    explicit DecomposableFormError(const std::string& m) : Error(m) {}
};

struct LemmaViolationError : Error {
    explicit LemmaViolationError(const std::string& m) : Error(m) {}
};

struct BranchPointCenterError : Error {
    explicit BranchPointCenterError(const std::string& m) : Error(m) {}
};

} // namespace berkline

#endif
