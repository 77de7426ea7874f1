#pragma once

#include <stdexcept>
#include <string>

namespace convexsum {

// Base class for all errors raised by this library.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct EmptyInput : Error {
    explicit EmptyInput(const std::string& what = "operation requires a nonempty set") : Error(what) {}
};

struct DuplicateInStrictMode : Error {
    explicit DuplicateInStrictMode(const std::string& what = "duplicate value in strict mode") : Error(what) {}
};

struct ZeroDilation : Error {
    explicit ZeroDilation(const std::string& what = "dilation factor must be nonzero") : Error(what) {}
};

// A cross-checked computation disagreed with its second route. Always a bug.
struct InternalMismatch : Error {
    explicit InternalMismatch(const std::string& what) : Error(what) {}
};

struct InvalidParameter : Error {
    explicit InvalidParameter(const std::string& what) : Error(what) {}
};

struct NonInjective : Error {
    explicit NonInjective(const std::string& what = "function is not injective on the given set") : Error(what) {}
};

struct NotConvexOnDomain : Error {
    explicit NotConvexOnDomain(const std::string& what = "function is not strictly convex on the evaluation points") : Error(what) {}
};

struct EmptyRestriction : Error {
    explicit EmptyRestriction(const std::string& what = "restricted set A_s is empty") : Error(what) {}
};

struct InsufficientMultiplicity : Error {
    explicit InsufficientMultiplicity(const std::string& what = "delta_{A,B}(x) is below the requested tau") : Error(what) {}
};

struct NonpositiveElements : Error {
    explicit NonpositiveElements(const std::string& what = "operation requires strictly positive elements") : Error(what) {}
};

struct GridTooLarge : Error {
    explicit GridTooLarge(const std::string& what = "requested size exceeds the configured cap") : Error(what) {}
};

struct DegenerateFit : Error {
    explicit DegenerateFit(const std::string& what = "fit needs at least two rows with distinct positive abscissae") : Error(what) {}
};

struct InvalidObjective : Error {
    explicit InvalidObjective(const std::string& what = "unknown search objective") : Error(what) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(what) {}
};

} // namespace convexsum
