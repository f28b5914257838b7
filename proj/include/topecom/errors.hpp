#ifndef TOPECOM_ERRORS_HPP
#define TOPECOM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace topecom {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Tope-file parsing failures.
struct ParseError : Error {
    enum class Kind { MalformedLine, DuplicateTope, SymmetryViolation };
    Kind kind;
    int line;   // 1-based line number in the input, 0 if not applicable

    ParseError(Kind k, int ln, const std::string& msg)
        : Error(msg), kind(k), line(ln) {}
};

// Thrown when a constructed oriented matroid fails validation and the caller
// asked for a valid one.
struct ValidationFailure : Error {
    using Error::Error;
};

// A configured work or memory budget was hit. The message names the budget.
struct CapExceeded : Error {
    using Error::Error;
};

// Counting-formula preconditions on (r, k) versus the antichain are not met.
struct ConstraintViolation : Error {
    using Error::Error;
};

// The unique-facet short form was asked for but its hypothesis fails.
struct HypothesisFailed : Error {
    using Error::Error;
};

// Minimality queried for a set that is not a committee.
struct NotACommittee : Error {
    using Error::Error;
};

// Counting asked for a cardinality outside the method's admissible range.
struct OutOfRangeK : Error {
    using Error::Error;
};

// A family passed to blocker() contains the empty set.
struct EmptyMember : Error {
    using Error::Error;
};

// union_mobius_number needs the family to cover its universe.
struct DoesNotCover : Error {
    using Error::Error;
};

// Random instance generation exhausted its retry budget.
struct RetryBudgetExceeded : Error {
    using Error::Error;
};

// Fourier-Motzkin refused a system with too many variables.
struct DimensionTooLarge : Error {
    using Error::Error;
};

} // namespace topecom

#endif
