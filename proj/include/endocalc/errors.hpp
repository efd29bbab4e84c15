#pragma once

#include <stdexcept>
#include <string>

namespace endocalc {

struct EndocalcError : std::runtime_error {
    explicit EndocalcError(const std::string& msg) : std::runtime_error(msg) {}
};

// Coordinate-length or matrix-shape mismatch.
struct DimensionError : EndocalcError {
    using EndocalcError::EndocalcError;
};

// Operands live over different ambient groups.
struct AmbientMismatchError : EndocalcError {
    using EndocalcError::EndocalcError;
};

// An enumeration (torsion order, subgroup count, slice size, word bound)
// exceeded a configured cap. Hard error, never silent truncation.
struct CapExceededError : EndocalcError {
    using EndocalcError::EndocalcError;
};

struct PreconditionError : EndocalcError {
    using EndocalcError::EndocalcError;
};

// Restriction-corestriction attempted on a subgroup that is not
// (weakly/almost) invariant; carries the offending input element and value.
struct IllegalRestrictionError : EndocalcError {
    std::string witness_input;
    std::string witness_value;
    IllegalRestrictionError(const std::string& msg, std::string in, std::string val)
        : EndocalcError(msg), witness_input(std::move(in)), witness_value(std::move(val)) {}
};

// quasi_projection preconditions/postconditions failed; names the clause.
struct NotAProjectionError : EndocalcError {
    std::string clause;
    NotAProjectionError(const std::string& msg, std::string cl)
        : EndocalcError(msg), clause(std::move(cl)) {}
};

// An operation that requires ENDOGENY/QUASI_ENDO inputs got NEITHER.
struct ClassificationError : EndocalcError {
    using EndocalcError::EndocalcError;
};

// A structural procedure detected a violated lemma conclusion on inputs that
// were supposed to satisfy its hypotheses.
struct LemmaViolationError : EndocalcError {
    using EndocalcError::EndocalcError;
};

}  // namespace endocalc
