#pragma once

#include <stdexcept>
#include <string>

namespace ob {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad input: rejected before any computation starts.
struct ValidationError : Error {
    using Error::Error;
};

// Computation could not produce a result (no bracket, non-smooth point, ...).
struct NumericError : Error {
    using Error::Error;
};

struct TooFewVertices : ValidationError {
    using ValidationError::ValidationError;
};
struct DuplicateVertex : ValidationError {
    using ValidationError::ValidationError;
};
struct NonConvex : ValidationError {
    using ValidationError::ValidationError;
};
struct DegenerateChord : ValidationError {
    using ValidationError::ValidationError;
};
struct AreaOutOfRange : ValidationError {
    using ValidationError::ValidationError;
};
struct BracketInvalid : ValidationError {
    using ValidationError::ValidationError;
};
struct ParallelLines : ValidationError {
    using ValidationError::ValidationError;
};

struct VertexNonSmooth : NumericError {
    using NumericError::NumericError;
};
struct VertexAmbiguous : NumericError {
    using NumericError::NumericError;
};
struct SameSide : NumericError {
    using NumericError::NumericError;
};
struct NoClosure : NumericError {
    using NumericError::NumericError;
};

} // namespace ob
