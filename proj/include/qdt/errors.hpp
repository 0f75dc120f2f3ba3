#pragma once

#include <stdexcept>
#include <string>

namespace qdt {

// Base class for everything thrown by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Mismatched matrix/vector sizes.
class DimensionError : public Error {
public:
    using Error::Error;
};

// Operator does not match the declared factor structure of a state.
class LayoutError : public Error {
public:
    using Error::Error;
};

// Conditioning on an event of (numerically) zero probability.
class ConditioningError : public Error {
public:
    using Error::Error;
};

// Non-finite values, non-convergent integrals, infinite information gain.
class DivergenceError : public Error {
public:
    using Error::Error;
};

// Internal identities violated beyond tolerance (e.g. imaginary residue
// on a quantity that must be real).
class ConsistencyError : public Error {
public:
    using Error::Error;
};

// Invalid model inputs: non-hermitian states, bad probabilities,
// unnormalized feelings, out-of-range aggregate results.
class ModelError : public Error {
public:
    using Error::Error;
};

// Scenario file does not match the schema.
class SchemaError : public Error {
public:
    using Error::Error;
};

} // namespace qdt
