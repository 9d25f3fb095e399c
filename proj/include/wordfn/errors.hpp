#pragma once

#include <stdexcept>
#include <string>

namespace wordfn {

/// Malformed user input (bad word, bad flag value, dimension mismatch).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A configuration that cannot be honoured (size ceilings, memory limits).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A computation that cannot be carried out (degree or length ceiling exceeded).
class ComputationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An expression whose shape is outside the image the algorithm expects.
class StructuralError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace wordfn
