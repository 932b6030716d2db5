#pragma once

#include <stdexcept>
#include <string>

namespace cubeorient {

// Base for everything the library throws.
class CubeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A precondition on an argument was violated (out-of-range node, empty cut side, ...).
class InputError : public CubeError {
public:
    using CubeError::CubeError;
};

// Malformed serialized data: wrong byte length, bad header, stray padding bits.
class FormatError : public InputError {
public:
    using InputError::InputError;
};

// An Eulerian orientation was requested for a cube of odd degree.
class NotEulerianError : public CubeError {
public:
    using CubeError::CubeError;
};

// The request is well formed but outside the desk-scale search guards.
class InfeasibleError : public CubeError {
public:
    using CubeError::CubeError;
};

}  // namespace cubeorient
