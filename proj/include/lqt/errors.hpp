#pragma once

#include <stdexcept>
#include <string>

namespace lqt {

// Base class for all errors raised by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed user input (bad JSON, bad fraction string, unknown flag, ...).
struct InputError : Error {
    explicit InputError(const std::string& msg) : Error(msg) {}
};

// A request that exceeds the configured desk-scale limits.
struct SizeError : Error {
    explicit SizeError(const std::string& msg) : Error(msg) {}
};

// Structural misuse: ambient dimension mismatch, degree mismatch, bad index.
struct StructureError : Error {
    explicit StructureError(const std::string& msg) : Error(msg) {}
};

// A condition that valid inputs can never trigger; indicates a bug or a
// falsified mathematical invariant.
struct InternalError : Error {
    explicit InternalError(const std::string& msg) : Error(msg) {}
};

}  // namespace lqt
