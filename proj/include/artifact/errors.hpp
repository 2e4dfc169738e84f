#pragma once

#include <stdexcept>
#include <string>

namespace artifact {

// Bad argument shape or out-of-scope input (non-fundamental D, odd k, ...).
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Arithmetic hypothesis violated (inert prime dividing the level, ...).
struct PreconditionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A numerical method could not reach its advertised accuracy.
struct AccuracyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Two independent computations of the same quantity disagree.
struct IntegrityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace artifact
