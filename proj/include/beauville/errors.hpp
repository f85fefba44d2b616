#pragma once

// Error types shared across the library.
//
// validation_error: the input is malformed or outside the supported range
// (composite modulus, singular matrix, inadmissible type parameters).
// verification_error: the input parsed fine but a mathematical claim it was
// supposed to satisfy failed (Beauville condition violated, checksum mismatch,
// numerical residual above tolerance).

#include <stdexcept>
#include <string>

namespace beauville {

class validation_error : public std::invalid_argument {
public:
    explicit validation_error(const std::string& what) : std::invalid_argument(what) {}
};

class verification_error : public std::runtime_error {
public:
    explicit verification_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace beauville
