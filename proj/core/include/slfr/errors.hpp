#pragma once

#include <stdexcept>
#include <string>

namespace slfr {

/// Base class for every error thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// field construction / arithmetic
struct NotPrimePower : Error { using Error::Error; };
struct Unsupported : Error { using Error::Error; };
struct FieldMismatch : Error { using Error::Error; };
struct DivisionByZero : Error { using Error::Error; };

// linear algebra
struct NotSquare : Error { using Error::Error; };
struct IndexOutOfRange : Error { using Error::Error; };
struct Inconsistent : Error { using Error::Error; };

// combinatorics / decoding
struct TooLarge : Error { using Error::Error; };
struct BadSubsets : Error { using Error::Error; };
struct WrongField : Error { using Error::Error; };

// placement / configuration
struct BadLength : Error { using Error::Error; };
struct BadT : Error { using Error::Error; };
struct Empty : Error { using Error::Error; };

// io / verification
struct ParseError : Error { using Error::Error; };
struct RangeError : Error { using Error::Error; };
struct DecodeMismatch : Error { using Error::Error; };

} // namespace slfr
