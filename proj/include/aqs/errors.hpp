#pragma once

#include <stdexcept>
#include <string>

namespace aqs {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A state vector that is not normalized (or is identically zero).
struct InvalidStateError : Error {
    using Error::Error;
};

// Pad key length does not match 2x the qubit count it keys.
struct KeyLengthError : Error {
    using Error::Error;
};

// Two qubit strings of different lengths were compared.
struct LengthError : Error {
    using Error::Error;
};

// Bad scenario / session configuration (duplicate key pair, unknown scheme, ...).
struct ConfigError : Error {
    using Error::Error;
};

// A malformed protocol message (wrong bundle arity or lengths).
struct ProtocolError : Error {
    using Error::Error;
};

// A run that cannot complete because an expected announcement never appeared.
struct ProtocolStall : Error {
    using Error::Error;
};

// Transcript file I/O failure.
struct IoError : Error {
    using Error::Error;
};

// Verification request refused because the requester is not the registered receiver.
struct DeniedUnregistered : Error {
    using Error::Error;
};

}  // namespace aqs
