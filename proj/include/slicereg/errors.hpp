#pragma once

#include <stdexcept>
#include <string>

namespace slicereg {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Operands built over different Clifford signatures.
struct SignatureMismatch : Error {
    using Error::Error;
};

// Module or matrix shapes do not line up.
struct DimensionMismatch : Error {
    using Error::Error;
};

// An argument required to lie in the quadratic cone (or on the imaginary
// sphere) fails the membership predicate at the requested tolerance.
struct ConeMembershipError : Error {
    using Error::Error;
};

// The quadratic pencil A^2 - 2 Re(q) A + |q|^2 Id is numerically singular,
// so the pseudo-resolvent at q does not exist.
struct SingularDelta : Error {
    using Error::Error;
};

// A one-slice linear system (lambda Id - A on a slice) is numerically singular.
struct SingularSystem : Error {
    using Error::Error;
};

// Adaptive quadrature failed to reach the requested tolerance within budget.
struct QuadratureError : Error {
    using Error::Error;
};

// A real matrix claimed to represent a right-linear operator fails to
// commute with right scalar multiplication.
struct NotRightLinear : Error {
    using Error::Error;
};

// Malformed serialized input (element, operator, stem or job).
struct ParseError : Error {
    using Error::Error;
};

}  // namespace slicereg
