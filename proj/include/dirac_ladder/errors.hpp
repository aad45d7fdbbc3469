#pragma once

#include <stdexcept>
#include <string>

namespace dirac_ladder {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Quantum numbers outside their allowed sets (j not half-odd, bad ε, ζ ≤ 0).
class InvalidQuantumNumber : public Error {
public:
    using Error::Error;
};

/// ζ ≥ j + 1/2: the indicial exponent s is no longer real and positive.
class Supercritical : public Error {
public:
    using Error::Error;
};

/// A state admitted by the ladder algebra but not by the first-order radial system.
class UnphysicalState : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

/// Result of apply_casimir on a function outside the eigenfunction family.
class NotAnEigenfunction : public Error {
public:
    using Error::Error;
};

/// Operation requested on the wrong (positive/negative) branch.
class WrongBranch : public Error {
public:
    using Error::Error;
};

/// Polynomial degree beyond the reliable range of double arithmetic.
class CoefficientGrowth : public Error {
public:
    using Error::Error;
};

class QuadratureFailure : public Error {
public:
    using Error::Error;
};

/// Shooting bracket without a sign change of the matching determinant.
class NoSignChange : public Error {
public:
    using Error::Error;
};

/// Integration produced non-finite values.
class StiffnessFailure : public Error {
public:
    using Error::Error;
};

}  // namespace dirac_ladder
