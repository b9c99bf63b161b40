#pragma once

#include <stdexcept>
#include <string>

namespace mordell {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed textual input (rationals, curves, points).
class ParseError : public Error {
public:
    using Error::Error;
};

/// A checked curve constructor received a model with vanishing discriminant.
class SingularCurve : public Error {
public:
    using Error::Error;
};

class PointNotOnCurve : public Error {
public:
    using Error::Error;
};

/// A duplication formula was evaluated at a 2-torsion abscissa.
class DenominatorVanishes : public Error {
public:
    using Error::Error;
};

class RootsDoNotMatch : public Error {
public:
    using Error::Error;
};

/// Every form of a morphism vanishes at the evaluation point.
class CommonZero : public Error {
public:
    using Error::Error;
};

/// A polynomial identity that must hold by construction did not.
class IdentityFailure : public Error {
public:
    using Error::Error;
};

/// Descent heights failed to contract at the rate the constants promise.
class NonContraction : public Error {
public:
    using Error::Error;
};

/// The operation requires an integral model (or full rational 2-torsion).
class NonIntegralModel : public Error {
public:
    using Error::Error;
};

/// A divide oracle could not place an element in any supplied coset.
class IncompleteCosets : public Error {
public:
    using Error::Error;
};

}  // namespace mordell
