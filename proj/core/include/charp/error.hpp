#pragma once

#include <stdexcept>
#include <string>

namespace charp {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/* exact division requested where the p-valuation is too small */
struct NotDivisible : Error {
    using Error::Error;
};
/* series operands disagree on variables, weights, truncation or modulus */
struct IncompatibleRings : Error {
    using Error::Error;
};
/* substitution or exp on a series whose constant term breaks convergence */
struct NonComposable : Error {
    using Error::Error;
};
/* operation needs invertible factorials (rational coefficients) */
struct InvalidCoefficientRing : Error {
    using Error::Error;
};
/* a classically-integral polynomial came out non-integral: a bug */
struct IntegralityFailure : Error {
    using Error::Error;
};
struct LengthMismatch : Error {
    using Error::Error;
};
struct ArityTooLarge : Error {
    using Error::Error;
};
/* Jacobson expansion check failed: a bug */
struct CertificationFailure : Error {
    using Error::Error;
};
struct NotADerivation : Error {
    using Error::Error;
};
struct RingMismatch : Error {
    using Error::Error;
};
struct LiftNotCocycle : Error {
    using Error::Error;
};
struct InvalidFiltration : Error {
    using Error::Error;
};
struct MalformedSplitData : Error {
    using Error::Error;
};
struct WeightMismatch : Error {
    using Error::Error;
};
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace charp
