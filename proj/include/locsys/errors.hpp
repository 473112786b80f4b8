#pragma once

#include <stdexcept>
#include <string>

namespace locsys {

/// Base class of all errors raised by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionMismatch : Error {
    using Error::Error;
};
struct FieldMismatch : Error {
    using Error::Error;
};
struct NotAComplex : Error {
    int degree;
    explicit NotAComplex(int deg)
        : Error("d o d != 0 at degree " + std::to_string(deg)), degree(deg) {}
};
struct ShapeError : Error {
    using Error::Error;
};
struct SimplicialIdentityViolation : Error {
    using Error::Error;
};
struct ShapeMismatch : Error {
    using Error::Error;
};
struct LawViolation : Error {
    using Error::Error;
};
struct NotAGroup : Error {
    using Error::Error;
};
struct NotDiscrete : Error {
    using Error::Error;
};
struct FunctorialityViolation : Error {
    using Error::Error;
};
struct NaturalityViolation : Error {
    using Error::Error;
};
struct BaseMismatch : Error {
    using Error::Error;
};
struct ObjectMismatch : Error {
    using Error::Error;
};
struct UnsupportedBasePushout : Error {
    using Error::Error;
};
struct NotDiscreteBase : Error {
    using Error::Error;
};
struct BudgetExceeded : Error {
    using Error::Error;
};
struct RationalFieldUnsupported : Error {
    using Error::Error;
};
struct ParseError : Error {
    using Error::Error;
};
struct VersionMismatch : Error {
    using Error::Error;
};
struct UnknownSuite : Error {
    using Error::Error;
};

}  // namespace locsys
