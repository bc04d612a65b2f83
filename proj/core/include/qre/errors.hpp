#pragma once

#include <stdexcept>
#include <string>

namespace qre {

/// Base class for all errors raised by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// --- symbolic engine ---
struct UnboundSymbol : Error {
    explicit UnboundSymbol(const std::string& sym) : Error("unbound symbol: " + sym) {}
};
struct DomainError : Error {
    using Error::Error;
};
struct NotPolynomial : Error {
    using Error::Error;
};

// --- graph construction ---
struct PortReuse : Error {
    using Error::Error;
};
struct DTypeMismatch : Error {
    using Error::Error;
};
struct CycleError : Error {
    using Error::Error;
};
struct DanglingWire : Error {
    using Error::Error;
};
struct SignatureMismatch : Error {
    using Error::Error;
};
struct AlreadyBit : Error {
    using Error::Error;
};

// --- resource analysis ---
struct MissingDecomposition : Error {
    using Error::Error;
};
struct CycleDetected : Error {
    using Error::Error;
};
struct UncostedLeaf : Error {
    using Error::Error;
};

// --- classical simulation ---
struct NotClassical : Error {
    using Error::Error;
};
struct RangeError : Error {
    using Error::Error;
};

// --- tensor simulation ---
struct TooLarge : Error {
    using Error::Error;
};
struct MissingTensor : Error {
    using Error::Error;
};
struct BadAncillaCount : Error {
    using Error::Error;
};

// --- stdlib parameters ---
struct BadEpsilon : Error {
    using Error::Error;
};
struct BadSize : Error {
    using Error::Error;
};
struct BadL : Error {
    using Error::Error;
};
struct BadBlockExponent : Error {
    using Error::Error;
};
struct OracleShapeMismatch : Error {
    using Error::Error;
};
struct AlphaNotOne : Error {
    using Error::Error;
};
struct EmptyParts : Error {
    using Error::Error;
};
struct NotReflection : Error {
    using Error::Error;
};
struct NormExceeded : Error {
    using Error::Error;
};
struct AngleSolveFailure : Error {
    using Error::Error;
};
struct DegreeOverflow : Error {
    using Error::Error;
};
struct BadWindow : Error {
    using Error::Error;
};
struct BadParams : Error {
    using Error::Error;
};

// --- crypto ---
struct EvenModulus : Error {
    using Error::Error;
};
struct OffCurve : Error {
    using Error::Error;
};
struct WindowTooLarge : Error {
    using Error::Error;
};

// --- physical cost ---
struct BadDistance : Error {
    using Error::Error;
};
struct BudgetInfeasible : Error {
    using Error::Error;
};

// --- cli ---
struct UnknownBloq : Error {
    using Error::Error;
};
struct BadParam : Error {
    using Error::Error;
};

}  // namespace qre
