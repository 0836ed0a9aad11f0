#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace ellgen {

/// Base of every error thrown by the library. The CLI maps subclasses onto
/// exit codes (input 2, guard 3, unsupported 4).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ZeroConstantTerm : public Error {
public:
    ZeroConstantTerm() : Error("series has zero constant term; not invertible") {}
};

class DivergentTail : public Error {
public:
    explicit DivergentTail(double modulus)
        : Error("cannot evaluate a q^{1/2}-series at |u| = " + std::to_string(modulus) + " >= 1") {}
};

class PresentationMismatch : public Error {
public:
    PresentationMismatch() : Error("cohomology elements belong to different ring presentations") {}
};

class NonNilpotentScalar : public Error {
public:
    NonNilpotentScalar() : Error("exponent has a nonzero scalar u^0 part; exp does not terminate") {}
};

class UnknownManifold : public Error {
public:
    explicit UnknownManifold(const std::string& name) : Error("unknown builtin manifold '" + name + "'") {}
};

class InvalidTau : public Error {
public:
    InvalidTau() : Error("tau must lie in the upper half plane (Im tau > 0)") {}
};

/// A size guard of the bivariate expansion or of a symbolic check was hit.
class GuardExceeded : public Error {
public:
    GuardExceeded(const std::string& guard, const std::string& detail)
        : Error("guard '" + guard + "' exceeded: " + detail), guard_(guard) {}
    const std::string& guard() const noexcept { return guard_; }

private:
    std::string guard_;
};

class PartitionTooTall : public Error {
public:
    PartitionTooTall(std::size_t rows, std::size_t rank)
        : Error("partition has " + std::to_string(rows) + " rows but the bundle has rank " + std::to_string(rank)) {}
};

class UnsupportedRank : public Error {
public:
    explicit UnsupportedRank(int rank) : Error("unsupported rank " + std::to_string(rank)) {}
};

class TailTooLarge : public Error {
public:
    TailTooLarge(const std::string& sample, double bound)
        : Error("series tail bound " + scientific(bound) + " too large at tau = " + sample) {}

private:
    static std::string scientific(double x)
    {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3e", x);
        return buf;
    }
};

/// Malformed manifest, flag value or literal.
class InputError : public Error {
public:
    using Error::Error;
};

} // namespace ellgen
