/*
 * Typed error conditions raised by the engine.  Every failure mode that a
 * caller can meaningfully react to gets its own exception class; everything
 * derives from EngineError so a shell can report uniformly.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace motfourier {

class EngineError : public std::runtime_error {
public:
    explicit EngineError(const std::string& what) : std::runtime_error(what) {}
};

// Division or inversion request on something that is not a single monomial.
class NonMonomialError : public EngineError {
public:
    explicit NonMonomialError(const std::string& what) : EngineError(what) {}
};

// Division by an exact zero.
class DivisionByZeroError : public EngineError {
public:
    explicit DivisionByZeroError(const std::string& what) : EngineError(what) {}
};

// An operation required a ball/polyball centered at the origin.
class CenterNotZeroError : public EngineError {
public:
    explicit CenterNotZeroError(const std::string& what) : EngineError(what) {}
};

// A function failed the integrability gate for the requested variable set.
class NotIntegrableError : public EngineError {
public:
    explicit NotIntegrableError(const std::string& what) : EngineError(what) {}
};

// The operation would need a square (diagonal) term in a phase polynomial,
// which the representable phase class excludes.
class UnsupportedPhaseError : public EngineError {
public:
    explicit UnsupportedPhaseError(const std::string& what) : EngineError(what) {}
};

// A transform/convolution precondition on support boundedness failed.
class NotBoundedError : public EngineError {
public:
    explicit NotBoundedError(const std::string& what) : EngineError(what) {}
};

// Distribution operation outside the supported tree shapes.
class UnsupportedDistributionError : public EngineError {
public:
    explicit UnsupportedDistributionError(const std::string& what) : EngineError(what) {}
};

// Raised when an operator needs a compactly supported, smooth operand
// (finite packet presentation with bounded support) and the argument is not one.
class NotSchwartzError : public EngineError {
public:
    explicit NotSchwartzError(const std::string& what) : EngineError(what) {}
};

// A subgroup transform was requested for a function that translation probes
// show is not invariant under the subgroup.
class NotInvariantError : public EngineError {
public:
    explicit NotInvariantError(const std::string& what) : EngineError(what) {}
};

// A summation-formula precondition failed; the message names which one.
class HypothesisFailedError : public EngineError {
public:
    explicit HypothesisFailedError(const std::string& what) : EngineError(what) {}
};

// Root finding could not split a factor over the Gaussian rationals.
class CannotSplitError : public EngineError {
public:
    explicit CannotSplitError(const std::string& what) : EngineError(what) {}
};

// p-adic specialization was asked for a non-integer value-group element.
class ZeroPolynomialError : public EngineError {
public:
    explicit ZeroPolynomialError(const std::string& what) : EngineError(what) {}
};

class NonSquareError : public EngineError {
public:
    explicit NonSquareError(const std::string& what) : EngineError(what) {}
};

class NonIntegralGammaError : public EngineError {
public:
    explicit NonIntegralGammaError(const std::string& what) : EngineError(what) {}
};

// p-adic specialization level k is too small for the requested element.
class InsufficientLevelError : public EngineError {
public:
    explicit InsufficientLevelError(const std::string& what) : EngineError(what) {}
};

// Script / expression syntax problems.
class ParseError : public EngineError {
public:
    ParseError(int line, const std::string& what)
        : EngineError("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

// Malformed script text; carries the offending line and column.
class SyntaxError : public ParseError {
public:
    SyntaxError(int line, int column, const std::string& what)
        : ParseError(line, "column " + std::to_string(column) + ": " + what), column_(column) {}
    int column() const { return column_; }

private:
    int column_;
};

// A script statement references a name with no earlier definition.
class UndefinedNameError : public ParseError {
public:
    UndefinedNameError(int line, const std::string& name)
        : ParseError(line, "undefined name '" + name + "'") {}
};

// Operands of a script expression or command disagree in arity.
class ArityMismatchError : public ParseError {
public:
    ArityMismatchError(int line, const std::string& what) : ParseError(line, what) {}
};

}  // namespace motfourier
