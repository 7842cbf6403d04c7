#ifndef INSEP_ERRORS_HPP
#define INSEP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace insep {

/// Base of every domain error. `name()` is the stable error identifier the
/// CLI renders; `module()` names the component that raised it.
class Error : public std::runtime_error {
public:
    Error(std::string name, std::string module, const std::string& what)
        : std::runtime_error(what), name_(std::move(name)), module_(std::move(module)) {}

    const std::string& name() const noexcept { return name_; }
    const std::string& module() const noexcept { return module_; }

private:
    std::string name_;
    std::string module_;
};

#define INSEP_DEFINE_ERROR(Type, Module)                                        \
    class Type : public Error {                                                 \
    public:                                                                     \
        explicit Type(const std::string& what) : Error(#Type, Module, what) {}  \
    }

INSEP_DEFINE_ERROR(ArityMismatch, "ff_arith");
INSEP_DEFINE_ERROR(BothZero, "ff_arith");
INSEP_DEFINE_ERROR(NotAPower, "ff_arith");
INSEP_DEFINE_ERROR(DivByZero, "ff_arith");
INSEP_DEFINE_ERROR(InvalidField, "ff_arith");

INSEP_DEFINE_ERROR(NotAPowerViolation, "tower");
INSEP_DEFINE_ERROR(ZeroDivisorDetected, "tower");
INSEP_DEFINE_ERROR(UnsupportedPresentation, "tower");
INSEP_DEFINE_ERROR(MalformedLayer, "tower");

INSEP_DEFINE_ERROR(InternalInvariantViolation, "core");

INSEP_DEFINE_ERROR(InvalidSpec, "artin");
INSEP_DEFINE_ERROR(CapExceeded, "artin");

INSEP_DEFINE_ERROR(NotContained, "localring");
INSEP_DEFINE_ERROR(NotPrime, "localring");
INSEP_DEFINE_ERROR(NotTriangular, "localring");
INSEP_DEFINE_ERROR(TriangularizationFailed, "localring");
INSEP_DEFINE_ERROR(BoundViolated, "localring");

INSEP_DEFINE_ERROR(ValidationError, "cli");

#undef INSEP_DEFINE_ERROR

/// Syntax error with a 1-based position.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : Error("ParseError", "cli", what), line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

}  // namespace insep

#endif  // INSEP_ERRORS_HPP
