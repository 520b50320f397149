#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace feesim {

// Base error carrying the module of origin, so the CLI can emit a
// machine-readable error record without parsing free-form messages.
class Error : public std::runtime_error {
public:
    Error(std::string kind, std::string module, const std::string& message)
        : std::runtime_error("[" + kind + " in " + module + "] " + message),
          kind_(std::move(kind)),
          module_(std::move(module)),
          message_(message) {}

    const std::string& kind() const { return kind_; }
    const std::string& module() const { return module_; }
    const std::string& message() const { return message_; }

private:
    std::string kind_;
    std::string module_;
    std::string message_;
};

// Invalid input value; `field` names the offending parameter.
class DomainError : public Error {
public:
    DomainError(std::string module, std::string field, const std::string& message)
        : Error("DomainError", std::move(module), field + ": " + message),
          field_(std::move(field)) {}

    const std::string& field() const { return field_; }

private:
    std::string field_;
};

// Config-file error; `line` is 1-based, 0 when no single line applies.
class ParseError : public Error {
public:
    ParseError(std::string module, std::size_t line, const std::string& message)
        : Error("ParseError", std::move(module),
                (line ? "line " + std::to_string(line) + ": " : "") + message),
          line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// Requested allocation exceeds the configured budget.
class ResourceError : public Error {
public:
    ResourceError(std::string module, const std::string& message)
        : Error("ResourceError", std::move(module), message) {}
};

// An explicit scheme produced a nonpositive state; reports the first
// offending (path, step).
class StabilityError : public Error {
public:
    StabilityError(std::string module, std::size_t path, std::size_t step,
                   const std::string& message)
        : Error("StabilityError", std::move(module),
                message + " (path " + std::to_string(path) + ", step " +
                    std::to_string(step) + ")"),
          path_(path),
          step_(step) {}

    std::size_t path() const { return path_; }
    std::size_t step() const { return step_; }

private:
    std::size_t path_;
    std::size_t step_;
};

// A formula hit a genuinely singular configuration.
class NumericalError : public Error {
public:
    NumericalError(std::string module, const std::string& message)
        : Error("NumericalError", std::move(module), message) {}
};

// A policy mapping was evaluated on an inadmissible state.
class EvaluationError : public Error {
public:
    EvaluationError(std::string module, const std::string& message)
        : Error("EvaluationError", std::move(module), message) {}
};

}  // namespace feesim
