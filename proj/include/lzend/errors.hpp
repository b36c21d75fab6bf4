#pragma once

#include <stdexcept>
#include <string>

namespace lzend {

// Base for all toolkit errors. `code` is a stable machine-readable tag,
// printed by the CLI as "lzend: <code>: <message>".
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

// Malformed input files (non-integer tokens, bad JSON, bad graph lines).
class InputError : public Error {
public:
    explicit InputError(const std::string& message) : Error("input-format", message) {}
};

// A caller broke an operation's precondition.
class ContractError : public Error {
public:
    explicit ContractError(const std::string& message) : Error("precondition", message) {}
    ContractError(std::string code, const std::string& message) : Error(std::move(code), message) {}
};

// A configured budget was exhausted (search nodes, exhaustive subset limits).
class ResourceError : public Error {
public:
    explicit ResourceError(const std::string& message) : Error("resource-limit", message) {}
};

// External solver could not be run or produced output we cannot use.
class SolverError : public Error {
public:
    explicit SolverError(const std::string& message) : Error("solver", message) {}
};

// An internal cross-check failed: the implementation and a closed-form count
// (or a decoded model and the validator) disagree. Always a bug somewhere;
// fails loudly instead of propagating wrong numbers.
class IntegrityError : public Error {
public:
    IntegrityError(std::string code, const std::string& message) : Error(std::move(code), message) {}
};

} // namespace lzend
