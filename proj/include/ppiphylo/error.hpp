#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ppiphylo {

// Error taxonomy shared by every module. The CLI maps each family onto a
// process exit code (format 2, data 3, configuration 4).

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text. `line` is 1-based, 0 when not applicable.
class FormatError : public Error {
public:
    explicit FormatError(const std::string& what, std::size_t line = 0);
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Well-formed input that is inconsistent (cycles, conflicting lineages, ...).
class DataError : public Error {
public:
    using Error::Error;
};

/// Unknown species, taxon or tree leaf.
class LookupError : public DataError {
public:
    using DataError::DataError;
};

/// Argument outside an operation's domain (empty graph, k > n, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A training problem with a single class.
class DegenerateModelError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Unusable run configuration (bad flags, untrainable root, ...).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Process exit code for an exception escaping to the CLI.
int exit_code_for(const std::exception& e) noexcept;

/// Warning sink. Defaults to stderr; tests may redirect it.
using WarningHandler = void (*)(const std::string&);
void set_warning_handler(WarningHandler handler);
void warn(const std::string& message);

}  // namespace ppiphylo
