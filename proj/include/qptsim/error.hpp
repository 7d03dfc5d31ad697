// error.hpp — error type shared by all qptsim modules

#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace qptsim {

// Validation errors come from bad input (exit code 1 in the CLI),
// numerical errors from failed iteration/degeneracy (exit code 2).
enum class ErrorKind { Validation, Numerical };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string module, std::string code, const std::string& message)
        : std::runtime_error(module + ":" + code + ": " + message),
          kind_(kind), module_(std::move(module)), code_(std::move(code)), message_(message) {}

    ErrorKind kind() const { return kind_; }
    const std::string& module_name() const { return module_; }
    const std::string& code() const { return code_; }
    const std::string& message() const { return message_; }

private:
    ErrorKind kind_;
    std::string module_;
    std::string code_;
    std::string message_;
};

[[noreturn]] inline void fail_validation(const std::string& module, const std::string& code,
                                         const std::string& message) {
    throw Error(ErrorKind::Validation, module, code, message);
}

[[noreturn]] inline void fail_numerical(const std::string& module, const std::string& code,
                                        const std::string& message) {
    throw Error(ErrorKind::Numerical, module, code, message);
}

} // namespace qptsim
