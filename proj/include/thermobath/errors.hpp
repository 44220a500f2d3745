// errors.hpp — Exception hierarchy shared by every module

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace thermobath {

// Every error carries the module that raised it so the CLI can report
// provenance and choose an exit code.
class Error : public std::runtime_error {
public:
    Error(std::string module, const std::string& message)
        : std::runtime_error(module + ": " + message), module_(std::move(module)) {}

    const std::string& module() const noexcept { return module_; }

private:
    std::string module_;
};

// Evaluation outside the region where a field or model is defined.
class DomainError : public Error {
public:
    using Error::Error;
};

// A parameter violates its documented precondition.
class ParameterError : public Error {
public:
    using Error::Error;
};

// Quadrature or integration failed to reach the requested tolerance.
class NumericalError : public Error {
public:
    using Error::Error;
};

// Effective-model assumptions broken (e.g. eta_eff <= 0).
class ModelValidityError : public Error {
public:
    using Error::Error;
};

// NaN or overflow inside a simulation state.
class CorruptedStateError : public Error {
public:
    CorruptedStateError(std::string module, const std::string& message, long step)
        : Error(std::move(module), message + " (step " + std::to_string(step) + ")"), step_(step) {}

    long step() const noexcept { return step_; }

private:
    long step_;
};

// Statistical extraction could not produce an estimate.
class AnalysisError : public Error {
public:
    using Error::Error;
};

// Configuration validation; lists every violated key at once.
class ConfigError : public Error {
public:
    explicit ConfigError(std::vector<std::string> issues)
        : Error("config", join(issues)), issues_(std::move(issues)) {}

    const std::vector<std::string>& issues() const noexcept { return issues_; }

private:
    static std::string join(const std::vector<std::string>& items) {
        std::string out;
        for (const auto& s : items) {
            if (!out.empty()) out += "; ";
            out += s;
        }
        return out;
    }

    std::vector<std::string> issues_;
};

} // namespace thermobath
