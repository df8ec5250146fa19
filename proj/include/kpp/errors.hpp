#pragma once

#include <stdexcept>
#include <string>

namespace kpp {

// Bad model parameters or data (kernel/reaction construction).
struct ModelError : std::runtime_error {
    explicit ModelError(const std::string& what) : std::runtime_error(what) {}
};

// Argument outside an operation's stated domain (e.g. mgf past the abscissas).
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Root bracketing / iteration failures.
struct BracketError : std::runtime_error {
    explicit BracketError(const std::string& what) : std::runtime_error(what) {}
};

// Quadrature non-convergence.
struct QuadratureError : std::runtime_error {
    explicit QuadratureError(const std::string& what) : std::runtime_error(what) {}
};

// Certificate construction failures (no-root band, degenerate tangency,
// unreachable height, infeasible width).
struct CertificateError : std::runtime_error {
    explicit CertificateError(const std::string& what) : std::runtime_error(what) {}
};

// Simulation aborts: blow-up/overshoot, front too close to the boundary,
// kernel truncation, insufficient fit data.
struct SimulationError : std::runtime_error {
    explicit SimulationError(const std::string& what) : std::runtime_error(what) {}
};

// Config file / CLI argument problems. Messages name the offending field.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A certificate failed verification (residual sign or structural invariant).
struct VerificationError : std::runtime_error {
    explicit VerificationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace kpp
