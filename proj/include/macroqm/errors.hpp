#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace macroqm {

/// Argument outside the mathematical domain of an operation (non-finite
/// input, point outside an allowed window, non-positive scale).
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Caller broke a documented precondition, e.g. an ordering between orders.
class ContractViolation : public std::invalid_argument {
public:
    explicit ContractViolation(const std::string& what) : std::invalid_argument(what) {}
};

/// A numerical procedure declined to produce a value it could not certify:
/// unresolved oscillation, untruncated tail or non-convergence.
class NumericRefusal : public std::runtime_error {
public:
    explicit NumericRefusal(const std::string& what) : std::runtime_error(what) {}
};

/// A quantity that must vanish analytically (e.g. the imaginary part of a
/// Hermitian sum) came out larger than rounding can explain.
class ConsistencyError : public std::logic_error {
public:
    explicit ConsistencyError(const std::string& what) : std::logic_error(what) {}
};

namespace detail {

inline void require_finite(double v, const char* what)
{
    if (!std::isfinite(v)) {
        throw DomainError(std::string(what) + ": argument is not finite");
    }
}

} // namespace detail
} // namespace macroqm
