#pragma once

#include <stdexcept>
#include <string>

namespace snp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A customer's sold quantity would be negative at the requested price.
class NegativeDemandError : public Error {
public:
    NegativeDemandError(int customer, double demand);
    int customer() const noexcept { return customer_; }
    double demand() const noexcept { return demand_; }

private:
    int customer_;
    double demand_;
};

/// No assignment satisfies the constraints (service level, capacity, eligibility).
class InfeasibleError : public Error {
public:
    using Error::Error;
};

/// A caller-side precondition was violated.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Malformed instance file or configuration text.
class ParseError : public Error {
public:
    using Error::Error;
};

/// Instance fails its invariants.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Brute-force enumeration would exceed its hard size limit.
class SizeGuardError : public Error {
public:
    using Error::Error;
};

/// Invalid search or experiment configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace snp
