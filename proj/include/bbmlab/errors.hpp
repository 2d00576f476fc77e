#pragma once

#include <charconv>
#include <stdexcept>
#include <string>

namespace bbmlab {

/// Shortest round-trip decimal text of v, for messages and file names.
inline std::string shortest(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid construction parameters (grid sizes, dt, eps, ...).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Malformed caller input: empty traces, mismatched grids, missing times.
class InputError : public Error {
public:
    using Error::Error;
};

/// NaN or Inf found in sample data.
class NumericalDataError : public Error {
public:
    using Error::Error;
};

class MultiplierDomainError : public Error {
public:
    using Error::Error;
};

/// Requested quantity outside the supported range (e.g. negative regularity).
class OutOfScopeError : public Error {
public:
    using Error::Error;
};

class InsufficientDataError : public Error {
public:
    using Error::Error;
};

class InterpolationError : public Error {
public:
    using Error::Error;
};

/// Non-finite values appeared while time stepping.
class BlowUpError : public Error {
public:
    BlowUpError(const std::string& what, double time)
        : Error(what + " (t = " + shortest(time) + ")"), time_(time) {}

    double time() const noexcept { return time_; }

private:
    double time_;
};

/// One member of a BBM/KdV pair failed; carries the eps and failure time.
class AbortedPairError : public Error {
public:
    AbortedPairError(double eps, double time, const std::string& reason)
        : Error("pair eps=" + shortest(eps) + " aborted: " + reason),
          eps_(eps), time_(time) {}

    double eps() const noexcept { return eps_; }
    double time() const noexcept { return time_; }

private:
    double eps_;
    double time_;
};

}  // namespace bbmlab
