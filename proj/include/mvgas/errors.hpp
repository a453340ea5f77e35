#ifndef MVGAS_ERRORS_HPP
#define MVGAS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mvgas {

// All library errors derive from Error so callers can catch one type.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class DomainError : public Error {
public:
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

// rho at (or below) the vacuum floor with nonzero momentum: kinetic energy is +inf.
class NonPhysicalStateError : public Error {
public:
    explicit NonPhysicalStateError(const std::string& msg) : Error(msg) {}
};

class NegativeInternalEnergyError : public Error {
public:
    explicit NegativeInternalEnergyError(const std::string& msg) : Error(msg) {}
};

class InadmissibleChiError : public Error {
public:
    explicit InadmissibleChiError(const std::string& msg) : Error(msg) {}
};

class InvariantViolationError : public Error {
public:
    explicit InvariantViolationError(const std::string& msg) : Error(msg) {}
};

// Time step collapsed or fields went non-finite; message carries diagnostics.
class BlowUpError : public Error {
public:
    explicit BlowUpError(const std::string& msg) : Error(msg) {}
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

} // namespace mvgas

#endif
