#pragma once

#include <stdexcept>
#include <string>

namespace fpp {

/// Raised when an argument lies outside an operation's domain.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Malformed or invalid experiment input. `pointer` locates the offending
/// value as a JSON pointer ("" when not tied to a value); `location` is an
/// optional "source:line" prefix.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string pointer, const std::string& message, const std::string& location = {})
        : std::runtime_error(compose(pointer, message, location)), pointer_(std::move(pointer)), message_(message)
    {
    }
    const std::string& pointer() const { return pointer_; }
    /// The reason alone, without pointer or location.
    const std::string& reason() const { return message_; }

private:
    static std::string compose(const std::string& pointer, const std::string& message, const std::string& location)
    {
        std::string out = location.empty() ? std::string() : location + ": ";
        return out + (pointer.empty() ? message : pointer + ": " + message);
    }
    std::string pointer_;
    std::string message_;
};

/// The law is not supercritical (1 - p_inf <= p_c), M is invalid
/// (F([0,M]) <= p_c) or a positivity precheck failed.
class SupercriticalityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace fpp
