#pragma once

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace kderiv {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad input: malformed shapes, out-of-range indices, non-prime moduli.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// The operation needs a capability the base does not have (e.g. exact
/// homotopy categories for chain complexes up to quasi-isomorphism).
class CapabilityError : public Error {
public:
    using Error::Error;
};

/// An internal consistency check failed (non-commuting square, broken
/// membership after an operator, ...).
class CheckFailure : public Error {
public:
    using Error::Error;
};

/// An enumeration produced more elements than the configured cap.
class CapExceeded : public Error {
public:
    CapExceeded(const std::string& what, int level)
        : Error(what + " (level " + std::to_string(level) + ")"), level_(level) {}
    int level() const { return level_; }

private:
    int level_;
};

/// Largest number of elements any single enumeration may produce. Starts at
/// $KDERIV_CAP when set, else 2'000'000.
inline long long& enumeration_cap_ref() {
    static long long cap = [] {
        const char* env = std::getenv("KDERIV_CAP");
        return env ? std::atoll(env) : 2'000'000LL;
    }();
    return cap;
}
inline long long enumeration_cap() { return enumeration_cap_ref(); }
inline void set_enumeration_cap(long long cap) { enumeration_cap_ref() = cap; }

}  // namespace kderiv
