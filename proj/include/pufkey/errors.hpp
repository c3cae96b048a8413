#pragma once

#include <stdexcept>
#include <string>

namespace pufkey {

struct InversionOfZero : std::runtime_error {
    InversionOfZero() : std::runtime_error("inversion of zero") {}
};

struct TableTooLarge : std::runtime_error {
    explicit TableTooLarge(int m)
        : std::runtime_error("multiplication table infeasible for m=" + std::to_string(m)) {}
};

struct RadiusTooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MessageTooLong : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ZeroPolynomial : std::runtime_error {
    ZeroPolynomial() : std::runtime_error("operation undefined on the zero polynomial") {}
};

struct InstanceTooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InternalSolvabilityViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace pufkey
