#pragma once

#include <stdexcept>
#include <string>

namespace hermquat
{

    // Malformed or out-of-domain input (non-prime modulus, bad JSON value, ...).
    struct InputError : std::invalid_argument
    {
        using std::invalid_argument::invalid_argument;
    };

    // Linear dependence where full rank is required.
    struct RankError : std::invalid_argument
    {
        using std::invalid_argument::invalid_argument;
    };

    // A quadratic form that fails h(lx) = n_L(l) h(x).
    struct NotHermitianError : std::invalid_argument
    {
        using std::invalid_argument::invalid_argument;
    };

    struct DegenerateError : std::invalid_argument
    {
        using std::invalid_argument::invalid_argument;
    };

    // Lattice or order not stable under multiplication by the ring of integers.
    struct NotBModuleError : std::invalid_argument
    {
        using std::invalid_argument::invalid_argument;
    };

    // Operation precondition violated by otherwise well-formed input.
    struct PreconditionError : std::invalid_argument
    {
        using std::invalid_argument::invalid_argument;
    };

    // Input outside the supported theory (even field discriminant, 2 ramified, ...).
    struct UnsupportedError : std::domain_error
    {
        using std::domain_error::domain_error;
    };

    // Square-free discriminant hypothesis violated at a prime.
    struct HypothesisError : std::domain_error
    {
        HypothesisError(const std::string &what, long prime)
            : std::domain_error(what), prime_(prime) {}
        long prime() const noexcept { return prime_; }

    private:
        long prime_;
    };

    // A proven identity failed to hold. Never expected; reported loudly.
    struct InvariantViolation : std::logic_error
    {
        using std::logic_error::logic_error;
    };

} // namespace hermquat
