#pragma once

#include <stdexcept>
#include <string>

namespace cvqkd {

// Invalid arguments are reported with std::invalid_argument. The types below
// cover the domain-specific failure modes.

/// Squeeze parameters that give alpha >= 1, so no information is processed.
class UnusableParameters : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A formula that only applies to a restricted parameter family was called
/// outside of it (e.g. the photon budget on asymmetric squeezing).
class UnsupportedParameters : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Too few samples for a statistic to be defined.
class InsufficientData : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace cvqkd
