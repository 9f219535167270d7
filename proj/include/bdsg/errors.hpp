#pragma once

#include <stdexcept>
#include <string>

namespace bdsg {

/// 1/epsilon does not round to an integer cell count.
struct NonIntegerCellCount : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Points per cell must be even and at least 4.
struct InvalidResolution : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A Hermitian/symmetric eigensolve did not converge.
struct EigensolveFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The energy functional picked up a non-negligible imaginary part.
struct NonRealEnergy : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Two fields/statistics live on incompatible grids.
struct GridMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Malformed scenario/config document.
struct ScenarioError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// File read/write failure.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace bdsg
