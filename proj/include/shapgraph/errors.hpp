#pragma once

#include <stdexcept>
#include <string>

namespace shapgraph {

// Error taxonomy shared across the library. The CLI maps these onto its
// exit-code contract: configuration/input errors exit 2, adapter and other
// runtime failures exit 3.

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidConfig : ConfigError {
    using ConfigError::ConfigError;
};

struct DimensionMismatch : ConfigError {
    using ConfigError::ConfigError;
};

struct UnlabeledDataset : ConfigError {
    using ConfigError::ConfigError;
};

struct GameTooLarge : ConfigError {
    using ConfigError::ConfigError;
};

struct InvalidMatrix : ConfigError {
    using ConfigError::ConfigError;
};

struct RuntimeFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TrainingDiverged : RuntimeFailure {
    using RuntimeFailure::RuntimeFailure;
};

struct AdapterProtocolError : RuntimeFailure {
    using RuntimeFailure::RuntimeFailure;
};

struct RegressionSingular : RuntimeFailure {
    using RuntimeFailure::RuntimeFailure;
};

}  // namespace shapgraph
