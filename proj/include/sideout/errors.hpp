// Error taxonomy. The four category bases map onto the CLI exit codes
// (config=2, data=3, training=4, lookup=5).
#pragma once

#include <stdexcept>
#include <string>

namespace sideout {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TrainingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LookupError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// -- config --------------------------------------------------------------

struct InvalidConfig : ConfigError {
    using ConfigError::ConfigError;
};

struct InvalidAlpha : ConfigError {
    explicit InvalidAlpha(double alpha)
        : ConfigError("alpha must be in (0, 1], got " + std::to_string(alpha)) {}
};

struct InvalidM : ConfigError {
    using ConfigError::ConfigError;
};

struct InvalidGamma : ConfigError {
    explicit InvalidGamma(double gamma)
        : ConfigError("gamma must be > 0, got " + std::to_string(gamma)) {}
};

// -- data ----------------------------------------------------------------

struct MalformedRow : DataError {
    MalformedRow(std::size_t line, const std::string& reason)
        : DataError("line " + std::to_string(line) + ": " + reason), line(line) {}
    std::size_t line;
};

struct InvariantViolation : DataError {
    using DataError::DataError;
};

struct DegenerateSplit : DataError {
    using DataError::DataError;
};

struct NegativeInterval : DataError {
    using DataError::DataError;
};

struct EmptyDataset : DataError {
    using DataError::DataError;
};

struct EmptyInput : DataError {
    using DataError::DataError;
};

struct LengthMismatch : DataError {
    using DataError::DataError;
};

struct NonFiniteInput : DataError {
    using DataError::DataError;
};

// -- training / numerical ------------------------------------------------

struct SingleClassData : TrainingError {
    SingleClassData() : TrainingError("training data contains a single class") {}
};

struct SingleClassLabels : TrainingError {
    SingleClassLabels() : TrainingError("labels contain a single class") {}
};

struct SingularCovariance : TrainingError {
    using TrainingError::TrainingError;
};

struct WrongModelKind : TrainingError {
    using TrainingError::TrainingError;
};

struct BudgetExceeded : TrainingError {
    using TrainingError::TrainingError;
};

struct EmptyBackground : TrainingError {
    EmptyBackground() : TrainingError("background set is empty") {}
};

struct DegenerateSystem : TrainingError {
    using TrainingError::TrainingError;
};

// -- lookup --------------------------------------------------------------

struct UnknownMatch : LookupError {
    explicit UnknownMatch(const std::string& id)
        : LookupError("match id not found in test set: " + id) {}
};

struct MissingModel : LookupError {
    using LookupError::LookupError;
};

}  // namespace sideout
