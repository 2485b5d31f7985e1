#pragma once

#include <stdexcept>
#include <string>

namespace netinfer {

// Invalid argument / precondition violation. CLI maps this to exit code 1.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Numeric/runtime failures. CLI maps these to exit code 2.
class StabilityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IllConditionedError : public std::runtime_error {
public:
    IllConditionedError(const std::string& what, double condition)
        : std::runtime_error(what), condition_(condition) {}

    double condition() const { return condition_; }

private:
    double condition_;
};

class DegenerateDataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UndefinedMetricError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace netinfer
