#pragma once

#include <stdexcept>
#include <string>

namespace hcube {

/// Bad user input: malformed files, parameters outside an operation's domain,
/// violated preconditions.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The instance is larger than the operation's materialization cap.
class TooLarge : public std::length_error {
public:
    using std::length_error::length_error;
};

/// A search ran out of its node budget before reaching a decision.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace hcube
