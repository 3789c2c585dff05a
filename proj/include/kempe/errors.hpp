#pragma once

#include <stdexcept>

namespace kempe {

// A violated theorem or internal consistency check. Never an input problem.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// A configured node, state or memory limit was hit.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace kempe
