#pragma once

#include <stdexcept>

namespace blockip {

// Thrown when a configured work budget is exhausted before an answer is
// reached; callers map this to a RESOURCE_LIMIT verdict.
struct ResourceLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace blockip
