#pragma once

#include <stdexcept>
#include <string>

namespace notesforge {

// Error categories map 1:1 onto CLI exit codes (usage=1, input=2, schema=3).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A referenced file/resource is missing or unreadable.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The resource exists but its contents violate a documented format or contract.
struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace notesforge
