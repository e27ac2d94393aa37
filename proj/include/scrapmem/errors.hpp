#pragma once

#include <stdexcept>
#include <string>

namespace scrapmem {

// Input that fails a contract (bad manifest line, unknown preset, ...).
// The CLI maps this to exit code 2.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// A remote provider failed after its retry budget. Exit code 3.
class ProviderError : public std::runtime_error {
public:
    ProviderError(const std::string& what, int attempts)
        : std::runtime_error(what + " (after " + std::to_string(attempts) + " attempts)"),
          attempts_(attempts) {}
    int attempts() const { return attempts_; }

private:
    int attempts_ = 0;
};

// Persistent state violates a structural invariant (corrupt store, dangling
// incidence, ...). Never thrown for bad user input.
class InvariantError : public std::runtime_error {
public:
    explicit InvariantError(const std::string& what) : std::runtime_error(what) {}
};

// Filesystem-level store problems: missing files, lock conflicts.
class StoreError : public std::runtime_error {
public:
    explicit StoreError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace scrapmem
