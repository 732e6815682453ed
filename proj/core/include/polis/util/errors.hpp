#pragma once

#include <stdexcept>
#include <string>

namespace polis {

// Error taxonomy mirrored by the CLI exit codes (see tools/polis_probe.cpp):
// validation -> 2, missing artifact -> 3, transport -> 4, partial -> 5.

class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class MissingArtifactError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class TransportError : public std::runtime_error {
public:
    TransportError(const std::string& what, bool permanent)
        : std::runtime_error(what), permanent_(permanent) {}
    bool permanent() const { return permanent_; }

private:
    bool permanent_;
};

class PartialFailureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace polis
