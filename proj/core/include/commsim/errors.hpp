#pragma once

#include <stdexcept>
#include <string>

namespace commsim {

// Bad run configuration (unknown workload, exhausted schedule, malformed
// input file). The CLI maps these to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A violated internal contract (a quantity the algorithms promise to
// maintain). The CLI maps these to exit code 1.
class InvariantError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace commsim
