#pragma once

#include <stdexcept>
#include <string>

namespace walklab {

// Base class for everything thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input: bad weights, duplicate jumps, unparsable files.
struct ValidationError : Error {
    using Error::Error;
};

// Structurally valid input outside the operation's domain (z out of range, wrong drift regime).
struct DomainError : Error {
    using Error::Error;
};

// Refused by policy rather than by arithmetic: periodic step sets, statistics
// that need a {-1,0,+1} support. CLI maps these to exit code 2.
struct RefusalError : Error {
    using Error::Error;
};

// Evaluation at or too close to a singular point (branch point, double root, zero divisor).
struct SingularityError : Error {
    using Error::Error;
};

// Iteration failed to converge or produced residuals above contract.
struct NumericError : Error {
    using Error::Error;
};

// The three lattice-path statistics plus the bridge-conditioned variant of the third.
enum class Statistic {
    returns,
    height,
    signchanges,
    signchanges_bridges,
};

inline const char* to_string(Statistic s) {
    switch (s) {
        case Statistic::returns: return "returns";
        case Statistic::height: return "height";
        case Statistic::signchanges: return "signchanges";
        case Statistic::signchanges_bridges: return "signchanges_bridges";
    }
    return "?";
}

}  // namespace walklab
