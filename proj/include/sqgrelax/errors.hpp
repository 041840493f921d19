#pragma once

#include <stdexcept>
#include <string>

namespace sqg {

// Base class for all failures this library reports deliberately.
// Anything else escaping (std::logic_error etc.) is a programming error.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A negative fractional power (or any mean-sensitive operation) was asked to
// act on a field whose zero mode is not zero.
struct ZeroModeViolation : Error {
    explicit ZeroModeViolation(const std::string& msg) : Error(msg) {}
};

// A spectral annulus contains no lattice wavenumbers.
struct BandEmpty : Error {
    explicit BandEmpty(const std::string& msg) : Error(msg) {}
};

// Fixed-point iteration for the steady state stopped making progress.
struct Diverged : Error {
    explicit Diverged(const std::string& msg) : Error(msg) {}
};

// A report was requested from a solve that never reached its tolerance.
struct NotConverged : Error {
    explicit NotConverged(const std::string& msg) : Error(msg) {}
};

// Too much of a field's mass sits near the box boundary for a
// coordinate-weighted operation to be trustworthy.
struct TailMassExceeded : Error {
    explicit TailMassExceeded(const std::string& msg) : Error(msg) {}
};

// Two fields that must share a grid do not.
struct GridMismatch : Error {
    explicit GridMismatch(const std::string& msg) : Error(msg) {}
};

// Rate fitting asked for with fewer samples than the window requires.
struct InsufficientData : Error {
    explicit InsufficientData(const std::string& msg) : Error(msg) {}
};

// Rate fitting asked for on data that is not strictly positive.
struct NonpositiveValues : Error {
    explicit NonpositiveValues(const std::string& msg) : Error(msg) {}
};

// A run configuration failed validation.
struct ConfigInvalid : Error {
    explicit ConfigInvalid(const std::string& msg) : Error(msg) {}
};

// The blow-up guard tripped during time evolution.
struct Instability : Error {
    explicit Instability(const std::string& msg) : Error(msg) {}
};

}  // namespace sqg
