#pragma once

#include <stdexcept>

namespace wfd {

// Sampling-theory violation: a requested frequency is at or above half the
// sample rate and cannot be represented without aliasing.
class NyquistError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Input voltage above the converter's absolute maximum rating.
class DamageError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Malformed serial frame (wrong bit count or bad symbol).
class FramingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Threshold calibration could not produce a usable maximum response.
class CalibrationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace wfd
