#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rv {

using real_t = long double;
using complex_t = std::complex<real_t>;

inline constexpr real_t kPi = std::numbers::pi_v<long double>;
inline constexpr real_t kTwoPi = 2 * kPi;
inline const complex_t kI{0, 1};

// Decimal digits actually carried by real_t. Requests above this are clamped.
inline constexpr int kMaxPrecision = 18;
inline constexpr int kDefaultPrecision = 18;

// Precision in decimal digits: RV_PRECISION if set and valid, else the default.
int working_precision();

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class PoleError : public Error {
public:
    PoleError(int block, complex_t where);
    int block;
    complex_t pole;
};

class ToleranceNotMet : public Error {
public:
    ToleranceNotMet(const std::string& what, real_t achieved);
    real_t achieved;
};

class InfeasibleContour : public Error { using Error::Error; };
class BadSupport : public Error { using Error::Error; };
class Singular : public Error { using Error::Error; };
class DepthExceeded : public Error { using Error::Error; };
class TruncationTooSmall : public Error { using Error::Error; };
class TailNotConverged : public Error { using Error::Error; };
class CoeffRangeExceeded : public Error { using Error::Error; };
class PoleAtOne : public Error { using Error::Error; };
class ConfigError : public Error { using Error::Error; };

// i^k for integer k.
inline complex_t ipow(long k) {
    switch (((k % 4) + 4) % 4) {
        case 0: return {1, 0};
        case 1: return {0, 1};
        case 2: return {-1, 0};
        default: return {0, -1};
    }
}

}  // namespace rv
