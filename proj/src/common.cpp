#include "rv/common.hpp"

#include <cstdlib>
#include <sstream>

namespace rv {

int working_precision() {
    const char* env = std::getenv("RV_PRECISION");
    if (!env || !*env) return kDefaultPrecision;
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 15) throw ConfigError("RV_PRECISION must be an integer >= 15");
    return v > kMaxPrecision ? kMaxPrecision : static_cast<int>(v);
}

static std::string pole_msg(int block, complex_t where) {
    std::ostringstream os;
    os << "pole of block " << block << " at " << where.real() << (where.imag() < 0 ? "" : "+")
       << where.imag() << "i";
    return os.str();
}

PoleError::PoleError(int b, complex_t where) : Error(pole_msg(b, where)), block(b), pole(where) {}

ToleranceNotMet::ToleranceNotMet(const std::string& what, real_t a)
    : Error(what + " (achieved " + std::to_string(static_cast<double>(a)) + ")"), achieved(a) {}

}  // namespace rv
