#include "rv/arch_local.hpp"

#include <cmath>

#include "rv/special.hpp"

namespace rv {

namespace {

const real_t kLogPi = std::log(kPi);
const real_t kLog2Pi = std::log(kTwoPi);
const real_t kLog2 = std::log(2.0L);

int fold(int delta, long tw) { return static_cast<int>(((delta + tw) % 2 + 2) % 2); }

complex_t checked_lgamma(complex_t z, int block) {
    try {
        return lgamma_c(z);
    } catch (const PoleError&) {
        throw PoleError(block, z);
    }
}

// log L(s) for one real block after twisting.
complex_t log_l_real(const RealBlock& b, CharTwist tw, complex_t s, int idx) {
    if (auto* g = std::get_if<GL1Block>(&b)) {
        complex_t a = (s + g->t + static_cast<real_t>(fold(g->delta, tw.value))) / 2.0L;
        return -a * kLogPi + checked_lgamma(a, idx);
    }
    const auto& d = std::get<DS2Block>(b);
    complex_t a = s + d.t + static_cast<real_t>(d.l) / 2;
    return kLog2 - a * kLog2Pi + checked_lgamma(a, idx);
}

complex_t log_l_complex(const ComplexBlock& b, CharTwist tw, complex_t s, int idx) {
    complex_t a = s + b.t + static_cast<real_t>(std::labs(b.l + tw.value)) / 2;
    return kLog2 - a * kLog2Pi + checked_lgamma(a, idx);
}

}  // namespace

int RealPlaceParams::rank() const {
    int n = 0;
    for (const auto& b : blocks) n += std::holds_alternative<GL1Block>(b) ? 1 : 2;
    return n;
}

void validate(const RealPlaceParams& p) {
    if (p.blocks.empty()) throw ConfigError("real params need at least one block");
    for (const auto& b : p.blocks) {
        if (auto* g = std::get_if<GL1Block>(&b)) {
            if (g->delta != 0 && g->delta != 1) throw ConfigError("GL1Block delta must be 0 or 1");
            if (!std::isfinite(g->t.real()) || !std::isfinite(g->t.imag()))
                throw ConfigError("non-finite exponent");
        } else {
            const auto& d = std::get<DS2Block>(b);
            if (d.l < 1) throw ConfigError("DS2Block needs l >= 1");
            if (!std::isfinite(d.t.real()) || !std::isfinite(d.t.imag()))
                throw ConfigError("non-finite exponent");
        }
    }
}

void validate(const ComplexPlaceParams& p) {
    if (p.blocks.empty()) throw ConfigError("complex params need at least one block");
    for (const auto& b : p.blocks)
        if (!std::isfinite(b.t.real()) || !std::isfinite(b.t.imag()))
            throw ConfigError("non-finite exponent");
}

complex_t l_factor(const RealPlaceParams& p, CharTwist tw, complex_t s) {
    complex_t acc = 0;
    for (std::size_t i = 0; i < p.blocks.size(); ++i)
        acc += log_l_real(p.blocks[i], tw, s, static_cast<int>(i));
    return std::exp(acc);
}

complex_t l_factor(const ComplexPlaceParams& p, CharTwist tw, complex_t s) {
    complex_t acc = 0;
    for (std::size_t i = 0; i < p.blocks.size(); ++i)
        acc += log_l_complex(p.blocks[i], tw, s, static_cast<int>(i));
    return std::exp(acc);
}

complex_t epsilon_factor(const RealPlaceParams& p, CharTwist tw) {
    long k = 0;
    for (const auto& b : p.blocks) {
        if (auto* g = std::get_if<GL1Block>(&b))
            k += fold(g->delta, tw.value);
        else
            k += std::get<DS2Block>(b).l + 1;
    }
    return ipow(k);
}

complex_t epsilon_factor(const ComplexPlaceParams& p, CharTwist tw) {
    long k = 0;
    for (const auto& b : p.blocks) k += std::labs(b.l + tw.value);
    return ipow(k);
}

complex_t gamma_factor(const RealPlaceParams& p, CharTwist tw, complex_t s) {
    RealPlaceParams dual = contragredient_params(p);
    complex_t acc = 0;
    for (std::size_t i = 0; i < p.blocks.size(); ++i) {
        int idx = static_cast<int>(i);
        acc += log_l_real(dual.blocks[i], tw, 1.0L - s, idx) - log_l_real(p.blocks[i], tw, s, idx);
    }
    return epsilon_factor(p, tw) * std::exp(acc);
}

complex_t gamma_factor(const ComplexPlaceParams& p, CharTwist tw, complex_t s) {
    ComplexPlaceParams dual = contragredient_params(p);
    CharTwist bar{-tw.value};
    complex_t acc = 0;
    for (std::size_t i = 0; i < p.blocks.size(); ++i) {
        int idx = static_cast<int>(i);
        acc += log_l_complex(dual.blocks[i], bar, 1.0L - s, idx) -
               log_l_complex(p.blocks[i], tw, s, idx);
    }
    return epsilon_factor(p, tw) * std::exp(acc);
}

RealPlaceParams contragredient_params(const RealPlaceParams& p) {
    RealPlaceParams out = p;
    for (auto& b : out.blocks) {
        if (auto* g = std::get_if<GL1Block>(&b))
            g->t = -g->t;
        else
            std::get<DS2Block>(b).t = -std::get<DS2Block>(b).t;
    }
    return out;
}

ComplexPlaceParams contragredient_params(const ComplexPlaceParams& p) {
    ComplexPlaceParams out = p;
    for (auto& b : out.blocks) {
        b.t = -b.t;
        b.l = -b.l;
    }
    return out;
}

std::vector<PoleSeries> gamma_dual_poles(const RealPlaceParams& p, CharTwist tw) {
    std::vector<PoleSeries> out;
    for (std::size_t i = 0; i < p.blocks.size(); ++i) {
        int idx = static_cast<int>(i);
        if (auto* g = std::get_if<GL1Block>(&p.blocks[i]))
            out.push_back({g->t - static_cast<real_t>(fold(g->delta, tw.value)), 2, idx});
        else {
            const auto& d = std::get<DS2Block>(p.blocks[i]);
            out.push_back({d.t - static_cast<real_t>(d.l) / 2, 1, idx});
        }
    }
    return out;
}

std::vector<PoleSeries> gamma_dual_poles(const ComplexPlaceParams& p, CharTwist tw) {
    std::vector<PoleSeries> out;
    for (std::size_t i = 0; i < p.blocks.size(); ++i) {
        const auto& b = p.blocks[i];
        out.push_back({b.t - static_cast<real_t>(std::labs(b.l + tw.value)) / 2, 1,
                       static_cast<int>(i)});
    }
    return out;
}

}  // namespace rv
