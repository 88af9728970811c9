#pragma once

#include <variant>
#include <vector>

#include "rv/common.hpp"

namespace rv {

struct ComplexBlock {
    complex_t t;
    long l = 0;
};

struct ComplexPlaceParams {
    std::vector<ComplexBlock> blocks;
    int rank() const { return static_cast<int>(blocks.size()); }
};

struct GL1Block {
    int delta = 0;
    complex_t t;
};

struct DS2Block {
    long l = 1;
    complex_t t;
};

using RealBlock = std::variant<GL1Block, DS2Block>;

struct RealPlaceParams {
    std::vector<RealBlock> blocks;
    int rank() const;
};

using PlaceParams = std::variant<RealPlaceParams, ComplexPlaceParams>;

// Twist: parity δ at a real place, winding m at a complex place.
struct CharTwist {
    long value = 0;
};

// Throws ConfigError if an invariant of the params fails.
void validate(const RealPlaceParams& p);
void validate(const ComplexPlaceParams& p);

complex_t l_factor(const RealPlaceParams& p, CharTwist tw, complex_t s);
complex_t l_factor(const ComplexPlaceParams& p, CharTwist tw, complex_t s);

complex_t epsilon_factor(const RealPlaceParams& p, CharTwist tw);
complex_t epsilon_factor(const ComplexPlaceParams& p, CharTwist tw);

// γ(s, π×χ, ψ) = ε·L(1−s, π̃×χ̄)/L(s, π×χ).
complex_t gamma_factor(const RealPlaceParams& p, CharTwist tw, complex_t s);
complex_t gamma_factor(const ComplexPlaceParams& p, CharTwist tw, complex_t s);

RealPlaceParams contragredient_params(const RealPlaceParams& p);
ComplexPlaceParams contragredient_params(const ComplexPlaceParams& p);

// Real pole abscissae of s ↦ γ(1−s, π×χ): the poles of L(s, π̃×χ) that a Mellin–Barnes
// contour must keep on its left. Each list is an arithmetic progression start − ℕ; only
// the starting points are returned, paired with the block index.
struct PoleSeries {
    complex_t start;
    real_t step;  // spacing of the progression
    int block;
};
std::vector<PoleSeries> gamma_dual_poles(const RealPlaceParams& p, CharTwist tw);
std::vector<PoleSeries> gamma_dual_poles(const ComplexPlaceParams& p, CharTwist tw);

}  // namespace rv
