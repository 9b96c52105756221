#pragma once
// Numeric caps on exponents and the generalized Fermat exclusion filter.
#include <cstdint>
#include <stdexcept>

namespace expdio {

// Upper bounds are inflated by this factor before truncation.
inline constexpr double kInflate = 1.0 + 1e-9;

struct EvenCBoundInputs {
    double log_a = 0, log_b = 0;
    int alpha = 0;
    int beta = 1;
    double m2 = 1;
    double log_c = 0;
};

enum class BetaMode { Exact, Conservative };

int alpha_of(std::uint64_t a, std::uint64_t b);

EvenCBoundInputs even_c_inputs(std::uint64_t a, std::uint64_t b, std::uint64_t c_or_cap, BetaMode mode);

// z < log a log b max(k1, k2 log*^2(k3 log c)).
double mp_z_bound(const EvenCBoundInputs& in);
double mp_z_bound(std::uint64_t a, std::uint64_t b, std::uint64_t c_or_cap, BetaMode mode);

std::uint64_t z1_cap(std::uint64_t a, std::uint64_t b, double c_cap, double z2_cap, int alpha, int beta);

std::uint64_t x1_cap(std::uint64_t a, std::uint64_t b, double c_cap, std::uint64_t z1, std::uint64_t z2_max);

// true = excluded. Patterns are applied in the caller's orientation only.
bool fermat_filter(std::uint64_t x, std::uint64_t y, std::uint64_t z);

// Index (1-based) of the first matching pattern, 0 if none.
int fermat_pattern(std::uint64_t x, std::uint64_t y, std::uint64_t z);

}  // namespace expdio
