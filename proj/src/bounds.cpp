#include "expdio/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "expdio/modular.hpp"

namespace expdio {

namespace {

int nu2(std::uint64_t n) { return n == 0 ? 64 : __builtin_ctzll(n); }

int nu2_sq_minus_1(std::uint64_t a) {
    // a^2 - 1 = (a - 1)(a + 1) avoids overflow
    return nu2(a - 1) + nu2(a + 1);
}

double log_star(double v) { return std::max(1.0, std::log(v)); }

}  // namespace

int alpha_of(std::uint64_t a, std::uint64_t b) {
    return std::min(nu2_sq_minus_1(a) - 1, nu2_sq_minus_1(b) - 1);
}

EvenCBoundInputs even_c_inputs(std::uint64_t a, std::uint64_t b, std::uint64_t c_or_cap, BetaMode mode) {
    if (a % 2 == 0 || b % 2 == 0) throw std::invalid_argument("mp_z_bound: odd bases required");
    if (std::max(a, b) < 9) throw std::invalid_argument("mp_z_bound: max(a, b) >= 9 required");
    if (c_or_cap < 2) throw std::invalid_argument("mp_z_bound: c >= 2 required");
    EvenCBoundInputs in;
    in.log_a = std::log(static_cast<double>(a));
    in.log_b = std::log(static_cast<double>(b));
    in.alpha = alpha_of(a, b);
    if (mode == BetaMode::Exact) {
        if (c_or_cap % 2 != 0) throw std::invalid_argument("mp_z_bound: exact mode requires even c");
        in.beta = nu2(c_or_cap);
    } else {
        in.beta = 1;
    }
    const std::uint64_t mn = std::min(a, b);
    in.m2 = mn > 7 ? 1.0 : std::log(8.0) / std::log(static_cast<double>(mn));
    in.log_c = std::log(static_cast<double>(c_or_cap));
    return in;
}

double mp_z_bound(const EvenCBoundInputs& in) {
    const double beta = in.beta;
    double k1, k2, k3;
    if (in.alpha == 2) {
        k1 = 1803.3 * in.m2 / beta;
        k2 = 23.865 * in.m2 / beta;
        k3 = 143.75 * (in.m2 + 1) / beta;
    } else if (in.alpha >= 3) {
        const double al = in.alpha;
        const double m3 = al * std::log(2.0) / std::log(std::pow(2.0, al) - 1);
        const double t = 3 * al * std::log(2.0);
        const double va = t - std::log(t);
        const double f = 1 + std::log(va) / (va - 1);
        k1 = 2705 * m3 / (al * beta);
        k2 = 156.39 * m3 * f * f / (al * al * al * beta);
        k3 = 646.9 * (m3 + 1) / (al * al * beta);
    } else {
        throw std::invalid_argument("mp_z_bound: alpha >= 2 required");
    }
    const double ls = log_star(k3 * in.log_c);
    return in.log_a * in.log_b * std::max(k1, k2 * ls * ls);
}

double mp_z_bound(std::uint64_t a, std::uint64_t b, std::uint64_t c_or_cap, BetaMode mode) {
    return mp_z_bound(even_c_inputs(a, b, c_or_cap, mode));
}

std::uint64_t z1_cap(std::uint64_t a, std::uint64_t b, double c_cap, double z2_cap, int alpha, int beta) {
    if (beta < 1 || z2_cap < 1) throw std::invalid_argument("z1_cap: beta >= 1 and z2_cap >= 1 required");
    const double lc = std::log(c_cap);
    const double rhs =
        (alpha + std::log(lc * lc / (std::log(double(a)) * std::log(double(b))) * z2_cap) / std::log(2.0)) * kInflate;
    std::uint64_t best = 1;
    // LHS increases once z1 > 1 / (beta log 2); scan well past that point.
    for (std::uint64_t z = 1;; ++z) {
        const double lhs = beta * double(z) - std::log(double(z)) / std::log(2.0);
        if (lhs < rhs)
            best = z;
        else if (z > 4)
            break;
    }
    return best;
}

std::uint64_t x1_cap(std::uint64_t a, std::uint64_t b, double c_cap, std::uint64_t z1, std::uint64_t z2_max) {
    if (a % 2 != 0 || b % 2 == 0) throw std::invalid_argument("x1_cap: a even, b odd required");
    const int gamma = nu2(a);
    const int delta = nu2_sq_minus_1(b) - 1;
    const double rhs =
        (delta + std::log(std::log(c_cap) / std::log(double(b)) * double(z1) * double(z2_max)) / std::log(2.0)) *
        kInflate;
    // largest x with gamma * x < rhs
    double q = rhs / gamma;
    auto x = static_cast<std::uint64_t>(std::ceil(q)) - 1;
    while (double(gamma) * double(x + 1) < rhs) ++x;
    return std::max<std::uint64_t>(1, x);
}

int fermat_pattern(std::uint64_t x, std::uint64_t y, std::uint64_t z) {
    if (x == 0 || y == 0 || z == 0) throw std::invalid_argument("fermat_filter: positive exponents required");
    const std::uint64_t gxy = std::gcd(x, y);
    const std::uint64_t gxyz = std::gcd(gxy, z);
    if (gxyz >= 3) return 1;
    if (gxy >= 4 && z % 2 == 0) return 2;
    if (gxy >= 3 && z % 3 == 0) return 3;
    if (x % 2 == 0 && y % 4 == 0 && z >= 4) return 4;
    if (x % 2 == 0 && y >= 4 && z % 4 == 0) return 5;
    if (x % 2 == 0 && y >= 3 && z % 6 == 0) return 6;
    if (x % 2 == 0 && y % 6 == 0 && z >= 3) return 7;
    if (x % 3 == 0 && y % 3 == 0 && z >= 3) {
        // some divisor of z in [3, 1e9]
        bool hit = z <= 1'000'000'000ULL || z % 4 == 0;
        if (!hit)
            for (auto [p, e] : factor_u64(z))
                if (p >= 3 && p <= 1'000'000'000ULL) hit = true;
        if (hit) return 8;
    }
    if (x % 3 == 0 && y % 4 == 0 && z % 5 == 0) return 9;
    if (x % 2 == 0 && y % 3 == 0)
        for (std::uint64_t n : {7, 8, 9, 10, 15})
            if (z % n == 0) return 10;
    return 0;
}

bool fermat_filter(std::uint64_t x, std::uint64_t y, std::uint64_t z) { return fermat_pattern(x, y, z) != 0; }

}  // namespace expdio
