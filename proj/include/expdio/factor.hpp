#pragma once
// Partial factorization under a fixed, reproducible budget.
#include <cstdint>
#include <vector>

#include "expdio/arith.hpp"

namespace expdio {

struct FactorEffort {
    std::uint32_t trial_bound = 10'000'000;
    std::uint64_t rho_iterations = 1u << 20;  // total across all rho attempts on one input
    unsigned rho_max_bits = 4096;              // composites above this size are left alone by rho
    std::vector<Int> hints;
};

struct PartialFactorization {
    Factorization known;  // ascending primes
    Int cofactor = 1;
    bool complete = true;
    bool probable = false;  // some prime only passed the probabilistic test
};

PartialFactorization partial_factor(const Int& n, const FactorEffort& effort = {});

// One Brent rho run with increment c; returns a nontrivial factor or 0.
Int brent_rho(const Int& n, unsigned long c, std::uint64_t max_iter, std::uint64_t* used = nullptr);

Int carmichael(const Factorization& f);

// Least k >= 1 with j^k = 1 mod m.
Int mult_order(const Int& j, const Int& m, const PartialFactorization& m_fact, const FactorEffort& effort = {});
Int mult_order(const Int& j, const Int& m, const FactorEffort& effort = {});

// Order of j modulo p^e for a prime p; p-1 is factored internally.
Int order_mod_prime_power(const Int& j, const Int& p, unsigned long e, const FactorEffort& effort = {});

// Value of the d-th cyclotomic polynomial at b.
Int cyclotomic_value(std::uint64_t d, const Int& b);

}  // namespace expdio
