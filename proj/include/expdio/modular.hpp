#pragma once
// 64-bit modular helpers used by the hot loops.
#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

namespace expdio {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

inline u64 powmod(u64 b, u64 e, u64 m) {
    if (m == 1) return 0;
    u64 r = 1;
    b %= m;
    while (e) {
        if (e & 1) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

bool is_prime_u64(u64 n);

// Complete factorization of a 64-bit integer, ascending primes.
std::vector<std::pair<u64, unsigned>> factor_u64(u64 n);

// Least k >= 1 with j^k = 1 mod m. Requires gcd(j, m) = 1, m >= 1.
u64 mult_order_u64(u64 j, u64 m);

// Multiplicative order modulo a prime p when the factorization of p-1 is known.
u64 order_mod_prime(u64 j, u64 p, const std::vector<std::pair<u64, unsigned>>& pm1);

// Square roots of n modulo an odd prime p: {} for a non-residue, {0} when p | n.
std::vector<u64> sqrt_mod_prime(u64 n, u64 p);

// Primes up to at least `bound`. The snapshot is immutable; a later call with a
// larger bound builds a new one, so holders are never invalidated.
std::shared_ptr<const std::vector<std::uint32_t>> primes_upto(std::uint32_t bound);

}  // namespace expdio
