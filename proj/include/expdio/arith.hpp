#pragma once
// Arbitrary-precision primitives shared by every other module.
#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace expdio {

using Int = mpz_class;

struct PrimePower {
    Int prime;
    unsigned long exponent = 0;
    bool operator==(const PrimePower&) const = default;
};

using Factorization = std::vector<PrimePower>;

class IncompleteFactorization : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline Int to_int(std::uint64_t v) {
    Int r;
    mpz_import(r.get_mpz_t(), 1, -1, sizeof v, 0, 0, &v);
    return r;
}

inline std::uint64_t to_u64(const Int& v) {
    if (sgn(v) < 0 || mpz_sizeinbase(v.get_mpz_t(), 2) > 64) throw std::overflow_error("to_u64: out of range");
    std::uint64_t r = 0;
    mpz_export(&r, nullptr, -1, sizeof r, 0, 0, v.get_mpz_t());
    return r;
}

inline bool fits_u64(const Int& v) { return sgn(v) >= 0 && mpz_sizeinbase(v.get_mpz_t(), 2) <= 64; }

inline Int ipow(const Int& b, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

inline Int ipow(std::uint64_t b, unsigned long e) { return ipow(to_int(b), e); }

unsigned long p_adic_valuation(const Int& p, const Int& n);
unsigned p_adic_valuation(std::uint64_t p, std::uint64_t n);

std::optional<Int> exact_root(const Int& n, unsigned long z);

struct PerfectPower {
    Int base;
    unsigned long exponent;
};
std::optional<PerfectPower> is_perfect_power(const Int& n);
bool is_perfect_power_u64(std::uint64_t n);

std::optional<unsigned long> power_index(const Int& n, const Int& b);

int jacobi(const Int& a, const Int& m);

Int coprime_part(Int u, const Int& v);

// Deterministic below 3.317e24; above that `probable` is set when non-null.
bool is_prime(const Int& n, bool* probable = nullptr);

Int product(const Factorization& f);

std::string to_string(const Int& v);

}  // namespace expdio
