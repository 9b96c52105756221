#include "expdio/arith.hpp"

#include "expdio/modular.hpp"

namespace expdio {

unsigned long p_adic_valuation(const Int& p, const Int& n) {
    if (sgn(n) == 0) throw std::invalid_argument("p_adic_valuation: n = 0");
    if (p < 2) throw std::invalid_argument("p_adic_valuation: p < 2");
    Int m = abs(n);
    if (p == 2) return mpz_scan1(m.get_mpz_t(), 0);
    Int q;
    return mpz_remove(q.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
}

unsigned p_adic_valuation(std::uint64_t p, std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("p_adic_valuation: n = 0");
    if (p < 2) throw std::invalid_argument("p_adic_valuation: p < 2");
    unsigned e = 0;
    while (n % p == 0) {
        n /= p;
        ++e;
    }
    return e;
}

std::optional<Int> exact_root(const Int& n, unsigned long z) {
    if (sgn(n) <= 0 || z == 0) throw std::invalid_argument("exact_root: n >= 1 and z >= 1 required");
    if (z == 1) return n;
    Int r;
    if (mpz_root(r.get_mpz_t(), n.get_mpz_t(), z) != 0) return r;
    return std::nullopt;
}

std::optional<PerfectPower> is_perfect_power(const Int& n) {
    if (n < 2) throw std::invalid_argument("is_perfect_power: n >= 2 required");
    if (!mpz_perfect_power_p(n.get_mpz_t())) return std::nullopt;
    // Largest exponent first; the first hit is maximal.
    unsigned long maxk = mpz_sizeinbase(n.get_mpz_t(), 2);
    for (unsigned long k = maxk; k >= 2; --k) {
        Int r;
        if (mpz_root(r.get_mpz_t(), n.get_mpz_t(), k) != 0) return PerfectPower{r, k};
    }
    return std::nullopt;
}

bool is_perfect_power_u64(std::uint64_t n) {
    if (n < 4) return false;
    Int v = to_int(n);
    return mpz_perfect_power_p(v.get_mpz_t()) != 0;
}

std::optional<unsigned long> power_index(const Int& n, const Int& b) {
    if (sgn(n) <= 0 || b < 2) throw std::invalid_argument("power_index: n >= 1, b >= 2 required");
    if (n == 1) return std::nullopt;
    Int q;
    unsigned long y = mpz_remove(q.get_mpz_t(), n.get_mpz_t(), b.get_mpz_t());
    if (y >= 1 && q == 1) return y;
    return std::nullopt;
}

int jacobi(const Int& a, const Int& m) {
    if (sgn(m) <= 0 || mpz_even_p(m.get_mpz_t())) throw std::invalid_argument("jacobi: m must be odd and positive");
    return mpz_jacobi(a.get_mpz_t(), m.get_mpz_t());
}

Int coprime_part(Int u, const Int& v) {
    if (u < 1 || v < 1) throw std::invalid_argument("coprime_part: u, v >= 1 required");
    Int g = gcd(u, v);
    while (g > 1) {
        // strip g fully, then re-check against v
        while (mpz_divisible_p(u.get_mpz_t(), g.get_mpz_t())) u /= g;
        g = gcd(u, v);
    }
    return u;
}

bool is_prime(const Int& n, bool* probable) {
    if (probable) *probable = false;
    if (n < 2) return false;
    if (fits_u64(n)) return is_prime_u64(to_u64(n));
    static const unsigned long bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
    for (unsigned long p : bases)
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
    static const Int limit("3317044064679887385961981");
    if (n >= limit) {
        if (probable) *probable = true;
        return mpz_probab_prime_p(n.get_mpz_t(), 30) != 0;
    }
    Int d = n - 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
    Int nm1 = n - 1, x;
    for (unsigned long a : bases) {
        Int base = a;
        mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
        if (x == 1 || x == nm1) continue;
        bool composite = true;
        for (unsigned long i = 1; i < s; ++i) {
            x = x * x % n;
            if (x == nm1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

Int product(const Factorization& f) {
    Int r = 1;
    for (const auto& pp : f) r *= ipow(pp.prime, pp.exponent);
    return r;
}

std::string to_string(const Int& v) { return v.get_str(); }

}  // namespace expdio
