#include "expdio/modular.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace expdio {

namespace {

bool mr_witness(u64 n, u64 a, u64 d, unsigned s) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return false;
    for (unsigned i = 1; i < s; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1) return false;
    }
    return true;
}

u64 rho_u64(u64 n) {
    if (n % 2 == 0) return 2;
    for (u64 c = 1;; ++c) {
        u64 y = 2, x = 2, q = 1, g = 1, ys = 2;
        u64 r = 1;
        const u64 m = 128;
        auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
        do {
            x = y;
            for (u64 i = 0; i < r; ++i) y = f(y);
            u64 k = 0;
            do {
                ys = y;
                for (u64 i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
                k += m;
            } while (k < r && g == 1);
            r <<= 1;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void factor_rec(u64 n, std::map<u64, unsigned>& out) {
    if (n == 1) return;
    if (is_prime_u64(n)) {
        ++out[n];
        return;
    }
    u64 d = rho_u64(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

}  // namespace

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (mr_witness(n, a, d, s)) return false;
    }
    return true;
}

std::vector<std::pair<u64, unsigned>> factor_u64(u64 n) {
    if (n == 0) throw std::invalid_argument("factor_u64: zero");
    std::map<u64, unsigned> acc;
    for (u64 p = 2; p < 128 && p * p <= n; p += (p == 2 ? 1 : 2)) {
        while (n % p == 0) {
            ++acc[p];
            n /= p;
        }
    }
    if (n < 128 * 128) {
        if (n > 1) ++acc[n];
    } else {
        factor_rec(n, acc);
    }
    return {acc.begin(), acc.end()};
}

u64 order_mod_prime(u64 j, u64 p, const std::vector<std::pair<u64, unsigned>>& pm1) {
    u64 k = p - 1;
    for (auto [q, e] : pm1) {
        for (unsigned i = 0; i < e; ++i) {
            if (powmod(j, k / q, p) == 1)
                k /= q;
            else
                break;
        }
    }
    return k;
}

u64 mult_order_u64(u64 j, u64 m) {
    if (m == 1) return 1;
    if (std::gcd(j % m, m) != 1) throw std::invalid_argument("mult_order_u64: not coprime");
    u64 result = 1;
    for (auto [p, e] : factor_u64(m)) {
        u64 pe = 1;
        for (unsigned i = 0; i < e; ++i) pe *= p;
        // group order of (Z/p^e)^*
        u64 phi = pe / p * (p - 1);
        auto fac = factor_u64(p - 1);
        if (e > 1) {
            bool found = false;
            for (auto& [q, k] : fac)
                if (q == p) {
                    k += e - 1;
                    found = true;
                }
            if (!found) {
                fac.emplace_back(p, e - 1);
                std::sort(fac.begin(), fac.end());
            }
        }
        u64 k = phi;
        for (auto [q, c] : fac) {
            for (unsigned i = 0; i < c; ++i) {
                if (powmod(j, k / q, pe) == 1)
                    k /= q;
                else
                    break;
            }
        }
        result = std::lcm(result, k);
    }
    return result;
}

std::vector<u64> sqrt_mod_prime(u64 n, u64 p) {
    n %= p;
    if (n == 0) return {0};
    if (powmod(n, (p - 1) / 2, p) != 1) return {};
    // Tonelli-Shanks
    u64 q = p - 1;
    unsigned s = 0;
    while (q % 2 == 0) {
        q /= 2;
        ++s;
    }
    u64 z = 2;
    while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
    u64 m = s, c = powmod(z, q, p), t = powmod(n, q, p), r = powmod(n, (q + 1) / 2, p);
    while (t != 1) {
        u64 i = 0, t2 = t;
        while (t2 != 1) {
            t2 = mulmod(t2, t2, p);
            ++i;
        }
        u64 b = c;
        for (u64 j = 0; j + 1 < m - i; ++j) b = mulmod(b, b, p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    if (r == p - r) return {r};
    return {std::min(r, p - r), std::max(r, p - r)};
}

std::shared_ptr<const std::vector<std::uint32_t>> primes_upto(std::uint32_t bound) {
    static std::mutex mu;
    static std::shared_ptr<const std::vector<std::uint32_t>> cached;
    static std::uint32_t sieved = 0;
    std::lock_guard<std::mutex> lock(mu);
    if (!cached || bound > sieved) {
        std::vector<bool> composite(static_cast<std::size_t>(bound) + 1, false);
        auto primes = std::make_shared<std::vector<std::uint32_t>>();
        for (std::uint64_t i = 2; i <= bound; ++i) {
            if (composite[i]) continue;
            primes->push_back(static_cast<std::uint32_t>(i));
            for (std::uint64_t k = i * i; k <= bound; k += i) composite[k] = true;
        }
        cached = std::move(primes);
        sieved = bound;
    }
    return cached;
}

}  // namespace expdio
