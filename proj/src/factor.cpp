#include "expdio/factor.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "expdio/modular.hpp"

namespace expdio {

namespace {

using Acc = std::map<Int, unsigned long>;

Factorization to_list(const Acc& acc) {
    Factorization out;
    for (const auto& [p, e] : acc) out.push_back({p, e});
    return out;
}

}  // namespace

Int brent_rho(const Int& n, unsigned long c, std::uint64_t max_iter, std::uint64_t* used) {
    std::uint64_t steps = 0;
    Int y = 2, x = 2, ys = 2, q = 1, g = 1, t;
    const std::uint64_t m = 64;
    std::uint64_t r = 1;
    auto f = [&](Int& v) {
        v = v * v + c;
        mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
    };
    do {
        x = y;
        for (std::uint64_t i = 0; i < r; ++i) f(y);
        steps += r;
        std::uint64_t k = 0;
        do {
            ys = y;
            std::uint64_t lim = std::min(m, r - k);
            for (std::uint64_t i = 0; i < lim; ++i) {
                f(y);
                t = x - y;
                q = q * t;
                mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            }
            steps += lim;
            g = gcd(q, n);
            k += m;
        } while (k < r && g == 1);
        r <<= 1;
    } while (g == 1 && steps < max_iter);
    if (g == n) {
        do {
            f(ys);
            t = x - ys;
            g = gcd(t, n);
            ++steps;
        } while (g == 1);
    }
    if (used) *used = steps;
    if (g == 1 || g == n) return 0;
    return g;
}

PartialFactorization partial_factor(const Int& n, const FactorEffort& effort) {
    if (n < 2) throw std::invalid_argument("partial_factor: n >= 2 required");
    for (const auto& h : effort.hints) {
        if (h < 2 || !mpz_divisible_p(n.get_mpz_t(), h.get_mpz_t()))
            throw std::invalid_argument("partial_factor: hint " + h.get_str() + " does not divide n");
    }

    PartialFactorization out;
    Acc acc;
    Int m = n;
    auto primes = primes_upto(effort.trial_bound);
    for (std::uint32_t p : *primes) {
        if (p > effort.trial_bound) break;
        if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            Int pp = p;
            unsigned long e = mpz_remove(m.get_mpz_t(), m.get_mpz_t(), pp.get_mpz_t());
            acc[pp] += e;
        }
        if (m == 1) break;
        // remaining cofactor below p^2 is prime
        if (mpz_cmp_ui(m.get_mpz_t(), p) <= 0 || (m < Int(p) * p)) break;
    }

    std::deque<Int> work;
    std::vector<Int> stuck;
    if (m > 1) work.push_back(m);

    // Hints split the remaining pieces by gcd.
    for (const auto& h : effort.hints) {
        std::deque<Int> next;
        for (auto& w : work) {
            Int g = gcd(w, h);
            if (g > 1 && g < w) {
                next.push_back(g);
                next.push_back(w / g);
            } else {
                next.push_back(w);
            }
        }
        work.swap(next);
    }

    std::uint64_t budget = effort.rho_iterations;
    while (!work.empty()) {
        Int w = work.front();
        work.pop_front();
        if (w == 1) continue;
        bool prob = false;
        if (is_prime(w, &prob)) {
            acc[w] += 1;
            out.probable = out.probable || prob;
            continue;
        }
        if (mpz_perfect_power_p(w.get_mpz_t())) {
            auto pw = is_perfect_power(w);
            for (unsigned long i = 0; i < pw->exponent; ++i) work.push_back(pw->base);
            continue;
        }
        Int d = 0;
        if (mpz_sizeinbase(w.get_mpz_t(), 2) <= effort.rho_max_bits) {
            for (unsigned long c = 1; budget > 0 && d == 0; c += 2) {
                std::uint64_t used = 0;
                d = brent_rho(w, c, budget, &used);
                budget -= std::min(budget, std::max<std::uint64_t>(used, 1));
            }
        }
        if (d == 0) {
            stuck.push_back(w);
        } else {
            work.push_back(d);
            work.push_back(w / d);
        }
    }

    // Merge repeated pieces: a composite cofactor may share primes with found ones.
    Int cof = 1;
    for (auto& s : stuck) {
        for (auto& [p, e] : acc) {
            unsigned long k = mpz_remove(s.get_mpz_t(), s.get_mpz_t(), p.get_mpz_t());
            e += k;
        }
        cof *= s;
    }
    out.known = to_list(acc);
    out.cofactor = cof;
    out.complete = (cof == 1);
    return out;
}

Int carmichael(const Factorization& f) {
    Int l = 1;
    for (const auto& [p, e] : f) {
        Int v;
        if (p == 2)
            v = e <= 2 ? Int(1) << (e - 1) : Int(1) << (e - 2);
        else
            v = ipow(p, e - 1) * (p - 1);
        l = lcm(l, v);
    }
    return l;
}

Int order_mod_prime_power(const Int& j, const Int& p, unsigned long e, const FactorEffort& effort) {
    Int pe = ipow(p, e);
    Int jm = j % pe;
    if (jm < 0) jm += pe;
    if (gcd(jm, p) != 1) throw std::invalid_argument("order_mod_prime_power: j divisible by p");

    if (fits_u64(p) && e == 1) {
        std::uint64_t pv = to_u64(p);
        return to_int(order_mod_prime(to_u64(jm), pv, factor_u64(pv - 1)));
    }

    // Factor lambda(p^e) = p^(e-1)(p-1) (or 2^(e-2) for p = 2, e >= 3).
    Acc acc;
    if (p == 2) {
        if (e >= 2) acc[Int(2)] = e <= 2 ? e - 1 : e - 2;
    } else {
        Int pm1 = p - 1;
        PartialFactorization pf;
        if (fits_u64(pm1)) {
            for (auto [q, k] : factor_u64(to_u64(pm1))) pf.known.push_back({to_int(q), k});
        } else {
            pf = partial_factor(pm1, effort);
            if (!pf.complete) throw IncompleteFactorization("cannot factor p-1 for p = " + p.get_str());
        }
        for (const auto& [q, k] : pf.known) acc[q] += k;
        if (e > 1) acc[p] += e - 1;
    }
    Int k = 1;
    for (const auto& [q, c] : acc) k *= ipow(q, c);
    Int t;
    for (const auto& [q, c] : acc) {
        for (unsigned long i = 0; i < c; ++i) {
            Int cand = k / q;
            mpz_powm(t.get_mpz_t(), jm.get_mpz_t(), cand.get_mpz_t(), pe.get_mpz_t());
            if (t == 1)
                k = cand;
            else
                break;
        }
    }
    return k;
}

Int mult_order(const Int& j, const Int& m, const PartialFactorization& m_fact, const FactorEffort& effort) {
    if (m < 1) throw std::invalid_argument("mult_order: m >= 1 required");
    if (!m_fact.complete) throw IncompleteFactorization("mult_order: modulus not fully factored");
    if (product(m_fact.known) != m) throw std::invalid_argument("mult_order: factorization does not match modulus");
    if (gcd(j, m) != 1) throw std::invalid_argument("mult_order: gcd(j, m) != 1");
    Int result = 1;
    for (const auto& [p, e] : m_fact.known) result = lcm(result, order_mod_prime_power(j, p, e, effort));
    return result;
}

Int mult_order(const Int& j, const Int& m, const FactorEffort& effort) {
    if (m == 1) return 1;
    PartialFactorization f;
    if (fits_u64(m)) {
        for (auto [q, k] : factor_u64(to_u64(m))) f.known.push_back({to_int(q), k});
    } else {
        f = partial_factor(m, effort);
    }
    return mult_order(j, m, f, effort);
}

Int cyclotomic_value(std::uint64_t d, const Int& b) {
    if (d == 0) throw std::invalid_argument("cyclotomic_value: d >= 1 required");
    auto fac = factor_u64(d);
    // Phi_d(b) = prod over squarefree e | rad(d) of (b^(d/e) - 1)^(mu(e))
    Int num = 1, den = 1;
    std::size_t k = fac.size();
    for (std::size_t mask = 0; mask < (std::size_t(1) << k); ++mask) {
        std::uint64_t e = 1;
        int bits = 0;
        for (std::size_t i = 0; i < k; ++i)
            if (mask >> i & 1) {
                e *= fac[i].first;
                ++bits;
            }
        Int term = ipow(b, d / e) - 1;
        if (bits % 2 == 0)
            num *= term;
        else
            den *= term;
    }
    return num / den;
}

}  // namespace expdio
