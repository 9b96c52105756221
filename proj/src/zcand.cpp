#include "expdio/zcand.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "expdio/arith.hpp"
#include "expdio/modular.hpp"

namespace expdio {

std::vector<std::uint64_t> divisors(std::uint64_t n) {
    std::vector<std::uint64_t> out{1};
    for (auto [p, e] : factor_u64(n)) {
        std::size_t k = out.size();
        std::uint64_t pk = 1;
        for (unsigned i = 1; i <= e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < k; ++j) out.push_back(out[j] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

PQSplit pq_split(std::uint64_t a, std::uint64_t b, ParityClass pc) {
    if (a < 2 || b < 2 || std::gcd(a, b) != 1) throw std::invalid_argument("pq_split: coprime bases >= 2 required");
    PQSplit s;
    std::uint64_t rad = 1;
    auto absorb = [&](std::uint64_t n, bool odd_exp) {
        for (auto [p, e] : factor_u64(n)) {
            rad *= p;
            if (odd_exp && (e & 1)) s.P *= p;
        }
    };
    absorb(a, pc.x_odd);
    absorb(b, pc.y_odd);
    s.Q = rad / s.P;
    for (auto [q, e] : factor_u64(s.Q)) s.q_list.push_back(q);
    return s;
}

int u_flag(std::uint64_t P) { return (P > 3 && P % 8 == 3) ? 1 : 0; }

bool v_family_check(std::uint64_t a, std::uint64_t b, ParityClass pc, unsigned N_cap) {
    if (N_cap < 3) throw std::invalid_argument("v_family_check: N_cap >= 3 required");
    const Int A = to_int(a), B = to_int(b);
    auto matches = [&](const Int& va, const Int& vb) {
        auto x = power_index(va, A);
        if (!x || ((*x & 1) != 0) != pc.x_odd) return false;
        auto y = power_index(vb, B);
        return y && ((*y & 1) != 0) == pc.y_odd;
    };
    for (unsigned N = 3; N <= N_cap; N += 2) {
        Int first = ipow(Int(3), 2 * N + 1) * (ipow(Int(3), N - 1) - 1) / 8;
        Int second = (ipow(Int(3), N + 1) - 1) / 8;
        if (matches(first, second) || matches(second, first)) return true;
    }
    return false;
}

ZSet z_set(std::uint64_t a, std::uint64_t b, ParityClass pc, VMode mode, ClassCache& cache) {
    if ((a % 2) == (b % 2)) throw std::invalid_argument("z_set: exactly one base must be even");
    const PQSplit s = pq_split(a, b, pc);
    if (s.P * s.Q == 0 || std::gcd(s.P, s.Q) != 1 || !is_squarefree(s.P))
        throw std::logic_error("z_set: invalid P/Q split");
    const int u = u_flag(s.P);
    const int v = (mode == VMode::Auto && v_family_check(a, b, pc)) ? 1 : 0;
    const std::uint64_t h = cache.exponent(s.P);
    std::uint64_t pow3 = 1;
    for (int i = 0; i < u + v; ++i) pow3 *= 3;

    std::vector<std::uint64_t> gens;
    auto push = [&](std::uint64_t numer) {
        if (numer % 2 != 0) throw std::logic_error("z_set: non-integral generator for P = " + std::to_string(s.P));
        gens.push_back(numer / 2);
    };
    if (s.q_list.empty()) {
        push(pow3 * h);
    } else {
        for (std::uint64_t q : s.q_list) {
            std::int64_t t;
            if (q == 2) {
                t = 2;
            } else {
                t = static_cast<std::int64_t>(q) - jacobi(-Int(to_int(s.P)), to_int(q));
            }
            push(pow3 * h * static_cast<std::uint64_t>(t));
        }
    }
    std::set<std::uint64_t> out;
    for (auto g : gens)
        for (auto d : divisors(g)) out.insert(d);
    return {out.begin(), out.end()};
}

ZSet z_set_union(std::uint64_t a, std::uint64_t b, ClassCache& cache) {
    std::set<std::uint64_t> out;
    for (auto pc : kParityClasses)
        for (auto z : z_set(a, b, pc, VMode::Auto, cache)) out.insert(z);
    return {out.begin(), out.end()};
}

bool z_support_is_23(std::uint64_t a, std::uint64_t b, ClassCache& cache) {
    for (auto z : z_set_union(a, b, cache)) {
        while (z % 2 == 0) z /= 2;
        while (z % 3 == 0) z /= 3;
        if (z != 1) return false;
    }
    return true;
}

}  // namespace expdio
