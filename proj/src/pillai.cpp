#include "expdio/pillai.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include "expdio/modular.hpp"
#include "expdio/parallel.hpp"

namespace expdio {

namespace {

using FactorMap = std::map<Int, unsigned long>;

FactorMap to_map(const std::vector<std::pair<u64, unsigned>>& f) {
    FactorMap m;
    for (auto [p, e] : f) m[to_int(p)] += e;
    return m;
}

Int lcm(const Int& x, const Int& y) {
    Int r;
    mpz_lcm(r.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
    return r;
}

Int powm(const Int& b, const Int& e, const Int& m) {
    Int r;
    mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return r;
}

u64 ceil_div(u64 x, u64 y) { return (x + y - 1) / y; }

// Factorization of p - 1, or nothing when it cannot be completed within the budget.
std::optional<FactorMap> factor_p_minus_1(const Int& p, const FactorEffort& eff) {
    Int q = p - 1;
    if (fits_u64(q)) return to_map(factor_u64(to_u64(q)));
    auto pf = partial_factor(q, eff);
    if (!pf.complete) return std::nullopt;
    FactorMap m;
    for (const auto& pp : pf.known) m[pp.prime] += pp.exponent;
    return m;
}

struct OrderResult {
    Int order;
    FactorMap fact;
};

// Order of j modulo p^e with its factorization, by descent from p^(e-1) (p - 1).
std::optional<OrderResult> order_mod_pp(const Int& j, const Int& p, unsigned long e, const FactorEffort& eff) {
    auto pm1 = factor_p_minus_1(p, eff);
    if (!pm1) return std::nullopt;
    FactorMap lam = *pm1;
    if (e > 1) lam[p] += e - 1;
    const Int mod = ipow(p, e);
    Int k = 1;
    for (const auto& [q, x] : lam) k *= ipow(q, x);
    if (powm(j, k, mod) != 1 % mod) throw std::logic_error("order_mod_pp: bad group order");
    FactorMap out;
    for (const auto& [q, x] : lam) {
        unsigned long keep = x;
        while (keep > 0) {
            Int t = k / q;
            if (powm(j, t, mod) != 1 % mod) break;
            k = t;
            --keep;
        }
        if (keep) out[q] = keep;
    }
    return OrderResult{k, out};
}

unsigned long nu(const Int& p, const Int& n) { return sgn(n) == 0 ? 0 : p_adic_valuation(p, n); }

// nu_p(base^n - 1) for a prime p not dividing base.
std::optional<unsigned long> nu_pow_minus_one(u64 base, const Int& n, const Int& p, const FactorEffort& eff) {
    const Int B = to_int(base);
    if (p == 2) {
        if (base % 2 == 0) return 0;
        const unsigned long v1 = nu(p, B - 1);
        if (mpz_odd_p(n.get_mpz_t())) return v1;
        return v1 + nu(p, B + 1) + nu(p, n) - 1;
    }
    if (powm(B, n, p) != 1) return 0;
    auto ord = order_mod_pp(B, p, 1, eff);
    if (!ord) return std::nullopt;
    unsigned long v1 = 1;
    for (;;) {
        const Int mod = ipow(p, v1 + 1);
        if (powm(B, ord->order, mod) != 1) break;
        ++v1;
    }
    return v1 + nu(p, n / ord->order);
}

std::vector<Int> divisors_of(const FactorMap& f, std::size_t limit) {
    std::vector<Int> divs{1};
    for (const auto& [p, e] : f) {
        const std::size_t n = divs.size();
        Int pk = 1;
        for (unsigned long k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < n; ++i) {
                divs.push_back(divs[i] * pk);
                if (divs.size() > 65536) break;
            }
            if (divs.size() > 65536) break;
        }
    }
    std::sort(divs.begin(), divs.end());
    if (divs.size() > limit) divs.resize(limit);
    return divs;
}

u64 euler_phi(u64 d) {
    u64 r = d;
    for (auto [p, e] : factor_u64(d)) r = r / p * (p - 1);
    return r;
}

// Primes dividing Phi_d(base), within the effort.
std::vector<Int> cyclotomic_primes(u64 base, u64 d, const PillaiEffort& eff) {
    std::set<Int> out;
    const double bits = static_cast<double>(euler_phi(d)) * std::log2(static_cast<double>(base));
    const u64 kmax = eff.scan_multipliers;
    const bool scan_ok = d <= (u64(1) << 62) / std::max<u64>(kmax, 1);
    if (bits <= eff.medium_bits) {
        Int phi = cyclotomic_value(d, to_int(base));
        // primes dividing d appear at most to the first power and are found at a smaller d anyway
        for (auto [q, e] : factor_u64(d))
            while (mpz_divisible_ui_p(phi.get_mpz_t(), q)) phi /= static_cast<unsigned long>(q);
        if (scan_ok && d > 1) {
            for (u64 k = 1; k <= kmax && phi > 1; ++k) {
                const u64 p = k * d + 1;
                if (!mpz_divisible_ui_p(phi.get_mpz_t(), p) || !is_prime_u64(p)) continue;
                out.insert(to_int(p));
                while (mpz_divisible_ui_p(phi.get_mpz_t(), p)) phi /= static_cast<unsigned long>(p);
            }
        }
        if (phi > 1) {
            // small values are factored in earnest, medium ones only get trial division
            FactorEffort fe = eff.factor;
            if (bits > eff.full_bits) fe.rho_iterations = 0;
            auto pf = partial_factor(phi, fe);
            for (const auto& pp : pf.known) out.insert(pp.prime);
        }
    } else if (scan_ok) {
        for (u64 k = 1; k <= kmax; ++k) {
            const u64 p = k * d + 1;
            if (powmod(base % p, d, p) == 1 && is_prime_u64(p)) out.insert(to_int(p));
        }
    }
    return {out.begin(), out.end()};
}

// Feeds usable primes of base^n - 1 not dividing `other` to fn, hints first, then by ascending d; fn returns false to stop.
template <class Fn>
void for_each_usable_prime(u64 base, u64 other, const Int& n, const FactorMap& n_fact, const PillaiEffort& eff,
                           FactorMemo& memo, Fn fn) {
    const Int B = to_int(base), O = to_int(other);
    std::set<Int> seen;
    auto offer = [&](const Int& p) {
        if (mpz_divisible_p(O.get_mpz_t(), p.get_mpz_t()) || mpz_divisible_p(B.get_mpz_t(), p.get_mpz_t())) return true;
        if (!seen.insert(p).second) return true;
        return fn(p);
    };
    for (const auto& h : eff.hints)
        if (h > 1 && is_prime(h) && powm(B, n, h) == 1)
            if (!offer(h)) return;
    if (eff.hints_only) return;
    for (const auto& d : divisors_of(n_fact, eff.max_divisors)) {
        if (!fits_u64(d)) continue;
        const std::pair<u64, Int> key{base, d};
        auto it = memo.primes.find(key);
        if (it == memo.primes.end()) it = memo.primes.emplace(key, cyclotomic_primes(base, to_u64(d), eff)).first;
        for (const auto& p : it->second)
            if (!offer(p)) return;
    }
}

struct Side {
    Int value = 1;
    FactorMap fact;
    bool absorb(const OrderResult& r) {
        Int nv = lcm(value, r.order);
        if (nv == value) return false;
        value = nv;
        for (const auto& [q, e] : r.fact) fact[q] = std::max(fact[q], e);
        return true;
    }
};

class Bootstrapper {
public:
    Bootstrapper(u64 a, u64 b, u64 B, const PillaiEffort& eff, FactorMemo& memo)
        : a_(a), b_(b), B_(to_int(B)), eff_(eff), memo_(memo), fa_(factor_u64(a)), fb_(factor_u64(b)) {}

    PillaiOutcome run(u64 X0, u64 Y0) {
        st_.X = X0;
        st_.Y = Y0;
        PillaiOutcome out;
        out.B = to_u64(B_);
        out.X0 = X0;
        out.Y0 = Y0;
        base_step('x');
        base_step('y');
        floors();
        for (unsigned round = 0; round < eff_.max_rounds && !proved(); ++round) {
            bool grew = grow('x');
            if (proved()) break;
            grew |= floors();
            if (proved()) break;
            grew |= grow('y');
            grew |= floors();
            if (!grew) break;
        }
        out.verdict = proved() ? BootstrapVerdict::Proved : BootstrapVerdict::Stalled;
        st_.dx = dx_.value;
        st_.dy = dy_.value;
        out.state = std::move(st_);
        return out;
    }

private:
    u64 a_, b_;
    Int B_;
    const PillaiEffort& eff_;
    FactorMemo& memo_;
    std::vector<std::pair<u64, unsigned>> fa_, fb_;
    Side dx_, dy_;
    BootstrapState st_;
    std::map<std::tuple<u64, Int, unsigned long>, std::optional<OrderResult>> orders_;

    bool proved() const { return dx_.value > B_; }

    const std::optional<OrderResult>& order_of(u64 j, const Int& p, unsigned long e) {
        auto key = std::make_tuple(j, p, e);
        auto it = orders_.find(key);
        if (it == orders_.end()) it = orders_.emplace(key, order_mod_pp(to_int(j), p, e, eff_.factor)).first;
        return it->second;
    }

    // side 'x': order of a modulo b^Y * (factors of b^dy - 1); side 'y' mirrors it
    template <class Source>
    bool step(char side, const Int& exponent, Source source) {
        const bool x = side == 'x';
        const u64 base = x ? b_ : a_, other = x ? a_ : b_;
        const u64 floor = x ? st_.Y : st_.X;
        Side& target = x ? dx_ : dy_;
        TraceStep ts{side, {}, exponent, 1, st_.X, st_.Y};
        Side acc;
        for (auto [q, e] : (x ? fb_ : fa_)) {
            const auto& o = order_of(other, to_int(q), e * floor);
            if (!o) continue;
            ts.modulus.push_back({to_int(q), e * floor});
            acc.absorb(*o);
        }
        source([&](const Int& p) {
            auto v = nu_pow_minus_one(base, exponent, p, eff_.factor);
            if (!v || *v == 0) return true;
            const auto& o = order_of(other, p, *v);
            if (!o) return true;
            ts.modulus.push_back({p, *v});
            acc.absorb(*o);
            // a divisor of x2 - x1 above B already finishes the proof
            return !(x && lcm(target.value, acc.value) > B_);
        });
        ts.order = acc.value;
        OrderResult r{acc.value, acc.fact};
        if (!target.absorb(r)) return false;
        std::sort(ts.modulus.begin(), ts.modulus.end(), [](const auto& l, const auto& r) { return l.prime < r.prime; });
        st_.trace.push_back(std::move(ts));
        return true;
    }

    bool base_step(char side) {
        return step(side, 0, [](auto&&) {});
    }

    bool grow(char side) {
        const bool x = side == 'x';
        const Side& src = x ? dy_ : dx_;
        const u64 base = x ? b_ : a_, other = x ? a_ : b_;
        return step(side, src.value, [&](auto&& fn) {
            for_each_usable_prime(base, other, src.value, src.fact, eff_, memo_, fn);
        });
    }

    // x1 nu_p(a) >= nu_p(b^dy - 1) for p | a, and the mirror for y1
    bool floors() {
        bool grew = false;
        for (bool changed = true; changed;) {
            changed = false;
            for (int pass = 0; pass < 2; ++pass) {
                const bool xs = pass == 0;
                const auto& fac = xs ? fa_ : fb_;
                const u64 other = xs ? b_ : a_;
                const Int& d = xs ? dy_.value : dx_.value;
                u64& fl = xs ? st_.X : st_.Y;
                for (auto [p, e] : fac) {
                    if (p != 2 && !eff_.odd_prime_floors) continue;
                    auto v = nu_pow_minus_one(other, d, to_int(p), eff_.factor);
                    if (!v) continue;
                    const u64 need = ceil_div(*v, e);
                    if (need > fl) {
                        st_.notes.push_back(std::string(xs ? "X" : "Y") + " raised to " + std::to_string(need) + " by the " +
                                            std::to_string(p) + "-adic valuation of " + std::to_string(other) + "^" +
                                            to_string(d) + " - 1");
                        fl = need;
                        changed = true;
                    }
                }
            }
            if (changed) {
                grew |= base_step('x');
                grew |= base_step('y');
            }
        }
        return grew;
    }
};

const std::vector<u64>& fallback_primes() {
    static const std::vector<u64> primes = [] {
        std::vector<u64> ps;
        for (u64 n = (u64(1) << 62) - 1; ps.size() < 3; n -= 2)
            if (is_prime_u64(n)) ps.push_back(n);
        return ps;
    }();
    return primes;
}

}  // namespace

double prop1_S(u64 a, u64 b) {
    if (a < 2 || b < 2 || std::gcd(a, b) != 1) throw std::invalid_argument("prop1_S: coprime a, b >= 2 required");
    long double S = 0;
    const Int B = to_int(b);
    for (auto [p, e] : factor_u64(a)) {
        unsigned long g;
        if (p == 2) {
            g = std::max(p_adic_valuation(Int(2), B - 1), p_adic_valuation(Int(2), B + 1));
        } else {
            const u64 ord = mult_order_u64(b % p, p);
            // b^(ord/2) = -1 mod p when ord is even
            const Int v = (ord % 2 == 0) ? Int(ipow(B, ord / 2) + 1) : Int(ipow(B, ord) - 1);
            g = p_adic_valuation(to_int(p), v);
        }
        S += g * std::log(static_cast<long double>(p));
    }
    return static_cast<double>(S / std::log(static_cast<long double>(a)));
}

bool prop2_bound_holds(u64 a, u64 b) {
    if (a <= 2 || b < 2 || (a == 3 && b == 2) || std::gcd(a, b) != 1)
        throw std::invalid_argument("prop2_bound_holds: a > 2, b > 1, gcd 1, (a, b) != (3, 2) required");
    const double rhs = a * std::log(static_cast<double>(b)) / (2 * std::log(static_cast<double>(a)));
    return prop1_S(a, b) < rhs;
}

bool lemma6_applies_log(u64 a, u64 b, long double log_r) {
    const long double la = std::log(static_cast<long double>(a)), lb = std::log(static_cast<long double>(b));
    return log_r > 2 * a * la * lb;
}

bool lemma6_applies(u64 a, u64 b, const Int& r) {
    if (sgn(r) <= 0) throw std::invalid_argument("lemma6_applies: r > 0 required");
    long exp2 = 0;
    const double m = mpz_get_d_2exp(&exp2, r.get_mpz_t());
    return lemma6_applies_log(a, b, std::log(static_cast<long double>(m)) + exp2 * std::log(2.0L));
}

u64 x2_cap(u64 a, u64 b) {
    if (a < 2 || b < 2) throw std::invalid_argument("x2_cap: a, b >= 2 required");
    // iterate from above to the largest fixed point of G = 4a + 22.997 (log G + 2.405)^2
    long double G = 1e15L;
    for (int i = 0; i < 10000; ++i) {
        const long double t = std::log(G) + 2.405L;
        const long double next = 4.0L * a + 22.997L * t * t;
        if (std::fabs(next - G) < 1e-12L * G) {
            G = next;
            break;
        }
        G = next;
    }
    return static_cast<u64>(std::floor(G * std::log(static_cast<long double>(b)))) + 1;
}

std::pair<u64, u64> initial_bounds(u64 a, u64 b) {
    if (a < 2 || b < 2 || std::gcd(a, b) != 1) throw std::invalid_argument("initial_bounds: coprime a, b >= 2 required");
    // least x with a^x >= b + 101
    u64 X = 1;
    for (Int t = a; t < to_int(b) + 101; t *= a) ++X;
    u64 Y = 1;
    if (a % 2 == 0) {
        X = std::max<u64>(X, ceil_div(p_adic_valuation(2, b - 1), p_adic_valuation(2, a)));
    } else if (b % 2 == 0) {
        Y = std::max<u64>(1, ceil_div(p_adic_valuation(2, a - 1), p_adic_valuation(2, b)));
    }
    return {X, Y};
}

PillaiOutcome bootstrap(u64 a, u64 b, u64 B, u64 X0, u64 Y0, const PillaiEffort& effort, FactorMemo* memo) {
    if (a < 2 || b < 2 || std::gcd(a, b) != 1) throw std::invalid_argument("bootstrap: coprime a, b >= 2 required");
    if (B < 1 || X0 < 1 || Y0 < 1) throw std::invalid_argument("bootstrap: B, X0, Y0 >= 1 required");
    FactorMemo local;
    Bootstrapper bs(a, b, B, effort, memo ? *memo : local);
    return bs.run(X0, Y0);
}

std::pair<Int, Int> replay_trace(u64 a, u64 b, const std::vector<TraceStep>& trace) {
    Int dx = 1, dy = 1;
    for (const auto& s : trace) {
        const bool x = s.side == 'x';
        const u64 base = x ? b : a, other = x ? a : b;
        const u64 floor = x ? s.floor_y : s.floor_x;
        Int mod = 1;
        for (const auto& pp : s.modulus) {
            const Int pe = ipow(pp.prime, pp.exponent);
            mod *= pe;
            if (mpz_divisible_p(to_int(base).get_mpz_t(), pp.prime.get_mpz_t())) {
                // the base power must not exceed the floor in force
                if (pp.exponent > p_adic_valuation(pp.prime, to_int(base)) * floor)
                    throw std::logic_error("replay: base power above floor");
            } else {
                if (sgn(s.exponent) == 0 || powm(to_int(base), s.exponent, pe) != 1 % pe)
                    throw std::logic_error("replay: factor does not divide the claimed power minus one");
            }
        }
        if (powm(to_int(other), s.order, mod) != 1 % mod) throw std::logic_error("replay: order does not annihilate");
        const Int order = mult_order(to_int(other), mod, PartialFactorization{s.modulus, 1, true, false});
        if (order != s.order) throw std::logic_error("replay: order mismatch");
        if (s.exponent != 0 && s.exponent != (x ? dy : dx)) throw std::logic_error("replay: exponent not yet proved");
        (x ? dx : dy) = lcm(x ? dx : dy, order);
    }
    return {dx, dy};
}

bool exhaustive_fallback(u64 a, u64 b, u64 x1, u64 y1, u64 B, std::vector<std::pair<u64, u64>>* found) {
    if (a < 2 || b < 2 || x1 < 1 || y1 < 1) throw std::invalid_argument("exhaustive_fallback: bad arguments");
    if (B <= x1) return true;
    const auto& ps = fallback_primes();
    const long double la = std::log(static_cast<long double>(a)), lb = std::log(static_cast<long double>(b));
    const long double lby1 = y1 * lb, lax1 = x1 * la;
    std::vector<u64> ax(ps.size()), rhs0(ps.size());
    for (std::size_t i = 0; i < ps.size(); ++i) {
        ax[i] = powmod(a, x1, ps[i]);
        // b^y1 - a^x1 mod p
        rhs0[i] = (powmod(b, y1, ps[i]) + ps[i] - ax[i]) % ps[i];
    }
    bool none = true;
    for (u64 x2 = x1 + 1; x2 <= B; ++x2) {
        for (std::size_t i = 0; i < ps.size(); ++i) ax[i] = mulmod(ax[i], a % ps[i], ps[i]);
        const long double lax2 = x2 * la;
        const long double M = std::max(lby1, lax2);
        const long double logT = M + std::log(std::exp(lby1 - M) + std::exp(lax2 - M) - std::exp(lax1 - M));
        const long double yr = logT / lb;
        const long double fl = std::floor(yr);
        for (long double cand = fl - 1; cand <= fl + 1; ++cand) {
            if (cand <= static_cast<long double>(y1)) continue;
            const u64 y2 = static_cast<u64>(cand);
            bool pass = true;
            for (std::size_t i = 0; i < ps.size() && pass; ++i)
                pass = powmod(b, y2, ps[i]) == (rhs0[i] + ax[i]) % ps[i];
            if (!pass) continue;
            const Int T = ipow(to_int(b), y1) + ipow(to_int(a), x2) - ipow(to_int(a), x1);
            if (ipow(to_int(b), y2) == T) {
                none = false;
                if (found) found->push_back({x2, y2});
            }
        }
    }
    return none;
}

const std::vector<KnownPillai>& pillai_exceptions() {
    static const std::vector<KnownPillai> list = [] {
        std::vector<KnownPillai> l{
            {3, 2, 1, {1, 1}, {2, 3}},     {2, 3, 5, {3, 1}, {5, 3}},       {2, 3, 13, {4, 1}, {8, 5}},
            {2, 5, 3, {3, 1}, {7, 3}},     {13, 3, 10, {1, 1}, {3, 7}},     {91, 2, 89, {1, 1}, {2, 13}},
            // the same doubles as (2, 3, 13) written with a perfect-power base
            {4, 3, 13, {2, 1}, {4, 5}},    {16, 3, 13, {1, 1}, {2, 5}},
        };
        for (const auto& e : l)
            for (auto [x, y] : {e.s1, e.s2})
                if (ipow(to_int(e.a), x) - ipow(to_int(e.b), y) != to_int(e.r))
                    throw std::logic_error("pillai exception list does not verify");
        return l;
    }();
    return list;
}

const char* to_string(PillaiVerdict v) {
    switch (v) {
        case PillaiVerdict::AtMostOne: return "at-most-one";
        case PillaiVerdict::KnownException: return "known-exception";
        case PillaiVerdict::Undecided: return "undecided";
    }
    return "?";
}

PillaiReport pillai_pair_verify(u64 a, u64 b, const PillaiOptions& opts) {
    if (a < 2 || b < 2 || std::gcd(a, b) != 1) throw std::invalid_argument("pillai: coprime a, b >= 2 required");
    const auto t0 = std::chrono::steady_clock::now();
    PillaiReport rep;
    rep.a = a;
    rep.b = b;
    auto finish = [&] {
        rep.elapsed_ms = static_cast<u64>(
            std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count());
        return rep;
    };
    for (const auto& e : pillai_exceptions())
        if (e.a == a && e.b == b) rep.exception_r.push_back(e.r);
    if (!rep.exception_r.empty()) {
        rep.verdict = PillaiVerdict::KnownException;
        rep.note = "listed exception";
        return finish();
    }
    rep.B = opts.B ? *opts.B : std::min(x2_cap(a, b), kPillaiRangeBound);
    const auto [X1, Y1] = initial_bounds(a, b);
    FactorMemo memo;
    auto attempt = [&](u64 X0, u64 Y0) {
        rep.runs.push_back(bootstrap(a, b, rep.B, X0, Y0, opts.effort, &memo));
        return rep.runs.back().verdict == BootstrapVerdict::Proved;
    };
    rep.note = "r >= 101 assumed from the exhaustion of r <= 100";
    if (attempt(X1, Y1)) {
        rep.verdict = PillaiVerdict::AtMostOne;
        return finish();
    }
    u64 X0 = 0, Y0 = 0;
    for (u64 x = X1 + 1; x < X1 + opts.escalation && !X0; ++x)
        if (attempt(x, Y1)) X0 = x;
    for (u64 y = Y1 + 1; y < Y1 + opts.escalation && !Y0; ++y)
        if (attempt(X1, y)) Y0 = y;
    if (!X0 || !Y0) {
        rep.verdict = PillaiVerdict::Undecided;
        rep.note += "; escalation rectangle exhausted";
        return finish();
    }
    rep.corner = {X0, Y0};
    for (u64 x1 = X1; x1 < X0; ++x1)
        for (u64 y1 = Y1; y1 < Y0; ++y1) {
            // only cells with r = a^x1 - b^y1 >= 101 can carry a solution
            if (ipow(to_int(a), x1) - ipow(to_int(b), y1) < 101) continue;
            rep.fallback_cells.push_back({x1, y1});
            std::vector<std::pair<u64, u64>> found;
            if (!exhaustive_fallback(a, b, x1, y1, rep.B, &found)) {
                rep.verdict = PillaiVerdict::Undecided;
                rep.note += "; second solution found at x1=" + std::to_string(x1) + ", y1=" + std::to_string(y1);
                return finish();
            }
        }
    rep.verdict = PillaiVerdict::AtMostOne;
    return finish();
}

std::vector<std::pair<u64, u64>> pillai_pairs(Range ra, Range rb) {
    std::vector<std::pair<u64, u64>> out;
    if (ra.empty() || rb.empty()) return out;
    for (u64 a = std::max<u64>(ra.lo, 2); a <= ra.hi; ++a)
        for (u64 b = std::max<u64>(rb.lo, 2); b <= rb.hi; ++b)
            if (std::gcd(a, b) == 1) out.emplace_back(a, b);
    return out;
}

void PillaiSummary::add(const PillaiReport& r) {
    ++pairs;
    switch (r.verdict) {
        case PillaiVerdict::AtMostOne: ++at_most_one; break;
        case PillaiVerdict::KnownException:
            ++known_exception;
            exception_pairs.emplace_back(r.a, r.b);
            break;
        case PillaiVerdict::Undecided:
            ++undecided;
            undecided_pairs.emplace_back(r.a, r.b);
            break;
    }
}

PillaiSummary pillai_range(Range ra, Range rb, const PillaiOptions& opts, int threads, const PillaiSink& sink,
                           const std::function<bool(u64, u64)>& skip, bool serial_reference) {
    std::vector<std::pair<u64, u64>> tasks;
    for (auto pr : pillai_pairs(ra, rb))
        if (!skip || !skip(pr.first, pr.second)) tasks.push_back(pr);
    PillaiSummary summary;
    auto work = [&](const std::pair<u64, u64>& t) {
        try {
            return pillai_pair_verify(t.first, t.second, opts);
        } catch (const std::exception& e) {
            PillaiReport r;
            r.a = t.first;
            r.b = t.second;
            r.note = std::string("error: ") + e.what();
            return r;
        }
    };
    auto take = [&](const std::pair<u64, u64>&, PillaiReport&& r) {
        summary.add(r);
        if (sink) sink(r);
    };
    if (serial_reference)
        run_serial(tasks, work, take);
    else
        run_parallel(tasks, threads, work, take);
    std::sort(summary.exception_pairs.begin(), summary.exception_pairs.end());
    std::sort(summary.undecided_pairs.begin(), summary.undecided_pairs.end());
    return summary;
}

}  // namespace expdio
