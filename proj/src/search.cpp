#include "expdio/search.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include "expdio/bounds.hpp"
#include "expdio/modular.hpp"
#include "expdio/parallel.hpp"
#include "expdio/zcand.hpp"

namespace expdio {

namespace {

constexpr u64 kModCeiling = u64(1) << 62;

u64 largest_power_below(u64 base, u64 ceiling) {
    u64 m = base;
    while (m <= ceiling / base) m *= base;
    return m;
}

bool verify_solution(u64 a, u64 b, u64 c, const Solution& s) {
    return ipow(to_int(a), s.x) + ipow(to_int(b), s.y) == ipow(to_int(c), s.z);
}

void hard_verify(u64 a, u64 b, u64 c, const Solution& s) {
    if (!verify_solution(a, b, c, s))
        throw std::logic_error("unverified solution " + std::to_string(s.x) + "," + std::to_string(s.y) + "," +
                               std::to_string(s.z) + " for (" + std::to_string(a) + "," + std::to_string(b) + "," +
                               std::to_string(c) + ")");
}

u64 elapsed_ms_since(std::chrono::steady_clock::time_point t0) {
    return static_cast<u64>(
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count());
}

struct RegistryRow {
    u64 a, b, c;
    std::vector<Solution> sols;
};

const std::vector<RegistryRow>& fixed_rows() {
    static const std::vector<RegistryRow> rows{
        {2, 3, 11, {{1, 2, 1}, {3, 1, 1}}},
        {2, 3, 35, {{3, 3, 1}, {5, 1, 1}}},
        {2, 3, 259, {{4, 5, 1}, {8, 1, 1}}},
        {2, 5, 3, {{1, 2, 3}, {2, 1, 2}}},
        {2, 5, 133, {{3, 3, 1}, {7, 1, 1}}},
        {2, 7, 3, {{1, 1, 2}, {5, 2, 4}}},
        {2, 89, 91, {{1, 1, 1}, {13, 1, 2}}},
        {2, 91, 8283, {{1, 2, 1}, {13, 1, 1}}},
        {3, 5, 2, {{1, 1, 3}, {1, 3, 7}, {3, 1, 5}}},
        {3, 10, 13, {{1, 1, 1}, {7, 1, 3}}},
        {3, 13, 2, {{1, 1, 4}, {5, 1, 8}}},
        {3, 13, 2200, {{1, 3, 1}, {7, 1, 1}}},
    };
    return rows;
}

}  // namespace

const char* to_string(PairStatus s) {
    switch (s) {
        case PairStatus::Ok: return "ok";
        case PairStatus::Exception: return "exception";
        case PairStatus::Violation: return "violation";
        case PairStatus::CoveredByBeBi: return "covered-by-BeBi";
    }
    return "?";
}

std::optional<PairStatus> parse_pair_status(const std::string& s) {
    for (auto st : {PairStatus::Ok, PairStatus::Exception, PairStatus::Violation, PairStatus::CoveredByBeBi})
        if (s == to_string(st)) return st;
    return std::nullopt;
}

SearchStats& SearchStats::operator+=(const SearchStats& o) {
    candidates += o.candidates;
    fermat_excluded += o.fermat_excluded;
    perfect_power_skipped += o.perfect_power_skipped;
    c_values += o.c_values;
    z2_scanned += o.z2_scanned;
    return *this;
}

bool admissible(u64 a, u64 b) {
    return a >= 2 && b >= 2 && a != b && std::gcd(a, b) == 1 && !is_perfect_power_u64(a) && !is_perfect_power_u64(b);
}

Pair make_pair(u64 a, u64 b) {
    if (a < 2 || b < 2) throw std::invalid_argument("pair: bases must exceed 1");
    if (std::gcd(a, b) != 1) throw std::invalid_argument("pair: bases must be coprime");
    if (is_perfect_power_u64(a) || is_perfect_power_u64(b)) throw std::invalid_argument("pair: perfect power base");
    if (a >= kModCeiling || b >= kModCeiling) throw std::invalid_argument("pair: base too large");
    return Pair{a, b, factor_u64(a), factor_u64(b)};
}

// ---------------------------------------------------------------- registry

std::vector<DoubleReport> known_exceptions(u64 c_cap) {
    std::vector<DoubleReport> out;
    if (c_cap < 2) return out;
    for (unsigned r = 2; r < 63; ++r) {
        u64 c = (u64(1) << r) + 1;
        if (c > c_cap) break;
        out.push_back({2, (u64(1) << r) - 1, c, {{1, 1, 1}, {r + 2, 2, 2}}, DoubleStatus::KnownException});
    }
    for (const auto& row : fixed_rows())
        if (row.c <= c_cap) out.push_back({row.a, row.b, row.c, row.sols, DoubleStatus::KnownException});
    for (const auto& d : out)
        for (const auto& s : d.solutions) hard_verify(d.a, d.b, d.c, s);
    return out;
}

std::vector<DoubleReport> registry_for_pair(u64 a, u64 b, u64 c_cap, bool skip_pp) {
    const u64 lo = std::min(a, b), hi = std::max(a, b);
    std::vector<DoubleReport> out;
    for (auto& d : known_exceptions(c_cap)) {
        if (d.a != lo || d.b != hi) continue;
        if (skip_pp && is_perfect_power_u64(d.c)) continue;
        out.push_back(std::move(d));
    }
    std::sort(out.begin(), out.end(), [](const auto& l, const auto& r) { return l.c < r.c; });
    return out;
}

// ---------------------------------------------------------------- pieces

std::optional<Int> candidate_c(u64 a, u64 b, u64 x1, u64 y1, u64 z1) {
    if (!a || !b || !x1 || !y1 || !z1) throw std::invalid_argument("candidate_c: positive arguments required");
    Int s = ipow(to_int(a), x1) + ipow(to_int(b), y1);
    return exact_root(s, z1);
}

WindowScanner::WindowScanner(u64 a, u64 b, u64 c) : a_(a), b_(b), c_(c) {
    if (a < 2 || b < 2 || c < 2) throw std::invalid_argument("window_scan: bases must exceed 1");
    if (a >= kModCeiling || b >= kModCeiling) throw std::invalid_argument("window_scan: base too large");
    la_ = std::log(static_cast<long double>(a));
    lb_ = std::log(static_cast<long double>(b));
    lc_ = std::log(static_cast<long double>(c));
    Ma_ = largest_power_below(a, kModCeiling);
    Mb_ = largest_power_below(b, kModCeiling);
    a_mod_Mb_.push_back(1 % Mb_);
    b_mod_Ma_.push_back(1 % Ma_);
}

void WindowScanner::advance_to(u64 z) {
    if (z == last_z_) return;
    if (z == last_z_ + 1) {
        cz_Ma_ = mulmod(cz_Ma_, c_ % Ma_, Ma_);
        cz_Mb_ = mulmod(cz_Mb_, c_ % Mb_, Mb_);
    } else {
        cz_Ma_ = powmod(c_, z, Ma_);
        cz_Mb_ = powmod(c_, z, Mb_);
    }
    last_z_ = z;
}

u64 WindowScanner::a_pow_mod_Mb(u64 x) {
    // exponents grow slowly with z, so a short table plus powmod beyond it is enough
    if (x < a_mod_Mb_.size()) return a_mod_Mb_[x];
    if (x < 4096) {
        while (a_mod_Mb_.size() <= x) a_mod_Mb_.push_back(mulmod(a_mod_Mb_.back(), a_ % Mb_, Mb_));
        return a_mod_Mb_[x];
    }
    return step_cursor(cur_a_, a_, x, Mb_);
}

u64 WindowScanner::b_pow_mod_Ma(u64 y) {
    if (y < b_mod_Ma_.size()) return b_mod_Ma_[y];
    if (y < 4096) {
        while (b_mod_Ma_.size() <= y) b_mod_Ma_.push_back(mulmod(b_mod_Ma_.back(), b_ % Ma_, Ma_));
        return b_mod_Ma_[y];
    }
    return step_cursor(cur_b_, b_, y, Ma_);
}

u64 WindowScanner::step_cursor(Cursor& cur, u64 base, u64 e, u64 mod) {
    // windows move forward by a few exponents per z, so stepping beats a fresh powmod
    if (cur.exp == 0 || e < cur.exp || e - cur.exp > 64) {
        cur = {e, powmod(base, e, mod)};
        return cur.value;
    }
    const u64 bm = base % mod;
    while (cur.exp < e) {
        cur.value = mulmod(cur.value, bm, mod);
        ++cur.exp;
    }
    return cur.value;
}

bool WindowScanner::confirm(u64 x, u64 y, u64 z) const { return verify_solution(a_, b_, c_, {x, y, z}); }

std::vector<Solution> WindowScanner::scan(u64 z) {
    if (z == 0) throw std::invalid_argument("window_scan: z >= 1 required");
    advance_to(z);
    std::set<Solution> found;
    const long double L = static_cast<long double>(z) * lc_;
    const long double l2 = std::log(2.0L);

    // a-window: c^z / 2 < a^x < c^z, then c^z - a^x must be a power of b
    {
        long double lo = (L - l2) / la_, hi = L / la_;
        u64 x0 = static_cast<u64>(std::max<long double>(1, std::floor(lo)));
        u64 x1 = static_cast<u64>(std::max<long double>(1, std::ceil(hi)));
        for (u64 x = x0; x <= x1; ++x) {
            u64 ax = a_pow_mod_Mb(x);
            u64 r = cz_Mb_ >= ax ? cz_Mb_ - ax : cz_Mb_ + (Mb_ - ax);
            if (r == 0) {
                Int N = ipow(to_int(c_), z) - ipow(to_int(a_), x);
                if (sgn(N) > 0)
                    if (auto y = power_index(N, to_int(b_))) found.insert({x, *y, z});
                continue;
            }
            u64 y = 0;
            while (r % b_ == 0) {
                r /= b_;
                ++y;
            }
            if (r == 1 && y >= 1 && confirm(x, y, z)) found.insert({x, y, z});
        }
    }
    // b-window
    {
        long double lo = (L - l2) / lb_, hi = L / lb_;
        u64 y0 = static_cast<u64>(std::max<long double>(1, std::floor(lo)));
        u64 y1 = static_cast<u64>(std::max<long double>(1, std::ceil(hi)));
        for (u64 y = y0; y <= y1; ++y) {
            u64 by = b_pow_mod_Ma(y);
            u64 r = cz_Ma_ >= by ? cz_Ma_ - by : cz_Ma_ + (Ma_ - by);
            if (r == 0) {
                Int N = ipow(to_int(c_), z) - ipow(to_int(b_), y);
                if (sgn(N) > 0)
                    if (auto x = power_index(N, to_int(a_))) found.insert({*x, y, z});
                continue;
            }
            u64 x = 0;
            while (r % a_ == 0) {
                r /= a_;
                ++x;
            }
            if (r == 1 && x >= 1 && confirm(x, y, z)) found.insert({x, y, z});
        }
    }
    return {found.begin(), found.end()};
}

std::vector<Solution> window_scan(u64 a, u64 b, u64 c, u64 z2) {
    if (std::gcd(c, a) != 1 || std::gcd(c, b) != 1) throw std::invalid_argument("window_scan: gcd(c, ab) != 1");
    WindowScanner s(a, b, c);
    return s.scan(z2);
}

// ---------------------------------------------------------------- case 1: c even

namespace {

std::vector<DoubleReport> collect_doubles(u64 a, u64 b, const std::map<u64, std::set<Solution>>& found) {
    std::vector<DoubleReport> out;
    for (const auto& [c, sols] : found) {
        if (sols.size() < 2) continue;
        DoubleReport d{a, b, c, {sols.begin(), sols.end()}, DoubleStatus::Violation};
        for (const auto& s : d.solutions) hard_verify(a, b, c, s);
        out.push_back(std::move(d));
    }
    return out;
}

}  // namespace

std::vector<DoubleReport> case_even(const Pair& p, u64 c_cap, SearchStats* stats) {
    const u64 a = p.a, b = p.b;
    if (a % 2 == 0 || b % 2 == 0) throw std::invalid_argument("case_even: both bases must be odd");
    SearchStats local;
    if (std::max(a, b) < 9) {
        // small pairs: only the registered doubles exist; re-verified on the way out
        auto reg = registry_for_pair(a, b, c_cap);
        std::vector<DoubleReport> out;
        for (auto& d : reg) {
            if (d.a != a) {
                for (auto& s : d.solutions) std::swap(s.x, s.y);
                std::swap(d.a, d.b);
                std::sort(d.solutions.begin(), d.solutions.end());
            }
            for (const auto& s : d.solutions) hard_verify(a, b, d.c, s);
            out.push_back(std::move(d));
        }
        return out;
    }
    const bool a_big = a > b;
    const double dcap = static_cast<double>(c_cap);
    const long double la = std::log(static_cast<long double>(a)), lb = std::log(static_cast<long double>(b));
    const long double lc = std::log(static_cast<long double>(c_cap));
    const int alpha = alpha_of(a, b);
    const double M2 = std::floor(mp_z_bound(a, b, c_cap, BetaMode::Conservative) * kInflate);
    const u64 M1 = z1_cap(a, b, dcap, std::max(1.0, M2), alpha, 1);

    const u64 xmax_all = static_cast<u64>(std::floor(M1 * lc / la * kInflate));
    const u64 ymax_all = static_cast<u64>(std::floor(M1 * lc / lb * kInflate));
    std::vector<u64> a64(xmax_all + 1, 1), b64(ymax_all + 1, 1);
    for (u64 i = 1; i <= xmax_all; ++i) a64[i] = a64[i - 1] * a;
    for (u64 i = 1; i <= ymax_all; ++i) b64[i] = b64[i - 1] * b;
    std::vector<Int> abig(xmax_all + 1), bbig(ymax_all + 1);
    abig[0] = 1;
    bbig[0] = 1;
    for (u64 i = 1; i <= xmax_all; ++i) abig[i] = abig[i - 1] * to_int(a);
    for (u64 i = 1; i <= ymax_all; ++i) bbig[i] = bbig[i - 1] * to_int(b);

    std::map<u64, std::set<Solution>> found;
    std::set<u64> scanned;
    for (u64 z1 = 1; z1 <= M1; ++z1) {
        const u64 xmax = std::min<u64>(xmax_all, static_cast<u64>(std::floor(z1 * lc / la * kInflate)));
        const u64 ymax = std::min<u64>(ymax_all, static_cast<u64>(std::floor(z1 * lc / lb * kInflate)));
        const long double zl = z1 * lc + 1e-9L;
        for (u64 x = 1; x <= xmax; ++x) {
            for (u64 y = 1; y <= ymax; ++y) {
                ++local.candidates;
                const bool excluded = a_big ? fermat_filter(x, y, z1) : fermat_filter(y, x, z1);
                if (excluded) {
                    ++local.fermat_excluded;
                    continue;
                }
                // c even: nu2(sum) = z1 * nu2(c)
                const u64 s64 = a64[x] + b64[y];
                if (s64 != 0) {
                    const unsigned v = __builtin_ctzll(s64);
                    if (v < z1 || v % z1 != 0) continue;
                }
                if (std::max(x * la, y * lb) > zl) continue;
                Int sum = abig[x] + bbig[y];
                auto root = exact_root(sum, z1);
                if (!root || !fits_u64(*root)) continue;
                const u64 c = to_u64(*root);
                if (c > c_cap || c % 2 != 0 || std::gcd(c, a) != 1 || std::gcd(c, b) != 1) continue;
                if (is_perfect_power_u64(c)) {
                    ++local.perfect_power_skipped;
                    continue;
                }
                found[c].insert({x, y, z1});
                if (!scanned.insert(c).second) continue;
                ++local.c_values;
                // z2 in [z1, cap(c)] covers the partner solution; earlier z1 already covered larger ones
                const u64 zcap = static_cast<u64>(std::floor(mp_z_bound(a, b, c, BetaMode::Exact) * kInflate));
                WindowScanner scanner(a, b, c);
                for (u64 z2 = z1; z2 <= std::max(zcap, z1); ++z2) {
                    ++local.z2_scanned;
                    for (const auto& s : scanner.scan(z2)) found[c].insert(s);
                }
            }
        }
    }
    if (stats) *stats += local;
    return collect_doubles(a, b, found);
}

// ---------------------------------------------------------------- case 2: c odd

std::vector<DoubleReport> case_odd(const Pair& p, u64 c_cap, SearchStats* stats, ClassCache& cache) {
    if ((p.a % 2) == (p.b % 2)) throw std::invalid_argument("case_odd: exactly one base must be even");
    const bool a_even = p.a % 2 == 0;
    const u64 E = a_even ? p.a : p.b, O = a_even ? p.b : p.a;
    SearchStats local;
    const double dcap = static_cast<double>(c_cap);
    const long double lO = std::log(static_cast<long double>(O)), lE = std::log(static_cast<long double>(E));
    const long double lc = std::log(static_cast<long double>(c_cap));
    const ZSet U = z_set_union(E, O, cache);
    const u64 z2max = U.back();

    std::map<u64, std::set<Solution>> found;  // solutions kept in (E, O) orientation
    std::set<u64> scanned;
    for (auto pc : kParityClasses) {
        const ZSet Z1 = z_set(E, O, pc, VMode::Auto, cache);
        for (u64 z1 : Z1) {
            const u64 xcap = x1_cap(E, O, dcap, z1, z2max);
            const u64 ycap = static_cast<u64>(std::floor(z1 * lc / lO * kInflate));
            const long double zl = z1 * lc + 1e-9L;
            for (u64 x = pc.x_odd ? 1 : 2; x <= xcap; x += 2) {
                if (x * lE > zl) break;
                for (u64 y = pc.y_odd ? 1 : 2; y <= ycap; y += 2) {
                    ++local.candidates;
                    if (fermat_filter(x, y, z1)) {
                        ++local.fermat_excluded;
                        continue;
                    }
                    auto root = candidate_c(E, O, x, y, z1);
                    if (!root || !fits_u64(*root)) continue;
                    const u64 c = to_u64(*root);
                    if (c > c_cap || c % 2 == 0 || std::gcd(c, E) != 1 || std::gcd(c, O) != 1) continue;
                    if (is_perfect_power_u64(c)) {
                        ++local.perfect_power_skipped;
                        continue;
                    }
                    found[c].insert({x, y, z1});
                    if (!scanned.insert(c).second) continue;
                    ++local.c_values;
                    WindowScanner scanner(E, O, c);
                    for (u64 z2 : U) {
                        ++local.z2_scanned;
                        for (const auto& s : scanner.scan(z2)) found[c].insert(s);
                    }
                }
            }
        }
    }
    if (stats) *stats += local;
    if (!a_even) {
        std::map<u64, std::set<Solution>> swapped;
        for (const auto& [c, sols] : found)
            for (const auto& s : sols) swapped[c].insert({s.y, s.x, s.z});
        found.swap(swapped);
    }
    return collect_doubles(p.a, p.b, found);
}

// ---------------------------------------------------------------- pair driver

PairReport verify_pair(u64 a, u64 b, u64 c_cap, ClassCache& cache) {
    const auto t0 = std::chrono::steady_clock::now();
    PairReport rep;
    rep.a = std::min(a, b);
    rep.b = std::max(a, b);
    rep.c_cap = c_cap;
    try {
        const Pair p = make_pair(rep.a, rep.b);
        const bool both_odd = p.a % 2 == 1 && p.b % 2 == 1;
        rep.doubles = both_odd ? case_even(p, c_cap, &rep.stats) : case_odd(p, c_cap, &rep.stats, cache);

        const auto expected = registry_for_pair(p.a, p.b, c_cap);
        bool bad = false;
        for (auto& d : rep.doubles) {
            auto it = std::find_if(expected.begin(), expected.end(), [&](const auto& e) { return e.c == d.c; });
            d.status = (it != expected.end() && it->solutions == d.solutions) ? DoubleStatus::KnownException
                                                                               : DoubleStatus::Violation;
            bad = bad || d.status == DoubleStatus::Violation;
        }
        for (const auto& e : expected) {
            bool seen = std::any_of(rep.doubles.begin(), rep.doubles.end(), [&](const auto& d) { return d.c == e.c; });
            if (!seen) {
                bad = true;
                rep.error += "registered double with c=" + std::to_string(e.c) + " not found; ";
            }
        }
        if (bad)
            rep.status = PairStatus::Violation;
        else if (!rep.doubles.empty())
            rep.status = PairStatus::Exception;
        else if (both_odd && std::max(p.a, p.b) < 9)
            rep.status = PairStatus::CoveredByBeBi;
        else
            rep.status = PairStatus::Ok;
    } catch (const std::exception& e) {
        rep.status = PairStatus::Violation;
        rep.error = e.what();
    }
    rep.elapsed_ms = elapsed_ms_since(t0);
    return rep;
}

std::optional<Range> parse_range(const std::string& s) {
    auto pos = s.find("..");
    auto parse = [](const std::string& t, u64& out) {
        if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos) return false;
        try {
            out = std::stoull(t);
        } catch (...) {
            return false;
        }
        return true;
    };
    Range r;
    if (pos == std::string::npos) {
        if (!parse(s, r.lo)) return std::nullopt;
        r.hi = r.lo;
        return r;
    }
    if (!parse(s.substr(0, pos), r.lo) || !parse(s.substr(pos + 2), r.hi)) return std::nullopt;
    return r;
}

std::vector<std::pair<u64, u64>> admissible_pairs(Range ra, Range rb) {
    std::set<std::pair<u64, u64>> out;
    if (ra.empty() || rb.empty()) return {};
    for (u64 a = ra.lo; a <= ra.hi; ++a)
        for (u64 b = rb.lo; b <= rb.hi; ++b)
            if (admissible(a, b)) out.insert({std::min(a, b), std::max(a, b)});
    return {out.begin(), out.end()};
}

void VerifySummary::add(const PairReport& r) {
    ++pairs;
    stats += r.stats;
    switch (r.status) {
        case PairStatus::Ok: ++ok; break;
        case PairStatus::Exception: ++exception; break;
        case PairStatus::Violation: ++violation; break;
        case PairStatus::CoveredByBeBi: ++covered_by_bebi; break;
    }
    for (const auto& d : r.doubles)
        if (d.status == DoubleStatus::KnownException) exceptions.push_back(d);
    if (r.status == PairStatus::Violation) violations.push_back(r);
}

void prewarm_class_cache(const std::vector<std::pair<u64, u64>>& pairs, ClassCache& cache) {
    for (auto [a, b] : pairs) {
        if ((a + b) % 2 == 0) continue;
        for (auto pc : kParityClasses) cache.exponent(pq_split(a, b, pc).P);
    }
}

VerifySummary verify_range(Range ra, Range rb, u64 c_cap, int threads, const PairSink& sink,
                           const std::function<bool(u64, u64)>& skip, bool serial_reference, ClassCache& cache) {
    auto all = admissible_pairs(ra, rb);
    std::vector<std::pair<u64, u64>> tasks;
    for (auto pr : all)
        if (!skip || !skip(pr.first, pr.second)) tasks.push_back(pr);
    prewarm_class_cache(tasks, cache);

    VerifySummary summary;
    auto work = [&](const std::pair<u64, u64>& t) { return verify_pair(t.first, t.second, c_cap, cache); };
    auto take = [&](const std::pair<u64, u64>&, PairReport&& r) {
        summary.add(r);
        if (sink) sink(r);
    };
    if (serial_reference)
        run_serial(tasks, work, take);
    else
        run_parallel(tasks, threads, work, take);
    std::sort(summary.exceptions.begin(), summary.exceptions.end(),
              [](const auto& l, const auto& r) { return std::tie(l.a, l.b, l.c) < std::tie(r.a, r.b, r.c); });
    return summary;
}

// ---------------------------------------------------------------- primitive triples

const char* to_string(JesStatus s) {
    switch (s) {
        case JesStatus::HanYuan: return "holds-by-HanYuan";
        case JesStatus::Demjanenko: return "holds-by-Demjanenko";
        case JesStatus::Lu: return "holds-by-Lu";
        case JesStatus::Terai: return "holds-by-Terai";
        case JesStatus::VerifiedByScan: return "verified-by-scan";
        case JesStatus::Failed: return "failed";
    }
    return "?";
}

namespace {

void check_fg(u64 f, u64 g) {
    if (!(f > g && g >= 1)) throw std::invalid_argument("jesmanowicz: f > g >= 1 required");
    if (std::gcd(f, g) != 1) throw std::invalid_argument("jesmanowicz: gcd(f, g) must be 1");
    if ((f + g) % 2 == 0) throw std::invalid_argument("jesmanowicz: f and g must have opposite parity");
    if (f > (u64(1) << 31)) throw std::invalid_argument("jesmanowicz: f too large");
}

bool han_yuan(u64 f, u64 g) {
    if ((f * g) % 4 != 2) return false;
    for (auto [p, e] : factor_u64(f + g))
        if (p % 16 != 1) return true;
    return false;
}

JesReport run_scan(JesReport rep, ClassCache& cache) {
    const ZSet U = z_set_union(rep.a, rep.b, cache);
    WindowScanner scanner(rep.a, rep.b, rep.c);
    std::set<Solution> sols;
    for (u64 z : U)
        for (const auto& s : scanner.scan(z)) sols.insert(s);
    rep.solutions.assign(sols.begin(), sols.end());
    for (const auto& s : rep.solutions) hard_verify(rep.a, rep.b, rep.c, s);
    const bool only_222 = rep.solutions.size() == 1 && rep.solutions[0] == Solution{2, 2, 2};
    if (!only_222) {
        rep.status = JesStatus::Failed;
        if (std::find(U.begin(), U.end(), 2) == U.end()) rep.error = "z = 2 missing from candidate set";
    }
    return rep;
}

}  // namespace

JesReport jesmanowicz_check(u64 f, u64 g, ClassCache& cache) {
    check_fg(f, g);
    const auto t0 = std::chrono::steady_clock::now();
    JesReport rep{f, g, f * f - g * g, 2 * f * g, f * f + g * g, JesStatus::VerifiedByScan, {}, 0, {}};
    if (han_yuan(f, g))
        rep.status = JesStatus::HanYuan;
    else if (g + 1 == f)
        rep.status = JesStatus::Demjanenko;
    else if (g == 1)
        rep.status = JesStatus::Lu;
    else if (g == 2)
        rep.status = JesStatus::Terai;
    else
        rep = run_scan(rep, cache);
    rep.elapsed_ms = elapsed_ms_since(t0);
    return rep;
}

JesReport jesmanowicz_scan(u64 f, u64 g, ClassCache& cache) {
    check_fg(f, g);
    const auto t0 = std::chrono::steady_clock::now();
    JesReport rep{f, g, f * f - g * g, 2 * f * g, f * f + g * g, JesStatus::VerifiedByScan, {}, 0, {}};
    rep = run_scan(rep, cache);
    rep.elapsed_ms = elapsed_ms_since(t0);
    return rep;
}

std::vector<std::pair<u64, u64>> jesmanowicz_tasks(JesMode mode, u64 cap) {
    std::vector<std::pair<u64, u64>> out;
    auto valid = [](u64 f, u64 g) { return f > g && g >= 1 && std::gcd(f, g) == 1 && (f + g) % 2 == 1; };
    switch (mode) {
        case JesMode::SmallF:
            for (u64 f = 2; f <= cap; ++f)
                for (u64 g = 1; g < f; ++g)
                    if (valid(f, g)) out.push_back({f, g});
            break;
        case JesMode::ACase: {
            // a = f^2 - g^2 <= cap with g <= f - 3 forces 6f - 9 <= cap
            const u64 fmax = (cap + 9) / 6;
            for (u64 f = 1001; f <= fmax; ++f) {
                u64 glo = 1;
                if (f * f > cap) {
                    Int r = sqrt(to_int(f * f - cap));
                    glo = to_u64(r);
                    if (glo * glo < f * f - cap) ++glo;
                }
                for (u64 g = std::max<u64>(glo, 1); g + 3 <= f; ++g)
                    if (valid(f, g)) out.push_back({f, g});
            }
            break;
        }
        case JesMode::BCase:
            for (u64 g = 3; 2 * (g + 1) * g <= cap; ++g)
                for (u64 f = g + 1; 2 * f * g <= cap; ++f)
                    if (valid(f, g)) out.push_back({f, g});
            break;
    }
    return out;
}

void JesSummary::add(const JesReport& r) {
    ++triples;
    ++by_status[r.status];
    if (r.status == JesStatus::Failed) {
        ++failures;
        failed.push_back(r);
    }
}

JesSummary jesmanowicz_range(JesMode mode, u64 cap, int threads, const JesSink& sink,
                             const std::function<bool(u64, u64)>& skip, bool serial_reference, ClassCache& cache) {
    std::vector<std::pair<u64, u64>> tasks;
    for (auto t : jesmanowicz_tasks(mode, cap))
        if (!skip || !skip(t.first, t.second)) tasks.push_back(t);
    // warm the class exponents the scans will need
    for (auto [f, g] : tasks) {
        u64 a = f * f - g * g, b = 2 * f * g;
        for (auto pc : kParityClasses) cache.exponent(pq_split(a, b, pc).P);
    }
    JesSummary summary;
    auto work = [&](const std::pair<u64, u64>& t) {
        try {
            return jesmanowicz_check(t.first, t.second, cache);
        } catch (const std::exception& e) {
            JesReport r;
            r.f = t.first;
            r.g = t.second;
            r.status = JesStatus::Failed;
            r.error = e.what();
            return r;
        }
    };
    auto take = [&](const std::pair<u64, u64>&, JesReport&& r) {
        summary.add(r);
        if (sink) sink(r);
    };
    if (serial_reference)
        run_serial(tasks, work, take);
    else
        run_parallel(tasks, threads, work, take);
    return summary;
}

}  // namespace expdio
