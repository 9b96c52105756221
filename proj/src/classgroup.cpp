#include "expdio/classgroup.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "expdio/modular.hpp"

namespace expdio {

using i64 = std::int64_t;
using i128 = __int128;

namespace {

i64 floordiv(i64 a, i64 b) {
    i64 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

i64 mod_pos(i128 a, i64 m) {
    i128 r = a % m;
    if (r < 0) r += m;
    return static_cast<i64>(r);
}

// u*a + v*b = g
i64 ext_gcd(i64 a, i64 b, i64& u, i64& v) {
    i64 u0 = 1, v0 = 0, u1 = 0, v1 = 1;
    while (b != 0) {
        i64 q = floordiv(a, b);
        i64 t = a - q * b;
        a = b;
        b = t;
        t = u0 - q * u1;
        u0 = u1;
        u1 = t;
        t = v0 - q * v1;
        v0 = v1;
        v1 = t;
    }
    if (a < 0) {
        a = -a;
        u0 = -u0;
        v0 = -v0;
    }
    u = u0;
    v = v0;
    return a;
}

QuadForm normalize(QuadForm f, i64 D) {
    if (-f.A < f.B && f.B <= f.A) return f;
    i64 r = floordiv(f.A - f.B, 2 * f.A);
    f.B += 2 * r * f.A;
    f.C = static_cast<i64>((static_cast<i128>(f.B) * f.B - D) / (4 * static_cast<i128>(f.A)));
    return f;
}

}  // namespace

bool is_squarefree(std::uint64_t n) {
    if (n == 0) return false;
    for (auto [p, e] : factor_u64(n))
        if (e > 1) return false;
    return true;
}

i64 fundamental_discriminant(std::uint64_t P) {
    if (!is_squarefree(P)) throw std::invalid_argument("fundamental_discriminant: P must be squarefree");
    if (P % 4 == 3) return -static_cast<i64>(P);
    return -4 * static_cast<i64>(P);
}

bool is_reduced(const QuadForm& f) {
    if (!(std::llabs(f.B) <= f.A && f.A <= f.C)) return false;
    if ((std::llabs(f.B) == f.A || f.A == f.C) && f.B < 0) return false;
    return true;
}

QuadForm reduce(QuadForm f) {
    const i64 D = f.discriminant();
    if (D >= 0 || f.A <= 0) throw std::invalid_argument("reduce: positive definite form required");
    f = normalize(f, D);
    while (f.A > f.C) {
        f = QuadForm{f.C, -f.B, f.A};
        f = normalize(f, D);
    }
    if (f.A == f.C && f.B < 0) f.B = -f.B;
    return f;
}

QuadForm principal_form(i64 D) {
    if (D >= 0 || (D % 4 != 0 && ((D % 4) + 4) % 4 != 1)) throw std::invalid_argument("principal_form: bad discriminant");
    i64 k = (D % 4 == 0) ? 0 : 1;
    return QuadForm{1, k, (k - D) / 4};
}

QuadForm inverse(const QuadForm& f) { return reduce(QuadForm{f.A, -f.B, f.C}); }

QuadForm compose(const QuadForm& f1_in, const QuadForm& f2_in) {
    const i64 D = f1_in.discriminant();
    if (f2_in.discriminant() != D) throw std::invalid_argument("compose: discriminant mismatch");
    QuadForm f1 = f1_in, f2 = f2_in;
    if (f1.A > f2.A) std::swap(f1, f2);
    const i64 s = (f1.B + f2.B) / 2;
    const i64 n = f2.B - s;
    i64 y1, d;
    if (f2.A % f1.A == 0) {
        y1 = 0;
        d = f1.A;
    } else {
        i64 u, v;
        d = ext_gcd(f2.A, f1.A, u, v);
        y1 = u;
    }
    i64 x2, y2, d1;
    if (s % d == 0) {
        y2 = -1;
        x2 = 0;
        d1 = d;
    } else {
        i64 u, v;
        d1 = ext_gcd(s, d, u, v);
        x2 = u;
        y2 = -v;
    }
    const i64 v1 = f1.A / d1, v2 = f2.A / d1;
    const i64 r = mod_pos(static_cast<i128>(y1) * y2 % v1 * n - static_cast<i128>(x2) * f2.C, v1);
    QuadForm out;
    out.B = f2.B + 2 * v2 * r;
    out.A = v1 * v2;
    out.C = static_cast<i64>((static_cast<i128>(out.B) * out.B - D) / (4 * static_cast<i128>(out.A)));
    return reduce(out);
}

QuadForm power(QuadForm f, std::uint64_t n) {
    QuadForm acc = principal_form(f.discriminant());
    while (n) {
        if (n & 1) acc = compose(acc, f);
        n >>= 1;
        if (n) f = compose(f, f);
    }
    return acc;
}

std::uint64_t form_order(const QuadForm& f, std::uint64_t multiple) {
    const QuadForm id = principal_form(f.discriminant());
    if (power(f, multiple) != id) throw std::logic_error("form_order: not a multiple of the order");
    std::uint64_t k = multiple;
    for (auto [q, e] : factor_u64(multiple)) {
        for (unsigned i = 0; i < e; ++i) {
            if (power(f, k / q) == id)
                k /= q;
            else
                break;
        }
    }
    return k;
}

std::vector<QuadForm> reduced_forms(i64 D) {
    if (D >= 0 || (((D % 4) + 4) % 4 != 0 && ((D % 4) + 4) % 4 != 1))
        throw std::invalid_argument("reduced_forms: D < 0 with D = 0, 1 mod 4 required");
    std::vector<QuadForm> out;
    const i64 absD = -D;
    const i64 b0 = absD & 1;
    std::vector<u64> rem;
    for (i64 b = b0; 3 * b * b <= absD; b += 2) rem.push_back(static_cast<u64>((static_cast<i128>(b) * b - D) / 4));
    if (rem.empty()) return out;
    // sieve the factorizations of N_b = (b^2 - D)/4 along b
    std::vector<std::vector<std::pair<u64, unsigned>>> fac(rem.size());
    auto strip = [&](std::size_t k, u64 p) {
        unsigned e = 0;
        while (rem[k] % p == 0) {
            rem[k] /= p;
            ++e;
        }
        if (e) fac[k].push_back({p, e});
    };
    for (std::size_t k = 0; k < rem.size(); ++k) strip(k, 2);
    const u64 nmax = *std::max_element(rem.begin(), rem.end());
    const auto primes = primes_upto(static_cast<std::uint32_t>(std::sqrt(static_cast<long double>(nmax)) + 2));
    for (std::uint32_t p32 : *primes) {
        const u64 p = p32;
        if (p == 2) continue;
        if (p * p > nmax) break;
        const u64 Dm = static_cast<u64>(((D % i64(p)) + i64(p)) % i64(p));
        for (u64 r : sqrt_mod_prime(Dm, p)) {
            // b = r mod p and b = b0 mod 2
            u64 rb = (r % 2 == static_cast<u64>(b0)) ? r : r + p;
            for (u64 k = (rb - b0) / 2; k < rem.size(); k += p) strip(k, p);
        }
    }
    for (std::size_t k = 0; k < rem.size(); ++k) {
        if (rem[k] > 1) fac[k].push_back({rem[k], 1});
        const i64 b = b0 + 2 * static_cast<i64>(k);
        const u64 N = static_cast<u64>((static_cast<i128>(b) * b - D) / 4);
        std::vector<u64> divs{1};
        for (auto [p, e] : fac[k]) {
            const std::size_t n = divs.size();
            u64 pk = 1;
            for (unsigned j = 1; j <= e; ++j) {
                pk *= p;
                for (std::size_t i = 0; i < n; ++i) divs.push_back(divs[i] * pk);
            }
        }
        for (u64 da : divs) {
            const i64 a = static_cast<i64>(da);
            if (a < std::max<i64>(b, 1) || da > N / da) continue;
            const i64 c = static_cast<i64>(N / da);
            if (std::gcd(std::gcd(a, b), c) != 1) continue;
            out.push_back({a, b, c});
            if (b > 0 && b < a && a < c) out.push_back({a, -b, c});
        }
    }
    std::sort(out.begin(), out.end(), [](const QuadForm& l, const QuadForm& r) {
        return std::tie(l.A, l.B) < std::tie(r.A, r.B);
    });
    return out;
}

std::uint64_t class_exponent(std::uint64_t P) {
    if (!is_squarefree(P)) throw std::invalid_argument("class_exponent: P must be squarefree");
    if (P <= 2) return 1;
    const i64 D = fundamental_discriminant(P);
    const auto forms = reduced_forms(D);
    const std::uint64_t h = forms.size();
    const QuadForm id = principal_form(D);
    std::uint64_t E = 1;
    // forms with prime leading coefficient generate the group, and f and its inverse share an order
    for (const auto& f : forms) {
        if (f.B < 0 || (f.A > 1 && !is_prime_u64(static_cast<u64>(f.A)))) continue;
        if (power(f, E) == id) continue;
        E = std::lcm(E, form_order(f, h));
        if (E == h) break;
    }
    return E;
}

std::vector<ClassRecord> load_cache(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CacheError("cannot open class cache " + path, 0);
    std::vector<ClassRecord> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        unsigned long long P = 0, h = 0;
        char tail = 0;
        if (std::sscanf(line.c_str(), "%llu,%llu%c", &P, &h, &tail) != 2 || line[0] == '-' ||
            line.find(",-") != std::string::npos)
            throw CacheError(path + ":" + std::to_string(lineno) + ": malformed record '" + line + "'", lineno);
        if (h == 0 || P == 0)
            throw CacheError(path + ":" + std::to_string(lineno) + ": non-positive value", lineno);
        if (!out.empty() && P <= out.back().P)
            throw CacheError(path + ":" + std::to_string(lineno) + ": records not ascending", lineno);
        out.push_back({P, h});
    }
    return out;
}

void store_cache(const std::string& path, const std::vector<ClassRecord>& records) {
    for (std::size_t i = 1; i < records.size(); ++i)
        if (records[i].P <= records[i - 1].P) throw std::invalid_argument("store_cache: records must ascend");
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write class cache " + tmp);
        for (const auto& r : records) out << r.P << ',' << r.h << '\n';
        if (!out) throw std::runtime_error("write failed for " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

ClassCache::ClassCache(std::string path) : path_(std::move(path)) {
    if (!path_.empty() && std::filesystem::exists(path_)) {
        for (const auto& r : load_cache(path_)) table_[r.P] = r.h;
    }
}

std::uint64_t ClassCache::exponent(std::uint64_t P) {
    {
        std::shared_lock lock(mu_);
        auto it = table_.find(P);
        if (it != table_.end()) return it->second;
    }
    std::uint64_t h = class_exponent(P);
    std::unique_lock lock(mu_);
    if (table_.emplace(P, h).second) dirty_ = true;
    return h;
}

void ClassCache::warm(std::uint64_t bound) {
    for (std::uint64_t P = 1; P <= bound; ++P)
        if (is_squarefree(P)) exponent(P);
}

void ClassCache::flush() {
    std::unique_lock lock(mu_);
    if (path_.empty() || !dirty_) return;
    std::vector<ClassRecord> recs;
    recs.reserve(table_.size());
    for (auto [P, h] : table_) recs.push_back({P, h});
    store_cache(path_, recs);
    dirty_ = false;
}

std::size_t ClassCache::size() const {
    std::shared_lock lock(mu_);
    return table_.size();
}

std::vector<ClassRecord> ClassCache::records() const {
    std::shared_lock lock(mu_);
    std::vector<ClassRecord> recs;
    for (auto [P, h] : table_) recs.push_back({P, h});
    return recs;
}

ClassCache& default_class_cache() {
    static ClassCache cache;
    return cache;
}

}  // namespace expdio
