#pragma once
// Double-solution search for a^x + b^y = c^z and the primitive Pythagorean driver.
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "expdio/arith.hpp"
#include "expdio/classgroup.hpp"

namespace expdio {

using u64 = std::uint64_t;

struct Solution {
    u64 x = 0, y = 0, z = 0;
    auto operator<=>(const Solution&) const = default;
};

enum class DoubleStatus { KnownException, Violation };

struct DoubleReport {
    u64 a = 0, b = 0, c = 0;
    std::vector<Solution> solutions;  // ascending
    DoubleStatus status = DoubleStatus::Violation;
    bool operator==(const DoubleReport&) const = default;
};

enum class PairStatus { Ok, Exception, Violation, CoveredByBeBi };
const char* to_string(PairStatus s);
std::optional<PairStatus> parse_pair_status(const std::string& s);

struct Pair {
    u64 a = 0, b = 0;
    std::vector<std::pair<u64, unsigned>> fact_a, fact_b;
};

// Validates coprimality, size and the not-a-perfect-power condition.
Pair make_pair(u64 a, u64 b);
bool admissible(u64 a, u64 b);

struct SearchStats {
    u64 candidates = 0;              // (x1, y1, z1) triples examined
    u64 fermat_excluded = 0;
    u64 perfect_power_skipped = 0;   // candidate c rejected as a perfect power
    u64 c_values = 0;                // distinct c scanned
    u64 z2_scanned = 0;
    SearchStats& operator+=(const SearchStats& o);
};

struct PairReport {
    u64 a = 0, b = 0, c_cap = 0;
    PairStatus status = PairStatus::Ok;
    std::vector<DoubleReport> doubles;  // ascending c
    u64 elapsed_ms = 0;
    SearchStats stats;
    std::string error;
};

// ---- registry ----
std::vector<DoubleReport> known_exceptions(u64 c_cap);
// Registry entries for the unordered pair {a, b}, oriented as (min, max).
std::vector<DoubleReport> registry_for_pair(u64 a, u64 b, u64 c_cap, bool skip_perfect_power_c = true);

// ---- building blocks ----
std::optional<Int> candidate_c(u64 a, u64 b, u64 x1, u64 y1, u64 z1);

// All (x, y) with a^x + b^y = c^z for one z, found through the two tight windows.
class WindowScanner {
public:
    WindowScanner(u64 a, u64 b, u64 c);
    std::vector<Solution> scan(u64 z);

private:
    u64 a_, b_, c_;
    long double la_, lb_, lc_;
    u64 Ma_, Mb_;  // largest powers of a and b below 2^62
    std::vector<u64> a_mod_Mb_, b_mod_Ma_;
    u64 last_z_ = 0, cz_Ma_ = 1, cz_Mb_ = 1;
    struct Cursor {
        u64 exp = 0, value = 1;
    };
    Cursor cur_a_, cur_b_;

    void advance_to(u64 z);
    u64 a_pow_mod_Mb(u64 x);
    u64 b_pow_mod_Ma(u64 y);
    static u64 step_cursor(Cursor& cur, u64 base, u64 e, u64 mod);
    bool confirm(u64 x, u64 y, u64 z) const;
};

std::vector<Solution> window_scan(u64 a, u64 b, u64 c, u64 z2);

std::vector<DoubleReport> case_even(const Pair& p, u64 c_cap, SearchStats* stats = nullptr);
std::vector<DoubleReport> case_odd(const Pair& p, u64 c_cap, SearchStats* stats = nullptr,
                                   ClassCache& cache = default_class_cache());

// Runs the right driver for the pair and classifies against the registry.
PairReport verify_pair(u64 a, u64 b, u64 c_cap, ClassCache& cache = default_class_cache());

struct Range {
    u64 lo = 0, hi = 0;  // inclusive; lo > hi means empty
    bool empty() const { return lo > hi; }
};
std::optional<Range> parse_range(const std::string& s);

// Unordered admissible pairs {a, b} with one element in each range, as (min, max).
std::vector<std::pair<u64, u64>> admissible_pairs(Range ra, Range rb);

struct VerifySummary {
    u64 pairs = 0, ok = 0, exception = 0, violation = 0, covered_by_bebi = 0;
    SearchStats stats;
    std::vector<DoubleReport> exceptions;
    std::vector<PairReport> violations;
    void add(const PairReport& r);
};

// Sequential pre-pass: fill the class-exponent cache for every pair's P values.
void prewarm_class_cache(const std::vector<std::pair<u64, u64>>& pairs, ClassCache& cache);

using PairSink = std::function<void(const PairReport&)>;
VerifySummary verify_range(Range ra, Range rb, u64 c_cap, int threads, const PairSink& sink = {},
                           const std::function<bool(u64, u64)>& skip = {}, bool serial_reference = false,
                           ClassCache& cache = default_class_cache());

// ---- primitive Pythagorean triples ----
enum class JesStatus { HanYuan, Demjanenko, Lu, Terai, VerifiedByScan, Failed };
const char* to_string(JesStatus s);

struct JesReport {
    u64 f = 0, g = 0, a = 0, b = 0, c = 0;
    JesStatus status = JesStatus::Failed;
    std::vector<Solution> solutions;  // what the scan found (only populated by the scan path)
    u64 elapsed_ms = 0;
    std::string error;
};

JesReport jesmanowicz_check(u64 f, u64 g, ClassCache& cache = default_class_cache());
// Same, but always runs the z-set scan.
JesReport jesmanowicz_scan(u64 f, u64 g, ClassCache& cache = default_class_cache());

enum class JesMode { SmallF, ACase, BCase };
std::vector<std::pair<u64, u64>> jesmanowicz_tasks(JesMode mode, u64 cap);

struct JesSummary {
    u64 triples = 0, failures = 0;
    std::map<JesStatus, u64> by_status;
    std::vector<JesReport> failed;
    void add(const JesReport& r);
};

using JesSink = std::function<void(const JesReport&)>;
JesSummary jesmanowicz_range(JesMode mode, u64 cap, int threads, const JesSink& sink = {},
                             const std::function<bool(u64, u64)>& skip = {}, bool serial_reference = false,
                             ClassCache& cache = default_class_cache());

}  // namespace expdio
