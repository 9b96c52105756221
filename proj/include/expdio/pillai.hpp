#pragma once
// At-most-one-solution proofs for a^x - b^y = r via multiplicative-order bootstrapping.
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "expdio/arith.hpp"
#include "expdio/factor.hpp"
#include "expdio/search.hpp"

namespace expdio {

using u64 = std::uint64_t;

// Proven bound on x2 for pairs up to 3600.
inline constexpr u64 kPillaiRangeBound = 1194836;

double prop1_S(u64 a, u64 b);
// Property probe: S < a log b / (2 log a). Throws outside a > 2, (a, b) != (3, 2), gcd = 1.
bool prop2_bound_holds(u64 a, u64 b);

// log r > 2 a log a log b, evaluated in log space.
bool lemma6_applies_log(u64 a, u64 b, long double log_r);
bool lemma6_applies(u64 a, u64 b, const Int& r);

// Least integer cap with x2 <= cap for any solution of the linear-forms inequality.
u64 x2_cap(u64 a, u64 b);

// Floors (X1, Y1) for x1 and y1 assuming r >= 101.
std::pair<u64, u64> initial_bounds(u64 a, u64 b);

struct PillaiEffort {
    FactorEffort factor{100'000, 1u << 16, 2048, {}};
    unsigned full_bits = 320;        // cyclotomic values up to this size get a full partial factorization
    unsigned medium_bits = 2048;     // up to this size they are built and given a rho budget
    u64 scan_multipliers = 20000;    // primes k*d + 1 with k below this are tried for every d
    unsigned max_divisors = 256;     // divisors of an exponent examined per round
    unsigned max_rounds = 64;
    bool odd_prime_floors = false;   // raise X, Y from odd-prime valuations as well as 2
    bool hints_only = false;         // use only hinted primes as new factors
    std::vector<Int> hints;
};

struct TraceStep {
    char side = 'x';             // 'x': new divisor of x2 - x1 from factors of b^dy - 1; 'y': the mirror
    Factorization modulus;       // full modulus whose order was taken, including the base power
    Int exponent;                // the proved divisor the factors came from (dy for side x)
    Int order;                   // order of the other base modulo `modulus`
    u64 floor_x = 0, floor_y = 0;  // floors in force for this step
};

struct BootstrapState {
    Int dx = 1, dy = 1;
    u64 X = 1, Y = 1;
    std::vector<TraceStep> trace;
    std::vector<std::string> notes;  // floor refinements and similar
};

enum class BootstrapVerdict { Proved, Stalled };

struct PillaiOutcome {
    BootstrapVerdict verdict = BootstrapVerdict::Stalled;
    BootstrapState state;
    u64 B = 0;
    u64 X0 = 0, Y0 = 0;  // starting floors
};

// Memo of prime factors found in cyclotomic pieces, keyed by (base, d).
struct FactorMemo {
    std::map<std::pair<u64, Int>, std::vector<Int>> primes;
};

PillaiOutcome bootstrap(u64 a, u64 b, u64 B, u64 X0, u64 Y0, const PillaiEffort& effort = {},
                        FactorMemo* memo = nullptr);

// Recomputes every step of a trace; returns the final (dx, dy) or throws on an unsound step.
std::pair<Int, Int> replay_trace(u64 a, u64 b, const std::vector<TraceStep>& trace);

// true when no x2 in (x1, B] gives an integral y2 for the fixed (x1, y1).
bool exhaustive_fallback(u64 a, u64 b, u64 x1, u64 y1, u64 B, std::vector<std::pair<u64, u64>>* found = nullptr);

struct KnownPillai {
    u64 a, b, r;
    std::pair<u64, u64> s1, s2;
};
const std::vector<KnownPillai>& pillai_exceptions();

enum class PillaiVerdict { AtMostOne, KnownException, Undecided };
const char* to_string(PillaiVerdict v);

struct PillaiReport {
    u64 a = 0, b = 0, B = 0;
    PillaiVerdict verdict = PillaiVerdict::Undecided;
    std::vector<u64> exception_r;
    std::vector<PillaiOutcome> runs;  // every bootstrap attempted, in order
    std::pair<u64, u64> corner{0, 0};  // (X0, Y0) of the escalation, or (0, 0) when not needed
    std::vector<std::pair<u64, u64>> fallback_cells;
    u64 elapsed_ms = 0;
    std::string note;
};

struct PillaiOptions {
    PillaiEffort effort;
    std::optional<u64> B;       // override of min(x2_cap, range bound)
    unsigned escalation = 4;    // rectangle side for (X0, Y0) escalation
};

PillaiReport pillai_pair_verify(u64 a, u64 b, const PillaiOptions& opts = {});

// Ordered coprime pairs (a, b), a from ra and b from rb, both >= 2.
std::vector<std::pair<u64, u64>> pillai_pairs(Range ra, Range rb);

struct PillaiSummary {
    u64 pairs = 0, at_most_one = 0, known_exception = 0, undecided = 0;
    std::vector<std::pair<u64, u64>> exception_pairs, undecided_pairs;  // ascending
    void add(const PillaiReport& r);
};

using PillaiSink = std::function<void(const PillaiReport&)>;
PillaiSummary pillai_range(Range ra, Range rb, const PillaiOptions& opts, int threads, const PillaiSink& sink = {},
                           const std::function<bool(u64, u64)>& skip = {}, bool serial_reference = false);

}  // namespace expdio
