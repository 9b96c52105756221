#pragma once
// Candidate z values for a^x + b^y = c^z with c odd, per parity class of (x, y).
#include <cstdint>
#include <vector>

#include "expdio/classgroup.hpp"

namespace expdio {

struct ParityClass {
    bool x_odd = false;
    bool y_odd = false;
    bool operator==(const ParityClass&) const = default;
};

inline constexpr ParityClass kParityClasses[4] = {{false, false}, {false, true}, {true, false}, {true, true}};

struct PQSplit {
    std::uint64_t P = 1;
    std::uint64_t Q = 1;
    std::vector<std::uint64_t> q_list;
};

enum class VMode { Auto, Force0 };

using ZSet = std::vector<std::uint64_t>;  // ascending

PQSplit pq_split(std::uint64_t a, std::uint64_t b, ParityClass pc);
int u_flag(std::uint64_t P);
bool v_family_check(std::uint64_t a, std::uint64_t b, ParityClass pc, unsigned N_cap = 99);
ZSet z_set(std::uint64_t a, std::uint64_t b, ParityClass pc, VMode mode = VMode::Auto,
           ClassCache& cache = default_class_cache());
ZSet z_set_union(std::uint64_t a, std::uint64_t b, ClassCache& cache = default_class_cache());
bool z_support_is_23(std::uint64_t a, std::uint64_t b, ClassCache& cache = default_class_cache());

std::vector<std::uint64_t> divisors(std::uint64_t n);

}  // namespace expdio
