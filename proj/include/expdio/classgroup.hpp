#pragma once
// Class group exponent of Q(sqrt(-P)) from reduced binary quadratic forms.
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

namespace expdio {

struct QuadForm {
    std::int64_t A = 1, B = 0, C = 1;
    bool operator==(const QuadForm&) const = default;
    std::int64_t discriminant() const { return B * B - 4 * A * C; }
};

bool is_squarefree(std::uint64_t n);

std::int64_t fundamental_discriminant(std::uint64_t P);

QuadForm reduce(QuadForm f);
bool is_reduced(const QuadForm& f);
QuadForm principal_form(std::int64_t D);
QuadForm inverse(const QuadForm& f);
QuadForm compose(const QuadForm& f, const QuadForm& g);
QuadForm power(QuadForm f, std::uint64_t n);
std::uint64_t form_order(const QuadForm& f, std::uint64_t multiple);

std::vector<QuadForm> reduced_forms(std::int64_t D);

std::uint64_t class_exponent(std::uint64_t P);

struct ClassRecord {
    std::uint64_t P = 0;
    std::uint64_t h = 0;
    bool operator==(const ClassRecord&) const = default;
};

class CacheError : public std::runtime_error {
public:
    CacheError(const std::string& msg, std::size_t line) : std::runtime_error(msg), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

std::vector<ClassRecord> load_cache(const std::string& path);
void store_cache(const std::string& path, const std::vector<ClassRecord>& records);

// Shared exponent table. Lookups take a shared lock; misses compute and insert
// under the exclusive lock; flush() is the single writer to disk.
class ClassCache {
public:
    ClassCache() = default;
    explicit ClassCache(std::string path);

    std::uint64_t exponent(std::uint64_t P);
    void warm(std::uint64_t bound);
    void flush();
    std::size_t size() const;
    std::vector<ClassRecord> records() const;

private:
    std::string path_;
    mutable std::shared_mutex mu_;
    std::map<std::uint64_t, std::uint64_t> table_;
    bool dirty_ = false;
};

// Process-wide cache used by the search drivers.
ClassCache& default_class_cache();

}  // namespace expdio
