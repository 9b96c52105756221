#pragma once
// Command-line front end: subcommand dispatch, JSON-lines reports, checkpoint/resume.
#include <cstdint>
#include <fstream>
#include <iosfwd>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "expdio/pillai.hpp"
#include "expdio/search.hpp"

namespace expdio::harness {

using json = nlohmann::ordered_json;

json to_json(const DoubleReport& d);
json to_json(const PairReport& r);
json to_json(const JesReport& r);
json to_json(const PillaiOutcome& o);
json to_json(const PillaiReport& r);

// Completed task keys, one "a,b" line each. A line that does not parse, including
// an unterminated last line, is reported on `warn` and treated as absent.
class Checkpoint {
public:
    Checkpoint() = default;  // disabled: nothing recorded, nothing skipped
    Checkpoint(std::string path, std::ostream& warn);

    bool enabled() const { return !path_.empty(); }
    bool contains(u64 a, u64 b) const { return done_.count({a, b}) != 0; }
    void mark(u64 a, u64 b);  // append and flush
    std::size_t size() const { return done_.size(); }

private:
    std::string path_;
    std::set<std::pair<u64, u64>> done_;
    std::ofstream out_;
    bool need_newline_ = false;
};

// Drops an unterminated trailing line from a report file and returns the task keys
// of the complete lines, read from fields `k1`, `k2`.
std::vector<std::pair<u64, u64>> repair_report(const std::string& path, const char* k1, const char* k2,
                                               std::ostream& warn);

// Path from the flag, else the environment variable, else empty.
std::string resolve_path(const std::string& flag, const char* env);

// Exit codes: 0 clean, 2 violation (or undecided/failed), 1 usage or I/O error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace expdio::harness
