#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "expdio/harness.hpp"

using namespace expdio;
using harness::json;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = harness::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> v;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);)
        if (!l.empty()) v.push_back(l);
    return v;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

void spit(const fs::path& p, const std::string& text) {
    std::ofstream(p, std::ios::binary | std::ios::trunc) << text;
}

// Report lines without timing, as a multiset.
std::multiset<std::string> content(const std::string& text) {
    std::multiset<std::string> m;
    for (const auto& l : lines_of(text)) {
        auto j = json::parse(l);
        j.erase("elapsed_ms");
        m.insert(j.dump());
    }
    return m;
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("expdio_test_" + std::to_string(std::rand()) + "_" +
                                            std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("zset prints the four parity classes") {
    auto r = cli({"zset", "--a", "6", "--b", "7", "--v-mode", "force0"});
    REQUIRE(r.code == 0);
    auto j = json::parse(lines_of(r.out).at(0));
    std::vector<std::vector<u64>> expect = {{1, 2, 4}, {1, 2}, {1, 2, 3, 6}, {1}};
    REQUIRE(j["classes"].size() == 4);
    for (std::size_t i = 0; i < 4; ++i) CHECK(j["classes"][i]["z"].get<std::vector<u64>>() == expect[i]);
    CHECK(j["union"].get<std::vector<u64>>() == std::vector<u64>{1, 2, 3, 4, 6});
}

TEST_CASE("exceptions listing") {
    auto r = cli({"exceptions", "--c-cap", "5"});
    REQUIRE(r.code == 0);
    bool found = false;
    for (const auto& l : lines_of(r.out)) {
        auto j = json::parse(l);
        if (j["a"] == 2 && j["b"] == 3 && j["c"] == 5) {
            found = true;
            CHECK(j["solutions"] == json::parse("[[1,1,1],[4,2,2]]"));
        }
    }
    CHECK(found);
    CHECK(cli({"exceptions", "--c-cap", "1"}).out.empty());
}

TEST_CASE("usage errors exit 1") {
    CHECK(cli({}).code == 1);
    CHECK(cli({"frobnicate"}).code == 1);
    CHECK(cli({"verify", "--a", "2..10"}).code == 1);
    CHECK(cli({"verify", "--a", "10..2", "--b", "2..10"}).code == 1);
    CHECK(cli({"verify", "--a", "x..10", "--b", "2..10"}).code == 1);
    CHECK(cli({"verify", "--a", "2..10", "--b", "2..10", "--c-cap", "1"}).code == 1);
    CHECK(cli({"verify", "--a", "2..10", "--b", "2..10", "--threads", "0"}).code == 1);
    CHECK(cli({"zset", "--a", "3", "--b", "5"}).code == 1);
    CHECK(cli({"jesmanowicz", "--f", "3"}).code == 1);
    CHECK(cli({"pillai", "--a", "4", "--b", "6"}).code == 1);
    unsetenv("EXPDIO_CACHE");
    CHECK(cli({"classgroup-warm", "--bound", "10"}).code == 1);
    auto help = cli({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("verify") != std::string::npos);
}

TEST_CASE("verify report format and exit code") {
    auto r = cli({"verify", "--a", "2..10", "--b", "2..10", "--c-cap", "1000"});
    REQUIRE(r.code == 0);
    auto lines = lines_of(r.out);
    CHECK(lines.size() == 10);
    auto j = json::parse(lines.front());
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"a", "b", "c_cap", "status", "doubles", "elapsed_ms"});
    CHECK(j["a"] == 2);
    CHECK(j["status"] == "exception");
    auto s = json::parse(lines_of(r.err).back())["summary"];
    CHECK(s["pairs"] == 10);
    CHECK(s["violation"] == 0);
}

TEST_CASE("checkpoint parsing") {
    TempDir td;
    auto p = td.path / "ck";
    std::ostringstream warn;
    {
        harness::Checkpoint ck((p).string(), warn);
        CHECK(ck.size() == 0);
        ck.mark(2, 3);
    }
    CHECK(slurp(p) == "2,3\n");
    spit(p, "2,3\n\nbogus\n5,\n-1,2\n7,10\n12,1");
    warn.str("");
    {
        harness::Checkpoint ck((p).string(), warn);
        CHECK(ck.contains(2, 3));
        CHECK(ck.contains(7, 10));
        CHECK_FALSE(ck.contains(12, 1));  // unterminated
        CHECK(ck.size() == 2);
        ck.mark(12, 13);
    }
    CHECK(warn.str().find("bogus") != std::string::npos);
    CHECK(warn.str().find("unterminated") != std::string::npos);
    CHECK(slurp(p) == "2,3\n\nbogus\n5,\n-1,2\n7,10\n12,1\n12,13\n");
}

TEST_CASE("verify resumes from a checkpoint") {
    TempDir td;
    const std::vector<std::string> base = {"verify", "--a", "2..24", "--b", "2..24", "--c-cap", "10000"};
    auto full = cli(base);
    REQUIRE(full.code == 0);
    auto all = lines_of(full.out);
    REQUIRE(all.size() > 20);

    SUBCASE("empty checkpoint runs everything") {
        auto rep = td.path / "r.jsonl", ck = td.path / "c.txt";
        spit(ck, "");
        auto args = base;
        args.insert(args.end(), {"--report", rep.string(), "--checkpoint", ck.string()});
        CHECK(cli(args).code == 0);
        CHECK(content(slurp(rep)) == content(full.out));
        CHECK(lines_of(slurp(ck)).size() == all.size());
    }

    SUBCASE("checkpointed pair is skipped") {
        auto ck = td.path / "c.txt";
        spit(ck, "2,3\n");
        auto args = base;
        args.insert(args.end(), {"--checkpoint", ck.string()});
        auto r = cli(args);
        CHECK(r.code == 0);
        CHECK(lines_of(r.out).size() == all.size() - 1);
        for (const auto& l : lines_of(r.out)) {
            auto j = json::parse(l);
            CHECK_FALSE((j["a"] == 2 && j["b"] == 3));
        }
    }

    SUBCASE("interrupted run resumes to the same report") {
        auto rep = td.path / "r.jsonl", ck = td.path / "c.txt";
        // crash after 7 report lines: the 7th reached the report but not the checkpoint,
        // and half of the 8th was written
        std::string partial;
        std::string ckpt;
        for (std::size_t i = 0; i < 7; ++i) {
            partial += all[i] + "\n";
            auto j = json::parse(all[i]);
            if (i < 6) ckpt += std::to_string(j["a"].get<u64>()) + "," + std::to_string(j["b"].get<u64>()) + "\n";
        }
        partial += all[7].substr(0, all[7].size() / 2);
        spit(rep, partial);
        spit(ck, ckpt + "garbage");
        auto args = base;
        args.insert(args.end(), {"--report", rep.string(), "--checkpoint", ck.string(), "--threads", "3"});
        auto r = cli(args);
        CHECK(r.code == 0);
        CHECK(json::parse(lines_of(r.err).back())["summary"]["pairs"] == all.size() - 7);
        CHECK(content(slurp(rep)) == content(full.out));

        // rerun after completion: nothing left to do
        auto again = cli(args);
        CHECK(again.code == 0);
        CHECK(json::parse(lines_of(again.err).back())["summary"]["pairs"] == 0);
        CHECK(content(slurp(rep)) == content(full.out));
    }
}

TEST_CASE("thread count does not change the report") {
    auto one = cli({"verify", "--a", "2..30", "--b", "2..30", "--c-cap", "10000", "--threads", "1"});
    auto four = cli({"verify", "--a", "2..30", "--b", "2..30", "--c-cap", "10000", "--threads", "4"});
    auto serial = cli({"verify", "--a", "2..30", "--b", "2..30", "--c-cap", "10000", "--serial"});
    CHECK(content(one.out) == content(four.out));
    CHECK(content(one.out) == content(serial.out));
}

TEST_CASE("environment supplies paths") {
    TempDir td;
    auto rep = td.path / "env.jsonl";
    setenv("EXPDIO_REPORT", rep.string().c_str(), 1);
    auto r = cli({"verify", "--a", "2..6", "--b", "2..6", "--c-cap", "100"});
    unsetenv("EXPDIO_REPORT");
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    CHECK(lines_of(slurp(rep)).size() == 4);
}

TEST_CASE("jesmanowicz subcommand with checkpoint") {
    TempDir td;
    auto full = cli({"jesmanowicz", "--mode", "small-f", "--cap", "12"});
    REQUIRE(full.code == 0);
    auto all = lines_of(full.out);
    std::size_t expect = 0;
    for (u64 f = 2; f <= 12; ++f)
        for (u64 g = 1; g < f; ++g)
            if (std::gcd(f, g) == 1 && (f - g) % 2 == 1) ++expect;
    CHECK(all.size() == expect);
    for (const auto& l : all) CHECK(json::parse(l)["status"] != "failed");

    auto rep = td.path / "j.jsonl", ck = td.path / "j.ck";
    spit(ck, "2,1\n4,1\n");
    auto r = cli({"jesmanowicz", "--mode", "small-f", "--cap", "12", "--checkpoint", ck.string(), "--report",
                  rep.string()});
    CHECK(r.code == 0);
    CHECK(lines_of(slurp(rep)).size() == all.size() - 2);
    CHECK(lines_of(slurp(ck)).size() == all.size());

    auto single = cli({"jesmanowicz", "--f", "2", "--g", "1", "--scan"});
    CHECK(json::parse(single.out)["solutions"] == json::parse("[[2,2,2]]"));
}

TEST_CASE("pillai subcommand") {
    auto r = cli({"pillai", "--a", "2..8", "--b", "2..8"});
    REQUIRE(r.code == 0);
    auto s = json::parse(lines_of(r.err).back())["summary"];
    CHECK(s["undecided"] == 0);
    std::set<std::pair<u64, u64>> expect;
    for (const auto& e : pillai_exceptions())
        if (e.a <= 8 && e.b <= 8) expect.insert({e.a, e.b});
    std::set<std::pair<u64, u64>> got;
    for (const auto& p : s["exception_pairs"]) got.insert({p[0].get<u64>(), p[1].get<u64>()});
    CHECK(got == expect);
    CHECK(s["pairs"] == pillai_pairs({2, 8}, {2, 8}).size());
    for (const auto& l : lines_of(r.out)) {
        auto j = json::parse(l);
        if (j["verdict"] == "at-most-one") CHECK_FALSE(j["runs"].empty());
    }

    auto stall = cli({"pillai", "--a", "2661", "--b", "20", "--x0", "1", "--y0", "1"});
    auto j = json::parse(stall.out);
    CHECK(j["verdict"] == "stalled");
    CHECK(j["dy"] == "886");

    // no escalation room: the stalled pair stays undecided
    auto und = cli({"pillai", "--a", "2661", "--b", "20", "--escalation", "1"});
    CHECK(und.code == 2);
    CHECK(json::parse(lines_of(und.out).at(0))["verdict"] == "undecided");
}

TEST_CASE("classgroup-warm writes the cache") {
    TempDir td;
    auto cache = td.path / "h.txt";
    auto r = cli({"classgroup-warm", "--bound", "50", "--cache", cache.string()});
    REQUIRE(r.code == 0);
    auto lines = lines_of(slurp(cache));
    CHECK(lines.size() == 31);  // squarefree P <= 50
    CHECK(lines.front() == "1,1");
    CHECK(std::find(lines.begin(), lines.end(), "14,4") != lines.end());
}

TEST_CASE("bound subcommand") {
    auto r = cli({"bound", "--a", "3600", "--b", "3600"});
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["x2_cap"].get<u64>() <= 1194836);
    CHECK(j["z_bound"].is_null());
}
