#include "expdio/harness.hpp"

#include <omp.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "expdio/bounds.hpp"
#include "expdio/classgroup.hpp"
#include "expdio/zcand.hpp"

namespace expdio::harness {

namespace {

std::string str(const Int& v) { return v.get_str(); }

json solutions_json(const std::vector<Solution>& sols) {
    json arr = json::array();
    for (const auto& s : sols) arr.push_back({s.x, s.y, s.z});
    return arr;
}

bool parse_key(const std::string& line, u64& a, u64& b) {
    auto comma = line.find(',');
    if (comma == std::string::npos) return false;
    auto num = [](const std::string& t, u64& out) {
        if (t.empty() || t.size() > 19 || t.find_first_not_of("0123456789") != std::string::npos) return false;
        out = std::stoull(t);
        return true;
    };
    return num(line.substr(0, comma), a) && num(line.substr(comma + 1), b);
}

u64 ms_since(std::chrono::steady_clock::time_point t0) {
    return static_cast<u64>(
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count());
}

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Range need_range(const std::string& s, const char* flag) {
    auto r = parse_range(s);
    if (!r || r->empty()) throw UsageError(std::string("invalid range for ") + flag + ": '" + s + "'");
    return *r;
}

// Report sink plus checkpoint; the only place that writes either file.
class Channel {
public:
    Channel(const std::string& report, const std::string& checkpoint, const char* k1, const char* k2,
            std::ostream& out, std::ostream& err)
        : out_(&out) {
        if (!checkpoint.empty()) ckpt_ = Checkpoint(checkpoint, err);
        if (!report.empty() && report != "-") {
            if (ckpt_.enabled()) {
                // a report line written just before an interruption is complete work
                for (auto [a, b] : repair_report(report, k1, k2, err))
                    if (!ckpt_.contains(a, b)) ckpt_.mark(a, b);
            }
            file_ = std::make_unique<std::ofstream>(
                report, ckpt_.enabled() ? std::ios::app : std::ios::out | std::ios::trunc);
            if (!*file_) throw std::runtime_error("cannot open report file: " + report);
            out_ = file_.get();
        }
    }

    bool skip(u64 a, u64 b) const { return ckpt_.contains(a, b); }

    void emit(const json& j, u64 a, u64 b) {
        *out_ << j.dump() << '\n';
        out_->flush();
        if (!*out_) throw std::runtime_error("report write failed");
        if (ckpt_.enabled()) ckpt_.mark(a, b);
    }

private:
    std::ostream* out_;
    std::unique_ptr<std::ofstream> file_;
    Checkpoint ckpt_;
};

struct Common {
    int threads = omp_get_max_threads();
    std::string report, checkpoint, cache;
    bool serial = false;
};

void add_common(CLI::App* sub, Common& c, bool with_cache) {
    sub->add_option("--threads", c.threads, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--report", c.report, "JSON-lines report path ('-' for stdout)");
    sub->add_option("--checkpoint", c.checkpoint, "checkpoint path; completed tasks are skipped on rerun");
    sub->add_flag("--serial", c.serial, "use the serial reference driver");
    if (with_cache) sub->add_option("--cache", c.cache, "class-exponent cache file");
}

void resolve_common(Common& c) {
    c.report = resolve_path(c.report, "EXPDIO_REPORT");
    c.checkpoint = resolve_path(c.checkpoint, "EXPDIO_CHECKPOINT");
    c.cache = resolve_path(c.cache, "EXPDIO_CACHE");
}

int cmd_verify(const std::string& ra, const std::string& rb, u64 c_cap, Common& c, std::ostream& out,
               std::ostream& err) {
    if (c_cap < 2) throw UsageError("--c-cap must be >= 2");
    const auto A = need_range(ra, "--a"), B = need_range(rb, "--b");
    ClassCache cache(c.cache);
    Channel ch(c.report, c.checkpoint, "a", "b", out, err);
    auto t0 = std::chrono::steady_clock::now();
    auto summary = verify_range(
        A, B, c_cap, c.threads, [&](const PairReport& r) { ch.emit(to_json(r), r.a, r.b); },
        [&](u64 a, u64 b) { return ch.skip(a, b); }, c.serial, cache);
    cache.flush();
    json s = {{"pairs", summary.pairs},       {"ok", summary.ok},
              {"exception", summary.exception}, {"violation", summary.violation},
              {"covered_by_bebi", summary.covered_by_bebi}, {"elapsed_ms", ms_since(t0)}};
    err << json{{"summary", s}}.dump() << '\n';
    return summary.violation ? 2 : 0;
}

int cmd_zset(u64 a, u64 b, const std::string& vmode, Common& c, std::ostream& out) {
    VMode mode = vmode == "force0" ? VMode::Force0 : VMode::Auto;
    ClassCache cache(c.cache);
    json classes = json::array();
    std::set<u64> uni;
    for (auto pc : kParityClasses) {
        auto split = pq_split(a, b, pc);
        auto z = z_set(a, b, pc, mode, cache);
        uni.insert(z.begin(), z.end());
        classes.push_back({{"x", pc.x_odd ? "odd" : "even"},
                           {"y", pc.y_odd ? "odd" : "even"},
                           {"P", split.P},
                           {"Q", split.Q},
                           {"z", z}});
    }
    cache.flush();
    out << json{{"a", a}, {"b", b}, {"v_mode", vmode}, {"classes", classes}, {"union", uni}}.dump() << '\n';
    return 0;
}

int cmd_bound(u64 a, u64 b, std::optional<u64> c, u64 c_cap, std::ostream& out) {
    if (c_cap < 2) throw UsageError("--c-cap must be >= 2");
    json j = {{"a", a}, {"b", b}, {"c_cap", c_cap}};
    auto attempt = [&](const char* key, auto&& f) {
        try {
            j[key] = f();
        } catch (const std::exception&) {
            j[key] = nullptr;
        }
    };
    attempt("alpha", [&] { return alpha_of(a, b); });
    attempt("z_bound", [&] { return mp_z_bound(a, b, c_cap, BetaMode::Conservative); });
    if (c) attempt("z_bound_exact", [&] { return mp_z_bound(a, b, *c, BetaMode::Exact); });
    attempt("z1_cap", [&] {
        double M2 = std::floor(mp_z_bound(a, b, c_cap, BetaMode::Conservative) * kInflate);
        return z1_cap(a, b, double(c_cap), std::max(1.0, M2), alpha_of(a, b), 1);
    });
    attempt("x2_cap", [&] { return x2_cap(a, b); });
    attempt("pillai_B", [&] { return std::min(x2_cap(a, b), kPillaiRangeBound); });
    attempt("pillai_floors", [&] {
        auto [X, Y] = initial_bounds(a, b);
        return json{X, Y};
    });
    attempt("prop1_S", [&] { return prop1_S(a, b); });
    out << j.dump() << '\n';
    return 0;
}

int cmd_jesmanowicz(const std::string& mode, u64 cap, std::optional<u64> f, std::optional<u64> g, bool scan,
                    Common& c, std::ostream& out, std::ostream& err) {
    ClassCache cache(c.cache);
    if (f || g) {
        if (!f || !g) throw UsageError("--f and --g go together");
        auto r = scan ? jesmanowicz_scan(*f, *g, cache) : jesmanowicz_check(*f, *g, cache);
        cache.flush();
        out << to_json(r).dump() << '\n';
        return r.status == JesStatus::Failed ? 2 : 0;
    }
    JesMode m;
    if (mode == "small-f")
        m = JesMode::SmallF;
    else if (mode == "a-case")
        m = JesMode::ACase;
    else if (mode == "b-case")
        m = JesMode::BCase;
    else
        throw UsageError("--mode must be small-f, a-case or b-case");
    if (cap < 2) throw UsageError("--cap must be >= 2");
    Channel ch(c.report, c.checkpoint, "f", "g", out, err);
    auto t0 = std::chrono::steady_clock::now();
    auto summary = jesmanowicz_range(
        m, cap, c.threads, [&](const JesReport& r) { ch.emit(to_json(r), r.f, r.g); },
        [&](u64 ff, u64 gg) { return ch.skip(ff, gg); }, c.serial, cache);
    cache.flush();
    json by = json::object();
    for (auto [s, n] : summary.by_status) by[to_string(s)] = n;
    err << json{{"summary",
                 {{"triples", summary.triples}, {"failures", summary.failures}, {"by_status", by},
                  {"elapsed_ms", ms_since(t0)}}}}
               .dump()
        << '\n';
    return summary.failures ? 2 : 0;
}

struct PillaiFlags {
    std::string a, b;
    std::optional<u64> B, x0, y0;
    unsigned escalation = 4;
    unsigned effort = 1;
    std::vector<std::string> hints;
    bool hints_only = false, odd_floors = false;
};

int cmd_pillai(PillaiFlags& p, Common& c, std::ostream& out, std::ostream& err) {
    if (p.escalation < 1) throw UsageError("--escalation must be >= 1");
    if (p.effort < 1) throw UsageError("--effort must be >= 1");
    PillaiOptions opts;
    opts.B = p.B;
    opts.escalation = p.escalation;
    auto& e = opts.effort;
    e.factor.trial_bound *= p.effort;
    e.factor.rho_iterations *= p.effort;
    e.scan_multipliers *= p.effort;
    e.max_divisors *= p.effort;
    e.odd_prime_floors = p.odd_floors;
    e.hints_only = p.hints_only;
    for (const auto& h : p.hints) {
        Int v;
        if (h.empty() || h.find_first_not_of("0123456789") != std::string::npos || v.set_str(h, 10) != 0)
            throw UsageError("--hint must be a decimal integer: '" + h + "'");
        e.hints.push_back(v);
    }
    const auto A = need_range(p.a, "--a"), Bq = need_range(p.b, "--b");

    if (p.x0 || p.y0) {
        // single bootstrap from a chosen corner
        if (A.lo != A.hi || Bq.lo != Bq.hi) throw UsageError("--x0/--y0 need a single pair");
        u64 a = A.lo, b = Bq.lo;
        if (a < 2 || b < 2 || std::gcd(a, b) != 1) throw UsageError("coprime a, b >= 2 required");
        auto [X1, Y1] = initial_bounds(a, b);
        u64 X0 = p.x0.value_or(X1), Y0 = p.y0.value_or(Y1);
        u64 B = p.B ? *p.B : std::min(x2_cap(a, b), kPillaiRangeBound);
        auto o = bootstrap(a, b, B, X0, Y0, e);
        json j = to_json(o);
        j["a"] = a;
        j["b"] = b;
        out << j.dump() << '\n';
        return 0;
    }

    if (pillai_pairs(A, Bq).empty()) throw UsageError("no coprime pairs in the given ranges");
    Channel ch(c.report, c.checkpoint, "a", "b", out, err);
    auto t0 = std::chrono::steady_clock::now();
    auto summary = pillai_range(
        A, Bq, opts, c.threads, [&](const PillaiReport& r) { ch.emit(to_json(r), r.a, r.b); },
        [&](u64 a, u64 b) { return ch.skip(a, b); }, c.serial);
    json ex = json::array(), un = json::array();
    for (auto [a, b] : summary.exception_pairs) ex.push_back({a, b});
    for (auto [a, b] : summary.undecided_pairs) un.push_back({a, b});
    err << json{{"summary",
                 {{"pairs", summary.pairs}, {"at_most_one", summary.at_most_one},
                  {"known_exception", summary.known_exception}, {"undecided", summary.undecided},
                  {"exception_pairs", ex}, {"undecided_pairs", un}, {"elapsed_ms", ms_since(t0)}}}}
               .dump()
        << '\n';
    return summary.undecided ? 2 : 0;
}

int cmd_warm(u64 bound, Common& c, std::ostream& out) {
    if (c.cache.empty()) throw UsageError("classgroup-warm needs --cache or EXPDIO_CACHE");
    auto t0 = std::chrono::steady_clock::now();
    ClassCache cache(c.cache);
    cache.warm(bound);
    cache.flush();
    out << json{{"bound", bound}, {"records", cache.size()}, {"cache", c.cache}, {"elapsed_ms", ms_since(t0)}}
               .dump()
        << '\n';
    return 0;
}

int cmd_exceptions(u64 c_cap, std::ostream& out) {
    for (const auto& d : known_exceptions(c_cap)) out << to_json(d).dump() << '\n';
    return 0;
}

}  // namespace

json to_json(const DoubleReport& d) {
    return {{"a", d.a}, {"b", d.b}, {"c", d.c}, {"solutions", solutions_json(d.solutions)}};
}

json to_json(const PairReport& r) {
    json doubles = json::array();
    for (const auto& d : r.doubles) doubles.push_back({{"c", d.c}, {"solutions", solutions_json(d.solutions)}});
    json j = {{"a", r.a},           {"b", r.b},       {"c_cap", r.c_cap}, {"status", to_string(r.status)},
              {"doubles", doubles}, {"elapsed_ms", r.elapsed_ms}};
    if (!r.error.empty()) j["error"] = r.error;
    return j;
}

json to_json(const JesReport& r) {
    json j = {{"f", r.f}, {"g", r.g}, {"a", r.a}, {"b", r.b}, {"c", r.c}, {"status", to_string(r.status)}};
    if (!r.solutions.empty()) j["solutions"] = solutions_json(r.solutions);
    j["elapsed_ms"] = r.elapsed_ms;
    if (!r.error.empty()) j["error"] = r.error;
    return j;
}

json to_json(const PillaiOutcome& o) {
    json trace = json::array();
    for (const auto& s : o.state.trace) {
        json mod = json::array();
        for (const auto& pp : s.modulus) mod.push_back({str(pp.prime), pp.exponent});
        trace.push_back({{"side", std::string(1, s.side)},
                         {"modulus", mod},
                         {"exponent", str(s.exponent)},
                         {"order", str(s.order)},
                         {"floor_x", s.floor_x},
                         {"floor_y", s.floor_y}});
    }
    return {{"X0", o.X0},
            {"Y0", o.Y0},
            {"B", o.B},
            {"verdict", o.verdict == BootstrapVerdict::Proved ? "proved" : "stalled"},
            {"dx", str(o.state.dx)},
            {"dy", str(o.state.dy)},
            {"X", o.state.X},
            {"Y", o.state.Y},
            {"trace", trace},
            {"notes", o.state.notes}};
}

json to_json(const PillaiReport& r) {
    json runs = json::array();
    for (const auto& o : r.runs) {
        runs.push_back(to_json(o));
    }
    json cells = json::array();
    for (auto [x, y] : r.fallback_cells) cells.push_back({x, y});
    json j = {{"a", r.a},
              {"b", r.b},
              {"B", r.B},
              {"verdict", to_string(r.verdict)},
              {"exception_r", r.exception_r},
              {"corner", {r.corner.first, r.corner.second}},
              {"fallback_cells", cells},
              {"runs", runs},
              {"elapsed_ms", r.elapsed_ms}};
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

Checkpoint::Checkpoint(std::string path, std::ostream& warn) : path_(std::move(path)) {
    std::ifstream in(path_, std::ios::binary);
    if (in) {
        std::stringstream buf;
        buf << in.rdbuf();
        const std::string text = buf.str();
        std::size_t pos = 0, lineno = 0;
        while (pos < text.size()) {
            auto nl = text.find('\n', pos);
            ++lineno;
            if (nl == std::string::npos) {
                warn << "checkpoint " << path_ << ":" << lineno << ": unterminated line ignored\n";
                need_newline_ = true;
                break;
            }
            std::string line = text.substr(pos, nl - pos);
            pos = nl + 1;
            if (line.empty()) continue;
            u64 a = 0, b = 0;
            if (parse_key(line, a, b))
                done_.insert({a, b});
            else
                warn << "checkpoint " << path_ << ":" << lineno << ": corrupt line ignored: '" << line << "'\n";
        }
    }
    out_.open(path_, std::ios::app | std::ios::binary);
    if (!out_) throw std::runtime_error("cannot open checkpoint file: " + path_);
}

void Checkpoint::mark(u64 a, u64 b) {
    if (need_newline_) {
        out_ << '\n';
        need_newline_ = false;
    }
    out_ << a << ',' << b << '\n';
    out_.flush();
    if (!out_) throw std::runtime_error("checkpoint write failed: " + path_);
    done_.insert({a, b});
}

std::vector<std::pair<u64, u64>> repair_report(const std::string& path, const char* k1, const char* k2,
                                               std::ostream& warn) {
    std::vector<std::pair<u64, u64>> keys;
    std::ifstream in(path, std::ios::binary);
    if (!in) return keys;
    std::stringstream buf;
    buf << in.rdbuf();
    in.close();
    std::string text = buf.str();
    std::size_t pos = 0, keep = 0, lineno = 0;
    while (pos < text.size()) {
        auto nl = text.find('\n', pos);
        ++lineno;
        if (nl == std::string::npos) break;
        std::string line = text.substr(pos, nl - pos);
        pos = nl + 1;
        keep = pos;
        if (line.empty()) continue;
        try {
            auto j = json::parse(line);
            keys.emplace_back(j.at(k1).get<u64>(), j.at(k2).get<u64>());
        } catch (const std::exception&) {
            warn << "report " << path << ":" << lineno << ": unreadable line ignored\n";
        }
    }
    if (keep < text.size()) {
        warn << "report " << path << ": dropping unterminated last line\n";
        std::filesystem::resize_file(path, keep);
    }
    return keys;
}

std::string resolve_path(const std::string& flag, const char* env) {
    if (!flag.empty()) return flag;
    if (const char* v = std::getenv(env)) return v;
    return {};
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exponential Diophantine search and verification tool", "expdio"};
    app.require_subcommand(1);

    Common common;
    std::string ra, rb, vmode = "auto", jmode = "small-f";
    u64 c_cap = 10'000'000'000ULL, cap = 60, bound = 100'000, a = 0, b = 0;
    std::optional<u64> c_opt, f_opt, g_opt;
    bool scan = false;
    PillaiFlags pf;

    auto* verify = app.add_subcommand("verify", "search a pair range for double solutions");
    verify->add_option("--a", ra, "range lo..hi")->required();
    verify->add_option("--b", rb, "range lo..hi")->required();
    verify->add_option("--c-cap", c_cap, "largest c considered");
    add_common(verify, common, true);

    auto* zset = app.add_subcommand("zset", "candidate z values per parity class");
    zset->add_option("--a", a)->required();
    zset->add_option("--b", b)->required();
    zset->add_option("--v-mode", vmode)->check(CLI::IsMember({"auto", "force0"}));
    zset->add_option("--cache", common.cache);

    auto* bnd = app.add_subcommand("bound", "print the exponent bounds for a pair");
    bnd->add_option("--a", a)->required();
    bnd->add_option("--b", b)->required();
    bnd->add_option("--c", c_opt, "exact even c for the sharper z bound");
    bnd->add_option("--c-cap", c_cap);

    auto* jes = app.add_subcommand("jesmanowicz", "primitive Pythagorean triple check");
    jes->add_option("--mode", jmode)->check(CLI::IsMember({"small-f", "a-case", "b-case"}));
    jes->add_option("--cap", cap);
    jes->add_option("--f", f_opt);
    jes->add_option("--g", g_opt);
    jes->add_flag("--scan", scan, "force the z-set scan for a single (f, g)");
    add_common(jes, common, true);

    auto* pil = app.add_subcommand("pillai", "at-most-one proofs for a^x - b^y = r");
    pil->add_option("--a", pf.a, "value or range lo..hi")->required();
    pil->add_option("--b", pf.b, "value or range lo..hi")->required();
    pil->add_option("--B", pf.B, "override the x2 bound");
    pil->add_option("--escalation", pf.escalation, "side of the (X0, Y0) escalation rectangle");
    pil->add_option("--effort", pf.effort, "factoring budget multiplier");
    pil->add_option("--hint", pf.hints, "known prime factor to try first");
    pil->add_flag("--hints-only", pf.hints_only);
    pil->add_flag("--odd-floors", pf.odd_floors, "raise floors from odd-prime valuations");
    pil->add_option("--x0", pf.x0, "run one bootstrap from this x floor");
    pil->add_option("--y0", pf.y0, "run one bootstrap from this y floor");
    add_common(pil, common, false);

    auto* warm = app.add_subcommand("classgroup-warm", "precompute class exponents into the cache");
    warm->add_option("--bound", bound);
    warm->add_option("--cache", common.cache);

    auto* exc = app.add_subcommand("exceptions", "list the registered double solutions");
    exc->add_option("--c-cap", c_cap);

    std::vector<std::string> argv_store;
    argv_store.push_back("expdio");
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_store) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        resolve_common(common);
        if (*verify) return cmd_verify(ra, rb, c_cap, common, out, err);
        if (*zset) return cmd_zset(a, b, vmode, common, out);
        if (*bnd) return cmd_bound(a, b, c_opt, c_cap, out);
        if (*jes) return cmd_jesmanowicz(jmode, cap, f_opt, g_opt, scan, common, out, err);
        if (*pil) return cmd_pillai(pf, common, out, err);
        if (*warm) return cmd_warm(bound, common, out);
        if (*exc) return cmd_exceptions(c_cap, out);
    } catch (const std::exception& e) {
        err << "expdio: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

}  // namespace expdio::harness
