// wildcurve: command-line front end for the partition-function and BPS engine.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "wildcurve/cache.hpp"
#include "wildcurve/io.hpp"
#include "wildcurve/selftest.hpp"

using namespace wildcurve;

namespace {

constexpr int exit_usage = 2;
constexpr int exit_failure = 1;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string pipeline = "refined";
    int g = 0;
    std::vector<int> n, ell;
    std::vector<std::string> mu_text;
    int rmax = 0;
    std::string cache_dir, out;
    int threads = 1;
    std::string sizes = "default";
    std::string golden;
    bool inject_fault = false;
    bool swap_qt = false;
};

// "[[2,1],[2,1]]" or "[2,1];[2,1]"
PartitionTuple parse_target(const std::string& s) {
    std::string t = s;
    t.erase(std::remove_if(t.begin(), t.end(), ::isspace), t.end());
    if (t.rfind("[[", 0) == 0 || t == "[]") {
        json j;
        try {
            j = json::parse(t);
        } catch (const std::exception&) {
            throw UsageError("cannot parse partition tuple '" + s + "'");
        }
        PartitionTuple out;
        for (auto& p : j) {
            auto parts = p.get<std::vector<int>>();
            for (int x : parts)
                if (x <= 0) throw UsageError("partition parts must be positive in '" + s + "'");
            out.emplace_back(parts);
        }
        return out;
    }
    PartitionTuple out;
    for (auto& p : split(t, ';')) {
        try {
            out.push_back(Partition::parse(p));
        } catch (const std::exception& e) {
            throw UsageError("cannot parse partition '" + p + "': " + e.what());
        }
    }
    return out;
}

WildCurveData curve(const Options& o, int min_n) {
    if (o.n.empty()) throw UsageError("--n is required");
    WildCurveData d{o.g, o.n, o.ell};
    try {
        d.validate(min_n);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return d;
}

// config echoed into every document; thread count and cache location do not affect results and are left out
json config_json(const std::string& cmd, const Options& o) {
    json c{{"command", cmd}, {"g", o.g}, {"n", o.n}, {"l", o.ell}};
    if (cmd != "selftest") c["pipeline"] = o.pipeline;
    if (o.rmax) c["rmax"] = o.rmax;
    if (!o.mu_text.empty()) {
        json t = json::array();
        for (auto& m : o.mu_text) t.push_back(tuple_json(parse_target(m)));
        c["mu"] = t;
    }
    if (o.swap_qt) c["swap_qt"] = true;
    if (o.inject_fault) c["inject_fault"] = true;
    if (cmd == "selftest") c["sizes"] = o.sizes;
    return c;
}

void emit(const json& doc, const Options& o) {
    std::string text = doc.dump(2) + "\n";
    if (o.out.empty() || o.out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out);
    if (!f) throw std::runtime_error("cannot write " + o.out);
    f << text;
}

std::vector<PartitionTuple> targets(const Options& o) {
    if (o.mu_text.empty()) throw UsageError("--mu is required");
    std::vector<PartitionTuple> ts;
    for (auto& m : o.mu_text) {
        auto t = parse_target(m);
        if (t.size() != o.n.size()) throw UsageError("target " + tuple_str(t) + " needs one partition per marked point");
        int r = t[0].size();
        for (auto& p : t)
            if (p.size() != r || r == 0) throw UsageError("target " + tuple_str(t) + " must have partitions of one positive size");
        ts.push_back(t);
    }
    return ts;
}

// ell defaults to the longest target partition per group
void default_ell(Options& o, const std::vector<PartitionTuple>& ts) {
    if (!o.ell.empty()) {
        if (o.ell.size() != o.n.size()) throw UsageError("--l must have one entry per marked point");
        for (auto& t : ts)
            for (size_t a = 0; a < t.size(); ++a)
                if (t[a].length() > o.ell[a])
                    throw UsageError("--l entry " + std::to_string(o.ell[a]) + " is shorter than " + t[a].str());
        return;
    }
    o.ell.assign(o.n.size(), 1);
    for (auto& t : ts)
        for (size_t a = 0; a < t.size(); ++a) o.ell[a] = std::max(o.ell[a], t[a].length());
}

int max_r(const std::vector<PartitionTuple>& ts) {
    int r = 0;
    for (auto& t : ts) r = std::max(r, t[0].size());
    return r;
}

int cmd_compute_z(Options& o) {
    if (o.rmax < 1) throw UsageError("--rmax must be >= 1");
    if (o.ell.empty()) o.ell.assign(o.n.size(), o.rmax);
    if (o.ell.size() != o.n.size()) throw UsageError("--l must have one entry per marked point");
    XSeries Z;
    if (o.pipeline == "gw") {
        auto d = curve(o, 2);
        if (!d.equal_n()) throw UsageError("the gw pipeline requires n_1 = ... = n_m; use --pipeline refined");
        Z = z_gw(d, o.rmax);
    } else if (o.pipeline == "refined") {
        Z = z_pt_refined(curve(o, 1), o.rmax, nullptr, o.threads);
    } else if (o.pipeline == "hmw") {
        auto d = curve(o, 1);
        Z = hmw_z(d.g, d.m(), d.n_total(), o.rmax, d.ell, nullptr, o.swap_qt);
    } else {
        throw UsageError("compute-z: --pipeline must be gw, refined or hmw");
    }
    emit({{"engine", engine_version}, {"config", config_json("compute-z", o)}, {"series", xseries_json(Z)}}, o);
    return 0;
}

json bps_document(const BpsPolynomial& P, const Options& o) {
    json j = bps_json(P);
    auto checks = structural_checks(P);
    int failed = 0;
    for (auto& c : checks) failed += !c.pass;
    j["checks"] = checks_json(checks);
    j["checks_failed"] = failed;
    if (!o.golden.empty()) {
        auto cmp = compare_golden(P, load_golden(o.golden));
        j["golden"] = {{"file", o.golden}, {"equal", cmp.equal}, {"golden_terms", cmp.golden_terms},
                       {"computed_terms", cmp.computed_terms}, {"mismatches", cmp.mismatches}};
        if (!cmp.equal) j["golden"]["first_mismatch"] = cmp.first_mismatch;
    }
    return j;
}

int cmd_extract_bps(Options& o) {
    auto ts = targets(o);
    default_ell(o, ts);
    int r = max_r(ts);
    if (o.rmax == 0) o.rmax = r;
    if (o.rmax < r) throw UsageError("--rmax is smaller than the target degree");
    json docs = json::array();
    if (o.pipeline == "refined") {
        auto Ps = gv_extract_many(RefinedContext{curve(o, 1), o.rmax, o.threads}, ts);
        for (auto& P : Ps) docs.push_back(bps_document(P, o));
    } else if (o.pipeline == "hmw") {
        auto d = curve(o, 1);
        for (auto& t : ts) {
            auto H = hmw_extract(d, t, o.swap_qt);
            docs.push_back({{"mu", tuple_json(t)}, {"n_total", H.n_total}, {"d", H.d}, {"laurent", H.laurent}, {"H", rational_json(H.value)}});
        }
    } else {
        throw UsageError("extract-bps: --pipeline must be refined or hmw");
    }
    json out = docs.size() == 1 ? docs[0] : json{{"results", docs}};
    out["engine"] = engine_version;
    out["config"] = config_json("extract-bps", o);
    emit(out, o);
    return 0;
}

int cmd_compare_hmw(Options& o) {
    auto ts = targets(o);
    for (auto& t : ts)
        for (auto& p : t)
            if (!is_one_r(p)) throw UsageError("compare-hmw requires every partition to be (1^r), got " + tuple_str(t));
    default_ell(o, ts);
    auto d = curve(o, 1);
    json results = json::array();
    bool all_equal = true;
    for (auto& t : ts) {
        auto P = gv_extract(RefinedContext{d, static_cast<int>(t[0].size()), o.threads}, t);
        auto H = hmw_extract(d, t, o.swap_qt);
        if (o.inject_fault) H.value = H.value + RationalBivar::monomial(VarPair::zw, 0, 0);
        auto v = compare_hmw(P, H);
        all_equal &= v.equal;
        json j{{"mu", tuple_json(t)}, {"d", P.d}, {"verdict", v.equal ? "equal" : "differ"},
               {"integer_exponents", v.integer_exponents}, {"gv_certified", P.certified}};
        if (!v.equal) {
            json diff = json::array();
            for (auto& [a, b, pc, hc] : v.diff)
                diff.push_back({{"u", detail::exponent_text(a)}, {"v", detail::exponent_text(b)}, {"gv", pc.get_str()}, {"hmw", hc.get_str()}});
            j["diff"] = diff;
            j["message"] = v.message;
        }
        results.push_back(j);
    }
    emit({{"engine", engine_version}, {"config", config_json("compare-hmw", o)}, {"all_equal", all_equal}, {"results", results}}, o);
    return 0;
}

int cmd_selftest(Options& o) {
    SelftestSizes s;
    try {
        s = SelftestSizes::named(o.sizes);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    auto t0 = std::chrono::steady_clock::now();
    auto rs = run_selftest(s);
    json a = json::array();
    bool ok = true;
    for (auto& r : rs) {
        ok &= r.pass;
        json j{{"identity", r.id}, {"description", r.description}, {"sizes", r.sizes}, {"pass", r.pass}, {"cases", r.checked},
               {"seconds", r.seconds}};
        if (!r.detail.empty()) j["detail"] = r.detail;
        a.push_back(j);
    }
    double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    emit({{"engine", engine_version}, {"config", config_json("selftest", o)}, {"all_pass", ok}, {"seconds", total}, {"identities", a}}, o);
    return ok ? 0 : exit_failure;
}

void add_curve_flags(CLI::App* c, Options& o) {
    c->add_option("--g", o.g, "genus")->check(CLI::NonNegativeNumber);
    c->add_option("--n", o.n, "pole orders n_a, comma separated")->delimiter(',')->required();
    c->add_option("--l", o.ell, "number of formal eigenvalues ell_a per point, comma separated")->delimiter(',');
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Partition functions and BPS polynomials of wild degenerate local curves"};
    app.require_subcommand(1);
    app.fallthrough();  // global options may follow the subcommand
    Options o;
    if (const char* env = std::getenv("WILDCURVE_CACHE_DIR")) o.cache_dir = env;
    app.add_option("--cache-dir", o.cache_dir, "table cache directory (default: $WILDCURVE_CACHE_DIR)");
    app.add_option("--out", o.out, "output file (default: stdout)");
    app.add_option("--threads", o.threads, "worker threads (0 = hardware concurrency)")->check(CLI::NonNegativeNumber);
    app.add_flag_function("--version", [](std::int64_t) {
        std::cout << engine_version << "\n";
        std::exit(0);
    }, "print the engine version");

    auto* cz = app.add_subcommand("compute-z", "partition function as a truncated series");
    cz->add_option("--pipeline", o.pipeline, "gw | refined | hmw")->capture_default_str();
    add_curve_flags(cz, o);
    cz->add_option("--rmax", o.rmax, "truncation degree")->required();
    cz->add_flag("--swap-qt", o.swap_qt, "hmw: exchange the two Macdonald parameters");

    auto* eb = app.add_subcommand("extract-bps", "refined GV extraction of P_mu(u, v)");
    eb->add_option("--pipeline", o.pipeline, "refined | hmw")->capture_default_str();
    add_curve_flags(eb, o);
    eb->add_option("--mu", o.mu_text, "target tuple, e.g. [[2,1],[2,1]] or [2,1];[2,1]; repeatable")
        ->required()
        ->allow_extra_args(false);  // keep bracketed tuples whole
    eb->add_option("--rmax", o.rmax, "truncation degree (default: target degree)");
    eb->add_option("--golden", o.golden, "golden BpsPolynomial JSON to compare against");
    eb->add_flag("--swap-qt", o.swap_qt, "hmw: exchange the two Macdonald parameters");

    auto* ch = app.add_subcommand("compare-hmw", "compare the GV extraction with the HMW extraction");
    add_curve_flags(ch, o);
    ch->add_option("--mu", o.mu_text, "target tuple of (1^r) partitions; repeatable")
        ->required()
        ->allow_extra_args(false);
    ch->add_flag("--inject-fault", o.inject_fault, "perturb the HMW side to exercise the diff report");
    ch->add_flag("--swap-qt", o.swap_qt, "exchange the two Macdonald parameters on the HMW side");

    auto* st = app.add_subcommand("selftest", "run the internal identity suite");
    st->add_option("--sizes", o.sizes, "small | default | large")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }
    if (o.threads == 0) o.threads = std::max(1u, std::thread::hardware_concurrency());

    try {
        std::optional<TableCache> cache;
        if (!o.cache_dir.empty()) {
            cache.emplace(o.cache_dir);
            cache->load();
        }
        int rc = 0;
        if (*cz) rc = cmd_compute_z(o);
        else if (*eb) rc = cmd_extract_bps(o);
        else if (*ch) rc = cmd_compare_hmw(o);
        else if (*st) rc = cmd_selftest(o);
        if (cache) cache->flush();
        return rc;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_failure;
    }
}
