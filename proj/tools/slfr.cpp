// slfr: cache-aided scalar linear function retrieval over GF(q).
//
// simulate  end-to-end placement / delivery / decode run with verification
// tradeoff  exact memory-load curves as CSV or JSON
// verify    randomized property suites with counterexample dumps
//
// Exit codes: 0 success, 1 verification failure, 2 usage or config error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "slfr/analysis.hpp"
#include "slfr/decoder.hpp"
#include "slfr/encoder.hpp"
#include "slfr/rng.hpp"

using nlohmann::json;
using namespace slfr;

namespace {

std::uint64_t default_seed() {
    if (const char* env = std::getenv("FN_CACHE_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw RangeError("FN_CACHE_SEED is not an unsigned integer");
        }
    }
    return 0;
}

Rational parse_rational(const std::string& s) {
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(s));
        return Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
    } catch (const std::exception&) {
        throw ParseError("cannot parse rational '" + s + "'");
    }
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(out_path, std::ios::binary);
    if (!os) throw Error("cannot open output file " + out_path);
    os << text;
}

GfMatrix load_demands(const std::string& path, const Field& f, int K, int N) {
    std::ifstream is(path);
    if (!is) throw ParseError("cannot open demand file " + path);
    json doc;
    try {
        is >> doc;
    } catch (const json::exception& e) {
        throw ParseError("demand file is not valid JSON: " + std::string(e.what()));
    }
    if (!doc.is_object() || !doc.contains("q") || !doc.contains("matrix"))
        throw ParseError("demand file needs {\"q\": ..., \"matrix\": [[...]]}");
    if (!doc["q"].is_number_unsigned() || doc["q"].get<unsigned>() != f.q())
        throw RangeError("demand file field order does not match --q");
    const auto& m = doc["matrix"];
    if (!m.is_array() || static_cast<int>(m.size()) != K)
        throw ParseError("matrix must have K = " + std::to_string(K) + " rows");
    GfMatrix D(f, K, N);
    for (int r = 0; r < K; ++r) {
        const auto& row = m[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<int>(row.size()) != N)
            throw ParseError("row " + std::to_string(r + 1) + " must have N = " + std::to_string(N) + " entries");
        for (int c = 0; c < N; ++c) {
            const auto& cell = row[static_cast<std::size_t>(c)];
            if (!cell.is_number_integer())
                throw ParseError("entry (" + std::to_string(r + 1) + ", " + std::to_string(c + 1) + ") is not an integer");
            const long long v = cell.get<long long>();
            if (v < 0 || v >= static_cast<long long>(f.q()))
                throw RangeError("entry (" + std::to_string(r + 1) + ", " + std::to_string(c + 1) + ") = " +
                                 std::to_string(v) + " is outside [0, " + std::to_string(f.q()) + ")");
            D.set(r, c, static_cast<Elem>(v));
        }
    }
    return D;
}

GfMatrix random_demands(const Field& f, int K, int N, std::uint64_t seed) {
    SplitMix64 rng(seed ^ 0x632BE59BD9B4E019ull);
    GfMatrix D(f, K, N);
    for (int r = 0; r < K; ++r)
        for (int c = 0; c < N; ++c) D.set(r, c, rng.elem(f));
    return D;
}

GfMatrix worst_case_demands(const Field& f, int K, int N, std::uint64_t seed) {
    SplitMix64 rng(seed ^ 0x9E3779B97F4A7C15ull);
    GfMatrix D(f, K, N);
    const int r = std::min(K, N);
    for (int i = 0; i < r; ++i) D.set(i, i, 1);
    for (int i = r; i < K; ++i)
        for (int c = 0; c < N; ++c) D.set(i, c, rng.elem(f));
    return D;
}

json matrix_json(const GfMatrix& D) {
    json rows = json::array();
    for (int r = 0; r < D.rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < D.cols(); ++c) row.push_back(D.at(r, c));
        rows.push_back(row);
    }
    return rows;
}

// ---------------------------------------------------------------- simulate

struct SimulateOptions {
    int K = 0, N = 0;
    unsigned q = 0;
    int t = -1;
    std::string memory; // alternative to --t, exact rational
    std::size_t subfile_symbols = 1;
    std::size_t B = 0; // 0: derive from subfile_symbols
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::string demands_path;
    bool worst_case = false;
    std::string out_path;
};

int run_simulate(const SimulateOptions& opt) {
    const Field field(opt.q);
    const std::uint64_t seed = opt.seed_given ? opt.seed : default_seed();

    int t = opt.t;
    if (!opt.memory.empty()) {
        const Rational M = parse_rational(opt.memory);
        if (M < 0 || M > opt.N) throw RangeError("memory outside [0, N]");
        const Rational tr = M * opt.K / opt.N;
        if (boost::multiprecision::denominator(tr) != 1) {
            // not a corner point: report the envelope interpolation instead of simulating
            const auto env = lower_convex_envelope(worst_case_curve(opt.K, opt.N));
            Rational load = env.front().load;
            for (std::size_t i = 1; i < env.size(); ++i) {
                if (M > env[i].memory) continue;
                const auto& a = env[i - 1];
                const auto& b = env[i];
                load = a.load + (b.load - a.load) * (M - a.memory) / (b.memory - a.memory);
                break;
            }
            if (M >= env.back().memory) load = env.back().load;
            json doc;
            doc["interpolated"] = true;
            doc["k"] = opt.K;
            doc["n"] = opt.N;
            doc["q"] = opt.q;
            doc["memory"] = rational_str(M);
            doc["load"] = rational_str(load);
            emit(doc.dump(2) + "\n", opt.out_path);
            return 0;
        }
        t = tr.convert_to<int>();
    }
    if (t < 0 || t > opt.K) throw BadT("t must lie in [0, K]");

    const std::uint64_t parts = binom64(opt.K, t);
    const std::size_t B = opt.B ? opt.B : static_cast<std::size_t>(parts) * opt.subfile_symbols;

    GfMatrix D(field, 0, 0);
    std::string source;
    if (!opt.demands_path.empty()) {
        D = load_demands(opt.demands_path, field, opt.K, opt.N);
        source = "file";
    } else if (opt.worst_case) {
        D = worst_case_demands(field, opt.K, opt.N, seed);
        source = "worst-case";
    } else {
        D = random_demands(field, opt.K, opt.N, seed);
        source = "random";
    }

    const FileLibrary lib = generate_library(field, opt.N, B, opt.K, t, seed);
    const auto caches = man_place(lib);
    const TransmissionPlan plan = build_plan(lib, D);
    const DecodeReport report = decode_all(lib, caches, plan);

    const int r = plan.leaders.size();
    const std::uint64_t expected = binom64(opt.K, t + 1) - binom64(opt.K - r, t + 1);
    const Rational load(BigInt(plan.messages.size()) * BigInt(lib.subfile_len), BigInt(lib.B));

    json doc;
    doc["config"] = {{"b", lib.B},    {"demand_source", source}, {"k", opt.K},
                     {"n", opt.N},    {"q", opt.q},              {"seed", seed},
                     {"t", t},        {"subfile_len", lib.subfile_len}};
    doc["demands"] = matrix_json(D);
    doc["rank"] = r;
    doc["leaders"] = plan.leaders.users;
    doc["message_count"] = plan.messages.size();
    doc["expected_message_count"] = expected;
    doc["load"] = rational_str(load);
    doc["formula_load"] = rational_str(achievable_load(opt.K, t, r));
    json users = json::array();
    for (const auto& u : report.users)
        users.push_back({{"user", u.user}, {"match", u.match}, {"decoded", u.decoded}});
    doc["users"] = users;
    json residuals = json::array();
    for (const auto& res : report.residuals)
        residuals.push_back({{"subset", res.subset}, {"nonzero_symbols", res.nonzero_symbols}});
    doc["residuals"] = residuals;
    const bool ok = report.ok() && plan.messages.size() == expected;
    doc["ok"] = ok;
    emit(doc.dump(2) + "\n", opt.out_path);
    return ok ? 0 : 1;
}

// ---------------------------------------------------------------- tradeoff

struct TradeoffOptions {
    std::string scheme;
    int K = 0, N = 0;
    unsigned q = 0;
    bool envelope = false;
    bool exhaustive = false;
    std::string format = "csv";
    std::string out_path;
};

int run_tradeoff(const TradeoffOptions& opt) {
    std::vector<LoadPoint> points;
    if (opt.scheme == "man") {
        points = man_curve(opt.K, opt.N);
    } else if (opt.scheme == "yma" || opt.scheme == "slfr" || opt.scheme == "converse") {
        points = worst_case_curve(opt.K, opt.N);
    } else if (opt.scheme == "d2d") {
        if (opt.exhaustive) {
            if (!opt.q) throw RangeError("--q is required for the exhaustive D2D search");
            const Field f(opt.q);
            for (int t = 1; t <= opt.K; ++t)
                points.push_back({Rational(BigInt(opt.N) * t, BigInt(opt.K)),
                                  d2d_worst_load_search(f, opt.K, opt.N, t), t});
        } else {
            points = d2d_curve(opt.K, opt.N);
        }
    } else if (opt.scheme == "private") {
        if (!opt.q) throw RangeError("--q is required for the private scheme");
        points = private_curve(opt.K, opt.N, opt.q);
    } else {
        throw RangeError("unknown scheme '" + opt.scheme + "'");
    }
    if (opt.envelope) points = lower_convex_envelope(points);

    std::ostringstream os;
    if (opt.format == "csv") {
        os << "t,M_num,M_den,R_num,R_den\n";
        for (const auto& p : points)
            os << p.t << "," << boost::multiprecision::numerator(p.memory) << ","
               << boost::multiprecision::denominator(p.memory) << ","
               << boost::multiprecision::numerator(p.load) << ","
               << boost::multiprecision::denominator(p.load) << "\n";
    } else if (opt.format == "json") {
        json arr = json::array();
        for (const auto& p : points)
            arr.push_back({{"t", p.t},
                           {"m_num", boost::multiprecision::numerator(p.memory).str()},
                           {"m_den", boost::multiprecision::denominator(p.memory).str()},
                           {"r_num", boost::multiprecision::numerator(p.load).str()},
                           {"r_den", boost::multiprecision::denominator(p.load).str()}});
        json doc;
        doc["points"] = arr;
        os << doc.dump(2) << "\n";
    } else {
        throw RangeError("unknown format '" + opt.format + "'");
    }
    emit(os.str(), opt.out_path);
    return 0;
}

// ------------------------------------------------------------------ verify

struct VerifyOptions {
    std::string suite = "all";
    std::size_t trials = 200;
    std::uint64_t seed = 0;
    bool seed_given = false;
    int K = 0; // 0: sweep sizes
    int N = 0;
    unsigned q = 0;
    int t = -1;
    std::string out_path;
};

struct SuiteFailure {
    json detail;
};

GfMatrix random_matrix(const Field& f, int K, int N, SplitMix64& rng) {
    GfMatrix D(f, K, N);
    for (int r = 0; r < K; ++r)
        for (int c = 0; c < N; ++c) D.set(r, c, rng.elem(f));
    return D;
}

json instance_json(const Field& f, const GfMatrix& D, int K, int N, int t) {
    return {{"q", f.q()}, {"k", K}, {"n", N}, {"t", t}, {"demands", matrix_json(D)}};
}

// determinant route vs permutation-expansion route
std::size_t suite_beta(const VerifyOptions& opt, SplitMix64& rng, std::optional<SuiteFailure>& fail) {
    const std::vector<unsigned> qs = opt.q ? std::vector<unsigned>{opt.q}
                                           : std::vector<unsigned>{2, 3, 4, 5, 7, 8};
    std::size_t checks = 0;
    while (checks < opt.trials) {
        for (unsigned q : qs) {
            const Field f(q);
            const int K = opt.K ? opt.K : 3 + static_cast<int>(rng.below(5));
            const int N = opt.N ? opt.N : 1 + static_cast<int>(rng.below(4));
            const GfMatrix D = random_matrix(f, K, N, rng);
            const LeaderSet L = select_leaders(D);
            const int size = 1 + static_cast<int>(rng.below(3));
            if (L.size() == 0 || K - L.size() < size) continue; // rank 0 leaves S = A only
            const GfMatrix X = express_in_leader_basis(D, L);
            UserSet nonleaders;
            for (int u = 1; u <= K; ++u)
                if (!L.contains(u)) nonleaders.push_back(u);
            const auto apick = subset_unrank(rng.below(binom64(static_cast<int>(nonleaders.size()), size)),
                                             static_cast<int>(nonleaders.size()), size);
            UserSet A;
            for (int p : apick) A.push_back(nonleaders[static_cast<std::size_t>(p - 1)]);
            const UserSet pool = set_union(A, L.users);
            UserSet S;
            do {
                const auto spick = subset_unrank(rng.below(binom64(static_cast<int>(pool.size()), size)),
                                                 static_cast<int>(pool.size()), size);
                S.clear();
                for (int p : spick) S.push_back(pool[static_cast<std::size_t>(p - 1)]);
            } while (S == A);
            const Elem got = beta(A, S, X, L);
            const Elem want = beta_oracle(A, S, X, L);
            ++checks;
            if (got != want) {
                json detail = instance_json(f, D, K, N, size - 1);
                detail["a"] = A;
                detail["s"] = S;
                detail["determinant_route"] = got;
                detail["expansion_route"] = want;
                fail = SuiteFailure{detail};
                return checks;
            }
            if (checks >= opt.trials) break;
        }
    }
    return checks;
}

std::size_t suite_lemma1(const VerifyOptions& opt, SplitMix64& rng, std::optional<SuiteFailure>& fail) {
    const Field f(2);
    const int kmax = opt.K ? opt.K : 6;
    std::size_t checks = 0;
    for (int K = 3; K <= kmax; ++K)
        for (int t = 0; t < K; ++t)
            for (int rep = 0; rep < 2; ++rep) {
                const int N = opt.N ? opt.N : 1 + static_cast<int>(rng.below(3));
                const GfMatrix D = random_matrix(f, K, N, rng);
                const LeaderSet L = select_leaders(D);
                if (K - L.size() < t + 1) continue;
                UserSet nonleaders;
                for (int u = 1; u <= K; ++u)
                    if (!L.contains(u)) nonleaders.push_back(u);
                for (const auto& apick : enumerate_subsets(static_cast<int>(nonleaders.size()), t + 1)) {
                    UserSet A;
                    for (int p : apick) A.push_back(nonleaders[static_cast<std::size_t>(p - 1)]);
                    const UserSet B = set_union(A, L.users);
                    for (const auto& wpick : enumerate_subsets(static_cast<int>(B.size()), t)) {
                        UserSet W;
                        for (int p : wpick) W.push_back(B[static_cast<std::size_t>(p - 1)]);
                        for (int i = 1; i <= N; ++i) {
                            const auto rep1 = lemma1_check(B, D, L, i, W);
                            ++checks;
                            if (!rep1.even()) {
                                json detail = instance_json(f, D, K, N, t);
                                detail["b"] = B;
                                detail["w"] = W;
                                detail["file"] = i;
                                detail["count"] = rep1.qualifying;
                                fail = SuiteFailure{detail};
                                return checks;
                            }
                        }
                    }
                }
            }
    return checks;
}

std::size_t suite_f2_equiv(const VerifyOptions& opt, SplitMix64& rng, std::optional<SuiteFailure>& fail) {
    const Field f(2);
    std::size_t checks = 0;
    const std::size_t target = opt.trials;
    while (checks < target) {
        const int K = opt.K ? opt.K : 3 + static_cast<int>(rng.below(4));
        const int N = opt.N ? opt.N : 1 + static_cast<int>(rng.below(3));
        const int t = opt.t >= 0 ? opt.t : static_cast<int>(rng.below(static_cast<std::uint64_t>(K)));
        const GfMatrix D = random_matrix(f, K, N, rng);
        const LeaderSet L = select_leaders(D);
        if (K - L.size() < t + 1) continue;
        const FileLibrary lib = generate_library(f, N, binom64(K, t), K, t, rng.next());
        const TransmissionPlan plan = build_plan(lib, D);
        UserSet nonleaders;
        for (int u = 1; u <= K; ++u)
            if (!L.contains(u)) nonleaders.push_back(u);
        for (const auto& apick : enumerate_subsets(static_cast<int>(nonleaders.size()), t + 1)) {
            UserSet A;
            for (int p : apick) A.push_back(nonleaders[static_cast<std::size_t>(p - 1)]);
            const auto via_beta = reconstruct_missing(plan, A);
            const auto via_xor = reconstruct_missing_xor(plan, A);
            ++checks;
            if (via_beta.payload != via_xor.payload) {
                json detail = instance_json(f, D, K, N, t);
                detail["a"] = A;
                fail = SuiteFailure{detail};
                return checks;
            }
        }
    }
    return checks;
}

std::size_t suite_reconstruct(const VerifyOptions& opt, SplitMix64& rng, std::optional<SuiteFailure>& fail) {
    const std::vector<unsigned> qs = opt.q ? std::vector<unsigned>{opt.q}
                                           : std::vector<unsigned>{2, 3, 4, 5, 8};
    std::size_t checks = 0;
    while (checks < opt.trials) {
        for (unsigned q : qs) {
            const Field f(q);
            const int K = opt.K ? opt.K : 2 + static_cast<int>(rng.below(5));
            const int N = opt.N ? opt.N : 1 + static_cast<int>(rng.below(4));
            const int t = opt.t >= 0 ? opt.t : static_cast<int>(rng.below(static_cast<std::uint64_t>(K) + 1));
            const GfMatrix D = random_matrix(f, K, N, rng);
            const FileLibrary lib = generate_library(f, N, binom64(K, t), K, t, rng.next());
            const auto caches = man_place(lib);
            const TransmissionPlan plan = build_plan(lib, D);
            const DecodeReport report = decode_all(lib, caches, plan);
            ++checks;
            if (!report.ok()) {
                json detail = instance_json(f, D, K, N, t);
                json residuals = json::array();
                for (const auto& res : report.residuals)
                    if (res.nonzero_symbols)
                        residuals.push_back({{"subset", res.subset}, {"nonzero", res.nonzero_symbols}});
                json bad_users = json::array();
                for (const auto& u : report.users)
                    if (!u.match) bad_users.push_back(u.user);
                detail["bad_residuals"] = residuals;
                detail["bad_users"] = bad_users;
                fail = SuiteFailure{detail};
                return checks;
            }
            if (checks >= opt.trials) break;
        }
    }
    return checks;
}

int run_verify(const VerifyOptions& opt) {
    const std::uint64_t seed = opt.seed_given ? opt.seed : default_seed();
    SplitMix64 rng(seed);
    json suites = json::array();
    std::optional<SuiteFailure> fail;

    const auto run_one = [&](const std::string& name, auto&& fn) {
        if (fail) return;
        const std::size_t checks = fn(opt, rng, fail);
        json entry = {{"name", name}, {"checks", checks}};
        if (fail) entry["counterexample"] = fail->detail;
        suites.push_back(entry);
    };

    if (opt.suite == "beta" || opt.suite == "all") run_one("beta", suite_beta);
    if (opt.suite == "lemma1" || opt.suite == "all") run_one("lemma1", suite_lemma1);
    if (opt.suite == "f2-equiv" || opt.suite == "all") run_one("f2-equiv", suite_f2_equiv);
    if (opt.suite == "reconstruct" || opt.suite == "all") run_one("reconstruct", suite_reconstruct);
    if (suites.empty()) throw RangeError("unknown suite '" + opt.suite + "'");

    json doc;
    doc["seed"] = seed;
    doc["status"] = fail ? "fail" : "pass";
    doc["suites"] = suites;
    emit(doc.dump(2) + "\n", opt.out_path);
    return fail ? 1 : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"cache-aided scalar linear function retrieval toolkit"};
    app.require_subcommand(1);

    SimulateOptions sim;
    auto* simulate = app.add_subcommand("simulate", "run one placement/delivery/decode instance");
    simulate->add_option("--k", sim.K, "number of users")->required();
    simulate->add_option("--n", sim.N, "number of files")->required();
    simulate->add_option("--q", sim.q, "field order (prime power)")->required();
    auto* t_opt = simulate->add_option("--t", sim.t, "cache parameter t in [0, K]");
    simulate->add_option("--m", sim.memory, "memory M as an exact rational, alternative to --t")
        ->excludes(t_opt);
    simulate->add_option("--s", sim.subfile_symbols, "symbols per subfile (default 1)");
    simulate->add_option("--b", sim.B, "file length B, must be a multiple of C(K,t)");
    auto* sim_seed = simulate->add_option("--seed", sim.seed, "PRNG seed (default FN_CACHE_SEED or 0)");
    simulate->add_option("--demands", sim.demands_path, "demand matrix JSON file");
    simulate->add_flag("--worst-case", sim.worst_case, "rank-min(K,N) demand matrix");
    simulate->add_option("--out", sim.out_path, "write the report here instead of stdout");

    TradeoffOptions tr;
    auto* tradeoff = app.add_subcommand("tradeoff", "emit a memory-load curve");
    tradeoff->add_option("--scheme", tr.scheme, "man | yma | slfr | converse | d2d | private")->required();
    tradeoff->add_option("--k", tr.K, "number of users")->required();
    tradeoff->add_option("--n", tr.N, "number of files")->required();
    tradeoff->add_option("--q", tr.q, "field order (d2d --exhaustive and private)");
    tradeoff->add_flag("--envelope", tr.envelope, "emit the lower convex envelope instead of raw points");
    tradeoff->add_flag("--exhaustive", tr.exhaustive, "search all demand matrices (d2d only)");
    tradeoff->add_option("--format", tr.format, "csv | json (default csv)");
    tradeoff->add_option("--out", tr.out_path, "write the table here instead of stdout");

    VerifyOptions ver;
    auto* verify = app.add_subcommand("verify", "run randomized property suites");
    verify->add_option("--suite", ver.suite, "beta | lemma1 | f2-equiv | reconstruct | all");
    verify->add_option("--trials", ver.trials, "number of checks per randomized suite")
        ->check(CLI::PositiveNumber);
    auto* ver_seed = verify->add_option("--seed", ver.seed, "PRNG seed (default FN_CACHE_SEED or 0)");
    verify->add_option("--k", ver.K, "pin the user count");
    verify->add_option("--n", ver.N, "pin the file count");
    verify->add_option("--q", ver.q, "pin the field order");
    verify->add_option("--t", ver.t, "pin the cache parameter");
    verify->add_option("--out", ver.out_path, "write the summary here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp")
            return app.exit(e);
        app.exit(e);
        return 2;
    }

    try {
        if (simulate->parsed()) {
            sim.seed_given = sim_seed->count() > 0;
            return run_simulate(sim);
        }
        if (tradeoff->parsed()) return run_tradeoff(tr);
        if (verify->parsed()) {
            ver.seed_given = ver_seed->count() > 0;
            return run_verify(ver);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        // decode/identity breaches are verification failures, the rest are config problems
        const bool verification =
            dynamic_cast<const DecodeMismatch*>(&e) || dynamic_cast<const Inconsistent*>(&e);
        return verification ? 1 : 2;
    }
    return 2;
}
