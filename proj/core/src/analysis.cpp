#include "slfr/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "slfr/rng.hpp"

namespace slfr {

BigInt binom(long long n, long long k) {
    if (n < 0 || k < 0 || n < k) return 0;
    if (k > n - k) k = n - k;
    BigInt r = 1;
    for (long long i = 1; i <= k; ++i) {
        r *= (n - k + i);
        r /= i;
    }
    return r;
}

std::string rational_str(const Rational& r) {
    std::ostringstream os;
    os << boost::multiprecision::numerator(r);
    if (boost::multiprecision::denominator(r) != 1)
        os << "/" << boost::multiprecision::denominator(r);
    return os.str();
}

Rational achievable_load(int K, int t, int r) {
    if (t < 0 || t > K) throw BadT("t outside [0, K]");
    const BigInt num = binom(K, t + 1) - binom(K - r, t + 1);
    const BigInt den = binom(K, t);
    return Rational(num, den);
}

std::vector<LoadPoint> man_curve(int K, int N) {
    std::vector<LoadPoint> pts;
    for (int t = 0; t <= K; ++t)
        pts.push_back({Rational(BigInt(N) * t, BigInt(K)), Rational(binom(K, t + 1), binom(K, t)), t});
    return pts;
}

std::vector<LoadPoint> worst_case_curve(int K, int N) {
    const int r = std::min(K, N);
    std::vector<LoadPoint> pts;
    for (int t = 0; t <= K; ++t)
        pts.push_back({Rational(BigInt(N) * t, BigInt(K)), achievable_load(K, t, r), t});
    return pts;
}

namespace {

BigInt int_pow(BigInt base, unsigned e) {
    BigInt r = 1;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

// number of K x N matrices over GF(q) with rank exactly r:
// (r-dim row spaces of F^N) x (full-column-rank K x r coordinate matrices)
BigInt rank_count(int K, int N, unsigned q, int r) {
    if (r < 0 || r > std::min(K, N)) return 0;
    const BigInt Q = q;
    BigInt subspaces = 1;
    for (int i = 0; i < r; ++i) {
        subspaces *= int_pow(Q, static_cast<unsigned>(N - i)) - 1;
        subspaces /= int_pow(Q, static_cast<unsigned>(i + 1)) - 1;
    }
    BigInt frames = 1;
    for (int i = 0; i < r; ++i)
        frames *= int_pow(Q, static_cast<unsigned>(K)) - int_pow(Q, static_cast<unsigned>(i));
    return subspaces * frames;
}

} // namespace

RankDistribution rank_distribution(int K, int N, unsigned q) {
    RankDistribution d;
    const int rmax = std::min(K, N);
    d.count.resize(static_cast<std::size_t>(rmax) + 1);
    d.total = int_pow(BigInt(q), static_cast<unsigned>(K) * static_cast<unsigned>(N));
    BigInt sum = 0;
    for (int r = 0; r <= rmax; ++r) {
        d.count[static_cast<std::size_t>(r)] = rank_count(K, N, q, r);
        sum += d.count[static_cast<std::size_t>(r)];
    }
    if (sum != d.total) throw Inconsistent("rank counts do not sum to q^(KN)");
    return d;
}

Rational average_load_exact(int K, int N, unsigned q, int t, bool include_zero_rows) {
    const RankDistribution d = rank_distribution(K, N, q);
    const int rmax = std::min(K, N);
    Rational acc = 0;
    if (include_zero_rows) {
        for (int r = 0; r <= rmax; ++r)
            acc += Rational(d.count[static_cast<std::size_t>(r)], d.total) * achievable_load(K, t, r);
        return acc;
    }
    // all-rows-nonzero variant by inclusion-exclusion over forced zero rows
    const BigInt per_row = int_pow(BigInt(q), static_cast<unsigned>(N)) - 1;
    const BigInt total = int_pow(per_row, static_cast<unsigned>(K));
    for (int r = 0; r <= rmax; ++r) {
        BigInt cnt = 0;
        for (int j = 0; j <= K; ++j) {
            const BigInt term = binom(K, j) * rank_count(K - j, N, q, r);
            cnt += (j % 2 == 0) ? term : -term;
        }
        acc += Rational(cnt, total) * achievable_load(K, t, r);
    }
    return acc;
}

MonteCarloEstimate average_load_montecarlo(const Field& f, int K, int N, int t, std::size_t trials,
                                           std::uint64_t seed, bool include_zero_rows) {
    SplitMix64 rng(seed);
    double sum = 0.0, sumsq = 0.0;
    for (std::size_t i = 0; i < trials; ++i) {
        GfMatrix D(f, K, N);
        for (int r = 0; r < K; ++r) {
            bool nonzero = false;
            do {
                nonzero = false;
                for (int c = 0; c < N; ++c) {
                    const Elem v = rng.elem(f);
                    D.set(r, c, v);
                    nonzero = nonzero || v != 0;
                }
            } while (!include_zero_rows && !nonzero);
        }
        const Rational load = achievable_load(K, t, rank(D));
        const double x = load.convert_to<double>();
        sum += x;
        sumsq += x * x;
    }
    MonteCarloEstimate est;
    est.trials = trials;
    est.mean = sum / static_cast<double>(trials);
    const double var = std::max(0.0, sumsq / static_cast<double>(trials) - est.mean * est.mean);
    est.std_error = std::sqrt(var / static_cast<double>(trials));
    return est;
}

Rational d2d_load(const GfMatrix& D, int t) {
    const int K = D.rows();
    if (t < 1 || t > K) throw BadT("D2D delivery needs t in [1, K]");
    BigInt sum = 0;
    for (int k = 1; k <= K; ++k) {
        UserSet rest;
        for (int u = 1; u <= K; ++u)
            if (u != k) rest.push_back(u);
        sum += binom(K - 1 - rank(user_rows(D, rest)), t);
    }
    const Rational num = Rational(binom(K - 1, t)) - Rational(sum, BigInt(K));
    return num / Rational(binom(K - 1, t - 1));
}

Rational d2d_worst_load_analytic(int K, int N, int t) {
    if (t < 1 || t > K) throw BadT("D2D delivery needs t in [1, K]");
    const int r = std::min(K - 1, N);
    const Rational num = Rational(binom(K - 1, t)) - Rational(binom(K - 1 - r, t));
    return num / Rational(binom(K - 1, t - 1));
}

Rational d2d_worst_load_search(const Field& f, int K, int N, int t) {
    if (t < 1 || t > K) throw BadT("D2D delivery needs t in [1, K]");
    const unsigned q = f.q();
    std::uint64_t total = 1;
    for (int i = 0; i < K * N; ++i) {
        total *= q;
        if (total > (1ull << 20)) throw TooLarge("exhaustive D2D search capped at q^(KN) <= 2^20");
    }
    Rational best = 0;
    std::vector<Elem> cellsbuf(static_cast<std::size_t>(K) * N, 0);
    for (std::uint64_t code = 0; code < total; ++code) {
        std::uint64_t x = code;
        for (auto& c : cellsbuf) {
            c = static_cast<Elem>(x % q);
            x /= q;
        }
        const GfMatrix D(f, K, N, cellsbuf);
        const Rational v = d2d_load(D, t);
        if (v > best) best = v;
    }
    return best;
}

Rational d2d_worst_load(const Field& f, int K, int N, int t) {
    try {
        return d2d_worst_load_search(f, K, N, t);
    } catch (const TooLarge&) {
        return d2d_worst_load_analytic(K, N, t);
    }
}

std::vector<LoadPoint> d2d_curve(int K, int N) {
    std::vector<LoadPoint> pts;
    for (int t = 1; t <= K; ++t)
        pts.push_back({Rational(BigInt(N) * t, BigInt(K)), d2d_worst_load_analytic(K, N, t), t});
    return pts;
}

std::uint64_t num_canonical_functions(unsigned q, int N) {
    std::uint64_t qn = 1;
    for (int i = 0; i < N; ++i) {
        if (qn > UINT64_MAX / q) throw TooLarge("q^N overflows");
        qn *= q;
    }
    return (qn - 1) / (q - 1);
}

std::vector<std::vector<Elem>> canonical_functions(const Field& f, int N) {
    const unsigned q = f.q();
    const std::uint64_t expect = num_canonical_functions(q, N);
    std::vector<std::vector<Elem>> out;
    std::uint64_t qn = 1;
    for (int i = 0; i < N; ++i) qn *= q;
    for (std::uint64_t code = 1; code < qn; ++code) {
        std::vector<Elem> y(static_cast<std::size_t>(N));
        std::uint64_t x = code;
        for (int i = N - 1; i >= 0; --i) {
            y[static_cast<std::size_t>(i)] = static_cast<Elem>(x % q);
            x /= q;
        }
        Elem first = 0;
        for (Elem v : y)
            if (v != 0) { first = v; break; }
        if (first == 1) out.push_back(std::move(y));
    }
    if (out.size() != expect) throw Inconsistent("canonical function count mismatch");
    return out;
}

LoadPoint private_load(int K, int N, unsigned q, int t) {
    const std::uint64_t users = num_canonical_functions(q, N) * static_cast<std::uint64_t>(K);
    const long long nk = static_cast<long long>(users);
    if (t < 1 || t > nk) throw BadT("private delivery needs t in [1, N'K]");
    LoadPoint p;
    p.t = t;
    p.memory = Rational(BigInt(N) * t, BigInt(nk));
    p.load = Rational(binom(nk, t + 1) - binom(nk - N, t + 1), binom(nk, t));
    return p;
}

std::vector<LoadPoint> private_curve(int K, int N, unsigned q) {
    const long long nk = static_cast<long long>(num_canonical_functions(q, N)) * K;
    std::vector<LoadPoint> pts;
    for (int t = 1; t <= nk; ++t) pts.push_back(private_load(K, N, q, t));
    return pts;
}

PrivateConstruction private_construct(const Field& f, int K, int N, int t, const GfMatrix& real_demands,
                                      std::size_t subfile_symbols, std::uint64_t seed) {
    if (real_demands.rows() != K || real_demands.cols() != N)
        throw BadLength("real demand matrix must be K x N");
    if (real_demands.field() != f) throw FieldMismatch("demands over a different field");
    const auto canon = canonical_functions(f, N);
    const std::uint64_t users64 = canon.size() * static_cast<std::uint64_t>(K);
    if (users64 > 12) throw TooLarge("padded system capped at N'K <= 12 users");
    const int total_users = static_cast<int>(users64);
    if (t < 1 || t > total_users) throw BadT("private delivery needs t in [1, N'K]");

    // normalize each real demand to its canonical direction
    std::vector<std::size_t> real_index(static_cast<std::size_t>(K));
    for (int k = 0; k < K; ++k) {
        Elem first = 0;
        for (int c = 0; c < N; ++c)
            if (real_demands.at(k, c) != 0) { first = real_demands.at(k, c); break; }
        if (first == 0) throw RangeError("user " + std::to_string(k + 1) + " demands the zero function");
        std::vector<Elem> y(static_cast<std::size_t>(N));
        const Elem scale = f.inv(first);
        for (int c = 0; c < N; ++c) y[static_cast<std::size_t>(c)] = f.mul(scale, real_demands.at(k, c));
        const auto it = std::find(canon.begin(), canon.end(), y);
        if (it == canon.end()) throw Inconsistent("normalized demand is not canonical");
        real_index[static_cast<std::size_t>(k)] = static_cast<std::size_t>(it - canon.begin());
    }

    // real users first, then virtual users topping every function up to K copies
    GfMatrix padded(f, total_users, N);
    std::vector<int> remaining(canon.size(), K);
    for (int k = 0; k < K; ++k) {
        const auto& y = canon[real_index[static_cast<std::size_t>(k)]];
        --remaining[real_index[static_cast<std::size_t>(k)]];
        for (int c = 0; c < N; ++c) padded.set(k, c, y[static_cast<std::size_t>(c)]);
    }
    int row = K;
    for (std::size_t fn = 0; fn < canon.size(); ++fn)
        for (int copy = 0; copy < remaining[fn]; ++copy, ++row)
            for (int c = 0; c < N; ++c) padded.set(row, c, canon[fn][static_cast<std::size_t>(c)]);

    const std::size_t B = static_cast<std::size_t>(binom64(total_users, t)) * subfile_symbols;
    const FileLibrary lib = generate_library(f, N, B, total_users, t, seed);
    const auto caches = man_place(lib);

    PrivateConstruction out{total_users, padded, build_plan(lib, padded), DecodeReport{}, Rational(0)};
    out.report = decode_all(lib, caches, out.plan);
    out.load = Rational(BigInt(out.plan.messages.size()) * BigInt(lib.subfile_len), BigInt(lib.B));
    return out;
}

std::vector<LoadPoint> lower_convex_envelope(std::vector<LoadPoint> points) {
    if (points.empty()) throw Empty("no points to take the envelope of");
    std::sort(points.begin(), points.end(), [](const LoadPoint& a, const LoadPoint& b) {
        if (a.memory != b.memory) return a.memory < b.memory;
        return a.load < b.load;
    });
    // at equal memory only the smallest load survives
    std::vector<LoadPoint> pts;
    for (const auto& p : points)
        if (pts.empty() || pts.back().memory != p.memory) pts.push_back(p);

    std::vector<LoadPoint> hull;
    for (const auto& p : pts) {
        while (hull.size() >= 2) {
            const LoadPoint& o = hull[hull.size() - 2];
            const LoadPoint& a = hull[hull.size() - 1];
            // pop a when it lies strictly above chord o -> p
            const Rational cross = (a.memory - o.memory) * (p.load - o.load) -
                                   (a.load - o.load) * (p.memory - o.memory);
            if (cross < 0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(p);
    }
    return hull;
}

} // namespace slfr
