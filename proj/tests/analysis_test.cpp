#include <doctest.h>

#include <cmath>
#include <tuple>
#include <vector>

#include "slfr/analysis.hpp"

using namespace slfr;

namespace {

// full enumeration of demand matrices: exact expected load and rank counts
struct BruteForce {
    std::vector<BigInt> rank_count;
    Rational expected_load;
};

BruteForce brute_force_demands(const Field& f, int K, int N, int t) {
    const unsigned q = f.q();
    std::uint64_t total = 1;
    for (int i = 0; i < K * N; ++i) total *= q;
    BruteForce out;
    out.rank_count.assign(static_cast<std::size_t>(std::min(K, N)) + 1, 0);
    Rational acc = 0;
    std::vector<Elem> cells(static_cast<std::size_t>(K) * N);
    for (std::uint64_t code = 0; code < total; ++code) {
        std::uint64_t x = code;
        for (auto& c : cells) {
            c = static_cast<Elem>(x % q);
            x /= q;
        }
        const int r = rank(GfMatrix(f, K, N, cells));
        out.rank_count[static_cast<std::size_t>(r)] += 1;
        acc += achievable_load(K, t, r);
    }
    out.expected_load = acc / Rational(total);
    return out;
}

} // namespace

TEST_CASE("binomial convention zeros out impossible selections") {
    CHECK(binom(5, 2) == 10);
    CHECK(binom(5, 0) == 1);
    CHECK(binom(-1, 2) == 0);
    CHECK(binom(3, -1) == 0);
    CHECK(binom(2, 3) == 0);
}

TEST_CASE("achieved load formula values") {
    CHECK(achievable_load(6, 2, 3) == Rational(19, 15));
    CHECK(achievable_load(5, 1, 3) == Rational(9, 5));
    CHECK(achievable_load(7, 3, 0) == 0);
    CHECK(achievable_load(4, 4, 2) == 0); // t = K caches everything
}

TEST_CASE("worst-case curve endpoints and the K=N=2 corner") {
    const auto pts = worst_case_curve(2, 2);
    REQUIRE(pts.size() == 3);
    CHECK(pts[0].memory == 0);
    CHECK(pts[0].load == 2); // min(K, N) at t = 0
    CHECK(pts[1].memory == 1);
    CHECK(pts[1].load == Rational(1, 2));
    CHECK(pts[2].memory == 2);
    CHECK(pts[2].load == 0);

    for (int K = 1; K <= 10; ++K)
        for (int N = 1; N <= 10; ++N) {
            const auto curve = worst_case_curve(K, N);
            REQUIRE(curve.size() == static_cast<std::size_t>(K) + 1);
            for (int t = 0; t <= K; ++t) {
                // the single-file worst case formula, written out directly
                const int d = std::min(K, N);
                const Rational expect(binom(K, t + 1) - binom(K - d, t + 1), binom(K, t));
                CHECK(curve[static_cast<std::size_t>(t)].load == expect);
                CHECK(curve[static_cast<std::size_t>(t)].memory == Rational(BigInt(N) * t, BigInt(K)));
            }
        }
}

TEST_CASE("rank distribution matches full enumeration on small systems") {
    for (const auto& [K, N, q] : std::vector<std::tuple<int, int, unsigned>>{
             {1, 1, 2}, {2, 1, 2}, {2, 2, 2}, {3, 2, 2}, {2, 2, 3}, {1, 2, 5}, {2, 2, 4}}) {
        const Field f(q);
        const auto bf = brute_force_demands(f, K, N, 0);
        const auto dist = rank_distribution(K, N, q);
        REQUIRE(dist.count.size() == bf.rank_count.size());
        for (std::size_t r = 0; r < dist.count.size(); ++r) CHECK(dist.count[r] == bf.rank_count[r]);
    }
}

TEST_CASE("exact average load equals enumeration and the hand-worked values") {
    CHECK(average_load_exact(1, 1, 2, 0) == Rational(1, 2));
    CHECK(average_load_exact(2, 1, 2, 0) == Rational(3, 4));
    CHECK(average_load_exact(3, 2, 5, 3) == 0); // t = K

    for (const auto& [K, N, q] : std::vector<std::tuple<int, int, unsigned>>{
             {2, 2, 2}, {3, 2, 2}, {2, 2, 3}, {3, 1, 3}, {2, 2, 4}}) {
        const Field f(q);
        for (int t = 0; t <= K; ++t)
            CHECK(average_load_exact(K, N, q, t) == brute_force_demands(f, K, N, t).expected_load);
    }
}

TEST_CASE("nonzero-row average differs and normalizes correctly") {
    // with zero rows excluded, K=1, N=1: the only demand has rank 1
    CHECK(average_load_exact(1, 1, 2, 0, false) == Rational(1));
    // enumeration oracle for a 2x2 case over GF(2): rows in {01,10,11}
    const Field f2(2);
    Rational acc = 0;
    int count = 0;
    for (unsigned a = 1; a < 4; ++a)
        for (unsigned b = 1; b < 4; ++b) {
            const GfMatrix D(f2, 2, 2,
                             {static_cast<Elem>(a >> 1), static_cast<Elem>(a & 1),
                              static_cast<Elem>(b >> 1), static_cast<Elem>(b & 1)});
            acc += achievable_load(2, 1, rank(D));
            ++count;
        }
    CHECK(average_load_exact(2, 2, 2, 1, false) == acc / count);
}

TEST_CASE("Monte Carlo average lands within three sigma of exact") {
    for (const auto& [K, N, q, t] : std::vector<std::tuple<int, int, unsigned, int>>{
             {4, 3, 2, 1}, {3, 2, 3, 1}, {2, 2, 5, 0}}) {
        const Field f(q);
        const auto est = average_load_montecarlo(f, K, N, t, 10000, 99);
        const double exact = average_load_exact(K, N, q, t).convert_to<double>();
        CHECK(std::abs(est.mean - exact) <= 3.0 * est.std_error + 1e-12);
    }
}

TEST_CASE("device-to-device load formula") {
    const Field f2(2);
    // identity demands, K = N = 2, t = 1
    CHECK(d2d_load(GfMatrix::identity(f2, 2), 1) == 1);
    // t = K collapses to zero
    CHECK(d2d_load(GfMatrix::identity(f2, 2), 2) == 0);
    CHECK_THROWS_AS(d2d_load(GfMatrix::identity(f2, 2), 0), BadT);

    // full-rank demands with N >= K: load C(K-1,t)/C(K-1,t-1)
    const Field f3(3);
    for (int K : {2, 3, 4})
        for (int t = 1; t <= K; ++t)
            CHECK(d2d_load(GfMatrix::identity(f3, K), t) ==
                  Rational(binom(K - 1, t), binom(K - 1, t - 1)));

    // exhaustive search can only confirm the analytic maximizer here
    CHECK(d2d_worst_load_search(f2, 2, 2, 1) == d2d_worst_load_analytic(2, 2, 1));
    CHECK(d2d_worst_load_search(f2, 3, 2, 2) == d2d_worst_load_analytic(3, 2, 2));
    CHECK_THROWS_AS(d2d_worst_load_search(f2, 6, 6, 1), TooLarge);
    // the combined helper searches under the guard and substitutes past it
    CHECK(d2d_worst_load(f2, 3, 2, 1) == d2d_worst_load_search(f2, 3, 2, 1));
    CHECK(d2d_worst_load(f2, 6, 6, 1) == d2d_worst_load_analytic(6, 6, 1));
}

TEST_CASE("canonical function families") {
    CHECK(num_canonical_functions(2, 2) == 3);
    CHECK(num_canonical_functions(3, 2) == 4);
    CHECK(num_canonical_functions(2, 3) == 7);
    const Field f2(2);
    const auto fams = canonical_functions(f2, 2);
    REQUIRE(fams.size() == 3);
    CHECK(fams[0] == std::vector<Elem>{0, 1});
    CHECK(fams[1] == std::vector<Elem>{1, 0});
    CHECK(fams[2] == std::vector<Elem>{1, 1});
    const Field f3(3);
    CHECK(canonical_functions(f3, 2).size() == 4);
}

TEST_CASE("private corner-point formula") {
    // q = 2, N = 2, K = 2: six padded users
    const LoadPoint p1 = private_load(2, 2, 2, 1);
    CHECK(p1.memory == Rational(2, 6));
    CHECK(p1.load == Rational(binom(6, 2) - binom(4, 2), binom(6, 1)));
    CHECK(private_load(2, 2, 2, 6).load == 0);
    CHECK(private_curve(2, 2, 2).size() == 6);
    CHECK_THROWS_AS(private_load(2, 2, 2, 0), BadT);
}

TEST_CASE("padded private construction decodes and meets the corner point") {
    const Field f2(2);
    // two real users, one demanding file 1 and one the two-file sum
    const GfMatrix real(f2, 2, 2, {1, 0, 1, 1});
    for (int t = 1; t <= 6; ++t) {
        const auto built = private_construct(f2, 2, 2, t, real, 1, 42);
        CHECK(built.virtual_users == 6);
        CHECK(built.report.ok());
        CHECK(built.load == private_load(2, 2, 2, t).load);
        // every canonical function appears exactly K = 2 times
        for (const auto& y : canonical_functions(f2, 2)) {
            int copies = 0;
            for (int rrow = 0; rrow < 6; ++rrow) {
                bool same = true;
                for (int c = 0; c < 2; ++c)
                    if (built.padded_demands.at(rrow, c) != y[static_cast<std::size_t>(c)]) same = false;
                if (same) ++copies;
            }
            CHECK(copies == 2);
        }
    }
    const GfMatrix zero_demand(f2, 2, 2, {0, 0, 1, 0});
    CHECK_THROWS_AS(private_construct(f2, 2, 2, 1, zero_demand, 1, 0), RangeError);
    const Field f5(5);
    const GfMatrix big(f5, 3, 2, {1, 0, 0, 1, 1, 1});
    CHECK_THROWS_AS(private_construct(f5, 3, 2, 1, big, 1, 0), TooLarge);
}

TEST_CASE("lower convex envelope retains collinear points and stays monotone") {
    CHECK_THROWS_AS(lower_convex_envelope({}), Empty);

    const LoadPoint single{Rational(1), Rational(2), 0};
    CHECK(lower_convex_envelope({single}) == std::vector<LoadPoint>{single});

    // three collinear points all survive
    const std::vector<LoadPoint> collinear{
        {Rational(0), Rational(2), 0}, {Rational(1), Rational(1), 1}, {Rational(2), Rational(0), 2}};
    CHECK(lower_convex_envelope(collinear) == collinear);

    // a point above the chord is dropped
    const std::vector<LoadPoint> bumped{
        {Rational(0), Rational(2), 0}, {Rational(1), Rational(2), 1}, {Rational(2), Rational(0), 2}};
    const auto hull = lower_convex_envelope(bumped);
    REQUIRE(hull.size() == 2);
    CHECK(hull[0].t == 0);
    CHECK(hull[1].t == 2);

    // the two-user, two-file tradeoff has every corner extreme
    const auto man = man_curve(2, 2);
    CHECK(lower_convex_envelope(man) == man);

    for (int K = 1; K <= 10; ++K)
        for (int N = 1; N <= 10; ++N) {
            const auto env = lower_convex_envelope(worst_case_curve(K, N));
            for (std::size_t i = 1; i < env.size(); ++i) {
                CHECK(env[i].memory > env[i - 1].memory);
                CHECK(env[i].load <= env[i - 1].load);
            }
        }
}

TEST_CASE("rational formatting") {
    CHECK(rational_str(Rational(19, 15)) == "19/15");
    CHECK(rational_str(Rational(4, 2)) == "2");
    CHECK(rational_str(Rational(0)) == "0");
}
