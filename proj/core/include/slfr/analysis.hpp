#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "slfr/decoder.hpp"
#include "slfr/encoder.hpp"
#include "slfr/matrix.hpp"

namespace slfr {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// C(n, k) with the convention that it is 0 when n < 0, k < 0 or n < k.
BigInt binom(long long n, long long k);

std::string rational_str(const Rational& r);

/// One corner of a memory-load tradeoff, tagged with its t.
struct LoadPoint {
    Rational memory;
    Rational load;
    int t = 0;

    bool operator==(const LoadPoint& o) const {
        return memory == o.memory && load == o.load && t == o.t;
    }
};

/// Load for cache parameter t when the demand matrix has rank r:
/// (C(K,t+1) - C(K-r,t+1)) / C(K,t).
Rational achievable_load(int K, int t, int r);

/// Corner points (Nt/K, C(K,t+1)/C(K,t)) for t in [0..K].
std::vector<LoadPoint> man_curve(int K, int N);

/// Worst-case corner points (Nt/K, achievable_load(K,t,min(K,N))); this
/// curve is both achievable and optimal under uncoded placement.
std::vector<LoadPoint> worst_case_curve(int K, int N);

/// Number of K x N matrices over GF(q) of each rank, counted exactly.
struct RankDistribution {
    std::vector<BigInt> count; // index r in [0, min(K,N)]
    BigInt total;              // q^(K*N)
};
RankDistribution rank_distribution(int K, int N, unsigned q);

/// Expected load over uniformly random demand matrices, exact.
Rational average_load_exact(int K, int N, unsigned q, int t, bool include_zero_rows = true);

struct MonteCarloEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t trials = 0;
};
MonteCarloEstimate average_load_montecarlo(const Field& f, int K, int N, int t, std::size_t trials,
                                           std::uint64_t seed, bool include_zero_rows = true);

/// Device-to-device delivery load for a concrete demand matrix. t in [1..K].
Rational d2d_load(const GfMatrix& D, int t);
/// Worst case with every leave-one-out rank at min(K-1, N).
Rational d2d_worst_load_analytic(int K, int N, int t);
/// Worst case by exhausting all q^(K*N) demand matrices; TooLarge beyond 2^20.
Rational d2d_worst_load_search(const Field& f, int K, int N, int t);
/// Exhaustive search while it fits, analytic maximizer past the guard.
Rational d2d_worst_load(const Field& f, int K, int N, int t);
std::vector<LoadPoint> d2d_curve(int K, int N);

/// Distinct demanded functions up to scaling: (q^N - 1)/(q - 1).
std::uint64_t num_canonical_functions(unsigned q, int N);
/// Nonzero demand vectors with leading coefficient 1, in ascending value order.
std::vector<std::vector<Elem>> canonical_functions(const Field& f, int N);

/// Demand-private corner point for t in [1..N'K] over the padded system.
LoadPoint private_load(int K, int N, unsigned q, int t);
std::vector<LoadPoint> private_curve(int K, int N, unsigned q);

/// Padded-system instantiation: N'K users, every canonical function
/// demanded exactly K times, real users first. Runs the full pipeline on
/// the padded system and verifies decoding. TooLarge when N'K > 12.
struct PrivateConstruction {
    int virtual_users = 0;      // N'K
    GfMatrix padded_demands;    // N'K x N
    TransmissionPlan plan;
    DecodeReport report;
    Rational load;
};
PrivateConstruction private_construct(const Field& f, int K, int N, int t, const GfMatrix& real_demands,
                                      std::size_t subfile_symbols, std::uint64_t seed);

/// Exact lower hull over memory; collinear points are retained.
/// Throws Empty on an empty input.
std::vector<LoadPoint> lower_convex_envelope(std::vector<LoadPoint> points);

} // namespace slfr
