#pragma once

#include <map>
#include <mutex>
#include <vector>

#include "slfr/encoder.hpp"

namespace slfr {

/// Combination weight beta_{A,S} that rebuilds the untransmitted W_A from
/// transmitted messages: a signed minor of the leader-basis demand matrix,
/// (-1)^(1 + Tot(IndBar_S)) * det(Dprime_{A\S, Ind_S}).
/// Preconditions (else BadSubsets): |A| = |S|, A disjoint from L,
/// S a subset of A ∪ L, S != A.
Elem beta(const UserSet& A, const UserSet& S, const GfMatrix& Dprime, const LeaderSet& L);

/// Same coefficient by expanding the determinant as a signed sum over
/// permutations; independent implementation kept for cross-validation.
/// Throws TooLarge when |Ind_S| > 8.
Elem beta_oracle(const UserSet& A, const UserSet& S, const GfMatrix& Dprime, const LeaderSet& L);

/// W_A = sum over S ⊆ A ∪ L, |S| = |A|, S != A of beta_{A,S} * W_S,
/// computed from transmitted messages only. Requires A ∩ L = ∅.
MulticastMessage reconstruct_missing(const TransmissionPlan& plan, const UserSet& A);

/// All V ⊆ B with |V| = |L| whose demand rows are full-rank over GF(2).
/// Throws WrongField when q != 2.
std::vector<UserSet> xor_family(const UserSet& B, const GfMatrix& D, const LeaderSet& L);

/// Binary-field reconstruction path: W_A as the XOR of W_{(A∪L)\V} over
/// the full-rank family V of A ∪ L, V != L.
MulticastMessage reconstruct_missing_xor(const TransmissionPlan& plan, const UserSet& A);

/// Number of users k in B\W with full-rank D_{B\(W∪{k})} and y_{k,i} != 0;
/// each such user contributes one multicast message containing subfile
/// (i, W) to the cancellation sum, so the count must be even.
struct Lemma1Report {
    int qualifying = 0;
    bool even() const { return qualifying % 2 == 0; }
};
Lemma1Report lemma1_check(const UserSet& B, const GfMatrix& D, const LeaderSet& L, int file_i, const UserSet& W);

/// Memoized untransmitted-message store shared by the users of one plan.
class ReconstructionCache {
public:
    explicit ReconstructionCache(const TransmissionPlan& plan) : plan_(&plan) {}
    const MulticastMessage& get(const UserSet& A);

private:
    const TransmissionPlan* plan_;
    std::mutex mu_;
    std::map<UserSet, MulticastMessage> memo_;
};

/// Recovers user k's demanded function from the public demand matrix, its
/// own cache and the broadcast alone: every block with a window holding k
/// comes from the cache, every other block is peeled out of W_{W∪{k}}
/// (transmitted or reconstructed) by cancelling the cache-computable
/// terms and dividing by the user's own coefficient.
/// Throws DecodeMismatch if the two cache-side block routes disagree.
std::vector<Elem> user_decode(int k, const CacheContent& Zk, const TransmissionPlan& plan,
                              ReconstructionCache& cache);

struct UserDecodeResult {
    int user = 0;
    std::vector<Elem> decoded;
    bool match = false;
};

struct ReconstructionResidual {
    UserSet subset;
    std::size_t nonzero_symbols = 0;
};

struct DecodeReport {
    std::vector<UserDecodeResult> users;
    std::vector<ReconstructionResidual> residuals;

    bool all_match() const;
    bool residuals_zero() const;
    bool ok() const { return all_match() && residuals_zero(); }
};

/// Full verification pass: decodes every user, compares against the
/// ground-truth demanded functions, and checks every untransmitted W_A
/// against its direct construction.
DecodeReport decode_all(const FileLibrary& lib, const std::vector<CacheContent>& caches,
                        const TransmissionPlan& plan);

} // namespace slfr
