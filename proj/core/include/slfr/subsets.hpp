#pragma once

#include <cstdint>
#include <vector>

#include "slfr/errors.hpp"

namespace slfr {

/// Strictly increasing list of 1-based user indices.
using UserSet = std::vector<int>;

/// C(n, k) in 64 bits; 0 when n < 0, k < 0 or n < k. Throws TooLarge on overflow.
std::uint64_t binom64(long long n, long long k);

bool is_sorted_set(const UserSet& s);
/// Throws BadSubsets unless s is strictly increasing with entries in [1, max_user].
void validate_user_set(const UserSet& s, int max_user);

UserSet set_union(const UserSet& a, const UserSet& b);
UserSet set_intersect(const UserSet& a, const UserSet& b);
UserSet set_difference(const UserSet& a, const UserSet& b);
bool set_contains(const UserSet& s, int v);
bool is_subset_of(const UserSet& a, const UserSet& b);

/// All t-subsets of [1..K] in colexicographic order.
std::vector<UserSet> enumerate_subsets(int K, int t);
/// Colexicographic rank of a t-subset (inverse of subset_unrank).
std::uint64_t subset_rank(const UserSet& S);
UserSet subset_unrank(std::uint64_t r, int K, int t);

/// Leader users: sorted 1-based indices; position i (1-based) is the
/// leader index of user users[i-1].
struct LeaderSet {
    UserSet users;

    int size() const { return static_cast<int>(users.size()); }
    bool contains(int user) const { return set_contains(users, user); }
    /// 1-based leader index of a user, 0 if the user is not a leader.
    int index_of(int user) const;
};

/// S ∩ L, sorted.
UserSet leaders_in(const UserSet& S, const LeaderSet& L);
/// S \ L, sorted.
UserSet nonleaders_in(const UserSet& S, const LeaderSet& L);

/// Leader indices of the leaders present in S: {i : L(i) in S}, sorted.
std::vector<int> ind(const UserSet& S, const LeaderSet& L);
/// Positions of the members of A missing from S: {i in [|A|] : A(i) not in S}, sorted.
std::vector<int> ind_bar(const UserSet& S, const UserSet& A);

/// Sum of the elements of X.
long long tot(const std::vector<int>& X);
/// Number of elements of X strictly smaller than y.
int card_below(const std::vector<int>& X, int y);

/// All permutations of [1..n] in lexicographic order. Throws TooLarge for n > 8.
std::vector<std::vector<int>> enumerate_permutations(int n);

} // namespace slfr
