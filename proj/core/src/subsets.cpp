#include "slfr/subsets.hpp"

#include <algorithm>
#include <string>

namespace slfr {

std::uint64_t binom64(long long n, long long k) {
    if (n < 0 || k < 0 || n < k) return 0;
    if (k > n - k) k = n - k;
    std::uint64_t r = 1;
    for (long long i = 1; i <= k; ++i) {
        std::uint64_t num = static_cast<std::uint64_t>(n - k + i);
        if (r > UINT64_MAX / num) throw TooLarge("binomial overflow");
        r = r * num / static_cast<std::uint64_t>(i);
    }
    return r;
}

bool is_sorted_set(const UserSet& s) {
    for (std::size_t i = 1; i < s.size(); ++i)
        if (s[i - 1] >= s[i]) return false;
    return true;
}

void validate_user_set(const UserSet& s, int max_user) {
    if (!is_sorted_set(s))
        throw BadSubsets("user set is not strictly increasing");
    if (!s.empty() && (s.front() < 1 || s.back() > max_user))
        throw BadSubsets("user index out of [1, " + std::to_string(max_user) + "]");
}

UserSet set_union(const UserSet& a, const UserSet& b) {
    UserSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

UserSet set_intersect(const UserSet& a, const UserSet& b) {
    UserSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

UserSet set_difference(const UserSet& a, const UserSet& b) {
    UserSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool set_contains(const UserSet& s, int v) {
    return std::binary_search(s.begin(), s.end(), v);
}

bool is_subset_of(const UserSet& a, const UserSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::vector<UserSet> enumerate_subsets(int K, int t) {
    if (t < 0 || t > K)
        throw BadSubsets("subset size " + std::to_string(t) + " outside [0, " + std::to_string(K) + "]");
    std::vector<UserSet> out;
    out.reserve(binom64(K, t));
    UserSet s(t);
    for (int i = 0; i < t; ++i) s[i] = i + 1;
    while (true) {
        out.push_back(s);
        // colex successor: bump the smallest position that can move,
        // reset everything below it
        int i = 0;
        while (i < t) {
            int cap = (i + 1 < t) ? s[i + 1] - 1 : K;
            if (s[i] < cap) break;
            ++i;
        }
        if (i == t) break;
        ++s[i];
        for (int j = 0; j < i; ++j) s[j] = j + 1;
    }
    return out;
}

std::uint64_t subset_rank(const UserSet& S) {
    std::uint64_t r = 0;
    for (std::size_t i = 0; i < S.size(); ++i)
        r += binom64(S[i] - 1, static_cast<long long>(i) + 1);
    return r;
}

UserSet subset_unrank(std::uint64_t r, int K, int t) {
    UserSet s(t);
    for (int i = t; i >= 1; --i) {
        int e = K;
        while (e >= i && binom64(e - 1, i) > r) --e;
        s[i - 1] = e;
        r -= binom64(e - 1, i);
    }
    return s;
}

int LeaderSet::index_of(int user) const {
    auto it = std::lower_bound(users.begin(), users.end(), user);
    if (it == users.end() || *it != user) return 0;
    return static_cast<int>(it - users.begin()) + 1;
}

UserSet leaders_in(const UserSet& S, const LeaderSet& L) { return set_intersect(S, L.users); }

UserSet nonleaders_in(const UserSet& S, const LeaderSet& L) { return set_difference(S, L.users); }

std::vector<int> ind(const UserSet& S, const LeaderSet& L) {
    std::vector<int> out;
    for (std::size_t i = 0; i < L.users.size(); ++i)
        if (set_contains(S, L.users[i])) out.push_back(static_cast<int>(i) + 1);
    return out;
}

std::vector<int> ind_bar(const UserSet& S, const UserSet& A) {
    std::vector<int> out;
    for (std::size_t i = 0; i < A.size(); ++i)
        if (!set_contains(S, A[i])) out.push_back(static_cast<int>(i) + 1);
    return out;
}

long long tot(const std::vector<int>& X) {
    long long s = 0;
    for (int v : X) s += v;
    return s;
}

int card_below(const std::vector<int>& X, int y) {
    int c = 0;
    for (int v : X)
        if (v < y) ++c;
    return c;
}

std::vector<std::vector<int>> enumerate_permutations(int n) {
    if (n > 8) throw TooLarge("permutation enumeration capped at n = 8");
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i + 1;
    std::vector<std::vector<int>> out;
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

} // namespace slfr
