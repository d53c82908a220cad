#include "slfr/decoder.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace slfr {

namespace {

void check_beta_inputs(const UserSet& A, const UserSet& S, const GfMatrix& Dprime, const LeaderSet& L) {
    validate_user_set(A, Dprime.rows());
    validate_user_set(S, Dprime.rows());
    if (A.size() != S.size()) throw BadSubsets("|A| and |S| differ");
    if (!set_intersect(A, L.users).empty()) throw BadSubsets("A contains a leader");
    if (!is_subset_of(S, set_union(A, L.users))) throw BadSubsets("S is not inside A ∪ L");
    if (S == A) throw BadSubsets("S must differ from A");
}

std::vector<int> to_rows0(const UserSet& users) {
    std::vector<int> out;
    out.reserve(users.size());
    for (int u : users) out.push_back(u - 1);
    return out;
}

std::vector<int> to_cols0(const std::vector<int>& leader_indices) {
    std::vector<int> out;
    out.reserve(leader_indices.size());
    for (int i : leader_indices) out.push_back(i - 1);
    return out;
}

} // namespace

Elem beta(const UserSet& A, const UserSet& S, const GfMatrix& Dprime, const LeaderSet& L) {
    check_beta_inputs(A, S, Dprime, L);
    const Field& f = Dprime.field();
    const std::vector<int> ind_s = ind(S, L);
    const std::vector<int> bar = ind_bar(S, A);
    const GfMatrix minor = submatrix(Dprime, to_rows0(set_difference(A, S)), to_cols0(ind_s));
    return f.mul(f.sign(1 + static_cast<std::uint64_t>(tot(bar))), det(minor));
}

Elem beta_oracle(const UserSet& A, const UserSet& S, const GfMatrix& Dprime, const LeaderSet& L) {
    check_beta_inputs(A, S, Dprime, L);
    const Field& f = Dprime.field();
    const std::vector<int> ind_s = ind(S, L);
    const std::vector<int> bar = ind_bar(S, A);
    const int n = static_cast<int>(ind_s.size());
    if (n > 8) throw TooLarge("permutation expansion capped at |Ind_S| = 8");
    if (static_cast<int>(bar.size()) != n)
        throw BadSubsets("|IndBar_S| and |Ind_S| differ");
    const long long tot_bar = tot(bar);
    Elem acc = 0;
    for (const auto& u : enumerate_permutations(n)) {
        long long parity = 1 + tot_bar;
        for (int i1 = 1; i1 <= n; ++i1) {
            // Card([n] \ {u_1..u_{i1}}, u_{i1})
            std::vector<int> rest;
            for (int v = 1; v <= n; ++v)
                if (std::find(u.begin(), u.begin() + i1, v) == u.begin() + i1) rest.push_back(v);
            parity += card_below(rest, u[i1 - 1]);
        }
        Elem term = f.sign(static_cast<std::uint64_t>(parity));
        for (int i2 = 1; i2 <= n; ++i2) {
            const int row_user = A[bar[u[i2 - 1] - 1] - 1];
            term = f.mul(term, Dprime.at(row_user - 1, ind_s[i2 - 1] - 1));
        }
        acc = f.add(acc, term);
    }
    return acc;
}

MulticastMessage reconstruct_missing(const TransmissionPlan& plan, const UserSet& A) {
    validate_user_set(A, plan.K);
    if (static_cast<int>(A.size()) != plan.t + 1) throw BadSubsets("|A| is not t + 1");
    if (!set_intersect(A, plan.leaders.users).empty())
        throw BadSubsets("A intersects the leader set; W_A was transmitted");
    const Field& f = *plan.field;
    MulticastMessage msg;
    msg.subset = A;
    for (int u : A) msg.coefficients.push_back(alpha_coefficient(f, A, plan.leaders, u));
    msg.payload.assign(plan.subfile_len, 0);

    const UserSet pool = set_union(A, plan.leaders.users);
    const int m = static_cast<int>(pool.size());
    for (const UserSet& pick : enumerate_subsets(m, plan.t + 1)) {
        UserSet S;
        S.reserve(pick.size());
        for (int p : pick) S.push_back(pool[p - 1]);
        if (S == A) continue;
        const Elem b = beta(A, S, plan.transformed, plan.leaders);
        if (b == 0) continue;
        const std::ptrdiff_t idx = plan.index_of(S);
        if (idx < 0) throw Inconsistent("transmitted message missing from the plan");
        f.axpy(msg.payload, b, plan.messages[static_cast<std::size_t>(idx)].payload);
    }
    return msg;
}

std::vector<UserSet> xor_family(const UserSet& B, const GfMatrix& D, const LeaderSet& L) {
    if (D.field().q() != 2) throw WrongField("the full-rank XOR family is a GF(2) construction");
    validate_user_set(B, D.rows());
    const int r = L.size();
    std::vector<UserSet> family;
    const int m = static_cast<int>(B.size());
    if (r > m) return family;
    for (const UserSet& pick : enumerate_subsets(m, r)) {
        UserSet V;
        V.reserve(pick.size());
        for (int p : pick) V.push_back(B[p - 1]);
        if (rank(user_rows(D, V)) == r) family.push_back(V);
    }
    return family;
}

MulticastMessage reconstruct_missing_xor(const TransmissionPlan& plan, const UserSet& A) {
    const Field& f = *plan.field;
    if (f.q() != 2) throw WrongField("XOR reconstruction requires GF(2)");
    validate_user_set(A, plan.K);
    if (static_cast<int>(A.size()) != plan.t + 1) throw BadSubsets("|A| is not t + 1");
    if (!set_intersect(A, plan.leaders.users).empty())
        throw BadSubsets("A intersects the leader set; W_A was transmitted");
    MulticastMessage msg;
    msg.subset = A;
    for (int u : A) msg.coefficients.push_back(alpha_coefficient(f, A, plan.leaders, u));
    msg.payload.assign(plan.subfile_len, 0);
    const UserSet B = set_union(A, plan.leaders.users);
    for (const UserSet& V : xor_family(B, plan.demands, plan.leaders)) {
        if (V == plan.leaders.users) continue;
        const UserSet S = set_difference(B, V);
        const std::ptrdiff_t idx = plan.index_of(S);
        if (idx < 0) throw Inconsistent("transmitted message missing from the plan");
        f.add_in_place(msg.payload, plan.messages[static_cast<std::size_t>(idx)].payload);
    }
    return msg;
}

Lemma1Report lemma1_check(const UserSet& B, const GfMatrix& D, const LeaderSet& L, int file_i, const UserSet& W) {
    if (D.field().q() != 2) throw WrongField("the parity lemma is a GF(2) statement");
    validate_user_set(B, D.rows());
    if (!is_subset_of(W, B)) throw BadSubsets("W is not inside B");
    if (file_i < 1 || file_i > D.cols()) throw IndexOutOfRange("file index " + std::to_string(file_i));
    Lemma1Report rep;
    for (int k : set_difference(B, W)) {
        if (D.at(k - 1, file_i - 1) == 0) continue;
        UserSet rest = set_difference(B, W);
        rest.erase(std::find(rest.begin(), rest.end(), k));
        if (rank(user_rows(D, rest)) == L.size()) ++rep.qualifying;
    }
    return rep;
}

const MulticastMessage& ReconstructionCache::get(const UserSet& A) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = memo_.find(A);
    if (it == memo_.end()) it = memo_.emplace(A, reconstruct_missing(*plan_, A)).first;
    return it->second;
}

namespace {

// B'_{u,W} from a cache holding every subfile with a window in W
std::vector<Elem> block_from_cache(const CacheContent& Z, const TransmissionPlan& plan, int u,
                                   std::size_t w_rank) {
    const Field& f = *plan.field;
    std::vector<Elem> out(plan.subfile_len, 0);
    std::vector<Elem> transformed(plan.subfile_len);
    for (int i = 1; i <= plan.leaders.size(); ++i) {
        const Elem x = plan.transformed.at(u - 1, i - 1);
        if (x == 0) continue;
        std::fill(transformed.begin(), transformed.end(), 0);
        for (int j = 1; j <= plan.N; ++j)
            f.axpy(transformed, plan.demands.at(plan.leaders.users[i - 1] - 1, j - 1), Z.subfile(j, w_rank));
        f.axpy(out, x, transformed);
    }
    return out;
}

// the same block straight from the user's own demand row
std::vector<Elem> block_from_cache_direct(const CacheContent& Z, const TransmissionPlan& plan, int u,
                                          std::size_t w_rank) {
    const Field& f = *plan.field;
    std::vector<Elem> out(plan.subfile_len, 0);
    for (int j = 1; j <= plan.N; ++j)
        f.axpy(out, plan.demands.at(u - 1, j - 1), Z.subfile(j, w_rank));
    return out;
}

} // namespace

std::vector<Elem> user_decode(int k, const CacheContent& Zk, const TransmissionPlan& plan,
                              ReconstructionCache& cache) {
    if (k < 1 || k > plan.K) throw IndexOutOfRange("user " + std::to_string(k));
    if (Zk.user != k) throw BadSubsets("cache belongs to a different user");
    const Field& f = *plan.field;
    std::vector<Elem> out(plan.B, 0);
    const auto windows = enumerate_subsets(plan.K, plan.t);
    for (std::size_t w = 0; w < windows.size(); ++w) {
        const UserSet& W = windows[w];
        std::vector<Elem> block;
        if (set_contains(W, k)) {
            block = block_from_cache(Zk, plan, k, w);
            // the leader-basis route must agree with the raw demand row
            if (block != block_from_cache_direct(Zk, plan, k, w))
                throw DecodeMismatch("leader-basis block disagrees with the demand row for user " +
                                     std::to_string(k));
        } else {
            const UserSet S = set_union(W, {k});
            const std::ptrdiff_t idx = plan.index_of(S);
            const MulticastMessage& msg =
                idx >= 0 ? plan.messages[static_cast<std::size_t>(idx)] : cache.get(S);
            block = msg.payload;
            for (std::size_t pos = 0; pos < S.size(); ++pos) {
                const int other = S[pos];
                if (other == k) continue;
                UserSet window = S;
                window.erase(std::find(window.begin(), window.end(), other));
                const auto partner = block_from_cache(Zk, plan, other, subset_rank(window));
                f.axpy(block, f.neg(msg.coefficients[pos]), partner);
            }
            const auto self = std::find(S.begin(), S.end(), k);
            const Elem own = msg.coefficients[static_cast<std::size_t>(self - S.begin())];
            f.scale_in_place(block, f.inv(own));
        }
        std::copy(block.begin(), block.end(), out.begin() + static_cast<std::ptrdiff_t>(w * plan.subfile_len));
    }
    return out;
}

bool DecodeReport::all_match() const {
    return std::all_of(users.begin(), users.end(), [](const auto& u) { return u.match; });
}

bool DecodeReport::residuals_zero() const {
    return std::all_of(residuals.begin(), residuals.end(),
                       [](const auto& r) { return r.nonzero_symbols == 0; });
}

DecodeReport decode_all(const FileLibrary& lib, const std::vector<CacheContent>& caches,
                        const TransmissionPlan& plan) {
    const Field& f = *lib.field;
    DecodeReport report;
    ReconstructionCache cache(plan);
    for (int k = 1; k <= plan.K; ++k) {
        UserDecodeResult res;
        res.user = k;
        res.decoded = user_decode(k, caches[static_cast<std::size_t>(k - 1)], plan, cache);
        std::vector<Elem> truth(lib.B, 0);
        for (int j = 1; j <= lib.N; ++j) f.axpy(truth, plan.demands.at(k - 1, j - 1), lib.file(j));
        res.match = (res.decoded == truth);
        report.users.push_back(std::move(res));
    }
    UserSet all(plan.K);
    std::iota(all.begin(), all.end(), 1);
    const UserSet nonleaders = nonleaders_in(all, plan.leaders);
    if (static_cast<int>(nonleaders.size()) >= plan.t + 1) {
        const int m = static_cast<int>(nonleaders.size());
        for (const UserSet& pick : enumerate_subsets(m, plan.t + 1)) {
            UserSet A;
            A.reserve(pick.size());
            for (int p : pick) A.push_back(nonleaders[p - 1]);
            const MulticastMessage direct =
                build_message(lib, plan.demands, plan.transformed, plan.leaders, A);
            const MulticastMessage rebuilt = reconstruct_missing(plan, A);
            ReconstructionResidual res;
            res.subset = A;
            for (std::size_t i = 0; i < direct.payload.size(); ++i)
                if (f.sub(rebuilt.payload[i], direct.payload[i]) != 0) ++res.nonzero_symbols;
            report.residuals.push_back(std::move(res));
        }
    }
    return report;
}

} // namespace slfr
