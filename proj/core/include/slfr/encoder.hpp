#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "slfr/matrix.hpp"
#include "slfr/placement.hpp"

namespace slfr {

/// One multicast transmission W_S serving the t+1 users of S: the signed
/// sum of each member's missing block. Coefficients are +1/-1 field
/// elements, stored per user in subset order.
struct MulticastMessage {
    UserSet subset;
    std::vector<Elem> coefficients;
    std::vector<Elem> payload;
};

/// The broadcast: every W_S with |S| = t+1 and S touching the leader set,
/// in colex order of S, together with the demand matrix and its
/// leader-basis form needed to decode.
struct TransmissionPlan {
    explicit TransmissionPlan(const Field& f)
        : field(&f), demands(f, 0, 0), transformed(f, 0, 0) {}

    const Field* field = nullptr;
    int K = 0;
    int N = 0;
    int t = 0;
    std::size_t B = 0;
    std::size_t subfile_len = 0;
    GfMatrix demands;     // K x N
    LeaderSet leaders;
    GfMatrix transformed; // K x |L|, rows x_k with x_k * D_L = y_k
    std::vector<MulticastMessage> messages;

    /// Index into messages, or -1 when S is not transmitted.
    std::ptrdiff_t index_of(const UserSet& S) const;

private:
    friend TransmissionPlan build_plan(const FileLibrary&, const GfMatrix&, const LeaderSet&);
    std::map<UserSet, std::size_t> index_;
};

/// The alternating coefficient of a user inside W_S: (-1)^(i-1) for the
/// i-th leader of S in sorted order, (-1)^(j-1) for the j-th non-leader.
Elem alpha_coefficient(const Field& f, const UserSet& S, const LeaderSet& L, int user);

MulticastMessage build_message(const FileLibrary& lib, const GfMatrix& D, const GfMatrix& Dprime,
                               const LeaderSet& L, const UserSet& S);

/// Plans with the greedy lowest-index leader set.
TransmissionPlan build_plan(const FileLibrary& lib, const GfMatrix& D);
/// Same delivery under a caller-chosen leader set; any full-rank choice of
/// rank(D) users works and changes which subsets go on air, not how many.
/// Throws BadSubsets if the given set is not a valid leader set.
TransmissionPlan build_plan(const FileLibrary& lib, const GfMatrix& D, const LeaderSet& L);

/// The part of the plan that actually goes over the channel.
struct Broadcast {
    unsigned q = 0;
    int K = 0;
    int N = 0;
    int t = 0;
    int rank = 0;
    UserSet leaders;
    std::size_t subfile_len = 0;
    std::vector<MulticastMessage> messages;

    bool operator==(const Broadcast& o) const;
};

Broadcast extract_broadcast(const TransmissionPlan& plan);

/// Canonical wire format, bit-exact for identical inputs.
std::vector<std::uint8_t> serialize_payload(const TransmissionPlan& plan);
Broadcast deserialize_payload(const std::vector<std::uint8_t>& bytes);

/// Deterministic JSON with subsets and signs but no payloads.
std::string plan_summary_json(const TransmissionPlan& plan);

} // namespace slfr
