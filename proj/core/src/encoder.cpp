#include "slfr/encoder.hpp"

#include <algorithm>
#include <sstream>
#include <string>

namespace slfr {

std::ptrdiff_t TransmissionPlan::index_of(const UserSet& S) const {
    auto it = index_.find(S);
    if (it == index_.end()) return -1;
    return static_cast<std::ptrdiff_t>(it->second);
}

namespace {

// 0 for +1, 1 for -1, per the alternating rule
int alpha_parity(const UserSet& S, const LeaderSet& L, int user) {
    const UserSet ls = leaders_in(S, L);
    auto it = std::lower_bound(ls.begin(), ls.end(), user);
    if (it != ls.end() && *it == user) return static_cast<int>(it - ls.begin()) % 2;
    const UserSet ns = nonleaders_in(S, L);
    it = std::lower_bound(ns.begin(), ns.end(), user);
    if (it != ns.end() && *it == user) return static_cast<int>(it - ns.begin()) % 2;
    throw BadSubsets("user " + std::to_string(user) + " is not in the multicast subset");
}

} // namespace

Elem alpha_coefficient(const Field& f, const UserSet& S, const LeaderSet& L, int user) {
    return f.sign(static_cast<std::uint64_t>(alpha_parity(S, L, user)));
}

MulticastMessage build_message(const FileLibrary& lib, const GfMatrix& D, const GfMatrix& Dprime,
                               const LeaderSet& L, const UserSet& S) {
    validate_user_set(S, lib.K);
    if (static_cast<int>(S.size()) != lib.t + 1)
        throw BadSubsets("multicast subset size is not t + 1");
    const Field& f = *lib.field;
    MulticastMessage msg;
    msg.subset = S;
    msg.coefficients.reserve(S.size());
    msg.payload.assign(lib.subfile_len, 0);
    for (int user : S) {
        const Elem alpha = alpha_coefficient(f, S, L, user);
        msg.coefficients.push_back(alpha);
        UserSet window = S;
        window.erase(std::find(window.begin(), window.end(), user));
        const Block blk = compute_transformed_block(lib, Dprime.row(user - 1), D, L, window);
        f.axpy(msg.payload, alpha, blk.symbols);
    }
    return msg;
}

TransmissionPlan build_plan(const FileLibrary& lib, const GfMatrix& D) {
    return build_plan(lib, D, select_leaders(D));
}

TransmissionPlan build_plan(const FileLibrary& lib, const GfMatrix& D, const LeaderSet& L) {
    if (D.rows() != lib.K || D.cols() != lib.N)
        throw BadLength("demand matrix shape does not match the library");
    if (D.field() != *lib.field) throw FieldMismatch("demand matrix is over a different field");
    validate_user_set(L.users, lib.K);
    if (L.size() != rank(D) || rank(user_rows(D, L.users)) != L.size())
        throw BadSubsets("leader rows must be a full-rank basis of the demand rows");

    TransmissionPlan plan(*lib.field);
    plan.K = lib.K;
    plan.N = lib.N;
    plan.t = lib.t;
    plan.B = lib.B;
    plan.subfile_len = lib.subfile_len;
    plan.demands = D;
    plan.leaders = L;
    plan.transformed = express_in_leader_basis(D, plan.leaders);

    if (lib.t + 1 <= lib.K) {
        for (const UserSet& S : enumerate_subsets(lib.K, lib.t + 1)) {
            if (set_intersect(S, plan.leaders.users).empty()) continue;
            plan.index_.emplace(S, plan.messages.size());
            plan.messages.push_back(build_message(lib, D, plan.transformed, plan.leaders, S));
        }
    }
    return plan;
}

bool Broadcast::operator==(const Broadcast& o) const {
    if (q != o.q || K != o.K || N != o.N || t != o.t || rank != o.rank || leaders != o.leaders ||
        subfile_len != o.subfile_len || messages.size() != o.messages.size())
        return false;
    for (std::size_t i = 0; i < messages.size(); ++i) {
        if (messages[i].subset != o.messages[i].subset ||
            messages[i].coefficients != o.messages[i].coefficients ||
            messages[i].payload != o.messages[i].payload)
            return false;
    }
    return true;
}

Broadcast extract_broadcast(const TransmissionPlan& plan) {
    Broadcast b;
    b.q = plan.field->q();
    b.K = plan.K;
    b.N = plan.N;
    b.t = plan.t;
    b.rank = plan.leaders.size();
    b.leaders = plan.leaders.users;
    b.subfile_len = plan.subfile_len;
    b.messages = plan.messages;
    return b;
}

namespace {

constexpr std::uint8_t kWireVersion = 1;

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xFF));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    put_u16(out, static_cast<std::uint16_t>(v & 0xFFFF));
    put_u16(out, static_cast<std::uint16_t>(v >> 16));
}

struct Reader {
    const std::vector<std::uint8_t>& b;
    std::size_t pos = 0;

    std::uint8_t u8() {
        if (pos >= b.size()) throw ParseError("truncated payload");
        return b[pos++];
    }
    std::uint16_t u16() {
        const std::uint16_t lo = u8();
        return static_cast<std::uint16_t>(lo | (static_cast<std::uint16_t>(u8()) << 8));
    }
    std::uint32_t u32() {
        const std::uint32_t lo = u16();
        return lo | (static_cast<std::uint32_t>(u16()) << 16);
    }
};

} // namespace

std::vector<std::uint8_t> serialize_payload(const TransmissionPlan& plan) {
    const unsigned q = plan.field->q();
    std::vector<std::uint8_t> out;
    out.insert(out.end(), {'S', 'L', 'F', 'R', kWireVersion});
    put_u32(out, q);
    put_u16(out, static_cast<std::uint16_t>(plan.K));
    put_u16(out, static_cast<std::uint16_t>(plan.N));
    put_u16(out, static_cast<std::uint16_t>(plan.t));
    put_u16(out, static_cast<std::uint16_t>(plan.leaders.size()));
    for (int u : plan.leaders.users) put_u16(out, static_cast<std::uint16_t>(u));
    put_u32(out, static_cast<std::uint32_t>(plan.subfile_len));
    put_u32(out, static_cast<std::uint32_t>(plan.messages.size()));
    const bool wide = q > 256;
    const Elem minus = plan.field->minus_one();
    for (const auto& m : plan.messages) {
        for (int u : m.subset) put_u16(out, static_cast<std::uint16_t>(u));
        for (Elem c : m.coefficients)
            out.push_back(static_cast<std::uint8_t>(q > 2 && c == minus ? 1 : 0));
        for (Elem v : m.payload) {
            out.push_back(static_cast<std::uint8_t>(v & 0xFF));
            if (wide) out.push_back(static_cast<std::uint8_t>(v >> 8));
        }
    }
    return out;
}

Broadcast deserialize_payload(const std::vector<std::uint8_t>& bytes) {
    Reader r{bytes};
    if (r.u8() != 'S' || r.u8() != 'L' || r.u8() != 'F' || r.u8() != 'R')
        throw ParseError("bad payload magic");
    if (r.u8() != kWireVersion) throw ParseError("unsupported payload version");
    Broadcast b;
    b.q = r.u32();
    if (b.q < 2) throw ParseError("bad field order in payload");
    b.K = r.u16();
    b.N = r.u16();
    b.t = r.u16();
    b.rank = r.u16();
    b.leaders.resize(b.rank);
    for (auto& u : b.leaders) u = r.u16();
    b.subfile_len = r.u32();
    const std::uint32_t count = r.u32();
    const bool wide = b.q > 256;
    // signs travel as rule bits; turn them back into field elements
    const Field f(b.q);
    const Elem minus = f.minus_one();
    b.messages.resize(count);
    for (auto& m : b.messages) {
        m.subset.resize(b.t + 1);
        for (auto& u : m.subset) u = r.u16();
        m.coefficients.resize(b.t + 1);
        for (auto& c : m.coefficients) c = (r.u8() ? minus : f.one());
        m.payload.resize(b.subfile_len);
        for (auto& v : m.payload) {
            unsigned val = r.u8();
            if (wide) val |= static_cast<unsigned>(r.u8()) << 8;
            if (val >= b.q) throw ParseError("payload symbol out of field range");
            v = static_cast<Elem>(val);
        }
    }
    return b;
}

std::string plan_summary_json(const TransmissionPlan& plan) {
    std::ostringstream os;
    os << "{\"q\":" << plan.field->q() << ",\"k\":" << plan.K << ",\"n\":" << plan.N
       << ",\"t\":" << plan.t << ",\"rank\":" << plan.leaders.size() << ",\"leaders\":[";
    for (std::size_t i = 0; i < plan.leaders.users.size(); ++i)
        os << (i ? "," : "") << plan.leaders.users[i];
    os << "],\"message_count\":" << plan.messages.size() << ",\"messages\":[";
    for (std::size_t mi = 0; mi < plan.messages.size(); ++mi) {
        const auto& m = plan.messages[mi];
        os << (mi ? "," : "") << "{\"subset\":[";
        for (std::size_t i = 0; i < m.subset.size(); ++i) os << (i ? "," : "") << m.subset[i];
        os << "],\"signs\":[";
        for (std::size_t i = 0; i < m.subset.size(); ++i) {
            const int parity = alpha_parity(m.subset, plan.leaders, m.subset[i]);
            os << (i ? "," : "") << (parity ? -1 : 1);
        }
        os << "]}";
    }
    os << "]}";
    return os.str();
}

} // namespace slfr
