#include "slfr/placement.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <string>

#include "slfr/rng.hpp"

namespace slfr {

namespace {

void check_geometry(int N, std::size_t B, int K, int t) {
    if (N < 1) throw BadLength("need at least one file");
    if (K < 1) throw BadLength("need at least one user");
    if (t < 0 || t > K) throw BadT("t = " + std::to_string(t) + " outside [0, " + std::to_string(K) + "]");
    const std::uint64_t parts = binom64(K, t);
    if (B == 0 || B % parts != 0)
        throw BadLength("B = " + std::to_string(B) + " is not a positive multiple of C(K,t) = " + std::to_string(parts));
}

} // namespace

std::span<const Elem> FileLibrary::file(int i) const {
    if (i < 1 || i > N) throw IndexOutOfRange("file index " + std::to_string(i));
    return {symbols.data() + static_cast<std::size_t>(i - 1) * B, B};
}

std::span<const Elem> FileLibrary::subfile(int i, std::size_t w_rank) const {
    if (w_rank >= num_subfiles()) throw IndexOutOfRange("subset rank " + std::to_string(w_rank));
    return file(i).subspan(w_rank * subfile_len, subfile_len);
}

std::span<const Elem> FileLibrary::subfile(int i, const UserSet& W) const {
    return subfile(i, subset_rank(W));
}

FileLibrary generate_library(const Field& f, int N, std::size_t B, int K, int t, std::uint64_t seed) {
    check_geometry(N, B, K, t);
    FileLibrary lib;
    lib.field = &f;
    lib.N = N;
    lib.K = K;
    lib.t = t;
    lib.B = B;
    lib.subfile_len = B / binom64(K, t);
    lib.seed = seed;
    lib.symbols.resize(static_cast<std::size_t>(N) * B);
    SplitMix64 rng(seed);
    for (auto& s : lib.symbols) s = rng.elem(f);
    return lib;
}

FileLibrary library_from_symbols(const Field& f, int N, std::size_t B, int K, int t, std::vector<Elem> symbols) {
    check_geometry(N, B, K, t);
    if (symbols.size() != static_cast<std::size_t>(N) * B)
        throw BadLength("symbol count does not match N x B");
    for (Elem v : symbols) f.check(v);
    FileLibrary lib;
    lib.field = &f;
    lib.N = N;
    lib.K = K;
    lib.t = t;
    lib.B = B;
    lib.subfile_len = B / binom64(K, t);
    lib.symbols = std::move(symbols);
    return lib;
}

bool CacheContent::caches(std::size_t w_rank) const {
    return std::binary_search(windows.begin(), windows.end(), w_rank);
}

std::span<const Elem> CacheContent::subfile(int i, std::size_t w_rank) const {
    if (i < 1 || i > num_files) throw IndexOutOfRange("file index " + std::to_string(i));
    auto it = std::lower_bound(windows.begin(), windows.end(), w_rank);
    if (it == windows.end() || *it != w_rank)
        throw IndexOutOfRange("user " + std::to_string(user) + " does not cache window rank " + std::to_string(w_rank));
    const std::size_t local = static_cast<std::size_t>(it - windows.begin());
    const std::size_t off = (static_cast<std::size_t>(i - 1) * windows.size() + local) * subfile_len;
    return {stored.data() + off, subfile_len};
}

std::vector<CacheContent> man_place(const FileLibrary& lib) {
    const auto subsets = enumerate_subsets(lib.K, lib.t);
    std::vector<CacheContent> caches(lib.K);
    for (int k = 1; k <= lib.K; ++k) {
        CacheContent& z = caches[k - 1];
        z.user = k;
        z.num_files = lib.N;
        z.subfile_len = lib.subfile_len;
        for (std::size_t w = 0; w < subsets.size(); ++w)
            if (set_contains(subsets[w], k)) z.windows.push_back(w);
        z.stored.reserve(static_cast<std::size_t>(lib.N) * z.windows.size() * lib.subfile_len);
        for (int i = 1; i <= lib.N; ++i)
            for (std::size_t w : z.windows) {
                auto sf = lib.subfile(i, w);
                z.stored.insert(z.stored.end(), sf.begin(), sf.end());
            }
    }
    return caches;
}

Block compute_block(const FileLibrary& lib, std::span<const Elem> y, const UserSet& W) {
    if (y.size() != static_cast<std::size_t>(lib.N)) throw BadLength("demand row length is not N");
    validate_user_set(W, lib.K);
    if (static_cast<int>(W.size()) != lib.t) throw BadSubsets("window size is not t");
    const Field& f = *lib.field;
    Block b;
    b.window = W;
    b.symbols.assign(lib.subfile_len, 0);
    const std::size_t w = subset_rank(W);
    for (int i = 1; i <= lib.N; ++i) f.axpy(b.symbols, y[i - 1], lib.subfile(i, w));
    return b;
}

Block compute_transformed_block(const FileLibrary& lib, std::span<const Elem> x,
                                const GfMatrix& D, const LeaderSet& L, const UserSet& W) {
    if (x.size() != static_cast<std::size_t>(L.size())) throw BadLength("x row length is not |L|");
    validate_user_set(W, lib.K);
    if (static_cast<int>(W.size()) != lib.t) throw BadSubsets("window size is not t");
    const Field& f = *lib.field;
    const std::size_t w = subset_rank(W);
    Block b;
    b.window = W;
    b.symbols.assign(lib.subfile_len, 0);
    std::vector<Elem> transformed(lib.subfile_len);
    for (int i = 1; i <= L.size(); ++i) {
        std::fill(transformed.begin(), transformed.end(), 0);
        for (int j = 1; j <= lib.N; ++j)
            f.axpy(transformed, D.at(L.users[i - 1] - 1, j - 1), lib.subfile(j, w));
        f.axpy(b.symbols, x[i - 1], transformed);
    }
    return b;
}

namespace {

void put_u32(std::ostream& os, std::uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                          static_cast<unsigned char>(v >> 16), static_cast<unsigned char>(v >> 24)};
    os.write(reinterpret_cast<const char*>(b), 4);
}

void put_u64(std::ostream& os, std::uint64_t v) {
    put_u32(os, static_cast<std::uint32_t>(v));
    put_u32(os, static_cast<std::uint32_t>(v >> 32));
}

std::uint32_t get_u32(std::istream& is) {
    unsigned char b[4];
    is.read(reinterpret_cast<char*>(b), 4);
    if (!is) throw ParseError("truncated library file");
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

std::uint64_t get_u64(std::istream& is) {
    const std::uint64_t lo = get_u32(is);
    const std::uint64_t hi = get_u32(is);
    return lo | (hi << 32);
}

constexpr char kLibMagic[8] = {'S', 'L', 'F', 'R', 'L', 'I', 'B', '1'};

} // namespace

void save_library(const FileLibrary& lib, std::ostream& os) {
    os.write(kLibMagic, 8);
    put_u32(os, lib.field->q());
    put_u32(os, static_cast<std::uint32_t>(lib.N));
    put_u64(os, lib.B);
    put_u32(os, static_cast<std::uint32_t>(lib.K));
    put_u32(os, static_cast<std::uint32_t>(lib.t));
    put_u64(os, lib.seed);
    const bool wide = lib.field->q() > 256;
    for (Elem v : lib.symbols) {
        os.put(static_cast<char>(v & 0xFF));
        if (wide) os.put(static_cast<char>(v >> 8));
    }
}

FileLibrary load_library(std::istream& is, const Field& f) {
    char magic[8];
    is.read(magic, 8);
    if (!is || !std::equal(magic, magic + 8, kLibMagic))
        throw ParseError("not a library file");
    const std::uint32_t q = get_u32(is);
    if (q != f.q())
        throw WrongField("library is over GF(" + std::to_string(q) + "), expected GF(" + std::to_string(f.q()) + ")");
    const int N = static_cast<int>(get_u32(is));
    const std::size_t B = get_u64(is);
    const int K = static_cast<int>(get_u32(is));
    const int t = static_cast<int>(get_u32(is));
    const std::uint64_t seed = get_u64(is);
    const bool wide = q > 256;
    std::vector<Elem> symbols(static_cast<std::size_t>(N) * B);
    for (auto& v : symbols) {
        const int lo = is.get();
        if (lo < 0) throw ParseError("truncated library file");
        unsigned val = static_cast<unsigned>(lo);
        if (wide) {
            const int hi = is.get();
            if (hi < 0) throw ParseError("truncated library file");
            val |= static_cast<unsigned>(hi) << 8;
        }
        v = static_cast<Elem>(val);
    }
    FileLibrary lib = library_from_symbols(f, N, B, K, t, std::move(symbols));
    lib.seed = seed;
    return lib;
}

} // namespace slfr
