#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "slfr/field.hpp"
#include "slfr/matrix.hpp"
#include "slfr/subsets.hpp"

namespace slfr {

/// N files of B symbols each over GF(q), together with the t-subset
/// position partition: positions are split into C(K,t) contiguous chunks,
/// one per t-subset of [1..K] in colexicographic order, so subfile (i, W)
/// is file i restricted to the chunk of W.
struct FileLibrary {
    const Field* field = nullptr;
    int N = 0;
    int K = 0;
    int t = 0;
    std::size_t B = 0;
    std::size_t subfile_len = 0; // B / C(K,t)
    std::uint64_t seed = 0;
    std::vector<Elem> symbols; // N x B, row-major

    /// File i, 1-based.
    std::span<const Elem> file(int i) const;
    /// Subfile (i, W) by colex rank of W.
    std::span<const Elem> subfile(int i, std::size_t w_rank) const;
    std::span<const Elem> subfile(int i, const UserSet& W) const;
    std::uint64_t num_subfiles() const { return binom64(K, t); }
};

/// Deterministic pseudorandom library. Throws BadLength unless C(K,t) | B.
FileLibrary generate_library(const Field& f, int N, std::size_t B, int K, int t, std::uint64_t seed);
FileLibrary library_from_symbols(const Field& f, int N, std::size_t B, int K, int t, std::vector<Elem> symbols);

/// One user's cache: subfiles (i, W) for every file i and every window W
/// containing the user. Holds M*B = (N*t/K)*B symbols.
struct CacheContent {
    int user = 0;
    int num_files = 0;
    std::size_t subfile_len = 0;
    std::vector<std::size_t> windows; // colex ranks of the cached W, ascending
    std::vector<Elem> stored;         // num_files x windows.size() x subfile_len

    bool caches(std::size_t w_rank) const;
    /// Subfile (i, W) by colex rank; throws IndexOutOfRange if uncached.
    std::span<const Elem> subfile(int i, std::size_t w_rank) const;
    std::size_t stored_symbols() const { return stored.size(); }
};

std::vector<CacheContent> man_place(const FileLibrary& lib);

/// One block of a demanded function: the restriction of sum_i y_i F_i to
/// the positions of window W.
struct Block {
    int owner = 0;
    UserSet window;
    std::vector<Elem> symbols;
};

/// B_{k,W} = sum_i y[i] * F_i(I_W), straight from the demand row.
Block compute_block(const FileLibrary& lib, std::span<const Elem> y, const UserSet& W);

/// Same value through the leader basis: first forms the transformed
/// subfiles F'_{i,W} = sum_j D[L(i)][j] * F_j(I_W), then combines them
/// with the x row.
Block compute_transformed_block(const FileLibrary& lib, std::span<const Elem> x,
                                const GfMatrix& D, const LeaderSet& L, const UserSet& W);

/// Binary dump: header (q, N, B, K, t, seed), then row-major symbols,
/// one byte per symbol for q <= 256 and two little-endian bytes otherwise.
void save_library(const FileLibrary& lib, std::ostream& os);
FileLibrary load_library(std::istream& is, const Field& f);

} // namespace slfr
