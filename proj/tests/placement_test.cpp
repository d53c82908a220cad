#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "slfr/placement.hpp"
#include "slfr/rng.hpp"

using namespace slfr;

TEST_CASE("library geometry and subfile partition") {
    const Field f2(2);
    const FileLibrary lib = generate_library(f2, 3, 15, 6, 2, 42);
    CHECK(lib.num_subfiles() == 15);
    CHECK(lib.subfile_len == 1);
    for (int i = 1; i <= 3; ++i) CHECK(lib.file(i).size() == 15);

    // t = 0: a single subfile covering the whole file
    const FileLibrary flat = generate_library(f2, 2, 8, 4, 0, 1);
    CHECK(flat.num_subfiles() == 1);
    CHECK(flat.subfile(1, UserSet{}).size() == 8);

    CHECK_THROWS_AS(generate_library(f2, 1, 7, 4, 2, 0), BadLength);
    CHECK_THROWS_AS(generate_library(f2, 1, 6, 4, 5, 0), BadT);
}

TEST_CASE("generation is seed-deterministic") {
    const Field f5(5);
    const FileLibrary a = generate_library(f5, 2, 20, 5, 2, 99);
    const FileLibrary b = generate_library(f5, 2, 20, 5, 2, 99);
    const FileLibrary c = generate_library(f5, 2, 20, 5, 2, 100);
    CHECK(a.symbols == b.symbols);
    CHECK(a.symbols != c.symbols);
}

TEST_CASE("placement stores exactly the windows holding the user") {
    const Field f2(2);
    const FileLibrary lib = generate_library(f2, 3, 15, 6, 2, 42);
    const auto caches = man_place(lib);
    REQUIRE(caches.size() == 6);
    for (const auto& z : caches) {
        // N * C(K-1, t-1) subfiles of one symbol each -> M*B = 15 symbols
        CHECK(z.windows.size() == 5);
        CHECK(z.stored_symbols() == 15);
        const auto subsets = enumerate_subsets(6, 2);
        for (std::size_t w = 0; w < subsets.size(); ++w) {
            CHECK(z.caches(w) == set_contains(subsets[w], z.user));
            if (z.caches(w))
                for (int i = 1; i <= 3; ++i)
                    CHECK(std::equal(z.subfile(i, w).begin(), z.subfile(i, w).end(),
                                     lib.subfile(i, w).begin()));
            else
                CHECK_THROWS_AS(z.subfile(1, w), IndexOutOfRange);
        }
    }
}

TEST_CASE("cache volume hits M*B for the boundary t values") {
    const Field f3(3);
    const FileLibrary everything = generate_library(f3, 2, 4, 4, 4, 7);
    for (const auto& z : man_place(everything)) CHECK(z.stored_symbols() == 2 * 4);
    const FileLibrary nothing = generate_library(f3, 2, 4, 4, 0, 7);
    for (const auto& z : man_place(nothing)) CHECK(z.stored_symbols() == 0);
}

TEST_CASE("block computation follows the demand row") {
    const Field f7(7);
    const FileLibrary lib = generate_library(f7, 3, 10, 5, 1, 5);
    const UserSet W{2};

    // unit demand picks out the file verbatim
    const std::vector<Elem> e1{1, 0, 0};
    const Block b1 = compute_block(lib, e1, W);
    CHECK(std::equal(b1.symbols.begin(), b1.symbols.end(), lib.subfile(1, W).begin()));

    // zero demand gives the zero block
    const std::vector<Elem> zero{0, 0, 0};
    const Block bz = compute_block(lib, zero, W);
    CHECK(std::all_of(bz.symbols.begin(), bz.symbols.end(), [](Elem v) { return v == 0; }));

    // general combination, checked symbol by symbol
    const std::vector<Elem> y{3, 5, 2};
    const Block by = compute_block(lib, y, W);
    for (std::size_t s = 0; s < lib.subfile_len; ++s) {
        Elem expect = 0;
        for (int i = 1; i <= 3; ++i)
            expect = f7.add(expect, f7.mul(y[static_cast<std::size_t>(i - 1)], lib.subfile(i, W)[s]));
        CHECK(by.symbols[s] == expect);
    }
}

TEST_CASE("blocks concatenated over all windows reproduce the whole function") {
    const Field f8(8);
    const FileLibrary lib = generate_library(f8, 3, 2 * 10, 5, 2, 17);
    SplitMix64 rng(3);
    std::vector<Elem> y(3);
    for (auto& v : y) v = rng.elem(f8);
    std::vector<Elem> expect(lib.B, 0);
    for (int i = 1; i <= 3; ++i) f8.axpy(expect, y[static_cast<std::size_t>(i - 1)], lib.file(i));
    std::vector<Elem> got;
    for (const auto& W : enumerate_subsets(5, 2)) {
        const Block b = compute_block(lib, y, W);
        got.insert(got.end(), b.symbols.begin(), b.symbols.end());
    }
    CHECK(got == expect);
}

TEST_CASE("transformed route equals the direct route once demands are re-expressed") {
    SplitMix64 rng(29);
    for (unsigned q : {2u, 3u, 5u, 8u}) {
        const Field f(q);
        const int K = 5, N = 3, t = 1;
        const FileLibrary lib = generate_library(f, N, 5 * 3, K, t, 1234);
        GfMatrix D(f, K, N);
        for (int r = 0; r < K; ++r)
            for (int c = 0; c < N; ++c) D.set(r, c, rng.elem(f));
        const LeaderSet L = select_leaders(D);
        const GfMatrix X = express_in_leader_basis(D, L);
        for (int k = 1; k <= K; ++k)
            for (const auto& W : enumerate_subsets(K, t)) {
                const Block direct = compute_block(lib, D.row(k - 1), W);
                const Block transformed = compute_transformed_block(lib, X.row(k - 1), D, L, W);
                CHECK(direct.symbols == transformed.symbols);
            }
    }
}

TEST_CASE("binary dump round-trips, both symbol widths") {
    for (unsigned q : {8u, 1024u}) {
        const Field f(q);
        const FileLibrary lib = generate_library(f, 2, 12, 4, 2, 77);
        std::stringstream ss;
        save_library(lib, ss);
        const FileLibrary back = load_library(ss, f);
        CHECK(back.symbols == lib.symbols);
        CHECK(back.N == lib.N);
        CHECK(back.B == lib.B);
        CHECK(back.K == lib.K);
        CHECK(back.t == lib.t);
        CHECK(back.seed == lib.seed);
    }
    const Field f2(2);
    const FileLibrary lib = generate_library(f2, 1, 6, 4, 2, 1);
    std::stringstream ss;
    save_library(lib, ss);
    const Field f3(3);
    CHECK_THROWS_AS(load_library(ss, f3), WrongField);
}
