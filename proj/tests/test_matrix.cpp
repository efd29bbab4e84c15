#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <random>

#include "endocalc/matrix.hpp"

using namespace endocalc;

namespace {

IntMat mat(std::size_t r, std::size_t c, std::initializer_list<int> vals) {
    IntMat m(r, c);
    auto it = vals.begin();
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = *it++;
    return m;
}

// Independent naive membership: gcd descent over int64 rows, no normal form.
bool naive_member(std::vector<std::vector<std::int64_t>> gens, std::vector<std::int64_t> v) {
    std::size_t n = v.size();
    for (std::size_t coord = 0; coord < n; ++coord) {
        // drop zero generators
        std::vector<std::vector<std::int64_t>> live;
        for (auto& g : gens) {
            bool z = true;
            for (auto x : g) z = z && x == 0;
            if (!z) live.push_back(g);
        }
        gens = live;
        // reduce generators against each other at this coordinate
        for (;;) {
            int jmin = -1;
            for (std::size_t j = 0; j < gens.size(); ++j)
                if (gens[j][coord] != 0 &&
                    (jmin < 0 || std::abs(gens[j][coord]) < std::abs(gens[jmin][coord])))
                    jmin = static_cast<int>(j);
            if (jmin < 0) break;
            bool again = false;
            for (std::size_t j = 0; j < gens.size(); ++j) {
                if (static_cast<int>(j) == jmin || gens[j][coord] == 0) continue;
                std::int64_t q = gens[j][coord] / gens[jmin][coord];
                for (std::size_t i = 0; i < n; ++i) gens[j][i] -= q * gens[jmin][i];
                if (gens[j][coord] != 0) again = true;
            }
            if (!again) {
                // eliminate v at this coordinate using the single pivot
                if (v[coord] % gens[jmin][coord] != 0) return false;
                std::int64_t q = v[coord] / gens[jmin][coord];
                for (std::size_t i = 0; i < n; ++i) v[i] -= q * gens[jmin][i];
                gens.erase(gens.begin() + jmin);
                break;
            }
        }
        if (v[coord] != 0) return false;
    }
    for (auto x : v)
        if (x != 0) return false;
    return true;
}

}  // namespace

TEST_CASE("hnf canonical form basics") {
    // columns (2,4) and (6,8) span the same lattice as (2,0),(0,4)
    IntMat g = mat(2, 2, {2, 6, 4, 8});
    IntMat h = hnf_cols(g);
    CHECK(h == mat(2, 2, {2, 0, 0, 4}));

    // idempotent
    CHECK(hnf_cols(h) == h);

    // zero columns dropped
    IntMat z(3, 2);
    CHECK(hnf_cols(z).cols() == 0);
}

TEST_CASE("hnf transform and kernel") {
    IntMat g = mat(2, 3, {2, 6, 1, 4, 8, 3});
    HnfTransform t = hnf_cols_transform(g);
    // g * u = [h | 0]
    IntMat gu = g * t.u;
    for (std::size_t j = 0; j < t.rank; ++j)
        for (std::size_t i = 0; i < 2; ++i) CHECK(gu(i, j) == t.h(i, j));
    for (std::size_t j = t.rank; j < 3; ++j)
        for (std::size_t i = 0; i < 2; ++i) CHECK(gu(i, j) == 0);
    CHECK((det(t.u) == 1 || det(t.u) == -1));

    IntMat k = kernel_cols(g);
    CHECK(k.cols() == 1);
    Vec kv = k.col(0);
    CHECK(vec_is_zero(g.mul(kv)));
}

TEST_CASE("snf diagonal divisibility and transforms") {
    IntMat m = mat(3, 3, {2, 4, 4, -6, 6, 12, 10, 4, 16});
    SnfResult s = snf(m);
    IntMat umv = s.u * m * s.v;
    CHECK(umv == s.d);
    CHECK(s.u * s.u_inv == IntMat::identity(3));
    Int prev = 0;
    for (std::size_t i = 0; i < 3; ++i) {
        Int di = s.d(i, i);
        CHECK(di >= 0);
        if (i > 0 && di != 0) CHECK((prev != 0 && di % prev == 0));
        prev = di;
    }
    CHECK((det(s.u) == 1 || det(s.u) == -1));
    CHECK((det(s.v) == 1 || det(s.v) == -1));
}

TEST_CASE("solve in hnf") {
    IntMat h = hnf_cols(mat(2, 2, {2, 0, 0, 4}));
    CHECK(solve_in_hnf(h, {Int(4), Int(8)}).has_value());
    CHECK(!solve_in_hnf(h, {Int(1), Int(0)}).has_value());
    CHECK(!solve_in_hnf(h, {Int(2), Int(2)}).has_value());

    auto c = solve_in_hnf(h, {Int(6), Int(-4)});
    REQUIRE(c.has_value());
    CHECK(h.mul(*c) == Vec{Int(6), Int(-4)});
}

TEST_CASE("solve prefix picks a lattice vector with the given prefix") {
    // graph-like lattice in Z^2: columns (2,1),(0,5)
    IntMat h = hnf_cols(mat(2, 2, {2, 0, 1, 5}));
    auto w = solve_prefix_in_hnf(h, {Int(4)}, 1);
    REQUIRE(w.has_value());
    CHECK((*w)[0] == 4);
    CHECK(solve_in_hnf(h, *w).has_value());
    CHECK(!solve_prefix_in_hnf(h, {Int(3)}, 1).has_value());
}

TEST_CASE("random hnf membership agrees with naive oracle") {
    std::mt19937_64 rng(12345);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 1 + rng() % 3;
        std::size_t m = rng() % 4;
        IntMat g(n, m);
        std::vector<std::vector<std::int64_t>> gens64(m, std::vector<std::int64_t>(n));
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t i = 0; i < n; ++i) {
                std::int64_t x = static_cast<std::int64_t>(rng() % 9) - 4;
                g(i, j) = x;
                gens64[j][i] = x;
            }
        IntMat h = hnf_cols(g);
        for (int probe = 0; probe < 20; ++probe) {
            std::vector<std::int64_t> v(n);
            Vec vi(n);
            for (std::size_t i = 0; i < n; ++i) {
                v[i] = static_cast<std::int64_t>(rng() % 17) - 8;
                vi[i] = v[i];
            }
            CHECK(solve_in_hnf(h, vi).has_value() == naive_member(gens64, v));
        }
    }
}

TEST_CASE("determinant") {
    CHECK(det(mat(2, 2, {1, 2, 3, 4})) == -2);
    CHECK(det(mat(3, 3, {2, 0, 0, 0, 3, 0, 0, 0, 5})) == 30);
    CHECK(det(mat(2, 2, {2, 4, 1, 2})) == 0);
    CHECK(det(IntMat::identity(4)) == 1);
}
