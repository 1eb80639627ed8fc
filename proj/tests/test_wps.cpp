// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dpc/wps.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>

using namespace dpc;
using wps::Tuple;
using wps::WeightSystem;

namespace {

// Independent oracle for geometric-point equality: search for a scalar
// lambda in F_{q^k} with lambda^{w_i} u_i = v_i for every i. Any such lambda
// satisfies lambda^d in F_q^* for d = gcd of the support weights, so it has
// degree at most max(w) = 3 over F_q. The implementation under test never
// looks at extension fields for this.
bool equivalent_oracle(const gf::Field& f, const WeightSystem& ws, const Tuple& u, const Tuple& v) {
    static std::map<std::pair<int, int>, std::pair<const gf::Field*, std::vector<int>>> cache;
    for (int k = 1; k <= 3; ++k) {
        auto key = std::make_pair(f.size(), k);
        if (!cache.count(key)) {
            const gf::Field& ext = gf::extension_of(f, k);
            cache[key] = {&ext, gf::embedding(f, ext)};
        }
        const gf::Field& ext = *cache[key].first;
        const std::vector<int>& phi = cache[key].second;
        for (int lam = 1; lam < ext.size(); ++lam) {
            bool ok = true;
            for (int i = 0; i < ws.size() && ok; ++i)
                ok = ext.mul(phi[u[i]], ext.pow(lam, ws.weights[i])) == phi[v[i]];
            if (ok) return true;
        }
    }
    return false;
}

// Count classes by greedy partition using `equivalent` only.
int partition_count(const gf::Field& f, const WeightSystem& ws) {
    std::vector<Tuple> reps;
    for (const Tuple& t : wps::enumerate_tuples(f, ws.size())) {
        bool found = false;
        for (const Tuple& r : reps)
            if (wps::equivalent(f, ws, r, t)) {
                found = true;
                break;
            }
        if (!found) reps.push_back(t);
    }
    return static_cast<int>(reps.size());
}

uint64_t mix(uint64_t& s) {
    s += 0x9e3779b97f4a7c15ull;
    uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

const std::vector<std::vector<int>> kAmbients = {{1, 1, 2, 3}, {1, 1, 1, 2}, {1, 1, 1, 1}};

} // namespace

TEST_CASE("weight system validation") {
    CHECK_THROWS_AS(WeightSystem({2, 4}), std::invalid_argument);
    CHECK_THROWS_AS(WeightSystem({1, 0}), std::invalid_argument);
    CHECK_NOTHROW(WeightSystem({1, 1, 2, 3}));
    CHECK(WeightSystem({1, 1, 2, 3}).literal() == "(1,1,2,3)");
}

TEST_CASE("scale examples") {
    const gf::Field& f3 = gf::field(3);
    WeightSystem dp1({1, 1, 2, 3});
    CHECK(wps::scale(f3, dp1, {0, 0, 1, 1}, 2) == Tuple{0, 0, 1, 2});
    WeightSystem dp2({1, 1, 1, 2});
    CHECK(wps::scale(f3, dp2, {1, 0, 0, 1}, 2) == Tuple{2, 0, 0, 1});
    Tuple t{1, 2, 0, 1};
    CHECK(wps::scale(f3, dp1, t, 1) == t);
    CHECK_THROWS_AS(wps::scale(f3, dp1, t, 0), std::invalid_argument);
}

TEST_CASE("equivalence examples over F_3") {
    const gf::Field& f3 = gf::field(3);
    WeightSystem dp1({1, 1, 2, 3});
    CHECK(wps::equivalent(f3, dp1, {0, 0, 1, 1}, {0, 0, 1, 2}));
    CHECK_FALSE(wps::equivalent(f3, dp1, {0, 0, 1, 2}, {0, 0, 2, 2}));
    CHECK(wps::equivalent(f3, dp1, {1, 2, 1, 1}, {1, 2, 1, 1}));

    CHECK(wps::canonicalize(f3, dp1, {0, 0, 1, 2}) == Tuple{0, 0, 1, 1});
    WeightSystem dp2({1, 1, 1, 2});
    CHECK(wps::canonicalize(f3, dp2, {0, 0, 0, 2}) == Tuple{0, 0, 0, 1});
    CHECK_THROWS_AS(wps::canonicalize(f3, dp2, {0, 0, 0, 0}), std::invalid_argument);
}

TEST_CASE("equivalent agrees with the closure-scalar oracle") {
    for (const auto& w : kAmbients) {
        WeightSystem ws(w);
        // exhaustively over F_2 and F_3
        for (int q : {2, 3}) {
            const gf::Field& f = gf::field(q);
            auto tuples = wps::enumerate_tuples(f, ws.size());
            for (const Tuple& u : tuples)
                for (const Tuple& v : tuples)
                    CHECK(wps::equivalent(f, ws, u, v) == equivalent_oracle(f, ws, u, v));
        }
        // sampled over F_4
        const gf::Field& f4 = gf::field(4);
        auto tuples = wps::enumerate_tuples(f4, ws.size());
        uint64_t seed = 0x5eed;
        for (int it = 0; it < 1500; ++it) {
            const Tuple& u = tuples[mix(seed) % tuples.size()];
            const Tuple& v = tuples[mix(seed) % tuples.size()];
            CHECK(wps::equivalent(f4, ws, u, v) == equivalent_oracle(f4, ws, u, v));
        }
    }
}

TEST_CASE("equivalent is an equivalence relation (via canonical forms)") {
    // equivalent(u,v) <=> canonicalize(u) == canonicalize(v), exhaustively
    // over F_2, F_3, F_4 for all three ambients. Equality of canonical forms
    // is an equivalence relation, so this settles reflexivity, symmetry and
    // transitivity in one pass.
    for (const auto& w : kAmbients) {
        WeightSystem ws(w);
        for (int q : {2, 3, 4}) {
            const gf::Field& f = gf::field(q);
            auto tuples = wps::enumerate_tuples(f, ws.size());
            std::vector<Tuple> canon;
            canon.reserve(tuples.size());
            for (const Tuple& t : tuples) {
                Tuple c = wps::canonicalize(f, ws, t);
                CHECK(wps::canonicalize(f, ws, c) == c); // idempotent
                canon.push_back(std::move(c));
            }
            for (size_t i = 0; i < tuples.size(); ++i)
                for (size_t j = 0; j < tuples.size(); ++j)
                    CHECK(wps::equivalent(f, ws, tuples[i], tuples[j]) == (canon[i] == canon[j]));
        }
    }
}

TEST_CASE("scale closure") {
    for (const auto& w : kAmbients) {
        WeightSystem ws(w);
        for (int q : {2, 3, 4, 5}) {
            const gf::Field& f = gf::field(q);
            for (const Tuple& t : wps::enumerate_tuples(f, ws.size()))
                for (int lam = 1; lam < q; ++lam)
                    CHECK(wps::equivalent(f, ws, t, wps::scale(f, ws, t, lam)));
        }
    }
}

TEST_CASE("point counts") {
    // straight projective spaces: (q^{n+1} - 1) / (q - 1)
    for (int q : {2, 3, 4, 5, 7}) {
        const gf::Field& f = gf::field(q);
        for (int n : {2, 3}) {
            WeightSystem ws(std::vector<int>(n + 1, 1));
            long long expect = 0, qe = 1;
            for (int i = 0; i <= n; ++i) {
                expect += qe;
                qe *= q;
            }
            CHECK(static_cast<long long>(wps::enumerate_points(f, ws).size()) == expect);
        }
    }

    const gf::Field& f2 = gf::field(2);
    CHECK(wps::enumerate_points(f2, WeightSystem({1, 1, 2, 3})).size() == 15);

    // P(1,1,1,2) over F_3: frozen from the class-partition oracle
    const gf::Field& f3 = gf::field(3);
    WeightSystem dp2({1, 1, 1, 2});
    int classes = partition_count(f3, dp2);
    CHECK(classes == 40);
    CHECK(static_cast<int>(wps::enumerate_points(f3, dp2).size()) == classes);

    // same cross-check for the degree-1 ambient
    WeightSystem dp1({1, 1, 2, 3});
    CHECK(static_cast<int>(wps::enumerate_points(f3, dp1).size()) == partition_count(f3, dp1));
    const gf::Field& f4 = gf::field(4);
    CHECK(static_cast<int>(wps::enumerate_points(f4, dp1).size()) == partition_count(f4, dp1));
}

TEST_CASE("classes over F_2 are singletons") {
    const gf::Field& f2 = gf::field(2);
    for (const auto& w : kAmbients) {
        WeightSystem ws(w);
        auto tuples = wps::enumerate_tuples(f2, ws.size());
        CHECK(wps::enumerate_points(f2, ws).size() == tuples.size());
        for (const Tuple& t : tuples) CHECK(wps::canonicalize(f2, ws, t) == t);
    }
}

TEST_CASE("enumerate_points is deterministic, canonical and duplicate-free") {
    const gf::Field& f4 = gf::field(4);
    WeightSystem ws({1, 1, 2, 3});
    auto pts = wps::enumerate_points(f4, ws);
    auto again = wps::enumerate_points(f4, ws);
    CHECK(pts == again);
    for (size_t i = 0; i < pts.size(); ++i) {
        CHECK(wps::canonicalize(f4, ws, pts[i]) == pts[i]);
        if (i) CHECK(pts[i - 1] < pts[i]); // strictly increasing lex order
    }
}

TEST_CASE("tuple literals") {
    const gf::Field& f3 = gf::field(3);
    CHECK(wps::tuple_literal(f3, {0, 0, 1, 1}) == "[0,0,1,1]");
    CHECK(wps::parse_tuple(f3, "[0, 0, 2, 1]") == Tuple{0, 0, 2, 1});
    const gf::Field& f4 = gf::field(4);
    CHECK(wps::parse_tuple(f4, wps::tuple_literal(f4, {0, 2, 3, 1})) == Tuple{0, 2, 3, 1});
    CHECK_THROWS_AS(wps::parse_tuple(f3, "0,0,1"), std::invalid_argument);
}
