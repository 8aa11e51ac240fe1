#include <doctest.h>

#include <set>

#include "helpers.hpp"
#include "markoff/oracle.hpp"

using namespace markoff;

TEST_CASE("triple enumeration") {
    FieldContext f5(5);
    auto t5 = oracle::enumerate_triples(f5);
    CHECK(t5.size() == 40);
    for (const auto& t : t5) {
        CHECK(is_markoff(f5, t));
        CHECK(!(t.a.v == 0 && t.b.v == 0 && t.c.v == 0));
    }
    FieldContext f7(7);
    auto t7 = oracle::enumerate_triples(f7);
    CHECK(t7.size() == 7 * 7 - 3 * 7);
    // no duplicates
    std::set<std::tuple<u64, u64, u64>> uniq;
    for (const auto& t : t7) uniq.insert({t.a.v, t.b.v, t.c.v});
    CHECK(uniq.size() == t7.size());
    // observed count law: |M_p^x| is p^2 - 3p or p^2 + 3p
    for (u64 p : {11ull, 13ull, 17ull, 19ull, 101ull}) {
        u64 n = oracle::enumerate_triples(FieldContext(p)).size();
        CHECK((n == p * p - 3 * p || n == p * p + 3 * p));
    }

    // guard: 10007 is just past the oracle limit
    CHECK_THROWS_AS(oracle::enumerate_triples(FieldContext(10007)), std::domain_error);
}

TEST_CASE("connected components") {
    FieldContext f5(5);
    auto s5 = oracle::component_sizes(f5);
    REQUIRE(s5.size() == 1);
    CHECK(s5[0] == 40);
    FieldContext f7(7);
    CHECK(oracle::component_sizes(f7).size() == 1);
}

TEST_CASE("orbit lengths") {
    FieldContext f7(7);
    CHECK(oracle::orbit_length(f7, Fp{3}) == 8);
    FieldContext f5(5);
    u64 len = oracle::orbit_length(f5, Fp{3});  // 3 = -2 is parabolic mod 5
    CHECK((len == 5 || len == 10));
    FieldContext f13(13);
    CHECK(oracle::orbit_length(f13, Fp{0}) == 4);
    FieldContext f11(11);
    CHECK_THROWS_AS(oracle::orbit_length(f11, Fp{0}), std::domain_error);  // p = 3 mod 4

    // orbit length equals the classified coordinate order
    for (u64 p : {13ull, 29ull, 61ull}) {
        FieldContext f(p);
        auto fm = factorize(p - 1), fp = factorize(p + 1);
        for (u64 a = 0; a < p; ++a) {
            if (a == 2 || a == p - 2) continue;
            u64 len2;
            try {
                len2 = oracle::orbit_length(f, Fp{a});
            } catch (const std::domain_error&) {
                continue;
            }
            CHECK(len2 == classify_coordinate(f, Fp{a}, fm, fp).order);
            CHECK(len2 == oracle::coordinate_order(f, Fp{a}));
        }
    }
}

TEST_CASE("coordinate 2 appears iff -1 is a square") {
    for (u64 p : {5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 29ull, 31ull, 37ull, 43ull}) {
        FieldContext f(p);
        bool has2 = false;
        for (const auto& t : oracle::enumerate_triples(f))
            if (t.a.v == 2 || t.a.v == p - 2) { has2 = true; break; }
        CHECK(has2 == (p % 4 == 1));
    }
}

TEST_CASE("definition-level bad sets") {
    for (u64 p : {13ull, 61ull, 101ull}) {
        FieldContext f(p);
        PrimeContext pc(p);
        auto s = oracle::definition_level_bad_sets(f, pc.breakpoints());
        CHECK(s.set_ii_total <= s.set_i_total);
        for (u64 a = 0; a < p; ++a) CHECK(s.set_ii_by_a[a] <= s.set_i_by_a[a]);
    }
    CHECK_THROWS_AS(oracle::definition_level_bad_sets(FieldContext(2003),
                                                      PrimeContext(2003).breakpoints()),
                    std::domain_error);
}

TEST_CASE("maximal-order triples lie in the giant component") {
    for (u64 p : {13ull, 61ull, 101ull, 151ull, 199ull}) {
        FieldContext f(p);
        auto fm = factorize(p - 1), fp = factorize(p + 1);
        auto sizes = oracle::component_sizes(f);
        // all primes in range are connected, which subsumes the property; make
        // sure maximal-order coordinates do occur
        REQUIRE(sizes.size() == 1);
        bool found_max = false;
        for (const auto& t : oracle::enumerate_triples(f)) {
            for (Fp c : {t.a, t.b, t.c}) {
                if (c.v == 2 || c.v == p - 2) continue;
                u64 o = classify_coordinate(f, c, fm, fp).order;
                found_max = found_max || o == p - 1 || o == p + 1;
            }
            if (found_max) break;
        }
        CHECK(found_max);
    }
}
