#include <doctest.h>

#include <algorithm>
#include <map>

#include "helpers.hpp"
#include "markoff/factor.hpp"

using namespace markoff;
using testutil::rng;

namespace {

std::vector<u64> brute_divisors(u64 n) {
    std::vector<u64> out;
    for (u64 d = 1; d <= n; ++d)
        if (n % d == 0) out.push_back(d);
    return out;
}

std::map<u64, u32> as_map(const Factorization& f) {
    std::map<u64, u32> m;
    for (const auto& pp : f.factors) m[pp.prime] = pp.exp;
    return m;
}

// word of d as the multiset of prime letters in ascending order
std::vector<u64> word(u64 d) {
    std::vector<u64> w;
    for (u64 q = 2; q * q <= d; ++q)
        while (d % q == 0) {
            w.push_back(q);
            d /= q;
        }
    if (d > 1) w.push_back(d);
    return w;
}

bool is_prefix(const std::vector<u64>& a, const std::vector<u64>& b) {
    if (a.size() > b.size()) return false;
    return std::equal(a.begin(), a.end(), b.begin());
}

}  // namespace

TEST_CASE("factorize") {
    CHECK(as_map(factorize(60)) == std::map<u64, u32>{{2, 2}, {3, 1}, {5, 1}});
    CHECK(as_map(factorize(825286)) ==
          std::map<u64, u32>{{2, 1}, {7, 1}, {11, 1}, {23, 1}, {233, 1}});
    CHECK(as_map(factorize(995988)) ==
          std::map<u64, u32>{{2, 2}, {3, 1}, {7, 1}, {71, 1}, {167, 1}});
    CHECK(factorize(1).factors.empty());
    // products of two large primes exercise the rho path
    u64 n = 1000003ull * 1000033ull;
    auto f = factorize(n);
    REQUIRE(f.factors.size() == 2);
    CHECK(f.factors[0].prime == 1000003);
    CHECK(f.factors[1].prime == 1000033);
    u64 state = 99;
    for (int i = 0; i < 50; ++i) {
        u64 m = 2 + rng(state) % 1000000;
        auto g = factorize(m);
        u64 prod = 1;
        for (const auto& pp : g.factors) {
            CHECK(is_prime_u64(pp.prime));
            for (u32 e = 0; e < pp.exp; ++e) prod *= pp.prime;
        }
        CHECK(prod == m);
    }
}

TEST_CASE("divisors") {
    CHECK(divisors(factorize(60)) ==
          std::vector<u64>{1, 2, 3, 4, 5, 6, 10, 12, 15, 20, 30, 60});
    CHECK(divisors(factorize(4)) == std::vector<u64>{1, 2, 4});
    CHECK(divisors(factorize(997)) == std::vector<u64>{1, 997});
    u64 state = 7;
    for (int i = 0; i < 20; ++i) {
        u64 n = 1 + rng(state) % 20000;
        CHECK(divisors(factorize(n)) == brute_divisors(n));
    }
}

TEST_CASE("tau and phi") {
    auto f60 = factorize(60);
    CHECK(tau(f60) == 12);
    CHECK(phi(f60) == 16);
    auto f = factorize(995988);
    CHECK(tau(f) == 48);
    CHECK(phi(f) == 278880);
    auto g = factorize(995986);
    CHECK(tau(g) == 4);
    CHECK(phi(g) == 497992);
}

TEST_CASE("factor trie structure") {
    auto f = factorize(60);
    auto trie = build_trie(f);
    CHECK(trie.size() == 12);

    // root 1 with children 2, 3, 5; node 2 with children 4, 6, 10
    const auto& root = trie.root();
    REQUIRE(root.children.size() == 3);
    CHECK(trie.nodes[root.children[0]].divisor == 2);
    CHECK(trie.nodes[root.children[1]].divisor == 3);
    CHECK(trie.nodes[root.children[2]].divisor == 5);
    const auto& two = trie.nodes[root.children[0]];
    REQUIRE(two.children.size() == 3);
    CHECK(trie.nodes[two.children[0]].divisor == 4);
    CHECK(trie.nodes[two.children[1]].divisor == 6);
    CHECK(trie.nodes[two.children[2]].divisor == 10);

    auto fq = factorize(997);
    auto tq = build_trie(fq);
    REQUIRE(tq.size() == 2);
    CHECK(tq.nodes[tq.root().children[0]].divisor == 997);
}

TEST_CASE("trie nodes are exactly the divisors, edges are covering relations") {
    u64 state = 31;
    std::vector<u64> ns = {12, 60, 997, 1024, 720720};
    for (int i = 0; i < 15; ++i) ns.push_back(1 + rng(state) % 1000000);
    for (u64 n : ns) {
        auto f = factorize(n);
        auto trie = build_trie(f);
        std::vector<u64> node_divs;
        for (const auto& nd : trie.nodes) node_divs.push_back(nd.divisor);
        std::sort(node_divs.begin(), node_divs.end());
        CHECK(node_divs == divisors(f));
        for (const auto& nd : trie.nodes) {
            for (u32 cid : nd.children) {
                const auto& ch = trie.nodes[cid];
                // child divisor is the parent's times one prime >= the last letter
                u64 q = ch.divisor / nd.divisor;
                CHECK(is_prime_u64(q));
                auto pw = word(nd.divisor);
                CHECK((pw.empty() || q >= pw.back()));
                CHECK(is_prefix(pw, word(ch.divisor)));
            }
        }
    }
}

TEST_CASE("maximal divisors") {
    auto f60 = factorize(60);
    CHECK(maximal_divisors(f60, 10) == std::vector<u64>{4, 6, 10});
    CHECK(maximal_divisors(f60, 60) == std::vector<u64>{60});
    CHECK(maximal_divisors(f60, 1) == std::vector<u64>{1});

    u64 state = 5;
    for (int i = 0; i < 20; ++i) {
        u64 n = 2 + rng(state) % 100000;
        auto f = factorize(n);
        u64 x = 1 + rng(state) % n;
        auto mx = maximal_divisors(f, x);
        // antichain under divisibility
        for (u64 a : mx)
            for (u64 b : mx)
                if (a != b) CHECK(b % a != 0);
        // every divisor <= x divides a member
        for (u64 d : divisors(f)) {
            if (d > x) continue;
            bool covered = false;
            for (u64 m : mx) covered = covered || m % d == 0;
            CHECK(covered);
        }
    }
}

TEST_CASE("primes in range") {
    CHECK(primes_in_range(0, 2).empty());
    CHECK(primes_in_range(2, 3) == std::vector<u64>{2});
    auto ps = primes_in_range(990000, 1000000);
    for (u64 p : ps) CHECK(is_prime_u64(p));
    u64 cnt = 0;
    for (u64 n = 990000; n < 1000000; ++n) cnt += is_prime_u64(n);
    CHECK(ps.size() == cnt);
}
