#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "markoff/arith.hpp"

namespace markoff {

struct PrimePower {
    u64 prime = 0;
    u32 exp = 0;
    u64 value = 0;  // prime^exp
};

// Prime-power decomposition, primes strictly ascending.
struct Factorization {
    u64 n = 1;
    std::vector<PrimePower> factors;
};

Factorization factorize(u64 n);

// All tau(n) divisors, strictly ascending.
std::vector<u64> divisors(const Factorization& f);

u64 tau(const Factorization& f);
u64 phi(const Factorization& f);

// Divisors d <= x with no other divisor d' <= x divisible by d.
std::vector<u64> maximal_divisors(const Factorization& f, u64 x);

// "2^2*3*7*71*167"
std::string format_factorization(const Factorization& f);

// Primes in [lo, hi), ascending (segmented sieve).
std::vector<u64> primes_in_range(u64 lo, u64 hi);

// The divisor-word trie: one node per divisor; node words extend only with
// primes >= the last letter, so every divisor has exactly one path from 1.
struct FactorTrie {
    struct Node {
        u64 divisor = 1;
        int last = -1;                    // index into factors of the last letter
        std::vector<u32> exps;            // exponent per factor slot
        std::vector<u32> children;        // node ids, ascending letter index
    };
    std::vector<Node> nodes;              // nodes[0] is w(1)
    const Node& root() const { return nodes[0]; }
    std::size_t size() const { return nodes.size(); }
};

FactorTrie build_trie(const Factorization& f);

}  // namespace markoff
