#pragma once

#include "markoff/sieve.hpp"

namespace markoff::oracle {

// Brute-force ground truth. Everything here recomputes from definitions
// (quadratic solving, rotation iteration, union-find) and stays independent
// of the basis/propagate machinery it validates.

inline constexpr u64 kEnumerateLimit = 10'000;
inline constexpr u64 kBadSetLimit = 2'000;

// All nontrivial solutions, ordered lexicographically. Refuses p > 10^4.
std::vector<MarkoffTriple> enumerate_triples(const FieldContext& ctx);

// Connected-component sizes of the Vieta-edge graph on M_p^x, ascending.
std::vector<u64> component_sizes(const FieldContext& ctx);

// Length of the rot_1 orbit through any triple with first coordinate a.
// Throws if no nontrivial triple has first coordinate a.
u64 orbit_length(const FieldContext& ctx, Fp a);

// Multiplicative order of chi with chi + chi^-1 = a, by direct iteration in
// F_p or F_{p^2}. a must not be parabolic.
u64 coordinate_order(const FieldContext& ctx, Fp a);

struct BadSlices {
    std::vector<u64> set_i_by_a;   // triples with all three coordinates small
    std::vector<u64> set_ii_by_a;  // triples in rot_1-orbits that are entirely small
    u64 set_i_total = 0, set_ii_total = 0;
};

// Definition-level bad sets sliced by first coordinate, using brute-force
// coordinate orders against the supplied breakpoints. Refuses p > 2000.
BadSlices definition_level_bad_sets(const FieldContext& ctx, const Breakpoints& bps);

}  // namespace markoff::oracle
