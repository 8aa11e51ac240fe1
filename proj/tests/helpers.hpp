#pragma once

#include <set>
#include <vector>

#include "markoff/report.hpp"

namespace testutil {

using markoff::Fp;
using markoff::Fp2;
using markoff::FieldContext;
using markoff::u64;

inline u64 rng(u64& state) {
    u64 z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline std::set<u64> squares(u64 p) {
    std::set<u64> s;
    for (u64 x = 0; x < p; ++x) s.insert(x * x % p);
    return s;
}

inline u64 brute_order(const FieldContext& c, Fp x) {
    Fp y = x;
    u64 o = 1;
    while (y != c.one()) {
        y = c.mul(y, x);
        ++o;
    }
    return o;
}

inline u64 brute_order2(const FieldContext& c, const Fp2& x) {
    Fp2 y = x;
    u64 o = 1;
    while (y != c.one2()) {
        y = c.mul2(y, x);
        ++o;
    }
    return o;
}

// Reports are byte-identical across reruns except for the timing field.
inline bool reports_match(markoff::ConnectivityReport a, markoff::ConnectivityReport b) {
    a.elapsed_ms = 0;
    b.elapsed_ms = 0;
    return markoff::csv_row(a) == markoff::csv_row(b);
}

// All elements of E, the order-(p+1) subgroup of F_{p^2}^x.
inline std::vector<Fp2> subgroup_E(const FieldContext& c) {
    std::vector<Fp2> out;
    for (u64 re = 0; re < c.p(); ++re)
        for (u64 im = 0; im < c.p(); ++im) {
            if (re == 0 && im == 0) continue;
            Fp2 x = c.make2(Fp{re}, Fp{im});
            if (c.in_subgroup_E(x)) out.push_back(x);
        }
    return out;
}

}  // namespace testutil
