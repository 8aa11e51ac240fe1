#include "markoff/oracle.hpp"

#include <algorithm>
#include <map>

namespace markoff::oracle {

namespace {

u64 key_of(u64 p, const MarkoffTriple& t) { return (t.a.v * p + t.b.v) * p + t.c.v; }

MarkoffTriple triple_of(u64 p, u64 k) {
    return {Fp{k / (p * p)}, Fp{(k / p) % p}, Fp{k % p}};
}

struct UnionFind {
    std::vector<u32> parent;
    explicit UnionFind(std::size_t n) : parent(n) {
        for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<u32>(i);
    }
    u32 find(u32 x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(u32 a, u32 b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[b] = a;
    }
};

// Square-root lookup table: roots[x] = smallest s with s^2 = x, or p if none.
std::vector<u32> sqrt_table(u64 p) {
    std::vector<u32> roots(p, static_cast<u32>(p));
    for (u64 s = 0; s <= p / 2; ++s) {
        u64 sq = s * s % p;
        if (roots[sq] == p) roots[sq] = static_cast<u32>(s);
    }
    return roots;
}

// Keys of all nontrivial solutions, emitted already sorted: the (a, b) scan
// is lexicographic and the two c-roots are pushed in value order.
std::vector<u64> sorted_keys(const FieldContext& ctx) {
    const u64 p = ctx.p();
    if (p > kEnumerateLimit)
        throw std::domain_error("oracle enumeration is limited to p <= 10^4");
    auto roots = sqrt_table(p);
    const u64 inv2 = (p + 1) / 2;
    std::vector<u64> keys;
    for (u64 a = 0; a < p; ++a) {
        u64 a2 = a * a % p;
        for (u64 b = 0; b < p; ++b) {
            u64 b2 = b * b % p;
            u64 ab = a * b % p;
            u64 disc = (a2 * b2 % p + p - 4 * (a2 + b2) % p) % p;
            if (roots[disc] == p) continue;
            u64 s = roots[disc];
            u64 base = (a * p + b) * p;
            if (s == 0) {
                u64 c = mulmod(ab, inv2, p);
                if (a || b || c) keys.push_back(base + c);
            } else {
                u64 c1 = mulmod((ab + s) % p, inv2, p);
                u64 c2 = mulmod((ab + p - s) % p, inv2, p);
                if (c1 > c2) std::swap(c1, c2);
                keys.push_back(base + c1);  // a zero triple needs s = 0
                keys.push_back(base + c2);
            }
        }
    }
    return keys;
}

std::size_t index_of(const std::vector<u64>& keys, u64 k) {
    auto it = std::lower_bound(keys.begin(), keys.end(), k);
    if (it == keys.end() || *it != k) throw std::logic_error("image left the solution set");
    return static_cast<std::size_t>(it - keys.begin());
}

}  // namespace

std::vector<MarkoffTriple> enumerate_triples(const FieldContext& ctx) {
    const u64 p = ctx.p();
    std::vector<MarkoffTriple> out;
    for (u64 k : sorted_keys(ctx)) out.push_back(triple_of(p, k));
    return out;
}

std::vector<u64> component_sizes(const FieldContext& ctx) {
    const u64 p = ctx.p();
    auto keys = sorted_keys(ctx);
    UnionFind uf(keys.size());
    for (std::size_t i = 0; i < keys.size(); ++i) {
        MarkoffTriple t = triple_of(p, keys[i]);
        for (int v = 1; v <= 3; ++v)
            uf.unite(static_cast<u32>(i),
                     static_cast<u32>(index_of(keys, key_of(p, vieta(ctx, v, t)))));
    }
    std::map<u32, u64> count;
    for (std::size_t i = 0; i < keys.size(); ++i) ++count[uf.find(static_cast<u32>(i))];
    std::vector<u64> sizes;
    for (auto& [root, c] : count) sizes.push_back(c);
    std::sort(sizes.begin(), sizes.end());
    return sizes;
}

u64 orbit_length(const FieldContext& ctx, Fp a) {
    const u64 p = ctx.p();
    Fp four = ctx.fp(4);
    Fp a2 = ctx.mul(a, a);
    for (u64 b = 0; b < p; ++b) {
        Fp fb{b};
        Fp b2 = ctx.mul(fb, fb);
        Fp disc = ctx.sub(ctx.mul(a2, b2), ctx.mul(four, ctx.add(a2, b2)));
        auto roots = ctx.sqrt(disc);
        if (roots.empty()) continue;
        MarkoffTriple start{a, fb, ctx.half(ctx.add(ctx.mul(a, fb), roots.front()))};
        if (start.a.v == 0 && start.b.v == 0 && start.c.v == 0) continue;
        MarkoffTriple cur = rotate(ctx, 1, start);
        u64 len = 1;
        while (!(cur == start)) {
            cur = rotate(ctx, 1, cur);
            ++len;
        }
        return len;
    }
    throw std::domain_error("no nontrivial triple has this first coordinate");
}

u64 coordinate_order(const FieldContext& ctx, Fp a) {
    if (a.v == 2 || a.v == ctx.p() - 2)
        throw std::domain_error("parabolic coordinate has no chi order");
    Fp disc = ctx.sub(ctx.mul(a, a), ctx.fp(4));
    auto roots = ctx.sqrt(disc);
    if (!roots.empty()) {
        Fp chi = ctx.half(ctx.add(a, roots.front()));
        Fp x = chi;
        u64 o = 1;
        while (x != ctx.one()) {
            x = ctx.mul(x, chi);
            ++o;
        }
        return o;
    }
    Fp s = ctx.sqrt(ctx.mul(disc, ctx.inv(ctx.k()))).front();
    Fp2 chi = ctx.make2(ctx.half(a), ctx.half(s));
    Fp2 x = chi;
    u64 o = 1;
    while (x != ctx.one2()) {
        x = ctx.mul2(x, chi);
        ++o;
    }
    return o;
}

BadSlices definition_level_bad_sets(const FieldContext& ctx, const Breakpoints& bps) {
    const u64 p = ctx.p();
    if (p > kBadSetLimit)
        throw std::domain_error("definition-level bad sets are limited to p <= 2000");

    // small order by definition: non-parabolic, 2 < ord < min(L, B) for the class
    std::vector<char> small(p, 0);
    for (u64 a = 0; a < p; ++a) {
        if (a == 2 || a == p - 2) continue;
        u64 d = coordinate_order(ctx, Fp{a});
        if (d <= 2) continue;
        Side side = (p - 1) % d == 0 ? Side::minus : Side::plus;
        small[a] = d <= bps.small_bound(side).max_small;
    }
    auto all_small = [&](const MarkoffTriple& t) {
        return small[t.a.v] && small[t.b.v] && small[t.c.v];
    };

    auto keys = sorted_keys(ctx);
    BadSlices out;
    out.set_i_by_a.assign(p, 0);
    out.set_ii_by_a.assign(p, 0);

    for (u64 k : keys) {
        MarkoffTriple t = triple_of(p, k);
        if (all_small(t)) {
            ++out.set_i_by_a[t.a.v];
            ++out.set_i_total;
        }
    }

    std::vector<char> seen(keys.size(), 0);
    for (std::size_t i = 0; i < keys.size(); ++i) {
        if (seen[i]) continue;
        MarkoffTriple start = triple_of(p, keys[i]);
        MarkoffTriple cur = start;
        bool bad = true;
        u64 len = 0;
        do {
            seen[index_of(keys, key_of(p, cur))] = 1;
            bad = bad && all_small(cur);
            cur = rotate(ctx, 1, cur);
            ++len;
        } while (!(cur == start));
        if (bad) {
            out.set_ii_by_a[start.a.v] += len;
            out.set_ii_total += len;
        }
    }
    return out;
}

}  // namespace markoff::oracle
