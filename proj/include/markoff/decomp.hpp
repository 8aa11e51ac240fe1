#pragma once

#include <span>

#include "markoff/breakpoints.hpp"
#include "markoff/factor.hpp"

namespace markoff {

// Multiplicative-group policies so the same machinery runs over F_p^x and
// over E, the order-(p+1) subgroup of F_{p^2}^x.
struct FpGroup {
    using Elem = Fp;
    static Elem one(const FieldContext& c) { return c.one(); }
    static Elem mul(const FieldContext& c, Elem a, Elem b) { return c.mul(a, b); }
    static Elem pow(const FieldContext& c, Elem a, u64 e) { return c.pow(a, e); }
    static Elem inv(const FieldContext& c, Elem a) { return c.inv(a); }
};
struct EGroup {
    using Elem = Fp2;
    static Elem one(const FieldContext& c) { return c.one2(); }
    static Elem mul(const FieldContext& c, const Elem& a, const Elem& b) { return c.mul2(a, b); }
    static Elem pow(const FieldContext& c, const Elem& a, u64 e) { return c.pow2(a, e); }
    static Elem inv(const FieldContext& c, const Elem& a) { return c.inv2(a); }
};

// Carries an element together with its inverse so enumeration streams can
// hand out (x, x^-1) pairs without any modular inversions.
template <class G>
struct WithInv {
    struct Elem {
        typename G::Elem v, vi;
        friend bool operator==(const Elem& a, const Elem& b) { return a.v == b.v; }
        friend bool operator!=(const Elem& a, const Elem& b) { return !(a.v == b.v); }
    };
    static Elem one(const FieldContext& c) { return {G::one(c), G::one(c)}; }
    static Elem mul(const FieldContext& c, const Elem& a, const Elem& b) {
        return {G::mul(c, a.v, b.v), G::mul(c, a.vi, b.vi)};
    }
    static Elem pow(const FieldContext& c, const Elem& a, u64 e) {
        return {G::pow(c, a.v, e), G::pow(c, a.vi, e)};
    }
    static Elem inv(const FieldContext&, const Elem& a) { return {a.vi, a.v}; }
    static Elem wrap(const FieldContext& c, const typename G::Elem& x) {
        return {x, G::inv(c, x)};
    }
};

struct GroupVector {
    std::vector<u64> exps;  // exps[i] in [0, q_i^{t_i})
};

// Z-basis {g_i} with |g_i| = q_i^{t_i} for the prime powers of the group order,
// plus the step table steps[i][e] = g_i^{q_i^{t_i - e}} used by the enumerator.
template <class G>
struct GroupBasis {
    Side side;
    Factorization order;  // factorization of p-1 (minus) or p+1 (plus)
    std::vector<typename G::Elem> gens;
    std::vector<std::vector<typename G::Elem>> steps;  // steps[i][e], e in 1..t_i
};

// Multiplicative order of an element given the factored group order.
template <class G>
u64 element_order(const FieldContext& ctx, const typename G::Elem& x, const Factorization& group) {
    u64 d = group.n;
    for (const auto& pp : group.factors) {
        d /= pp.value;
        auto y = G::pow(ctx, x, d);
        while (y != G::one(ctx)) {
            y = G::pow(ctx, y, pp.prime);
            d *= pp.prime;
        }
    }
    return d;
}

namespace detail {
// splitmix64; the per-prime deterministic generator for basis search.
inline u64 next_rand(u64& state) {
    u64 z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

template <class G>
void fill_steps(const FieldContext& ctx, GroupBasis<G>& b) {
    b.steps.clear();
    for (std::size_t i = 0; i < b.gens.size(); ++i) {
        const auto& pp = b.order.factors[i];
        std::vector<typename G::Elem> col(pp.exp + 1, G::one(ctx));
        col[pp.exp] = b.gens[i];  // g^(q^0)
        for (u32 e = pp.exp; e-- >= 1;) col[e] = G::pow(ctx, col[e + 1], pp.prime);
        b.steps.push_back(std::move(col));
    }
}
}  // namespace detail

GroupBasis<FpGroup> find_basis_minus(const FieldContext& ctx, const Factorization& fminus);
GroupBasis<EGroup> find_basis_plus(const FieldContext& ctx, const Factorization& fplus);

// Re-express a basis in the inverse-carrying policy.
template <class G>
GroupBasis<WithInv<G>> with_inverses(const FieldContext& ctx, const GroupBasis<G>& b) {
    GroupBasis<WithInv<G>> out;
    out.side = b.side;
    out.order = b.order;
    for (std::size_t i = 0; i < b.gens.size(); ++i)
        out.gens.push_back({b.gens[i], G::pow(ctx, b.gens[i], b.order.factors[i].value - 1)});
    detail::fill_steps(ctx, out);
    return out;
}

template <class G>
typename G::Elem vector_to_element(const FieldContext& ctx, const GroupBasis<G>& b,
                                   const GroupVector& v) {
    auto r = G::one(ctx);
    for (std::size_t i = 0; i < b.gens.size(); ++i)
        if (v.exps[i]) r = G::mul(ctx, r, G::pow(ctx, b.gens[i], v.exps[i]));
    return r;
}

u64 vector_order(const Factorization& group, const GroupVector& v);

// True iff r_k <= q_k^{t_k} / 2 at the defining index
// k = min{ j : r_j != 0 and (q_j, r_j) != (2, 2^{t_1 - 1}) }.
// Throws for vectors of order 1 or 2 (no defining index).
bool lower_half(const Factorization& group, const GroupVector& v);

struct CoordinateClass {
    enum Kind { parabolic, hyperbolic, elliptic } kind;
    u64 order = 0;  // unset for parabolic
    // chi with chi + chi^-1 = a: in F_p for hyperbolic (im = 0), in E otherwise
    Fp2 chi{};
};

CoordinateClass classify_coordinate(const FieldContext& ctx, Fp a, const Factorization& fminus,
                                    const Factorization& fplus);

namespace detail {

// A 64-bit integer has at most 15 distinct prime factors.
inline constexpr std::size_t kMaxComponents = 15;

// The recursive lower-half enumerator shared by small-order generation and
// coset-representative generation. Components describe a product of cyclic
// groups of prime-power order (ascending distinct primes); steps[e] realizes
// the generator power g^{q^{t - e}} for e in 1..t. Yields one exponent vector
// per {v, v^-1} pair with order in (2, max_order], together with its
// realizing group element (premultiplied by the run seed) and exact order.
// Fixed-capacity state: the whole traversal is allocation-free.
template <class G, class Sink>
class PairEnumerator {
public:
    struct Component {
        u64 prime = 0;
        u32 exp = 0;
        u64 value = 0;
        const typename G::Elem* steps = nullptr;
    };

    PairEnumerator(const FieldContext& ctx, u64 max_order, Sink& sink)
        : ctx_(ctx), max_order_(max_order), sink_(sink) {}

    void add_component(u64 prime, u32 exp, u64 value, const typename G::Elem* steps) {
        comps_[n_] = Component{prime, exp, value, steps};
        exps_[n_] = 0;
        depth_[n_] = 0;
        ++n_;
    }

    void run(const typename G::Elem& seed) {
        for (std::size_t j = 0; j < n_; ++j) {
            if (comps_[j].prime > max_order_) break;
            int limit = comps_[j].prime == 2 ? -1 : static_cast<int>(j);
            descend(j, limit, comps_[j].prime, seed);
        }
    }

private:
    void descend(std::size_t m, int limit, u64 order, const typename G::Elem& elem) {
        depth_[m] += 1;
        enumerate(m, limit, order, elem);
        depth_[m] -= 1;
    }

    void enumerate(std::size_t m, int limit, u64 order, typename G::Elem elem) {
        const Component& pp = comps_[m];
        const u32 e = depth_[m];
        const u64 step = ipow(pp.prime, pp.exp - e);
        const typename G::Elem& step_elem = pp.steps[e];
        const u64 saved = exps_[m];
        u64 r = saved;
        typename G::Elem cur = elem;
        for (u64 u = 0; u < pp.prime; ++u) {
            if (u > 0) {
                r += step;
                if (limit == static_cast<int>(m) && 2 * r > pp.value) break;
                cur = G::mul(ctx_, cur, step_elem);
                exps_[m] = r;
                if (order > 2 && order <= max_order_) sink_(exps_, cur, order);
                for (std::size_t j = m + 1; j < n_; ++j) {
                    if (order > max_order_ / comps_[j].prime) continue;
                    int jlimit = limit >= 0 ? limit : static_cast<int>(j);
                    descend(j, jlimit, order * comps_[j].prime, cur);
                }
            }
            if (e < pp.exp && order <= max_order_ / pp.prime) {
                int mlimit = limit;
                if (mlimit < 0 && !(pp.prime == 2 && e + 1 == 1)) mlimit = static_cast<int>(m);
                descend(m, mlimit, order * pp.prime, cur);
            }
        }
        exps_[m] = saved;
    }

    static u64 ipow(u64 b, u32 e) {
        u64 r = 1;
        while (e--) r *= b;
        return r;
    }

    const FieldContext& ctx_;
    u64 max_order_;
    Sink& sink_;
    Component comps_[kMaxComponents];
    u64 exps_[kMaxComponents] = {};
    u32 depth_[kMaxComponents] = {};
    std::size_t n_ = 0;
};

}  // namespace detail

// Algorithm-3 driver: streams one chi per {chi, chi^-1} pair with
// 2 < |chi| <= bound.max_small, as (exponent vector, element, order).
// Subtrees whose every divisor exceeds the bound are pruned.
template <class G, class Sink>
void propagate_small_orders(const FieldContext& ctx, const GroupBasis<G>& basis, OrderBound bound,
                            Sink&& sink) {
    if (bound.max_small < 3) return;
    const std::size_t n = basis.order.factors.size();
    auto inner = [&](const u64* exps, const typename G::Elem& chi, u64 d) {
        sink(std::span<const u64>(exps, n), chi, d);
    };
    detail::PairEnumerator<G, decltype(inner)> en(ctx, bound.max_small, inner);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& pp = basis.order.factors[i];
        en.add_component(pp.prime, pp.exp, pp.value, basis.steps[i].data());
    }
    en.run(G::one(ctx));
}

// One representative per {r<chi>, r^-1<chi>} class of cosets of <chi>, as
// group elements premultiplied by seed (the inverse-carrying policies hand
// out both seed*r and seed*r^-1). The identity coset and, when present,
// the order-2 quotient class come flagged self_paired. Allocation-free.
// Sink: void(const typename G::Elem&, bool self_paired)
template <class G, class Sink>
void coset_elements(const FieldContext& ctx, const GroupBasis<G>& basis, u64 chi_order,
                    const typename G::Elem& seed, Sink&& sink) {
    const auto& factors = basis.order.factors;
    sink(seed, true);  // identity coset

    auto inner = [&](const u64*, const typename G::Elem& elem, u64) { sink(elem, false); };
    detail::PairEnumerator<G, decltype(inner)> en(ctx, ~u64(0), inner);
    bool first = true;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        u32 s = 0;
        u64 d = chi_order;
        while (d % factors[i].prime == 0) { d /= factors[i].prime; ++s; }
        if (s >= factors[i].exp) continue;
        // quotient component q^(t-s); its step table is the tail of the full one
        u64 value = factors[i].value;
        for (u32 e = 0; e < s; ++e) value /= factors[i].prime;
        if (first && factors[i].prime == 2) {  // the self-inverse order-2 class
            sink(G::mul(ctx, seed, G::pow(ctx, basis.gens[i], value / 2)), true);
        }
        first = false;
        en.add_component(factors[i].prime, factors[i].exp - s, value, basis.steps[i].data() + s);
    }
    en.run(seed);
}

// The exponent-vector view of the same representatives, lifted to full-group
// coordinates (component j taken in [0, q_j^{t_j - s_j})).
// Sink: void(const GroupVector& lift, typename G::Elem elem, bool self_paired)
template <class G, class Sink>
void coset_reps(const FieldContext& ctx, const GroupBasis<G>& basis, u64 chi_order,
                const typename G::Elem& seed, Sink&& sink) {
    const auto& factors = basis.order.factors;
    GroupVector lift;
    lift.exps.assign(factors.size(), 0);

    sink(lift, seed, true);  // identity coset

    std::vector<std::size_t> src;
    std::vector<u64> qvalues;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        u32 s = 0;
        u64 d = chi_order;
        while (d % factors[i].prime == 0) { d /= factors[i].prime; ++s; }
        if (s >= factors[i].exp) continue;
        u64 value = factors[i].value;
        for (u32 e = 0; e < s; ++e) value /= factors[i].prime;
        src.push_back(i);
        qvalues.push_back(value);
    }
    if (src.empty()) return;

    if (factors[src[0]].prime == 2) {  // the self-inverse order-2 quotient class
        lift.exps[src[0]] = qvalues[0] / 2;
        sink(lift, G::mul(ctx, seed, G::pow(ctx, basis.gens[src[0]], lift.exps[src[0]])), true);
        lift.exps[src[0]] = 0;
    }

    auto inner = [&](const u64* exps, const typename G::Elem& elem, u64) {
        for (std::size_t i = 0; i < src.size(); ++i) lift.exps[src[i]] = exps[i];
        sink(lift, elem, false);
        for (std::size_t i = 0; i < src.size(); ++i) lift.exps[src[i]] = 0;
    };
    detail::PairEnumerator<G, decltype(inner)> en(ctx, ~u64(0), inner);
    for (std::size_t i = 0; i < src.size(); ++i) {
        u32 s = factors[src[i]].exp;
        u64 value = qvalues[i];
        u32 qexp = 0;
        for (u64 v = value; v > 1; v /= factors[src[i]].prime) ++qexp;
        en.add_component(factors[src[i]].prime, qexp, value,
                         basis.steps[src[i]].data() + (s - qexp));
    }
    en.run(seed);
}

}  // namespace markoff
