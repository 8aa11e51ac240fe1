#include "markoff/sieve.hpp"

#include <algorithm>
#include <cassert>
#include <span>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace markoff {

bool is_markoff(const FieldContext& ctx, const MarkoffTriple& t) {
    Fp lhs = ctx.add(ctx.add(ctx.mul(t.a, t.a), ctx.mul(t.b, t.b)), ctx.mul(t.c, t.c));
    Fp rhs = ctx.mul(ctx.mul(t.a, t.b), t.c);
    return lhs == rhs;
}

MarkoffTriple vieta(const FieldContext& ctx, int i, const MarkoffTriple& t) {
    switch (i) {
        case 1: return {ctx.sub(ctx.mul(t.b, t.c), t.a), t.b, t.c};
        case 2: return {t.a, ctx.sub(ctx.mul(t.a, t.c), t.b), t.c};
        case 3: return {t.a, t.b, ctx.sub(ctx.mul(t.a, t.b), t.c)};
        default: throw std::domain_error("vieta index must be 1, 2 or 3");
    }
}

MarkoffTriple rotate(const FieldContext& ctx, int i, const MarkoffTriple& t) {
    switch (i) {
        case 1: return {t.a, t.c, ctx.sub(ctx.mul(t.a, t.c), t.b)};
        case 2: return {ctx.sub(ctx.mul(t.a, t.b), t.c), t.b, t.a};
        case 3: return {t.b, ctx.sub(ctx.mul(t.b, t.c), t.a), t.c};
        default: throw std::domain_error("rotate index must be 1, 2 or 3");
    }
}

namespace {

// Deterministic search for the twist m with m^(p+1) = -1, i.e. |m| = 2^(v+1)
// where 2^v || p + 1. (p^2 - 1)/2^(v+1) factors as ((p-1)/2) * ((p+1)/2^v).
Fp2 find_twist(const FieldContext& ctx) {
    u64 p = ctx.p();
    u32 v = 0;
    u64 q = p + 1;
    while ((q & 1) == 0) { q >>= 1; ++v; }
    u64 state = p ^ 0x7477697374ull;
    Fp minus_one = ctx.neg(ctx.one());
    while (true) {
        Fp2 xi = ctx.make2(ctx.fp(detail::next_rand(state) % p),
                           ctx.fp(1 + detail::next_rand(state) % (p - 1)));
        Fp2 cand = ctx.pow2(ctx.pow2(xi, (p - 1) / 2), (p + 1) >> v);
        if (ctx.pow2(cand, u64(1) << v) == ctx.make2(minus_one, ctx.zero())) return cand;
    }
}

}  // namespace

PrimeContext::PrimeContext(u64 p, Variant variant)
    : p_(p), ctx_((p > 3 && is_prime_u64(p)) ? p : throw std::domain_error(
                                                    "p must be an odd prime greater than 3")) {
    fminus_ = factorize(p - 1);
    fplus_ = factorize(p + 1);
    trie_minus_ = build_trie(fminus_);
    trie_plus_ = build_trie(fplus_);
    bminus_ = with_inverses(ctx_, find_basis_minus(ctx_, fminus_));
    bplus_ = with_inverses(ctx_, find_basis_plus(ctx_, fplus_));
    bps_ = compute_breakpoints(p, fminus_, fplus_, variant);
    m_ = find_twist(ctx_);
    assert(ctx_.norm2(m_) == ctx_.neg(ctx_.one()));

    S_.init(p);
    divs_minus_ = divisors(fminus_);
    divs_plus_ = divisors(fplus_);
    order_idx_.assign(p, 0);
    auto index_in = [](const std::vector<u64>& divs, u64 d) {
        return static_cast<u16>(std::lower_bound(divs.begin(), divs.end(), d) - divs.begin());
    };
    propagate_small_orders(ctx_, bminus_, bps_.small_bound(Side::minus),
                           [&](std::span<const u64>, const WithInv<FpGroup>::Elem& chi, u64 d) {
                               u64 a = ctx_.add(chi.v, chi.vi).v;
                               if (S_.hyp(a)) throw std::logic_error("duplicate hyperbolic yield");
                               S_.mark_hyp(a);
                               order_idx_[a] = index_in(divs_minus_, d);
                           });
    propagate_small_orders(ctx_, bplus_, bps_.small_bound(Side::plus),
                           [&](std::span<const u64>, const WithInv<EGroup>::Elem& chi, u64 d) {
                               assert(ctx_.add(chi.v.im, chi.vi.im).v == 0);
                               u64 a = ctx_.add(chi.v.re, chi.vi.re).v;
                               if (S_.ell(a)) throw std::logic_error("duplicate elliptic yield");
                               S_.mark_ell(a);
                               order_idx_[a] = index_in(divs_plus_, d);
                           });

    // Strategy 1 needs the marked values as a list; auto dispatch only ever
    // picks it when |S|^2 <= p+1, so skip the list when it cannot be needed
    // and would be large.
    if (S_.total() <= 4'000'000) {
        small_values_.reserve(S_.total());
        for (u64 a = 0; a < p_; ++a)
            if (S_.small(a)) small_values_.push_back(a);
    }
}

u64 PrimeContext::strategy_cartesian(u64 a) const {
    if (small_values_.size() != S_.total())
        throw std::logic_error("marked-value list unavailable for cartesian strategy");
    Fp fa{a};
    Fp a2 = ctx_.mul(fa, fa);
    Fp four = ctx_.fp(4);
    u64 cnt = 0;
    for (u64 b : small_values_) {
        Fp fb{b};
        Fp b2 = ctx_.mul(fb, fb);
        Fp disc = ctx_.sub(ctx_.mul(a2, b2), ctx_.mul(four, ctx_.add(a2, b2)));
        Fp ab = ctx_.mul(fa, fb);
        if (disc.v == 0) {
            Fp c = ctx_.half(ab);
            if (a == 0 && b == 0) continue;  // the trivial solution
            if (S_.small(c.v)) ++cnt;
        } else {
            for (Fp s : ctx_.sqrt(disc)) {
                Fp c = ctx_.half(ctx_.add(ab, s));
                if (S_.small(c.v)) ++cnt;
            }
        }
    }
    return cnt;
}

template <class Walk>
bool PrimeContext::walk_orbit(Fp b0, Fp b1, Fp a, u64 len, Walk&& small) const {
    // b_{l+1} = a b_l - b_{l-1}; b_0 already checked by the caller
    Fp prev = b0, cur = b1;
    for (u64 i = 1; i < len; ++i) {
        if (!small(cur.v)) return false;
        Fp next = ctx_.sub(ctx_.mul(a, cur), prev);
        prev = cur;
        cur = next;
    }
    return true;
}

PrimeContext::ACount PrimeContext::coset_zero(std::optional<u32> cap) const {
    // The orbit parameterization degenerates at a = 0 (scale vanishes).
    // For p = 3 mod 4 no nontrivial triple has a zero coordinate. For
    // p = 1 mod 4 the orbits through (0, b, +-ib) are geometric walks b i^l;
    // each coset b<i> of F_p^x carries the two sign families, which share one
    // value set of size 4.
    ACount out;
    out.used_coset = true;
    if (p_ % 4 == 3) return out;
    Fp i_root = ctx_.sqrt(ctx_.neg(ctx_.one())).front();
    const u64 d = 4;
    u64 len = cap ? std::min<u64>(d, *cap) : d;
    auto walk_geo = [&](Fp r) {
        ++out.orbits;
        Fp u = r;
        for (u64 l = 0; l < len; ++l) {
            if (!S_.small(u.v)) return;
            u = ctx_.mul(u, i_root);
        }
        if (len < d) ++out.capped;
        out.bad += 2 * d;
    };
    coset_elements(ctx_, bminus_, d, WithInv<FpGroup>::one(ctx_),
                   [&](const WithInv<FpGroup>::Elem& r, bool self_paired) {
                       walk_geo(r.v);
                       if (!self_paired) walk_geo(r.vi);
                   });
    return out;
}

PrimeContext::ACount PrimeContext::strategy_coset(u64 a, const CoordinateClass& cls,
                                                  std::optional<u32> cap) const {
    if (a == 0) return coset_zero(cap);
    ACount out;
    out.used_coset = true;
    const u64 d = cls.order;
    const u64 len = cap ? std::min<u64>(d, *cap) : d;
    Fp fa{a};
    auto small = [&](u64 v) { return S_.small(v); };

    if (cls.kind == CoordinateClass::hyperbolic) {
        Fp chi = cls.chi.re;
        Fp chi_inv = ctx_.inv(chi);
        Fp scale = ctx_.mul(fa, ctx_.inv(ctx_.sub(chi, chi_inv)));
        // seeding by scale makes the yields (scale r, scale r^-1), so
        // b_0 = U + V and b_1 = U chi + V chi^-1 directly
        coset_elements(ctx_, bminus_, d, WithInv<FpGroup>::Elem{scale, scale},
                   [&](const WithInv<FpGroup>::Elem& r, bool self_paired) {
                       ++out.orbits;
                       Fp b0 = ctx_.add(r.v, r.vi);
                       if (!S_.small(b0.v)) return;  // most orbits die here
                       Fp b1 = ctx_.add(ctx_.mul(r.v, chi), ctx_.mul(r.vi, chi_inv));
                       if (walk_orbit(b0, b1, fa, len, small)) {
                           if (len < d) ++out.capped;
                           out.bad += d * (self_paired ? 1 : 2);
                       }
                   });
    } else {
        // u_l = m r chi^l has u_l^(p+1) = -1, so u_l + u_l^(-1) = 2 im(u_l) rt(k)
        // and b_l = a im(u_l) / im(chi) = im(c0 m r chi^l) with real c0.
        // The reversed orbit of coset r corresponds to m^-2 r^-1, not r^-1,
        // so both pair members get walked separately.
        const Fp2 chi = cls.chi;
        Fp c0 = ctx_.mul(fa, ctx_.inv(chi.im));
        Fp2 seed = ctx_.make2(ctx_.mul(c0, m_.re), ctx_.mul(c0, m_.im));  // c0 * m
        auto walk_from = [&](const Fp2& u0) {
            ++out.orbits;
            Fp b0 = u0.im;
            if (!S_.small(b0.v)) return;
            // only the rt(k) component of u0 chi is ever needed
            Fp b1 = ctx_.add(ctx_.mul(u0.re, chi.im), ctx_.mul(u0.im, chi.re));
            if (walk_orbit(b0, b1, fa, len, small)) {
                if (len < d) ++out.capped;
                out.bad += d;
            }
        };
        coset_elements(ctx_, bplus_, d, WithInv<EGroup>::Elem{seed, seed},
                       [&](const WithInv<EGroup>::Elem& r, bool self_paired) {
                           walk_from(r.v);
                           if (!self_paired) walk_from(r.vi);
                       });
    }
    return out;
}

// Reconstruct chi and the order of a marked coordinate from the stored order
// index; the conjugate root is a - chi, so no order search is repeated here.
CoordinateClass PrimeContext::coordinate_of(u64 a) const {
    CoordinateClass cc;
    Fp fa{a};
    Fp disc = ctx_.sub(ctx_.mul(fa, fa), ctx_.fp(4));
    if (S_.hyp(a)) {
        cc.kind = CoordinateClass::hyperbolic;
        cc.order = divs_minus_[order_idx_[a]];
        cc.chi = ctx_.make2(ctx_.half(ctx_.add(fa, ctx_.sqrt_assume_square(disc))), ctx_.zero());
    } else {
        cc.kind = CoordinateClass::elliptic;
        cc.order = divs_plus_[order_idx_[a]];
        Fp s = ctx_.sqrt_assume_square(ctx_.mul(disc, ctx_.inv_k()));
        cc.chi = ctx_.make2(ctx_.half(fa), ctx_.half(s));
    }
    return cc;
}

PrimeContext::ACount PrimeContext::process_coordinate(u64 a, std::optional<u32> cap,
                                                      StrategyChoice force) const {
    if (!S_.small(a))
        throw std::domain_error("only marked coordinates are processed");
    CoordinateClass cls = coordinate_of(a);
    bool use_coset;
    switch (force) {
        case StrategyChoice::cartesian: use_coset = false; break;
        case StrategyChoice::coset: use_coset = true; break;
        default: {
            u64 n = cls.kind == CoordinateClass::hyperbolic ? p_ - 1 : p_ + 1;
            use_coset = u128(n / cls.order) < u128(S_.total()) * S_.total();
        }
    }
    if (!use_coset) {
        ACount out;
        out.bad = strategy_cartesian(a);
        return out;
    }
    return strategy_coset(a, cls, cap);
}

ConnectivityReport PrimeContext::run(const RunOptions& opts) const {
    auto t0 = std::chrono::steady_clock::now();
    u64 bad_h = 0, bad_e = 0, capped = 0, maxorb = 0;

    if (opts.jobs > 1) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 64) num_threads(opts.jobs) \
    reduction(+ : bad_h, bad_e, capped) reduction(max : maxorb)
        for (long long a = 0; a < (long long)p_; ++a) {
            if (!S_.small(a)) continue;
            ACount r = process_coordinate(a, opts.cap, opts.force);
            if (S_.hyp(a))
                bad_h += r.bad;
            else
                bad_e += r.bad;
            capped += r.capped;
            maxorb = std::max(maxorb, r.orbits);
        }
#else
        // built without OpenMP: fall through to the serial loop
        for (u64 a = 0; a < p_; ++a) {
            if (!S_.small(a)) continue;
            ACount r = process_coordinate(a, opts.cap, opts.force);
            (S_.hyp(a) ? bad_h : bad_e) += r.bad;
            capped += r.capped;
            maxorb = std::max(maxorb, r.orbits);
        }
#endif
    } else {
        // serial reference path, kept exactly equivalent
        for (u64 a = 0; a < p_; ++a) {
            if (!S_.small(a)) continue;
            ACount r = process_coordinate(a, opts.cap, opts.force);
            (S_.hyp(a) ? bad_h : bad_e) += r.bad;
            capped += r.capped;
            maxorb = std::max(maxorb, r.orbits);
        }
    }

    ConnectivityReport rep;
    rep.p = p_;
    rep.fact_minus = format_factorization(fminus_);
    rep.fact_plus = format_factorization(fplus_);
    rep.B_minus = bps_.minus.display();
    rep.B_plus = bps_.plus.display();
    rep.L = bps_.L;
    rep.S_hyp = S_.hyp_count();
    rep.S_ell = S_.ell_count();
    rep.bad_hyp = bad_h;
    rep.bad_ell = bad_e;
    rep.bad_total = bad_h + bad_e;
    rep.four_p = 4 * p_;
    rep.connected = rep.bad_total < rep.four_p;
    rep.max_orbit_checks = maxorb;
    rep.capped_orbits = capped;
    rep.variant = bps_.variant;
    rep.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

ConnectivityReport run_prime(u64 p, const RunOptions& opts) {
    PrimeContext ctx(p, opts.variant);
    return ctx.run(opts);
}

}  // namespace markoff
