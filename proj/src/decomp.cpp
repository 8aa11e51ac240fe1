#include "markoff/decomp.hpp"

#include <numeric>

namespace markoff {

namespace {

// Candidate stream for basis search, seeded by p so runs are reproducible.
struct Rng {
    u64 state;
    explicit Rng(u64 seed) : state(seed) {}
    u64 next() { return detail::next_rand(state); }
};

}  // namespace

GroupBasis<FpGroup> find_basis_minus(const FieldContext& ctx, const Factorization& fminus) {
    GroupBasis<FpGroup> b;
    b.side = Side::minus;
    b.order = fminus;
    Rng rng(ctx.p() ^ 0x6d696e75u);
    for (const auto& pp : fminus.factors) {
        while (true) {
            Fp h = ctx.fp(2 + rng.next() % (ctx.p() - 2));
            Fp g = ctx.pow(h, fminus.n / pp.value);
            if (ctx.pow(g, pp.value / pp.prime) != ctx.one()) {
                b.gens.push_back(g);
                break;
            }
        }
    }
    detail::fill_steps(ctx, b);
    return b;
}

GroupBasis<EGroup> find_basis_plus(const FieldContext& ctx, const Factorization& fplus) {
    GroupBasis<EGroup> b;
    b.side = Side::plus;
    b.order = fplus;
    Rng rng(ctx.p() ^ 0x706c7573u);
    for (const auto& pp : fplus.factors) {
        while (true) {
            Fp2 xi = ctx.make2(ctx.fp(rng.next() % ctx.p()), ctx.fp(1 + rng.next() % (ctx.p() - 1)));
            // xi^(p-1) lands in E, the subgroup of order p+1
            Fp2 h = ctx.pow2(xi, ctx.p() - 1);
            Fp2 g = ctx.pow2(h, fplus.n / pp.value);
            if (ctx.pow2(g, pp.value / pp.prime) != ctx.one2()) {
                b.gens.push_back(g);
                break;
            }
        }
    }
    detail::fill_steps(ctx, b);
    return b;
}

u64 vector_order(const Factorization& group, const GroupVector& v) {
    u64 o = 1;
    for (std::size_t i = 0; i < group.factors.size(); ++i) {
        u64 m = group.factors[i].value;
        u64 comp = m / std::gcd(v.exps[i], m);  // gcd(0, m) = m
        o = std::lcm(o, comp);
    }
    return o;
}

bool lower_half(const Factorization& group, const GroupVector& v) {
    for (std::size_t j = 0; j < group.factors.size(); ++j) {
        u64 r = v.exps[j];
        if (r == 0) continue;
        if (group.factors[j].prime == 2 && r == group.factors[j].value / 2) continue;
        return 2 * r <= group.factors[j].value;
    }
    throw std::domain_error("lower_half undefined for vectors of order 1 or 2");
}

CoordinateClass classify_coordinate(const FieldContext& ctx, Fp a, const Factorization& fminus,
                                    const Factorization& fplus) {
    CoordinateClass cc;
    if (a.v == 2 || a.v == ctx.p() - 2) {
        cc.kind = CoordinateClass::parabolic;
        return cc;
    }
    // chi solves chi^2 - a chi + 1 = 0; discriminant a^2 - 4.
    Fp disc = ctx.sub(ctx.mul(a, a), ctx.fp(4));
    auto root = ctx.sqrt_opt(disc);
    if (root) {
        // chi in F_p^x: hyperbolic, |chi| divides p - 1
        Fp chi = ctx.half(ctx.add(a, *root));
        cc.kind = CoordinateClass::hyperbolic;
        cc.chi = ctx.make2(chi, ctx.zero());
        cc.order = element_order<FpGroup>(ctx, chi, fminus);
    } else {
        // chi = (a + s sqrt(k)) / 2 with s^2 = disc / k: elliptic, |chi| divides p + 1
        Fp s = ctx.sqrt_assume_square(ctx.mul(disc, ctx.inv_k()));
        Fp2 chi = ctx.make2(ctx.half(a), ctx.half(s));
        cc.kind = CoordinateClass::elliptic;
        cc.chi = chi;
        cc.order = element_order<EGroup>(ctx, chi, fplus);
    }
    return cc;
}

}  // namespace markoff
