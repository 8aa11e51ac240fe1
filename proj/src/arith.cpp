#include "markoff/arith.hpp"

#include <algorithm>

namespace markoff {

u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    // These twelve bases decide primality for every n < 3.3e24.
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

u64 find_nonresidue(u64 p) {
    for (u64 k = 2; k < p; ++k) {
        if (powmod(k, (p - 1) / 2, p) == p - 1) return k;
    }
    throw std::domain_error("no quadratic nonresidue found (p must be an odd prime)");
}

FieldContext::FieldContext(u64 p) : p_(p) {
    if (p < 3 || p >= (u64(1) << 63) || !is_prime_u64(p))
        throw std::domain_error("modulus must be an odd prime below 2^63");
    k_ = Fp{find_nonresidue(p)};
    inv2_ = Fp{powmod(2, p - 2, p)};
    inv_k_ = Fp{powmod(k_.v, p - 2, p)};
    ts_q_ = p - 1;
    ts_s_ = 0;
    while ((ts_q_ & 1) == 0) { ts_q_ >>= 1; ++ts_s_; }
    ts_z_ = Fp{powmod(k_.v, ts_q_, p)};
}

int FieldContext::legendre(Fp x) const {
    if (x.v == 0) return 0;
    return powmod(x.v, (p_ - 1) / 2, p_) == 1 ? 1 : -1;
}

Fp FieldContext::sqrt_assume_square(Fp x) const {
    if (x.v == 0) return Fp{0};
    u64 s;
    if (p_ % 4 == 3) {
        s = powmod(x.v, (p_ + 1) / 4, p_);
    } else {
        // Tonelli-Shanks with the precomputed 2-Sylow generator.
        u64 m = ts_s_;
        u64 c = ts_z_.v;
        u64 t = powmod(x.v, ts_q_, p_);
        u64 r = powmod(x.v, (ts_q_ + 1) / 2, p_);
        while (t != 1) {
            u64 t2 = t;
            u64 i = 0;
            while (t2 != 1) { t2 = mulmod(t2, t2, p_); ++i; }
            u64 b = c;
            for (u64 j = 0; j + i + 1 < m; ++j) b = mulmod(b, b, p_);
            m = i;
            c = mulmod(b, b, p_);
            t = mulmod(t, c, p_);
            r = mulmod(r, b, p_);
        }
        s = r;
    }
    return Fp{std::min(s, p_ - s)};
}

std::optional<Fp> FieldContext::sqrt_opt(Fp x) const {
    if (x.v == 0) return Fp{0};
    if (legendre(x) != 1) return std::nullopt;
    return sqrt_assume_square(x);
}

std::vector<Fp> FieldContext::sqrt(Fp x) const {
    auto s = sqrt_opt(x);
    if (!s) return {};
    if (s->v == 0) return {Fp{0}};
    return {*s, Fp{p_ - s->v}};
}

Fp2 FieldContext::pow2(Fp2 a, u64 e) const {
    Fp2 r = one2();
    while (e) {
        if (e & 1) r = mul2(r, a);
        a = mul2(a, a);
        e >>= 1;
    }
    return r;
}

}  // namespace markoff
