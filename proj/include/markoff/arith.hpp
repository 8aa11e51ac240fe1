#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace markoff {

using u16 = std::uint16_t;
using u32 = std::uint32_t;
using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m);

// Deterministic Miller-Rabin, valid for all n < 2^64.
bool is_prime_u64(u64 n);

// An element of F_p. Plain value type; all arithmetic goes through FieldContext.
struct Fp {
    u64 v = 0;
    friend bool operator==(Fp a, Fp b) { return a.v == b.v; }
    friend bool operator!=(Fp a, Fp b) { return a.v != b.v; }
};

// An element of F_{p^2} = F_p(sqrt(k)), k the context's fixed nonresidue.
struct Fp2 {
    Fp re, im;
    friend bool operator==(const Fp2& a, const Fp2& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const Fp2& a, const Fp2& b) { return !(a == b); }
};

// Immutable per-prime context: p, the fixed quadratic nonresidue k, and the
// Tonelli-Shanks constants. Shared read-only by everything downstream.
class FieldContext {
public:
    explicit FieldContext(u64 p);

    u64 p() const { return p_; }
    Fp k() const { return k_; }

    Fp fp(u64 x) const { return Fp{x % p_}; }
    Fp zero() const { return Fp{0}; }
    Fp one() const { return Fp{1}; }

    Fp add(Fp a, Fp b) const {
        u64 s = a.v + b.v;
        if (s >= p_) s -= p_;
        return Fp{s};
    }
    Fp sub(Fp a, Fp b) const { return Fp{a.v >= b.v ? a.v - b.v : a.v + p_ - b.v}; }
    Fp neg(Fp a) const { return Fp{a.v == 0 ? 0 : p_ - a.v}; }
    Fp mul(Fp a, Fp b) const { return Fp{mulmod(a.v, b.v, p_)}; }
    Fp pow(Fp a, u64 e) const { return Fp{powmod(a.v, e, p_)}; }
    Fp inv(Fp a) const {
        if (a.v == 0) throw std::domain_error("inverse of zero in F_p");
        return pow(a, p_ - 2);
    }
    Fp half(Fp a) const { return mul(a, inv2_); }
    Fp inv_k() const { return inv_k_; }

    // x^((p-1)/2) as -1/0/+1.
    int legendre(Fp x) const;

    // Square roots of x: {} if nonresidue, {0} if x = 0, else {s, p-s}.
    std::vector<Fp> sqrt(Fp x) const;

    // Smallest square root, or nullopt for nonresidues. Allocation-free.
    std::optional<Fp> sqrt_opt(Fp x) const;

    // Square root of a known residue; skips the Euler-criterion check.
    Fp sqrt_assume_square(Fp x) const;

    // F_{p^2} operations.
    Fp2 make2(Fp re, Fp im) const { return Fp2{re, im}; }
    Fp2 one2() const { return Fp2{one(), zero()}; }
    Fp2 add2(const Fp2& a, const Fp2& b) const { return Fp2{add(a.re, b.re), add(a.im, b.im)}; }
    Fp2 sub2(const Fp2& a, const Fp2& b) const { return Fp2{sub(a.re, b.re), sub(a.im, b.im)}; }
    Fp2 mul2(const Fp2& a, const Fp2& b) const {
        // (x + y rt)(u + v rt) = xu + k yv + (xv + yu) rt
        Fp re = add(mul(a.re, b.re), mul(k_, mul(a.im, b.im)));
        Fp im = add(mul(a.re, b.im), mul(a.im, b.re));
        return Fp2{re, im};
    }
    Fp2 pow2(Fp2 a, u64 e) const;
    Fp norm2(const Fp2& a) const { return sub(mul(a.re, a.re), mul(k_, mul(a.im, a.im))); }
    Fp2 inv2(const Fp2& a) const {
        Fp n = norm2(a);
        if (n.v == 0) throw std::domain_error("inverse of zero in F_{p^2}");
        Fp ni = inv(n);
        return Fp2{mul(a.re, ni), neg(mul(a.im, ni))};
    }
    // x -> x^p, i.e. conjugation re + im rt -> re - im rt.
    Fp2 frobenius(const Fp2& a) const { return Fp2{a.re, neg(a.im)}; }
    bool in_subgroup_E(const Fp2& a) const { return pow2(a, p_ + 1) == one2(); }

private:
    u64 p_;
    Fp k_;
    Fp inv2_;
    Fp inv_k_;
    u64 ts_q_;   // p - 1 = q * 2^s with q odd
    int ts_s_;
    Fp ts_z_;    // k^q, a generator of the 2-Sylow subgroup
};

// Smallest positive quadratic nonresidue mod p.
u64 find_nonresidue(u64 p);

}  // namespace markoff
