#pragma once

#include <chrono>
#include <memory>
#include <optional>
#include <string>

#include "markoff/decomp.hpp"

namespace markoff {

struct MarkoffTriple {
    Fp a, b, c;
    friend bool operator==(const MarkoffTriple& x, const MarkoffTriple& y) {
        return x.a == y.a && x.b == y.b && x.c == y.c;
    }
};

// a^2 + b^2 + c^2 - abc = 0
bool is_markoff(const FieldContext& ctx, const MarkoffTriple& t);

// V_i replaces coordinate i by (product of the others) - coordinate.
MarkoffTriple vieta(const FieldContext& ctx, int i, const MarkoffTriple& t);

// rot_i fixes coordinate i; rot_1: (a, b, c) -> (a, c, ac - b).
MarkoffTriple rotate(const FieldContext& ctx, int i, const MarkoffTriple& t);

// Membership planes over [0, p): hyperbolic-small and elliptic-small.
class SmallOrderSet {
public:
    void init(u64 p) {
        words_ = (p + 63) / 64;
        hyp_.assign(words_, 0);
        ell_.assign(words_, 0);
        any_.assign(words_, 0);  // fused union plane for the walk hot path
        hyp_count_ = ell_count_ = 0;
    }
    void mark_hyp(u64 a) {
        hyp_[a >> 6] |= u64(1) << (a & 63);
        any_[a >> 6] |= u64(1) << (a & 63);
        ++hyp_count_;
    }
    void mark_ell(u64 a) {
        ell_[a >> 6] |= u64(1) << (a & 63);
        any_[a >> 6] |= u64(1) << (a & 63);
        ++ell_count_;
    }
    bool hyp(u64 a) const { return (hyp_[a >> 6] >> (a & 63)) & 1; }
    bool ell(u64 a) const { return (ell_[a >> 6] >> (a & 63)) & 1; }
    bool small(u64 a) const { return (any_[a >> 6] >> (a & 63)) & 1; }
    u64 hyp_count() const { return hyp_count_; }
    u64 ell_count() const { return ell_count_; }
    u64 total() const { return hyp_count_ + ell_count_; }

private:
    std::size_t words_ = 0;
    std::vector<u64> hyp_, ell_, any_;
    u64 hyp_count_ = 0, ell_count_ = 0;
};

enum class StrategyChoice { automatic, cartesian, coset };

struct RunOptions {
    std::optional<u32> cap = 60;  // max triples checked per orbit; nullopt disables
    int jobs = 1;
    Variant variant = Variant::maximal;
    StrategyChoice force = StrategyChoice::automatic;
};

struct ConnectivityReport {
    u64 p = 0;
    std::string fact_minus, fact_plus;
    double B_minus = 0, B_plus = 0;
    std::optional<u64> L;
    u64 S_hyp = 0, S_ell = 0;
    u64 bad_hyp = 0, bad_ell = 0, bad_total = 0;
    u64 four_p = 0;
    bool connected = false;
    u64 max_orbit_checks = 0;
    u64 capped_orbits = 0;
    double elapsed_ms = 0;
    Variant variant = Variant::maximal;
};

// Everything Algorithm-4 builds once per prime, frozen before the per-a loop.
class PrimeContext {
public:
    PrimeContext(u64 p, Variant variant = Variant::maximal);

    u64 p() const { return p_; }
    const FieldContext& field() const { return ctx_; }
    const Factorization& fact_minus() const { return fminus_; }
    const Factorization& fact_plus() const { return fplus_; }
    const FactorTrie& trie_minus() const { return trie_minus_; }
    const FactorTrie& trie_plus() const { return trie_plus_; }
    const Breakpoints& breakpoints() const { return bps_; }
    const SmallOrderSet& small_set() const { return S_; }
    Fp2 twist() const { return m_; }

    struct ACount {
        u64 bad = 0;
        u64 orbits = 0;
        u64 capped = 0;
        bool used_coset = false;
    };
    // Bad-triple count for first coordinate a (which must be marked).
    ACount process_coordinate(u64 a, std::optional<u32> cap,
                              StrategyChoice force = StrategyChoice::automatic) const;

    // The per-a loop; serial reference for jobs <= 1, OpenMP partitioning above.
    ConnectivityReport run(const RunOptions& opts) const;

private:
    u64 strategy_cartesian(u64 a) const;
    ACount strategy_coset(u64 a, const CoordinateClass& cls, std::optional<u32> cap) const;
    ACount coset_zero(std::optional<u32> cap) const;
    template <class Walk>
    bool walk_orbit(Fp b0, Fp b1, Fp a, u64 len, Walk&&) const;

    u64 p_;
    FieldContext ctx_;
    Factorization fminus_, fplus_;
    FactorTrie trie_minus_, trie_plus_;
    GroupBasis<WithInv<FpGroup>> bminus_;
    GroupBasis<WithInv<EGroup>> bplus_;
    Breakpoints bps_;
    Fp2 m_;  // twist with m^(p+1) = -1 for elliptic coset walks
    SmallOrderSet S_;
    std::vector<u64> small_values_;  // ascending marked values; empty if too large to matter
    // per-residue order of marked coordinates, as an index into the side's
    // divisor list; lets the per-a loop skip recomputing orders
    std::vector<u16> order_idx_;
    std::vector<u64> divs_minus_, divs_plus_;

    CoordinateClass coordinate_of(u64 a) const;
};

ConnectivityReport run_prime(u64 p, const RunOptions& opts = {});

}  // namespace markoff
