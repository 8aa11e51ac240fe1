#include "markoff/breakpoints.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <boost/multiprecision/cpp_int.hpp>

namespace markoff {

namespace {
using boost::multiprecision::uint256_t;

uint256_t sq(u128 x) {
    uint256_t v = u64(x >> 64);
    v <<= 64;
    v += u64(x);
    return v * v;
}
}  // namespace

EndgameBound::EndgameBound(u64 p, const Factorization& f)
    : p_(p), n_(f.n), tau_(tau(f)), phi_(phi(f)) {
    display_ = 8.0 * std::sqrt(double(p_)) * double(n_) * double(tau_) / double(phi_);
    // Exact largest d with d < B, found from the float estimate and fixed up
    // with the exact predicate.
    u64 guess = display_ >= double(n_) * 2 ? n_ : u64(std::max(0.0, display_));
    guess = std::min(guess, n_);
    while (guess > 0 && !below(guess)) --guess;
    while (guess < n_ && below(guess + 1)) ++guess;
    largest_below_ = guess;
}

bool EndgameBound::below(u64 d) const {
    // d phi < 8 sqrt(p) n tau  <=>  (d phi)^2 < 64 p (n tau)^2
    uint256_t lhs = sq(u128(d) * phi_);
    uint256_t rhs = sq(u128(n_) * tau_) * (64 * uint256_t(p_));
    return lhs < rhs;
}

bool EndgameBound::exceeds(u64 d) const {
    uint256_t lhs = sq(u128(d) * phi_);
    uint256_t rhs = sq(u128(n_) * tau_) * (64 * uint256_t(p_));
    return lhs > rhs;
}

double middle_game_sum(u64 t, u64 p, const Factorization& fminus, const Factorization& fplus,
                       Variant variant) {
    std::set<u64> cand;
    for (u64 d : divisors(fminus))
        if (d < t) cand.insert(d);
    for (u64 d : divisors(fplus))
        if (d < t) cand.insert(d);
    std::vector<u64> ds(cand.begin(), cand.end());
    if (variant == Variant::maximal) {
        std::vector<u64> keep;
        for (std::size_t i = 0; i < ds.size(); ++i) {
            bool maximal = true;
            for (std::size_t j = i + 1; j < ds.size(); ++j)
                if (ds[j] % ds[i] == 0) { maximal = false; break; }
            if (maximal) keep.push_back(ds[i]);
        }
        ds = std::move(keep);
    }
    double sum = 0;
    for (u64 d : ds) {
        double td = double(t) * double(d);
        sum += 1.5 * std::max(std::cbrt(6.0 * td), 4.0 * td / double(p));
    }
    return sum;
}

std::optional<u64> middle_game_breakpoint(u64 p, const Factorization& fminus,
                                          const Factorization& fplus, Variant variant) {
    std::set<u64> ts;
    for (u64 d : divisors(fminus)) ts.insert(d);
    for (u64 d : divisors(fplus)) ts.insert(d);
    std::optional<u64> L;
    for (u64 t : ts) {
        if (t == 2) continue;
        double sum = middle_game_sum(t, p, fminus, fplus, variant);
        if (double(t) > sum * (1.0 + 1e-9)) {
            if (!L) L = t;
        } else {
            L.reset();
        }
    }
    return L;
}

Breakpoints compute_breakpoints(u64 p, const Factorization& fminus, const Factorization& fplus,
                                Variant variant) {
    Breakpoints b;
    b.minus = EndgameBound(p, fminus);
    b.plus = EndgameBound(p, fplus);
    b.L = middle_game_breakpoint(p, fminus, fplus, variant);
    b.variant = variant;
    return b;
}

}  // namespace markoff
