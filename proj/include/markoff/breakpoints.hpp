#pragma once

#include <optional>

#include "markoff/factor.hpp"

namespace markoff {

enum class Side { minus, plus };
enum class Variant { maximal, all_divisors };

// One endgame threshold B = 8 sqrt(p) n tau(n) / phi(n) for n = p -/+ 1.
// All order comparisons against B are exact: d < B  <=>  (d phi)^2 < 64 p (n tau)^2.
class EndgameBound {
public:
    EndgameBound() = default;
    EndgameBound(u64 p, const Factorization& f);

    bool below(u64 d) const;     // d < B
    bool exceeds(u64 d) const;   // d > B
    u64 largest_below() const { return largest_below_; }  // max d with d < B (saturates at n)
    double display() const { return display_; }

private:
    u64 p_ = 0, n_ = 0, tau_ = 0, phi_ = 0;
    u64 largest_below_ = 0;
    double display_ = 0;
};

// Exclusive upper bound on "small" orders: d counts as small iff d <= max_small.
struct OrderBound {
    u64 max_small = 0;
};

struct Breakpoints {
    EndgameBound minus, plus;
    std::optional<u64> L;
    Variant variant = Variant::maximal;

    const EndgameBound& endgame(Side s) const { return s == Side::minus ? minus : plus; }
    // min(L, B) as an integer bound: order d is small iff 2 < d <= small_bound(side).max_small.
    OrderBound small_bound(Side s) const {
        u64 m = endgame(s).largest_below();
        if (L && *L != 0) m = std::min(m, *L - 1);
        return OrderBound{m};
    }
};

// Sum over the configured divisor set of (3/2) max(cbrt(6td), 4td/p).
double middle_game_sum(u64 t, u64 p, const Factorization& fminus, const Factorization& fplus,
                       Variant variant);

// Ascending scan over D(p-1) u D(p+1) minus {2} with reset-on-failure; the
// conservative comparison demands t > sum * (1 + 1e-9).
std::optional<u64> middle_game_breakpoint(u64 p, const Factorization& fminus,
                                          const Factorization& fplus, Variant variant);

Breakpoints compute_breakpoints(u64 p, const Factorization& fminus, const Factorization& fplus,
                                Variant variant);

}  // namespace markoff
