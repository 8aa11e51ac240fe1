#include "markoff/factor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace markoff {

namespace {

const std::vector<u32>& small_primes() {
    static const std::vector<u32> primes = [] {
        const u32 limit = 1'000'000;
        std::vector<bool> sieve(limit + 1, true);
        std::vector<u32> out;
        for (u32 i = 2; i <= limit; ++i) {
            if (!sieve[i]) continue;
            out.push_back(i);
            for (u64 j = u64(i) * i; j <= limit; j += i) sieve[j] = false;
        }
        return out;
    }();
    return primes;
}

u64 pollard_rho(u64 n) {
    // Brent's variant; deterministic restart schedule.
    for (u64 c = 1;; ++c) {
        u64 x = 2, y = 2, d = 1;
        u64 q = 1;
        int power = 1, lam = 0;
        auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
        while (d == 1) {
            if (power == lam) {
                x = y;
                power *= 2;
                lam = 0;
            }
            y = f(y);
            ++lam;
            u64 diff = x > y ? x - y : y - x;
            if (diff == 0) break;
            q = mulmod(q, diff, n);
            if (lam % 64 == 0) {
                d = std::gcd(q, n);
                q = 1;
            }
        }
        if (d == 1) d = std::gcd(q, n);
        if (d != 1 && d != n) return d;
    }
}

void factor_rec(u64 n, std::vector<u64>& out) {
    if (n == 1) return;
    if (is_prime_u64(n)) {
        out.push_back(n);
        return;
    }
    u64 d = pollard_rho(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

}  // namespace

Factorization factorize(u64 n) {
    if (n == 0) throw std::domain_error("factorize(0)");
    Factorization f;
    f.n = n;
    std::vector<u64> primes;
    for (u32 q : small_primes()) {
        if (u64(q) * q > n) break;
        while (n % q == 0) {
            primes.push_back(q);
            n /= q;
        }
    }
    factor_rec(n, primes);
    std::sort(primes.begin(), primes.end());
    for (std::size_t i = 0; i < primes.size();) {
        std::size_t j = i;
        while (j < primes.size() && primes[j] == primes[i]) ++j;
        PrimePower pp;
        pp.prime = primes[i];
        pp.exp = static_cast<u32>(j - i);
        pp.value = 1;
        for (u32 e = 0; e < pp.exp; ++e) pp.value *= pp.prime;
        f.factors.push_back(pp);
        i = j;
    }
    return f;
}

std::vector<u64> divisors(const Factorization& f) {
    std::vector<u64> out{1};
    for (const auto& pp : f.factors) {
        std::size_t base = out.size();
        u64 q = 1;
        for (u32 e = 1; e <= pp.exp; ++e) {
            q *= pp.prime;
            for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * q);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

u64 tau(const Factorization& f) {
    u64 t = 1;
    for (const auto& pp : f.factors) t *= pp.exp + 1;
    return t;
}

u64 phi(const Factorization& f) {
    u64 r = 1;
    for (const auto& pp : f.factors) r *= (pp.value / pp.prime) * (pp.prime - 1);
    return r;
}

std::vector<u64> maximal_divisors(const Factorization& f, u64 x) {
    std::vector<u64> ds = divisors(f);
    std::vector<u64> below;
    for (u64 d : ds)
        if (d <= x) below.push_back(d);
    std::vector<u64> out;
    for (std::size_t i = 0; i < below.size(); ++i) {
        bool maximal = true;
        for (std::size_t j = i + 1; j < below.size(); ++j) {
            if (below[j] % below[i] == 0) { maximal = false; break; }
        }
        if (maximal) out.push_back(below[i]);
    }
    return out;
}

std::string format_factorization(const Factorization& f) {
    if (f.factors.empty()) return "1";
    std::ostringstream os;
    bool first = true;
    for (const auto& pp : f.factors) {
        if (!first) os << '*';
        first = false;
        os << pp.prime;
        if (pp.exp > 1) os << '^' << pp.exp;
    }
    return os.str();
}

std::vector<u64> primes_in_range(u64 lo, u64 hi) {
    std::vector<u64> out;
    if (hi <= lo) return out;
    if (hi <= 2) return out;
    u64 root = static_cast<u64>(std::sqrt(double(hi))) + 2;
    std::vector<u64> base;
    {
        std::vector<bool> sieve(root + 1, true);
        for (u64 i = 2; i <= root; ++i) {
            if (!sieve[i]) continue;
            base.push_back(i);
            for (u64 j = i * i; j <= root; j += i) sieve[j] = false;
        }
    }
    const u64 seg_size = 1 << 20;
    for (u64 seg = lo; seg < hi; seg += seg_size) {
        u64 end = std::min(hi, seg + seg_size);
        std::vector<bool> comp(end - seg, false);
        for (u64 q : base) {
            if (q * q >= end) break;
            u64 start = std::max(q * q, (seg + q - 1) / q * q);
            for (u64 j = start; j < end; j += q) comp[j - seg] = true;
        }
        for (u64 v = seg; v < end; ++v)
            if (v >= 2 && !comp[v - seg]) out.push_back(v);
    }
    return out;
}

FactorTrie build_trie(const Factorization& f) {
    FactorTrie trie;
    const std::size_t n = f.factors.size();
    FactorTrie::Node root;
    root.exps.assign(n, 0);
    trie.nodes.push_back(std::move(root));

    // Depth-first, children generated for letter indices >= the node's last.
    std::vector<u32> stack{0};
    while (!stack.empty()) {
        u32 id = stack.back();
        stack.pop_back();
        std::size_t from = trie.nodes[id].last < 0 ? 0 : static_cast<std::size_t>(trie.nodes[id].last);
        for (std::size_t i = from; i < n; ++i) {
            if (trie.nodes[id].exps[i] >= f.factors[i].exp) continue;
            FactorTrie::Node child;
            child.divisor = trie.nodes[id].divisor * f.factors[i].prime;
            child.last = static_cast<int>(i);
            child.exps = trie.nodes[id].exps;
            child.exps[i] += 1;
            u32 cid = static_cast<u32>(trie.nodes.size());
            trie.nodes[id].children.push_back(cid);
            trie.nodes.push_back(std::move(child));
            stack.push_back(cid);
        }
    }
    return trie;
}

}  // namespace markoff
