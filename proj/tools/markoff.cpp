#include <fstream>
#include <iostream>
#include <random>
#include <set>

#include <CLI11.hpp>

#include "markoff/oracle.hpp"
#include "markoff/report.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using namespace markoff;

struct CliConfig {
    u32 cap = 60;
    bool no_cap = false;
    int jobs = 1;
    std::string variant = "maximal";
    std::string format = "csv";
    std::string strategy = "auto";
    std::string out;

    std::optional<u32> cap_opt() const { return no_cap ? std::nullopt : std::optional<u32>(cap); }
    Variant variant_opt() const {
        return variant == "all-divisors" ? Variant::all_divisors : Variant::maximal;
    }
    OutputFormat format_opt() const {
        return format == "jsonl" ? OutputFormat::jsonl : OutputFormat::csv;
    }
    StrategyChoice strategy_opt() const {
        if (strategy == "cartesian") return StrategyChoice::cartesian;
        if (strategy == "coset") return StrategyChoice::coset;
        return StrategyChoice::automatic;
    }
    RunOptions run_options(int per_prime_jobs) const {
        RunOptions o;
        o.cap = cap_opt();
        o.jobs = per_prime_jobs;
        o.variant = variant_opt();
        o.force = strategy_opt();
        return o;
    }
};

struct Output {
    std::ofstream file;
    std::ostream* os = &std::cout;
    void open(const std::string& path) {
        if (path.empty()) return;
        file.open(path);
        if (!file) throw std::runtime_error("cannot open output file: " + path);
        os = &file;
    }
    std::ostream& stream() { return *os; }
};

void emit_header(std::ostream& os, const CliConfig& cfg, std::optional<u64> seed) {
    os << meta_line(cfg.format_opt(), cfg.variant_opt(), cfg.cap_opt(), seed) << '\n';
    if (cfg.format_opt() == OutputFormat::csv) os << csv_header() << '\n';
}

void emit_row(std::ostream& os, const CliConfig& cfg, const ConnectivityReport& r) {
    os << (cfg.format_opt() == OutputFormat::csv ? csv_row(r) : jsonl_row(r)) << '\n';
}

int cmd_check(u64 p, const CliConfig& cfg) {
    if (!is_prime_u64(p) || p <= 3) {
        std::cerr << "error: " << p << " is not an odd prime greater than 3\n";
        return 1;
    }
    Output out;
    out.open(cfg.out);
    emit_header(out.stream(), cfg, std::nullopt);
    ConnectivityReport r = run_prime(p, cfg.run_options(cfg.jobs));
    emit_row(out.stream(), cfg, r);
    return r.connected ? 0 : 2;
}

int run_prime_list(const std::vector<u64>& ps, const CliConfig& cfg, std::optional<u64> seed) {
    Output out;
    out.open(cfg.out);
    emit_header(out.stream(), cfg, seed);
    bool all_connected = true;
    const std::size_t block = std::max<std::size_t>(64, std::size_t(cfg.jobs) * 8);
    RunOptions per_prime = cfg.run_options(1);  // parallelism is across primes
    for (std::size_t base = 0; base < ps.size(); base += block) {
        const std::size_t end = std::min(ps.size(), base + block);
        std::vector<ConnectivityReport> reps(end - base);
        std::vector<std::string> errors(end - base);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(cfg.jobs)
#endif
        for (long long i = 0; i < (long long)(end - base); ++i) {
            try {
                reps[i] = run_prime(ps[base + i], per_prime);
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
        for (std::size_t i = 0; i < reps.size(); ++i) {
            if (!errors[i].empty()) {
                std::cerr << "error at p=" << ps[base + i] << ": " << errors[i] << '\n';
                return 1;
            }
            emit_row(out.stream(), cfg, reps[i]);
            all_connected = all_connected && reps[i].connected;
        }
    }
    return all_connected ? 0 : 2;
}

int cmd_range(u64 lo, u64 hi, const CliConfig& cfg) {
    if (lo >= hi) {
        std::cerr << "error: range requires lo < hi\n";
        return 1;
    }
    std::vector<u64> ps = primes_in_range(std::max<u64>(lo, 5), hi);
    return run_prime_list(ps, cfg, std::nullopt);
}

int cmd_sample(u64 n, u64 lo, u64 hi, u64 seed, const CliConfig& cfg) {
    if (lo >= hi || n == 0) {
        std::cerr << "error: sample requires n >= 1 and lo < hi\n";
        return 1;
    }
    lo = std::max<u64>(lo, 5);
    std::mt19937_64 rng(seed);
    std::set<u64> chosen;
    if (hi - lo <= (u64(1) << 22)) {
        std::vector<u64> ps = primes_in_range(lo, hi);
        if (ps.size() < n) {
            std::cerr << "error: range contains only " << ps.size() << " primes\n";
            return 1;
        }
        while (chosen.size() < n) chosen.insert(ps[rng() % ps.size()]);
    } else {
        std::uniform_int_distribution<u64> dist(lo, hi - 1);
        u64 attempts = 0, max_attempts = 20000 * n;
        while (chosen.size() < n && attempts < max_attempts) {
            ++attempts;
            u64 c = dist(rng);
            if (c > 3 && is_prime_u64(c)) chosen.insert(c);
        }
        if (chosen.size() < n) {
            std::cerr << "error: could not find " << n << " primes in range\n";
            return 1;
        }
    }
    std::vector<u64> ps(chosen.begin(), chosen.end());
    return run_prime_list(ps, cfg, seed);
}

int cmd_oracle(u64 p) {
    if (p > oracle::kEnumerateLimit) {
        std::cerr << "error: oracle mode is limited to p <= " << oracle::kEnumerateLimit << '\n';
        return 1;
    }
    if (!is_prime_u64(p) || p <= 3) {
        std::cerr << "error: " << p << " is not an odd prime greater than 3\n";
        return 1;
    }
    int failures = 0;
    auto report = [&](const std::string& name, bool ok, const std::string& detail) {
        std::cout << (ok ? "pass" : "FAIL") << "  " << name;
        if (!detail.empty()) std::cout << "  (" << detail << ")";
        std::cout << '\n';
        if (!ok) ++failures;
    };

    FieldContext ctx(p);
    auto triples = oracle::enumerate_triples(ctx);

    auto sizes = oracle::component_sizes(ctx);
    report("connectivity", sizes.size() == 1,
           std::to_string(sizes.size()) + " component(s), largest " +
               std::to_string(sizes.empty() ? 0 : sizes.back()));

    u64 count = triples.size();
    bool count_ok = count >= p * p - 3 * p && count <= p * p + 3 * p;
    report("solution count", count_ok, std::to_string(count) + " triples");

    bool has2 = false;
    for (const auto& t : triples)
        if (t.a.v == 2 || t.a.v == p - 2) { has2 = true; break; }
    report("coordinate 2 iff p = 1 mod 4", has2 == (p % 4 == 1), has2 ? "present" : "absent");

    PrimeContext pc(p);
    const Factorization& fm = pc.fact_minus();
    const Factorization& fp = pc.fact_plus();
    bool orbits_ok = true;
    std::string orbit_detail;
    for (u64 a = 0; a < p && orbits_ok; ++a) {
        u64 len;
        try {
            len = oracle::orbit_length(ctx, Fp{a});
        } catch (const std::domain_error&) {
            continue;  // no triple with this first coordinate
        }
        if (a == 2 || a == p - 2) {
            if (len != p && len != 2 * p) {
                orbits_ok = false;
                orbit_detail = "parabolic a=" + std::to_string(a) + " len=" + std::to_string(len);
            }
            continue;
        }
        CoordinateClass cls = classify_coordinate(ctx, Fp{a}, fm, fp);
        if (len != cls.order || oracle::coordinate_order(ctx, Fp{a}) != cls.order) {
            orbits_ok = false;
            orbit_detail = "a=" + std::to_string(a) + " len=" + std::to_string(len) +
                           " classified=" + std::to_string(cls.order);
        }
    }
    report("orbit lengths match coordinate orders", orbits_ok, orbit_detail);

    if (p <= oracle::kBadSetLimit) {
        auto slices = oracle::definition_level_bad_sets(ctx, pc.breakpoints());
        bool sets_ok = true;
        std::string diff;
        for (u64 a = 0; a < p && sets_ok; ++a) {
            bool marked = pc.small_set().small(a);
            if (!marked) {
                if (slices.set_i_by_a[a] || slices.set_ii_by_a[a]) {
                    sets_ok = false;
                    diff = "a=" + std::to_string(a) + " unmarked but oracle-bad";
                }
                continue;
            }
            u64 s1 = pc.process_coordinate(a, std::nullopt, StrategyChoice::cartesian).bad;
            u64 s2 = pc.process_coordinate(a, std::nullopt, StrategyChoice::coset).bad;
            if (s1 != slices.set_i_by_a[a] || s2 != slices.set_ii_by_a[a]) {
                sets_ok = false;
                diff = "a=" + std::to_string(a) + " strategy1=" + std::to_string(s1) + "/" +
                       std::to_string(slices.set_i_by_a[a]) + " strategy2=" + std::to_string(s2) +
                       "/" + std::to_string(slices.set_ii_by_a[a]);
            }
        }
        report("bad-set equivalence (both strategies, cap disabled)", sets_ok, diff);
    }

    return failures == 0 ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Markoff graph mod p connectivity certification"};
    app.require_subcommand(1);

    CliConfig cfg;
    u64 p = 0, lo = 0, hi = 0, n = 0, seed = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--cap", cfg.cap, "max triples checked per orbit")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        sub->add_flag("--no-cap", cfg.no_cap, "disable the orbit check cap");
        sub->add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::PositiveNumber);
        sub->add_option("--variant", cfg.variant, "middle-game sum domain")
            ->check(CLI::IsMember({"maximal", "all-divisors"}))
            ->capture_default_str();
        sub->add_option("--format", cfg.format, "output format")
            ->check(CLI::IsMember({"csv", "jsonl"}))
            ->capture_default_str();
        sub->add_option("--strategy", cfg.strategy, "force a per-coordinate strategy")
            ->check(CLI::IsMember({"auto", "cartesian", "coset"}))
            ->capture_default_str();
        sub->add_option("--out", cfg.out, "write rows to a file instead of stdout");
    };

    CLI::App* check = app.add_subcommand("check", "test one prime");
    check->add_option("p", p, "odd prime > 3")->required();
    add_common(check);

    CLI::App* range = app.add_subcommand("range", "test every prime in [lo, hi)");
    range->add_option("lo", lo)->required();
    range->add_option("hi", hi)->required();
    add_common(range);

    CLI::App* sample = app.add_subcommand("sample", "test n random primes in [lo, hi)");
    sample->add_option("n", n)->required();
    sample->add_option("lo", lo)->required();
    sample->add_option("hi", hi)->required();
    sample->add_option("--seed", seed, "PRNG seed")->capture_default_str();
    add_common(sample);

    CLI::App* orc = app.add_subcommand("oracle", "brute-force cross-checks for a small prime");
    orc->add_option("p", p, "odd prime <= 10^4")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (check->parsed()) return cmd_check(p, cfg);
        if (range->parsed()) return cmd_range(lo, hi, cfg);
        if (sample->parsed()) return cmd_sample(n, lo, hi, seed, cfg);
        if (orc->parsed()) return cmd_oracle(p);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
