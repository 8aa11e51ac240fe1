#include <chrono>
#include <cstdio>
#include <vector>

#include "markoff/sieve.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

// Compares the serial per-coordinate loop against the OpenMP partitioning on
// a few representative primes and checks that both agree.

using namespace markoff;

namespace {

double time_run(const PrimeContext& pc, const RunOptions& o, ConnectivityReport& out) {
    auto t0 = std::chrono::steady_clock::now();
    out = pc.run(o);
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<u64> primes = {119659, 825287, 916879, 995987};
    if (argc > 1) {
        primes.clear();
        for (int i = 1; i < argc; ++i) primes.push_back(std::strtoull(argv[i], nullptr, 10));
    }
    int threads = 1;
#ifdef _OPENMP
    threads = omp_get_max_threads();
#endif
    std::printf("%10s %12s %12s %8s %14s\n", "p", "serial ms", "parallel ms", "speedup",
                "bad_total");
    for (u64 p : primes) {
        PrimeContext pc(p);
        RunOptions serial;
        serial.jobs = 1;
        RunOptions parallel = serial;
        parallel.jobs = threads;
        ConnectivityReport a, b;
        double ts = time_run(pc, serial, a);
        double tp = time_run(pc, parallel, b);
        bool same = a.bad_hyp == b.bad_hyp && a.bad_ell == b.bad_ell &&
                    a.max_orbit_checks == b.max_orbit_checks && a.capped_orbits == b.capped_orbits;
        std::printf("%10llu %12.1f %12.1f %7.2fx %14llu%s\n", (unsigned long long)p, ts, tp,
                    ts / tp, (unsigned long long)a.bad_total, same ? "" : "  MISMATCH");
        if (!same) return 1;
    }
    return 0;
}
