#include <doctest.h>

#include "helpers.hpp"

using namespace markoff;

TEST_CASE("csv formatting") {
    CHECK(csv_header() ==
          "p,fact_p_minus_1,fact_p_plus_1,B_minus,B_plus,L_p,S_hyp,S_ell,bad_hyp,bad_ell,"
          "bad_total,four_p,verdict,max_orbit_checks,capped_orbits,elapsed_ms,variant");
    ConnectivityReport r;
    r.p = 11;
    r.fact_minus = "2*5";
    r.fact_plus = "2^2*3";
    r.B_minus = 265.33;
    r.B_plus = 477.594;
    r.S_hyp = 4;
    r.S_ell = 5;
    r.bad_hyp = 40;
    r.bad_ell = 48;
    r.bad_total = 88;
    r.four_p = 44;
    r.connected = false;
    r.max_orbit_checks = 4;
    r.elapsed_ms = 1.5;
    CHECK(csv_row(r) ==
          "11,2*5,2^2*3,265.33,477.594,,4,5,40,48,88,44,inconclusive,4,0,1.500,maximal");
    r.L = 42;
    r.connected = true;
    r.variant = Variant::all_divisors;
    CHECK(csv_row(r) ==
          "11,2*5,2^2*3,265.33,477.594,42,4,5,40,48,88,44,connected,4,0,1.500,all-divisors");
}

TEST_CASE("jsonl row carries the same fields") {
    auto rep = run_prime(11, RunOptions{});
    std::string j = jsonl_row(rep);
    CHECK(j.find("\"p\":11") != std::string::npos);
    CHECK(j.find("\"bad_total\":88") != std::string::npos);
    CHECK(j.find("\"verdict\":\"inconclusive\"") != std::string::npos);
    CHECK(j.find("\"L_p\":null") != std::string::npos);
}

TEST_CASE("meta lines") {
    CHECK(meta_line(OutputFormat::csv, Variant::maximal, 60, std::nullopt) ==
          "# markoff v0.1 variant=maximal cap=60 seed=-");
    CHECK(meta_line(OutputFormat::csv, Variant::all_divisors, std::nullopt, 7) ==
          "# markoff v0.1 variant=all-divisors cap=none seed=7");
    std::string j = meta_line(OutputFormat::jsonl, Variant::maximal, 60, 42);
    CHECK(j.find("\"meta\"") != std::string::npos);
    CHECK(j.find("\"seed\":42") != std::string::npos);
}

TEST_CASE("rows are deterministic across reruns") {
    for (u64 p : {11ull, 101ull, 1009ull}) {
        auto a = run_prime(p, RunOptions{});
        auto b = run_prime(p, RunOptions{});
        CHECK(testutil::reports_match(a, b));
    }
}
