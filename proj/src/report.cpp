#include "markoff/report.hpp"

#include <cstdio>

#include <json.hpp>

namespace markoff {

namespace {
std::string fmt_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}
}  // namespace

std::string variant_name(Variant v) {
    return v == Variant::maximal ? "maximal" : "all-divisors";
}

std::string meta_line(OutputFormat f, Variant v, std::optional<u32> cap, std::optional<u64> seed) {
    std::string capstr = cap ? std::to_string(*cap) : "none";
    std::string seedstr = seed ? std::to_string(*seed) : "-";
    if (f == OutputFormat::csv) {
        return "# markoff v0.1 variant=" + variant_name(v) + " cap=" + capstr +
               " seed=" + seedstr;
    }
    nlohmann::json j;
    j["meta"] = {{"version", "0.1"},
                 {"variant", variant_name(v)},
                 {"cap", cap ? nlohmann::json(*cap) : nlohmann::json()},
                 {"seed", seed ? nlohmann::json(*seed) : nlohmann::json()}};
    return j.dump();
}

std::string csv_header() {
    return "p,fact_p_minus_1,fact_p_plus_1,B_minus,B_plus,L_p,S_hyp,S_ell,"
           "bad_hyp,bad_ell,bad_total,four_p,verdict,max_orbit_checks,capped_orbits,"
           "elapsed_ms,variant";
}

std::string csv_row(const ConnectivityReport& r) {
    char buf[512];
    std::string L = r.L ? std::to_string(*r.L) : "";
    std::snprintf(buf, sizeof buf,
                  "%llu,%s,%s,%s,%s,%s,%llu,%llu,%llu,%llu,%llu,%llu,%s,%llu,%llu,%.3f,%s",
                  (unsigned long long)r.p, r.fact_minus.c_str(), r.fact_plus.c_str(),
                  fmt_double(r.B_minus).c_str(), fmt_double(r.B_plus).c_str(), L.c_str(),
                  (unsigned long long)r.S_hyp, (unsigned long long)r.S_ell,
                  (unsigned long long)r.bad_hyp, (unsigned long long)r.bad_ell,
                  (unsigned long long)r.bad_total, (unsigned long long)r.four_p,
                  r.connected ? "connected" : "inconclusive",
                  (unsigned long long)r.max_orbit_checks, (unsigned long long)r.capped_orbits,
                  r.elapsed_ms, variant_name(r.variant).c_str());
    return buf;
}

std::string jsonl_row(const ConnectivityReport& r) {
    nlohmann::json j;
    j["p"] = r.p;
    j["fact_p_minus_1"] = r.fact_minus;
    j["fact_p_plus_1"] = r.fact_plus;
    j["B_minus"] = r.B_minus;
    j["B_plus"] = r.B_plus;
    if (r.L)
        j["L_p"] = *r.L;
    else
        j["L_p"] = nullptr;
    j["S_hyp"] = r.S_hyp;
    j["S_ell"] = r.S_ell;
    j["bad_hyp"] = r.bad_hyp;
    j["bad_ell"] = r.bad_ell;
    j["bad_total"] = r.bad_total;
    j["four_p"] = r.four_p;
    j["verdict"] = r.connected ? "connected" : "inconclusive";
    j["max_orbit_checks"] = r.max_orbit_checks;
    j["capped_orbits"] = r.capped_orbits;
    j["elapsed_ms"] = r.elapsed_ms;
    j["variant"] = variant_name(r.variant);
    return j.dump();
}

}  // namespace markoff
