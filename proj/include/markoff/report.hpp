#pragma once

#include <string>

#include "markoff/sieve.hpp"

namespace markoff {

enum class OutputFormat { csv, jsonl };

std::string variant_name(Variant v);

// "# markoff v0.1 variant=maximal cap=60 seed=-" (csv) or a {"meta": ...}
// object (jsonl).
std::string meta_line(OutputFormat f, Variant v, std::optional<u32> cap, std::optional<u64> seed);

std::string csv_header();
std::string csv_row(const ConnectivityReport& r);
std::string jsonl_row(const ConnectivityReport& r);

}  // namespace markoff
