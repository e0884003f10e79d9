#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "charp/error.hpp"

namespace charp {

struct SuiteConfig {
    std::vector<long> primes{2, 3};
    int witt_length = 3;
    long degree_t = 6;
    long degree_lambda = 0;  // 0 = per-prime default p
    int matrix_dim = 2;
    int trials = 100;
    std::uint64_t seed = 0;
    std::string format = "json";
    std::string out_path;
    bool timing = false;
};

/* throws ConfigError on out-of-range parameters */
void validate_config(const SuiteConfig& cfg);

struct CheckRecord {
    std::string name;    // stable sort key
    std::string anchor;  // the identity this check verifies
    bool pass = false;
    std::string witness;
};

struct Report {
    std::string suite;
    SuiteConfig params;
    std::vector<CheckRecord> checks;  // sorted by name
    bool ok = false;
    long elapsed_ms = 0;
};

/* deterministic: fields fixed, checks sorted, elapsed 0 unless timing */
std::string report_json(const Report& rep);
std::string report_text(const Report& rep);

/* 0 all pass, 1 any failure */
int report_exit_code(const Report& rep);

}  // namespace charp
