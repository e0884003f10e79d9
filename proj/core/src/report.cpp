#include "charp/report.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace charp {

void validate_config(const SuiteConfig& cfg) {
    if (cfg.primes.empty()) throw ConfigError("no primes selected");
    for (long p : cfg.primes)
        if (p != 2 && p != 3 && p != 5)
            throw ConfigError("prime " + std::to_string(p) + " outside the supported set {2,3,5}");
    if (cfg.witt_length < 1 || cfg.witt_length > 4)
        throw ConfigError("witt length must be in 1..4");
    if (cfg.degree_t < 1 || cfg.degree_t > 64) throw ConfigError("degree_t out of range");
    if (cfg.degree_lambda < 0 || cfg.degree_lambda > 32)
        throw ConfigError("degree_lambda out of range");
    if (cfg.matrix_dim < 1 || cfg.matrix_dim > 4) throw ConfigError("matrix_dim must be in 1..4");
    if (cfg.trials < 1 || cfg.trials > 100000) throw ConfigError("trials out of range");
    if (cfg.format != "json" && cfg.format != "text")
        throw ConfigError("format must be json or text");
}

static nlohmann::ordered_json params_json(const SuiteConfig& cfg) {
    nlohmann::ordered_json j;
    j["primes"] = cfg.primes;
    j["witt_length"] = cfg.witt_length;
    j["degree_t"] = cfg.degree_t;
    j["degree_lambda"] = cfg.degree_lambda;
    j["matrix_dim"] = cfg.matrix_dim;
    j["trials"] = cfg.trials;
    j["seed"] = cfg.seed;
    return j;
}

std::string report_json(const Report& rep) {
    nlohmann::ordered_json j;
    j["suite"] = rep.suite;
    j["params"] = params_json(rep.params);
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const auto& c : rep.checks) {
        nlohmann::ordered_json cj;
        cj["name"] = c.name;
        cj["anchor"] = c.anchor;
        cj["status"] = c.pass ? "pass" : "fail";
        cj["witness"] = c.witness;
        checks.push_back(cj);
    }
    j["checks"] = checks;
    j["status"] = rep.ok ? "pass" : "fail";
    j["elapsed_ms"] = rep.params.timing ? rep.elapsed_ms : 0;
    return j.dump(2) + "\n";
}

std::string report_text(const Report& rep) {
    std::ostringstream os;
    os << "suite: " << rep.suite << "\n";
    os << std::left << std::setw(44) << "check" << std::setw(8) << "status"
       << "identity\n";
    os << std::string(100, '-') << "\n";
    for (const auto& c : rep.checks)
        os << std::left << std::setw(44) << c.name << std::setw(8)
           << (c.pass ? "pass" : "FAIL") << c.anchor << "\n";
    os << std::string(100, '-') << "\n";
    os << "status: " << (rep.ok ? "pass" : "FAIL") << "  (" << rep.checks.size()
       << " checks, " << rep.elapsed_ms << " ms)\n";
    return os.str();
}

int report_exit_code(const Report& rep) {
    return rep.ok ? 0 : 1;
}

}  // namespace charp
