#pragma once

#include <iomanip>
#include <sstream>

#include "charp/specseq.hpp"
#include "json.hpp"

namespace charp {

/* pages serialize as a JSON array of {r, s, t, dim, d_rank} */
inline nlohmann::ordered_json page_json(const SpectralPage& pg) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& [key, e] : pg.entries) {
        nlohmann::ordered_json j;
        j["r"] = pg.r;
        j["s"] = e.s;
        j["t"] = e.t;
        j["dim"] = e.dim;
        j["d_rank"] = pg.d_rank(key.first, key.second);
        arr.push_back(j);
    }
    return arr;
}

inline std::string page_table(const SpectralPage& pg) {
    std::ostringstream os;
    os << "E_" << pg.r << " page\n";
    os << std::right << std::setw(6) << "s" << std::setw(6) << "t" << std::setw(6) << "dim"
       << std::setw(8) << "d_rank" << "\n";
    for (const auto& [key, e] : pg.entries) {
        if (e.dim == 0 && pg.d_rank(key.first, key.second) == 0) continue;
        os << std::right << std::setw(6) << e.s << std::setw(6) << e.t << std::setw(6)
           << e.dim << std::setw(8) << pg.d_rank(key.first, key.second) << "\n";
    }
    return os.str();
}

}  // namespace charp
