#pragma once

#include "charp/series.hpp"
#include "charp/witt.hpp"
#include "json.hpp"

namespace charp {

/* canonical JSON form: {variables, weights, truncation, terms} */
template <class C>
nlohmann::ordered_json series_json(const WeightedSeries<C>& f) {
    const auto& ctx = f.context();
    nlohmann::ordered_json j;
    j["variables"] = ctx->names;
    j["weights"] = ctx->weights;
    nlohmann::ordered_json tr;
    if (ctx->trunc.weighted_cap)
        tr["weighted_cap"] = *ctx->trunc.weighted_cap;
    if (ctx->trunc.degree_cap)
        tr["degree_cap"] = *ctx->trunc.degree_cap;
    if (!ctx->trunc.var_caps.empty())
        tr["var_caps"] = ctx->trunc.var_caps;
    j["truncation"] = tr;
    nlohmann::ordered_json terms = nlohmann::ordered_json::array();
    for (const auto& [e, c] : f.terms()) {
        nlohmann::ordered_json t;
        t["e"] = e;
        if constexpr (std::is_same_v<C, Rational>)
            t["c"] = c.str();
        else
            t["c"] = c.str();
        terms.push_back(t);
    }
    j["terms"] = terms;
    return j;
}

inline std::string witt_polys_json(const WittSystem& sys) {
    nlohmann::ordered_json j;
    j["prime"] = sys.p;
    j["length"] = sys.n;
    auto dump = [&](const std::vector<QSeries>& v) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& f : v) arr.push_back(series_json(f));
        return arr;
    };
    j["sum_polys"] = dump(sys.sum_polys);
    j["product_polys"] = dump(sys.product_polys);
    j["frobenius_polys"] = dump(sys.frobenius_polys);
    std::vector<QSeries> gs;
    for (int i = 0; i < sys.n; ++i) gs.push_back(sekiguchi_suwa_G(sys, i));
    j["sekiguchi_suwa_G"] = dump(gs);
    return j.dump(2) + "\n";
}

}  // namespace charp
