#include <fstream>
#include <sstream>
#include <iostream>

#include "CLI11.hpp"
#include "charp/specseq_io.hpp"
#include "charp/suites.hpp"
#include "charp/series_json.hpp"
#include "charp/witt.hpp"

using namespace charp;

namespace {

void add_common_flags(CLI::App* app, SuiteConfig& cfg) {
    app->add_option("-p,--prime", cfg.primes, "primes to run (repeatable; from {2,3,5})")
        ->expected(-1);
    app->add_option("--witt-length", cfg.witt_length, "Witt vector length (1..4, clamped per prime)");
    app->add_option("--degree-t", cfg.degree_t, "series degree cap");
    app->add_option("--degree-lambda", cfg.degree_lambda, "lam exponent cap (0 = use p)");
    app->add_option("--matrix-dim", cfg.matrix_dim, "matrix dimension for Lie checks");
    app->add_option("--trials", cfg.trials, "randomized trial count");
    app->add_option("--seed", cfg.seed, "RNG seed");
    app->add_option("--format", cfg.format, "output format: json or text");
    app->add_option("--out", cfg.out_path, "write the report to a file instead of stdout");
    app->add_flag("--timing", cfg.timing, "include measured elapsed_ms in JSON output");
}

int emit(const Report& rep) {
    std::string body = rep.params.format == "text" ? report_text(rep) : report_json(rep);
    if (!rep.params.out_path.empty()) {
        std::ofstream f(rep.params.out_path, std::ios::binary);
        if (!f) {
            std::cerr << "cannot open " << rep.params.out_path << "\n";
            return 2;
        }
        f << body;
    } else {
        std::cout << body;
    }
    return report_exit_code(rep);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verification suites for Witt vectors, deformed formal group laws, "
                 "theta-module Bockstein calculus and filtered-complex spectral sequences"};
    app.require_subcommand(1);

    SuiteConfig cfg;
    std::string suite_name = "all";
    int pn_dim = 4;
    long demo_p = 3;
    long witt_p = 2;
    int witt_n = 2;

    auto* suite = app.add_subcommand("suite", "run a verification suite");
    suite->add_option("name", suite_name, "witt, fgl, lie, gadual, specseq or all")
        ->required();
    add_common_flags(suite, cfg);

    auto* pn = app.add_subcommand("demo-projective-space",
                                  "Hodge ring F_p[c]/c^{n+1} with V(c) = c^p");
    pn->add_option("-n,--dim", pn_dim, "projective space dimension");
    pn->add_option("--demo-prime", demo_p, "prime for the demo");
    add_common_flags(pn, cfg);

    auto* gm = app.add_subcommand("demo-gm-restricted",
                                  "p-th power of the multiplicative vector field");
    gm->add_option("--demo-prime", demo_p, "prime for the demo");
    add_common_flags(gm, cfg);

    auto* wp = app.add_subcommand("witt-polys",
                                  "print the structure polynomials of a Witt system");
    wp->add_option("--witt-prime", witt_p, "prime");
    wp->add_option("--length", witt_n, "Witt length");
    wp->add_option("--format", cfg.format, "output format: json or text");
    wp->add_option("--out", cfg.out_path, "write to a file instead of stdout");

    long pages_p = 2;
    int pages_order = 1;
    auto* pg = app.add_subcommand(
        "pages", "spectral sequence pages of a seeded split instance");
    pg->add_option("--pages-prime", pages_p, "prime");
    pg->add_option("--order", pages_order, "splitting order of the instance (0..2)");
    pg->add_option("--seed", cfg.seed, "RNG seed");
    pg->add_option("--format", cfg.format, "output format: json or text");
    pg->add_option("--out", cfg.out_path, "write to a file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (suite->parsed()) return emit(run_suite(suite_name, cfg));
        if (pn->parsed()) return emit(demo_projective_space(pn_dim, demo_p, cfg));
        if (gm->parsed()) return emit(demo_gm_restricted(demo_p, cfg));
        if (wp->parsed()) {
            auto sys = build_witt_system(witt_p, witt_n);
            std::ostringstream os;
            if (cfg.format == "text") {
                for (int i = 0; i < sys->n; ++i) os << "S" << i << " = " << sys->sum_polys[i].str() << "\n";
                for (int i = 0; i < sys->n; ++i) os << "P" << i << " = " << sys->product_polys[i].str() << "\n";
                for (int i = 0; i < sys->n; ++i) os << "F" << i << " = " << sys->frobenius_polys[i].str() << "\n";
                for (int i = 0; i < sys->n; ++i) os << "G" << i << " = " << sekiguchi_suwa_G(*sys, i).str() << "\n";
            } else {
                os << witt_polys_json(*sys);
            }
            if (!cfg.out_path.empty()) {
                std::ofstream f(cfg.out_path, std::ios::binary);
                if (!f) {
                    std::cerr << "cannot open " << cfg.out_path << "\n";
                    return 2;
                }
                f << os.str();
            } else {
                std::cout << os.str();
            }
            return 0;
        }
        if (pg->parsed()) {
            if (pages_order < 0 || pages_order > 2)
                throw ConfigError("order must be in 0..2");
            SplitMix64 rng(cfg.seed);
            auto fc = random_split_instance(pages_p, pages_order, rng);
            std::ostringstream os;
            if (cfg.format == "text") {
                for (int r = 2; r <= fc.levels + 1; ++r)
                    os << page_table(page_at(fc, r)) << "\n";
            } else {
                nlohmann::ordered_json arr = nlohmann::ordered_json::array();
                for (int r = 2; r <= fc.levels + 1; ++r)
                    for (auto& e : page_json(page_at(fc, r))) arr.push_back(e);
                os << arr.dump(2) << "\n";
            }
            if (!cfg.out_path.empty()) {
                std::ofstream f(cfg.out_path, std::ios::binary);
                if (!f) {
                    std::cerr << "cannot open " << cfg.out_path << "\n";
                    return 2;
                }
                f << os.str();
            } else {
                std::cout << os.str();
            }
            return 0;
        }
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
