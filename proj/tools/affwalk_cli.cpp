#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "affwalk/runner.hpp"

namespace {

constexpr const char* kFooter =
    "Exit codes:\n"
    "  0  command completed and its check (if any) passed\n"
    "  1  error, or a computed certificate failed\n"
    "  2  input data violates a required hypothesis\n"
    "  3  an iterative computation did not converge\n";

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral gap laboratory for affine walks over F_p^d x SL_d(F_p)"};
    app.footer(kFooter);
    app.require_subcommand(1);
    app.fallthrough(); // global options may follow the subcommand

    std::string config_path;
    std::string out_dir = ".";
    affwalk::u64 seed = 0;
    bool seed_given = false;
    unsigned threads = 1;
    bool materialize = false;

    app.add_option("--config", config_path, "JSON experiment config")->required();
    app.add_option("--out", out_dir, "output directory (created if absent)");
    app.add_option("--seed", seed, "override the config seed")->each([&](const std::string&) {
        seed_given = true;
    });
    app.add_option("--threads", threads, "worker threads for scan");
    app.add_flag("--materialize", materialize,
                 "materialize the large product sets instead of spot checks");

    auto* gap = app.add_subcommand("gap", "spectral report for one configured measure");
    auto* scan = app.add_subcommand("scan", "sampled generator scan across primes");
    auto* decay = app.add_subcommand("decay", "density decay iteration on the point space");
    auto* growth = app.add_subcommand("growth", "product growth certificate for a symmetric set");
    auto* flatten = app.add_subcommand("flatten", "convolution flattening trace");
    auto* mixing = app.add_subcommand("mixing", "mixing profile against the gap bound");
    auto* multiplicity =
        app.add_subcommand("multiplicity", "dense eigenvalue multiplicity structure");

    CLI11_PARSE(app, argc, argv);

    try {
        affwalk::ExperimentConfig cfg = affwalk::load_config(config_path);
        if (seed_given) cfg.seed = seed;
        affwalk::RunOptions opt;
        opt.out_dir = out_dir;
        opt.threads = threads;
        opt.materialize = materialize;

        if (gap->parsed()) return affwalk::run_gap(cfg, opt);
        if (scan->parsed()) return affwalk::run_scan(cfg, opt);
        if (decay->parsed()) return affwalk::run_decay(cfg, opt);
        if (growth->parsed()) return affwalk::run_growth(cfg, opt);
        if (flatten->parsed()) return affwalk::run_flatten(cfg, opt);
        if (mixing->parsed()) return affwalk::run_mixing(cfg, opt);
        if (multiplicity->parsed()) return affwalk::run_multiplicity(cfg, opt);
        std::cerr << "no subcommand\n";
        return 1;
    } catch (const affwalk::hypothesis_error& e) {
        std::cerr << "hypothesis failure: " << e.what() << "\n";
        return 2;
    } catch (const affwalk::non_convergence& e) {
        std::cerr << "non-convergence: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
