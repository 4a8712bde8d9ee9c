#include "projalg/replay.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"Exact replay of the projective-variety scenarios"};

    projalg::Scenario s;
    std::string strategy = "interpolation";
    app.add_option("--scenario", s.name, "code1 | code2 | lemma | chain | all")
        ->check(CLI::IsMember({"code1", "code2", "lemma", "chain", "all"}))
        ->required();
    app.add_option("--prime", s.prime, "prime modulus (default 10000019)");
    app.add_option("--seed", s.seed, "master seed for all sampled choices");
    app.add_option("--strategy", strategy, "image strategy")
        ->check(CLI::IsMember({"interpolation", "elimination"}));
    app.add_option("--out", s.out, "report path (default stdout)");
    app.add_option("--format", s.format, "json | text")
        ->check(CLI::IsMember({"json", "text"}));
    app.add_option("--jobs", s.jobs, "parallel scenarios for --scenario all")
        ->check(CLI::Range(1, 8));
    app.add_flag("--timings", s.timings,
                 "record real step timings (reports are then not byte-reproducible)");
    app.add_option("--fixtures", s.fixtures_dir, "fixture directory override");

    CLI11_PARSE(app, argc, argv);
    s.strategy = (strategy == "elimination") ? projalg::ImageStrategy::Elimination
                                             : projalg::ImageStrategy::Interpolation;
    try {
        projalg::Report rep = projalg::run_scenario(s);
        return projalg::emit_report(rep, s);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
