#include <iostream>

#include <CLI11.hpp>

#include "mixclust/cli.hpp"
#include "mixclust/errors.hpp"

int main(int argc, char** argv) {
    mixclust::cli::RunConfig config;

    CLI::App app{"mixclust: hierarchical clustering of mixed-type data via fuzzy coding "
                 "and the chi-square distance"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--input", config.input, "input file");
        cmd->add_option("--schema", config.schema, "schema JSON file");
        cmd->add_option("--coding", config.coding,
                        "coding method: barycentric|triangular|escofier");
        cmd->add_option("--n-categories", config.n_categories,
                        "fuzzy tuple width for ordinal/continuous columns");
        cmd->add_option("--k", config.k, "cluster count (0 = select automatically)");
        cmd->add_option("--k-min", config.k_min, "lower bound of the k scan");
        cmd->add_option("--k-max", config.k_max, "upper bound of the k scan (0 = min(10, I-1))");
        cmd->add_option("--seed", config.seed, "master seed");
        cmd->add_option("--out", config.out, "output directory");
        cmd->add_flag("--drop-incomplete", config.drop_incomplete,
                      "drop rows with missing values instead of failing");
        cmd->add_flag("--prune-empty-columns", config.prune_empty_columns,
                      "drop all-zero coded columns before the analysis");
    };

    auto add_design = [&](CLI::App* cmd) {
        cmd->add_option("--sim-k", config.sim_k, "cluster counts")->delimiter(',');
        cmd->add_option("--sim-n", config.sim_n, "sample sizes")->delimiter(',');
        cmd->add_option("--density", config.densities, "density rules: equal|one10|one60")
            ->delimiter(',');
        cmd->add_option("--omega", config.omegas, "pairwise overlap targets")->delimiter(',');
        cmd->add_option("--cat-fraction", config.cat_fractions,
                        "share of columns discretized to categories")
            ->delimiter(',');
        cmd->add_option("--dims", config.dims, "total variables");
        cmd->add_option("--cat-levels", config.cat_levels, "levels per categorical column");
        cmd->add_flag("--discretized-as-ordinal", config.discretized_as_ordinal,
                      "hand discretized columns to methods as ordinal instead of nominal");
    };

    add_common(app.add_subcommand("code", "code a table into the fuzzy/dummy matrix Z"));
    add_common(app.add_subcommand(
        "cluster", "code, run mass-weighted Ward under the chi-square distance, cut"));
    add_common(app.add_subcommand("cut", "cut a dendrogram JSON at --k"));
    add_common(app.add_subcommand("selectk", "inertia-gain ratio table and selected k"));

    auto* cmd_ari = app.add_subcommand("ari", "adjusted Rand index of two partition CSVs");
    cmd_ari->add_option("partition_a", config.input, "first partition CSV")->required();
    cmd_ari->add_option("partition_b", config.input_b, "second partition CSV")->required();

    auto* sim = app.add_subcommand("simulate", "generate one mixed-type dataset");
    add_common(sim);
    add_design(sim);

    auto* bench = app.add_subcommand("bench", "ARI benchmark over a scenario grid");
    add_common(bench);
    add_design(bench);
    bench->add_option("--replicates", config.replicates, "replicates per scenario");
    bench->add_option("--methods", config.methods,
                      "methods: mixed-hierarchical-B,mixed-hierarchical-T,gower-pam")
        ->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    config.command = app.get_subcommands().front()->get_name();
    try {
        return mixclust::cli::run(config);
    } catch (const std::exception& e) {
        std::cerr << "mixclust: " << e.what() << "\n";
        return mixclust::cli::exit_code_for(e);
    }
}
