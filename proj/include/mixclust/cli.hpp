#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mixclust/coding.hpp"
#include "mixclust/simgen.hpp"

namespace mixclust::cli {

inline constexpr const char* kVersion = "0.1.0";

// Everything a command run needs; echoed verbatim into the manifest so a
// run can be reproduced byte for byte.
struct RunConfig {
    std::string command;
    std::string input;
    std::string input_b; // second partition for `ari`
    std::string schema;
    std::string coding = "barycentric";
    int n_categories = 3;
    int k = 0;     // 0 = select automatically
    int k_min = 2;
    int k_max = 0; // 0 = min(10, I-1)
    std::uint64_t seed = 1;
    std::string out = ".";
    bool drop_incomplete = false;
    bool prune_empty_columns = false;

    // simulate / bench design ranges
    std::vector<std::size_t> sim_k{4};
    std::vector<std::size_t> sim_n{500};
    std::vector<std::string> densities{"equal"};
    std::vector<double> omegas{0.01};
    std::vector<double> cat_fractions{0.5};
    std::size_t dims = 10;
    std::size_t cat_levels = 4;
    bool discretized_as_ordinal = false;
    std::size_t replicates = 10;
    std::vector<std::string> methods{"mixed-hierarchical-B", "mixed-hierarchical-T",
                                     "gower-pam"};
};

// Throws InputError on inconsistent flag combinations (escofier coding has
// negative entries, so it cannot feed the chi-square clustering path).
void validate(const RunConfig& config);

int cmd_code(const RunConfig& config);
int cmd_cluster(const RunConfig& config);
int cmd_cut(const RunConfig& config);
int cmd_selectk(const RunConfig& config);
int cmd_ari(const RunConfig& config);
int cmd_simulate(const RunConfig& config);
int cmd_bench(const RunConfig& config);

int run(const RunConfig& config);

// Maps mixclust exceptions to the documented exit codes:
// 0 success, 2 input error, 3 numeric/infeasibility error.
int exit_code_for(const std::exception& e);

} // namespace mixclust::cli
