#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "mixclust/errors.hpp"
#include "mixclust/table.hpp"

namespace mixclust::simgen {

enum class Density { equal, one10, one60 };

std::string to_string(Density d);
Density density_from_string(const std::string& s);

// One simulated-data scenario: K spherical unit-variance Gaussian clusters
// in `dims` dimensions, cluster sizes by the density rule, centers placed
// pairwise at the separation matching the overlap target, and the first
// round(cat_fraction * dims) columns quantile-discretized into cat_levels
// ordered categories.
struct SimDesign {
    std::size_t k = 4;
    std::size_t n = 500;
    Density density = Density::equal;
    double omega = 0.01;        // pairwise overlap target
    double cat_fraction = 0.5;  // share of columns discretized
    std::size_t dims = 10;
    std::size_t cat_levels = 4;
    std::uint64_t seed = 0;
    bool discretized_as_ordinal = false; // default: hand categories over as nominal
};

struct SimDataset {
    Table table;
    VariableSchema schema;
    Partition truth;
    SimDesign design;
    double separation = 0.0; // realized pairwise centroid distance
};

// Standard normal quantile, accurate to full double precision.
double normal_quantile(double p);

// Centroid distance for equal-weight spherical Gaussians at overlap omega:
// omega = 2 Phi(-delta / (2 sigma))  =>  delta = -2 sigma Phi^{-1}(omega/2).
double overlap_to_separation(double omega, double sigma);

// Cluster sizes for the density rule; sums to n exactly, remainders go to
// the earliest clusters.
std::vector<std::size_t> cluster_sizes(std::size_t n, std::size_t k, Density density);

SimDataset generate(const SimDesign& design);

// Quantile discretization: cut points at the 100*j/c % order statistics,
// category = 1 + number of cut points strictly below the value.
std::vector<long> quantile_discretize(const std::vector<double>& column,
                                      std::size_t categories);

enum class Method { mixed_hierarchical_b, mixed_hierarchical_t, gower_pam };

std::string to_string(Method m);
Method method_from_string(const std::string& s);

struct GridRow {
    SimDesign design;
    std::size_t scenario = 0;
    std::size_t replicate = 0;
    Method method = Method::mixed_hierarchical_b;
    double ari = 0.0;
};

struct GridOptions {
    std::uint64_t master_seed = 1;
    std::size_t replicates = 10;
    int n_categories = 3; // fuzzy tuple width for the hierarchical-B method
};

// Runs every (scenario, replicate, method) cell: generate, cluster with K
// fixed at the true K, score against the truth. Replicate seeds derive
// from (master seed, scenario index, replicate index), so results do not
// depend on evaluation order.
std::vector<GridRow> run_grid(const std::vector<SimDesign>& designs,
                              const std::vector<Method>& methods,
                              const GridOptions& options);

// Partitions produced by one method over one dataset; used by the bench
// command to build the pairwise method-agreement table.
Partition run_method(Method method, const SimDataset& data, int n_categories);

std::uint64_t derive_seed(std::uint64_t master, std::size_t scenario, std::size_t replicate);

} // namespace mixclust::simgen
