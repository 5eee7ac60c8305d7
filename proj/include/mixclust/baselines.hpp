#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mixclust/errors.hpp"
#include "mixclust/matrix.hpp"
#include "mixclust/table.hpp"

namespace mixclust::baselines {

// Symmetric dissimilarities with a zero diagonal.
struct DissimilarityMatrix {
    std::size_t n = 0;
    std::vector<double> values; // row-major n x n

    double at(std::size_t i, std::size_t j) const { return values[i * n + j]; }
    double& at(std::size_t i, std::size_t j) { return values[i * n + j]; }
};

// Gower dissimilarity: range-normalized absolute difference for
// continuous/ordinal columns (ordinal taken as integer levels), simple
// matching for nominal columns, averaged with equal weights.
DissimilarityMatrix gower(const Table& data, const VariableSchema& schema);

// Partitioning Around Medoids: greedy BUILD, then best-improvement SWAP
// until no swap lowers the total cost. Deterministic given the matrix;
// ties go to the lowest index. `seed` is accepted for interface stability
// but unused by this deterministic variant.
Partition pam(const DissimilarityMatrix& d, std::size_t k, std::uint64_t seed = 0);

struct PamResult {
    Partition partition;
    std::vector<std::size_t> medoids; // ascending
    double build_cost = 0.0;
    double cost = 0.0; // final; never above build_cost
};

PamResult pam_full(const DissimilarityMatrix& d, std::size_t k, std::uint64_t seed = 0);

// Greedy BUILD medoids alone (no swaps).
std::vector<std::size_t> pam_build(const DissimilarityMatrix& d, std::size_t k);

// Total cost of serving every point from its nearest medoid.
double pam_cost(const DissimilarityMatrix& d, const std::vector<std::size_t>& medoids);

} // namespace mixclust::baselines
