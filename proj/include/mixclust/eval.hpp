#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "mixclust/errors.hpp"
#include "mixclust/table.hpp"

namespace mixclust::eval {

struct AriResult {
    double value = 0.0;
    bool degenerate = false; // chance-correction denominator vanished
};

// Hubert-Arabie adjusted Rand index via pair counts. When the denominator
// vanishes (both partitions trivial) the value is 1 for identical
// partitions and 0 otherwise, with the degenerate flag raised.
AriResult ari_ex(const Partition& p, const Partition& q);
double ari(const Partition& p, const Partition& q);

struct NumericProfile {
    std::string variable;
    double cluster_mean = 0.0;
    double overall_mean = 0.0;
};

struct CategoryProfile {
    std::string variable;
    // category -> (within-cluster frequency, overall frequency)
    std::vector<std::pair<std::string, std::pair<double, double>>> frequencies;
};

struct ClusterSummary {
    int cluster = 0;
    std::size_t size = 0;
    double share = 0.0;
    std::vector<NumericProfile> numeric;
    std::vector<CategoryProfile> categorical;
};

// Descriptive profile per cluster: sizes/shares, cluster-vs-overall means
// for numeric variables, within-vs-overall category frequencies for
// nominal variables.
std::vector<ClusterSummary> cluster_profile(const Partition& p, const Table& data,
                                            const VariableSchema& schema);

} // namespace mixclust::eval
