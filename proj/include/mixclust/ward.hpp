#pragma once

#include <cstddef>
#include <vector>

#include "mixclust/correspondence.hpp"
#include "mixclust/errors.hpp"
#include "mixclust/table.hpp"

namespace mixclust::ward {

// A group of rows with its mass (sum of member masses) and mass-weighted
// mean profile.
struct ClusterNode {
    std::vector<std::size_t> members;
    double mass = 0.0;
    std::vector<double> profile;
};

ClusterNode make_leaf(std::size_t row, const correspondence::CorrespondenceView& view);
ClusterNode merge_nodes(const ClusterNode& g, const ClusterNode& h);

// Ward criterion under the chi-square metric:
//   (m_g m_h / (m_g + m_h)) * d^2(a_g, a_h)
// which equals the within-cluster inertia increase caused by the merge.
double merge_cost(const ClusterNode& g, const ClusterNode& h,
                  const correspondence::CorrespondenceView& view);

// Merge list: node ids are 0..I-1 for leaves, merge j creates node I+j.
struct Dendrogram {
    struct Merge {
        std::size_t left = 0, right = 0; // node ids; left holds the smaller min member
        double cost = 0.0;               // Delta, the inertia increase
        std::size_t id = 0;              // I + merge index
        double mass = 0.0;
        std::size_t size = 0;
    };
    std::size_t leaf_count = 0;
    std::vector<Merge> merges; // exactly leaf_count - 1 entries
};

// Greedy mass-weighted Ward agglomeration. Pair costs are maintained with
// the Lance-Williams recurrence; ties within relative 1e-12 of the minimum
// merge the pair with the lexicographically smallest member indices.
Dendrogram ward_cluster(const correspondence::CorrespondenceView& view);

// Undo the last K-1 merges; labels assigned by ascending smallest member.
Partition cut(const Dendrogram& d, std::size_t k);

struct InertiaGain {
    std::size_t k = 0;  // cluster count reached from k-1
    double gain = 0.0;  // Delta(K)
};

// Delta(K) for K = 2..I, read off the merge list in reverse; the gains sum
// to the total inertia of the clustered view.
std::vector<InertiaGain> inertia_gains(const Dendrogram& d);

struct KRatio {
    std::size_t k = 0;
    double delta_k = 0.0;
    double delta_k_next = 0.0;
    double ratio = 0.0;
};

struct KSelection {
    std::size_t k = 0;
    bool degenerate = false; // a zero Delta(K+1) in range; k is its first position
    std::vector<KRatio> ratios;
};

// Picks K in [k_min, k_max] maximizing Delta(K)/Delta(K+1), i.e. the K
// whose gain towers over the next one; ties go to the smaller K.
KSelection select_k(const std::vector<InertiaGain>& gains, std::size_t k_min,
                    std::size_t k_max);

} // namespace mixclust::ward
