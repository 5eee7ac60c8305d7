#pragma once

// Test oracles for the agglomeration: a recompute-everything Ward that
// stores explicit groups and scans all pairs with merge_cost each step,
// and a classical unweighted Ward on raw vectors. Both use the same
// lexicographic tie rule as the library.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "mixclust/correspondence.hpp"
#include "mixclust/ward.hpp"

namespace oracle {

struct NaiveMerge {
    std::size_t left, right; // node ids
    double cost;
};

inline std::vector<NaiveMerge> naive_ward(const mixclust::correspondence::CorrespondenceView& view) {
    using mixclust::ward::ClusterNode;
    const std::size_t I = view.n_rows();

    struct Group {
        ClusterNode node;
        std::size_t id;
        std::size_t min_member;
    };
    std::vector<Group> groups;
    for (std::size_t i = 0; i < I; ++i)
        groups.push_back({mixclust::ward::make_leaf(i, view), i, i});

    std::vector<NaiveMerge> merges;
    std::size_t next_id = I;
    while (groups.size() > 1) {
        double best_cost = std::numeric_limits<double>::infinity();
        std::size_t bi = 0, bj = 1;
        auto key = [&](std::size_t a, std::size_t b) {
            return std::pair<std::size_t, std::size_t>(
                std::min(groups[a].min_member, groups[b].min_member),
                std::max(groups[a].min_member, groups[b].min_member));
        };
        for (std::size_t i = 0; i < groups.size(); ++i)
            for (std::size_t j = i + 1; j < groups.size(); ++j) {
                const double c = mixclust::ward::merge_cost(groups[i].node, groups[j].node, view);
                const bool better = c < best_cost * (1.0 - 1e-12);
                const bool tied = std::abs(c - best_cost) <=
                                  1e-12 * std::max(std::abs(c), std::abs(best_cost));
                if (better || (tied && key(i, j) < key(bi, bj))) {
                    best_cost = c;
                    bi = i;
                    bj = j;
                }
            }
        if (groups[bj].min_member < groups[bi].min_member) std::swap(bi, bj);
        merges.push_back({groups[bi].id, groups[bj].id, best_cost});
        Group merged{mixclust::ward::merge_nodes(groups[bi].node, groups[bj].node), next_id++,
                     std::min(groups[bi].min_member, groups[bj].min_member)};
        groups.erase(groups.begin() + static_cast<std::ptrdiff_t>(bj));
        groups[bi] = std::move(merged);
    }
    return merges;
}

// Classical (unweighted) Ward on plain vectors with squared Euclidean
// distances: cost = |g||h|/(|g|+|h|) * ||cen_g - cen_h||^2.
inline std::vector<NaiveMerge> classical_ward(const std::vector<std::vector<double>>& points) {
    const std::size_t I = points.size();
    struct Group {
        std::vector<double> centroid;
        double size;
        std::size_t id;
        std::size_t min_member;
    };
    std::vector<Group> groups;
    for (std::size_t i = 0; i < I; ++i) groups.push_back({points[i], 1.0, i, i});

    auto cost_of = [](const Group& a, const Group& b) {
        double d2 = 0.0;
        for (std::size_t j = 0; j < a.centroid.size(); ++j) {
            const double d = a.centroid[j] - b.centroid[j];
            d2 += d * d;
        }
        return a.size * b.size / (a.size + b.size) * d2;
    };

    std::vector<NaiveMerge> merges;
    std::size_t next_id = I;
    while (groups.size() > 1) {
        double best_cost = std::numeric_limits<double>::infinity();
        std::size_t bi = 0, bj = 1;
        auto key = [&](std::size_t a, std::size_t b) {
            return std::pair<std::size_t, std::size_t>(
                std::min(groups[a].min_member, groups[b].min_member),
                std::max(groups[a].min_member, groups[b].min_member));
        };
        for (std::size_t i = 0; i < groups.size(); ++i)
            for (std::size_t j = i + 1; j < groups.size(); ++j) {
                const double c = cost_of(groups[i], groups[j]);
                const bool better = c < best_cost * (1.0 - 1e-12);
                const bool tied = std::abs(c - best_cost) <=
                                  1e-12 * std::max(std::abs(c), std::abs(best_cost));
                if (better || (tied && key(i, j) < key(bi, bj))) {
                    best_cost = c;
                    bi = i;
                    bj = j;
                }
            }
        if (groups[bj].min_member < groups[bi].min_member) std::swap(bi, bj);
        merges.push_back({groups[bi].id, groups[bj].id, best_cost});
        Group merged;
        merged.size = groups[bi].size + groups[bj].size;
        merged.centroid.resize(groups[bi].centroid.size());
        for (std::size_t j = 0; j < merged.centroid.size(); ++j)
            merged.centroid[j] = (groups[bi].size * groups[bi].centroid[j] +
                                  groups[bj].size * groups[bj].centroid[j]) /
                                 merged.size;
        merged.id = next_id++;
        merged.min_member = std::min(groups[bi].min_member, groups[bj].min_member);
        groups.erase(groups.begin() + static_cast<std::ptrdiff_t>(bj));
        groups[bi] = std::move(merged);
    }
    return merges;
}

// Within-cluster inertia of a grouping: mass-weighted squared chi-square
// distance of member profiles to the group profile.
inline double within_inertia(const std::vector<std::vector<std::size_t>>& clusters,
                             const mixclust::correspondence::CorrespondenceView& view) {
    double total = 0.0;
    for (const auto& members : clusters) {
        mixclust::ward::ClusterNode g = mixclust::ward::make_leaf(members.front(), view);
        for (std::size_t i = 1; i < members.size(); ++i)
            g = mixclust::ward::merge_nodes(g, mixclust::ward::make_leaf(members[i], view));
        for (std::size_t m : members)
            total += view.row_mass[m] * mixclust::correspondence::chi2_distance_sq(
                                            view.profiles.row_copy(m), g.profile, view.col_mass);
    }
    return total;
}

} // namespace oracle
