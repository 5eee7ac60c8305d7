#include "mixclust/ward.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>

namespace mixclust::ward {

ClusterNode make_leaf(std::size_t row, const correspondence::CorrespondenceView& view) {
    ClusterNode n;
    n.members = {row};
    n.mass = view.row_mass[row];
    n.profile = view.profiles.row_copy(row);
    return n;
}

ClusterNode merge_nodes(const ClusterNode& g, const ClusterNode& h) {
    ClusterNode n;
    n.members.reserve(g.members.size() + h.members.size());
    n.members.insert(n.members.end(), g.members.begin(), g.members.end());
    n.members.insert(n.members.end(), h.members.begin(), h.members.end());
    std::sort(n.members.begin(), n.members.end());
    n.mass = g.mass + h.mass;
    n.profile.resize(g.profile.size());
    for (std::size_t j = 0; j < g.profile.size(); ++j)
        n.profile[j] = (g.mass * g.profile[j] + h.mass * h.profile[j]) / n.mass;
    return n;
}

double merge_cost(const ClusterNode& g, const ClusterNode& h,
                  const correspondence::CorrespondenceView& view) {
    const double w = g.mass * h.mass / (g.mass + h.mass);
    return w * correspondence::chi2_distance_sq(g.profile, h.profile, view.col_mass);
}

namespace {

constexpr double kTieRel = 1e-12;

struct HeapEntry {
    double cost;
    std::size_t a, b;       // active slots
    std::uint32_t va, vb;   // slot versions at push time

    bool operator>(const HeapEntry& o) const { return cost > o.cost; }
};

struct Slot {
    bool active = false;
    std::size_t node_id = 0;
    std::size_t min_member = 0;
    std::size_t size = 0;
    double mass = 0.0;
    std::uint32_t version = 0;
};

} // namespace

Dendrogram ward_cluster(const correspondence::CorrespondenceView& view) {
    const std::size_t I = view.n_rows();
    if (I < 2) throw InputError("ward_cluster: need at least two rows");

    Dendrogram out;
    out.leaf_count = I;
    out.merges.reserve(I - 1);

    std::vector<Slot> slots(I);
    for (std::size_t i = 0; i < I; ++i)
        slots[i] = {true, i, i, 1, view.row_mass[i], 0};

    // Pair costs live in a triangular array over slots; a merged cluster
    // reuses the lower slot of the pair.
    std::vector<double> pair_cost(I * I, 0.0);
    auto cost_ref = [&](std::size_t a, std::size_t b) -> double& {
        return a < b ? pair_cost[a * I + b] : pair_cost[b * I + a];
    };

    std::priority_queue<HeapEntry, std::vector<HeapEntry>, std::greater<HeapEntry>> heap;

    for (std::size_t i = 0; i < I; ++i) {
        const double mi = view.row_mass[i];
        const double* pi = view.profiles.row(i);
        for (std::size_t j = i + 1; j < I; ++j) {
            const double mj = view.row_mass[j];
            const double* pj = view.profiles.row(j);
            double d2 = 0.0;
            for (std::size_t k = 0; k < view.n_cols(); ++k) {
                const double d = pi[k] - pj[k];
                d2 += d * d / view.col_mass[k];
            }
            const double c = mi * mj / (mi + mj) * d2;
            cost_ref(i, j) = c;
            heap.push({c, i, j, 0, 0});
        }
    }

    auto entry_valid = [&](const HeapEntry& e) {
        return slots[e.a].active && slots[e.b].active && slots[e.a].version == e.va &&
               slots[e.b].version == e.vb;
    };

    for (std::size_t step = 0; step < I - 1; ++step) {
        // Pop the cheapest valid pair, then gather everything within the
        // tie band and take the lexicographically smallest member pair.
        HeapEntry first{};
        for (;;) {
            first = heap.top();
            heap.pop();
            if (entry_valid(first)) break;
        }
        std::vector<HeapEntry> ties{first};
        const double band = first.cost * (1.0 + kTieRel) +
                            std::numeric_limits<double>::denorm_min();
        while (!heap.empty() && heap.top().cost <= band) {
            HeapEntry e = heap.top();
            heap.pop();
            if (entry_valid(e)) ties.push_back(e);
        }
        auto key = [&](const HeapEntry& e) {
            const std::size_t ma = slots[e.a].min_member, mb = slots[e.b].min_member;
            return std::pair<std::size_t, std::size_t>(std::min(ma, mb), std::max(ma, mb));
        };
        std::size_t pick = 0;
        for (std::size_t t = 1; t < ties.size(); ++t)
            if (key(ties[t]) < key(ties[pick])) pick = t;
        const HeapEntry best = ties[pick];
        for (std::size_t t = 0; t < ties.size(); ++t)
            if (t != pick) heap.push(ties[t]); // losers stay available

        std::size_t sa = best.a, sb = best.b;
        if (slots[sb].min_member < slots[sa].min_member) std::swap(sa, sb);
        Slot& g = slots[sa];
        Slot& h = slots[sb];

        Dendrogram::Merge m;
        m.left = g.node_id;
        m.right = h.node_id;
        m.cost = best.cost;
        m.id = I + step;
        m.mass = g.mass + h.mass;
        m.size = g.size + h.size;
        out.merges.push_back(m);

        // Lance-Williams update for mass-weighted Ward: the merged pair's
        // slot sa takes over, sb retires.
        const double mg = g.mass, mh = h.mass, dgh = best.cost;
        h.active = false;
        for (std::size_t k = 0; k < I; ++k) {
            if (!slots[k].active || k == sa) continue;
            const double mk = slots[k].mass;
            const double c = ((mg + mk) * cost_ref(sa, k) + (mh + mk) * cost_ref(sb, k) -
                              mk * dgh) /
                             (mg + mh + mk);
            cost_ref(sa, k) = c;
        }
        g.node_id = m.id;
        g.mass = m.mass;
        g.size = m.size;
        g.version++;
        for (std::size_t k = 0; k < I; ++k) {
            if (!slots[k].active || k == sa) continue;
            heap.push({cost_ref(sa, k), sa, k, g.version, slots[k].version});
        }
    }
    return out;
}

namespace {

// Components after applying the first `applied` merges, as sorted member
// lists keyed by smallest member.
std::vector<std::vector<std::size_t>> components_after(const Dendrogram& d,
                                                       std::size_t applied) {
    const std::size_t I = d.leaf_count;
    std::vector<std::vector<std::size_t>> node_members(I + applied);
    std::vector<bool> alive(I + applied, false);
    for (std::size_t i = 0; i < I; ++i) {
        node_members[i] = {i};
        alive[i] = true;
    }
    for (std::size_t j = 0; j < applied; ++j) {
        const auto& m = d.merges[j];
        auto& dst = node_members[m.id];
        dst = std::move(node_members[m.left]);
        dst.insert(dst.end(), node_members[m.right].begin(), node_members[m.right].end());
        alive[m.left] = false;
        alive[m.right] = false;
        alive[m.id] = true;
    }
    std::vector<std::vector<std::size_t>> comps;
    for (std::size_t id = 0; id < alive.size(); ++id)
        if (alive[id]) {
            std::sort(node_members[id].begin(), node_members[id].end());
            comps.push_back(std::move(node_members[id]));
        }
    std::sort(comps.begin(), comps.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return comps;
}

} // namespace

Partition cut(const Dendrogram& d, std::size_t k) {
    const std::size_t I = d.leaf_count;
    if (k < 1 || k > I)
        throw BadK("cut: k must lie in [1, " + std::to_string(I) + "]");
    const auto comps = components_after(d, I - k);

    Partition p;
    p.k = static_cast<int>(k);
    p.labels.assign(I, 0);
    int label = 1;
    for (const auto& comp : comps) {
        for (std::size_t row : comp) p.labels[row] = label;
        ++label;
    }
    return p;
}

std::vector<InertiaGain> inertia_gains(const Dendrogram& d) {
    const std::size_t I = d.leaf_count;
    std::vector<InertiaGain> gains;
    gains.reserve(I - 1);
    for (std::size_t k = 2; k <= I; ++k)
        gains.push_back({k, d.merges[I - k].cost});
    return gains;
}

KSelection select_k(const std::vector<InertiaGain>& gains, std::size_t k_min,
                    std::size_t k_max) {
    const std::size_t I = gains.size() + 1;
    if (k_min < 2 || k_max > I - 1 || k_min > k_max)
        throw BadK("select_k: need 2 <= k_min <= k_max <= " + std::to_string(I - 1));

    auto gain_at = [&](std::size_t k) { return gains[k - 2].gain; };

    KSelection sel;
    for (std::size_t k = k_min; k <= k_max; ++k) {
        if (gain_at(k + 1) == 0.0) {
            // Nothing is gained past k clusters; report the first such k
            // rather than dividing by zero.
            sel.k = k;
            sel.degenerate = true;
            return sel;
        }
        KRatio r{k, gain_at(k), gain_at(k + 1), gain_at(k) / gain_at(k + 1)};
        sel.ratios.push_back(r);
    }
    sel.k = sel.ratios.front().k;
    double best = sel.ratios.front().ratio;
    for (const auto& r : sel.ratios)
        if (r.ratio > best * (1.0 + 1e-12)) {
            best = r.ratio;
            sel.k = r.k;
        }
    return sel;
}

} // namespace mixclust::ward
