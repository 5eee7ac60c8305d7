#include "mixclust/eval.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace mixclust::eval {

namespace {

// True when the two label vectors induce the same set partition, i.e.
// labels map one-to-one onto each other.
bool same_partition(const std::vector<int>& a, const std::vector<int>& b) {
    std::unordered_map<int, int> fwd, bwd;
    for (std::size_t i = 0; i < a.size(); ++i) {
        auto [fit, fnew] = fwd.try_emplace(a[i], b[i]);
        if (!fnew && fit->second != b[i]) return false;
        auto [bit, bnew] = bwd.try_emplace(b[i], a[i]);
        if (!bnew && bit->second != a[i]) return false;
    }
    return true;
}

double comb2(double n) { return 0.5 * n * (n - 1.0); }

} // namespace

AriResult ari_ex(const Partition& p, const Partition& q) {
    if (p.labels.size() != q.labels.size())
        throw LengthMismatch("ari: partitions cover different numbers of rows");
    const std::size_t n = p.labels.size();
    if (n == 0) throw LengthMismatch("ari: empty partitions");

    std::map<std::pair<int, int>, long long> cells;
    std::map<int, long long> rows, cols;
    for (std::size_t i = 0; i < n; ++i) {
        ++cells[{p.labels[i], q.labels[i]}];
        ++rows[p.labels[i]];
        ++cols[q.labels[i]];
    }

    double S = 0.0, A = 0.0, B = 0.0;
    for (const auto& [k, v] : cells) S += comb2(static_cast<double>(v));
    for (const auto& [k, v] : rows) A += comb2(static_cast<double>(v));
    for (const auto& [k, v] : cols) B += comb2(static_cast<double>(v));
    const double T = comb2(static_cast<double>(n));

    // Scaled by T to keep the arithmetic in exact small integers:
    //   ARI = (S*T - A*B) / (T*(A+B)/2 - A*B)
    const double num = S * T - A * B;
    const double den = 0.5 * (A + B) * T - A * B;

    if (den == 0.0) return {same_partition(p.labels, q.labels) ? 1.0 : 0.0, true};
    return {num / den, false};
}

double ari(const Partition& p, const Partition& q) { return ari_ex(p, q).value; }

std::vector<ClusterSummary> cluster_profile(const Partition& p, const Table& data,
                                            const VariableSchema& schema) {
    const std::size_t n = data.n_rows();
    if (p.labels.size() != n)
        throw LengthMismatch("cluster_profile: partition does not match table rows");

    std::vector<ClusterSummary> out;
    out.reserve(static_cast<std::size_t>(p.k));
    for (int c = 1; c <= p.k; ++c) {
        ClusterSummary cs;
        cs.cluster = c;
        for (std::size_t i = 0; i < n; ++i)
            if (p.labels[i] == c) ++cs.size;
        cs.share = static_cast<double>(cs.size) / static_cast<double>(n);

        for (const auto& col : data.columns) {
            const ColumnSpec* spec = schema.find(col.name);
            if (!spec)
                throw SchemaMismatch("cluster_profile: schema has no entry for '" +
                                     col.name + "'");
            if (spec->kind == ColumnKind::nominal) {
                std::vector<std::string> cats;
                for (const auto& v : col.labels)
                    if (std::find(cats.begin(), cats.end(), v) == cats.end())
                        cats.push_back(v);
                CategoryProfile cp;
                cp.variable = col.name;
                for (const auto& cat : cats) {
                    double in_cluster = 0.0, overall = 0.0;
                    for (std::size_t i = 0; i < n; ++i) {
                        if (col.labels[i] != cat) continue;
                        overall += 1.0;
                        if (p.labels[i] == c) in_cluster += 1.0;
                    }
                    cp.frequencies.push_back(
                        {cat,
                         {cs.size ? in_cluster / static_cast<double>(cs.size) : 0.0,
                          overall / static_cast<double>(n)}});
                }
                cs.categorical.push_back(std::move(cp));
            } else {
                double sum = 0.0, cluster_sum = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    sum += col.numeric[i];
                    if (p.labels[i] == c) cluster_sum += col.numeric[i];
                }
                cs.numeric.push_back({col.name,
                                      cs.size ? cluster_sum / static_cast<double>(cs.size) : 0.0,
                                      sum / static_cast<double>(n)});
            }
        }
        out.push_back(std::move(cs));
    }
    return out;
}

} // namespace mixclust::eval
