#include "mixclust/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace mixclust::baselines {

DissimilarityMatrix gower(const Table& data, const VariableSchema& schema) {
    const std::size_t I = data.n_rows();
    if (I == 0) throw EmptyColumn("gower: empty table");

    // Precompute per-variable ranges for the numeric columns.
    std::vector<const Column*> cols;
    std::vector<bool> nominal;
    std::vector<double> range;
    for (const auto& col : data.columns) {
        const ColumnSpec* spec = schema.find(col.name);
        if (!spec) throw SchemaMismatch("gower: schema has no entry for '" + col.name + "'");
        cols.push_back(&col);
        nominal.push_back(spec->kind == ColumnKind::nominal);
        if (spec->kind == ColumnKind::nominal) {
            range.push_back(0.0);
        } else {
            const auto [lo, hi] = std::minmax_element(col.numeric.begin(), col.numeric.end());
            if (*hi - *lo <= 0.0)
                throw ConstantContinuousColumn("gower: column '" + col.name +
                                               "' has zero range");
            range.push_back(*hi - *lo);
        }
    }

    DissimilarityMatrix d;
    d.n = I;
    d.values.assign(I * I, 0.0);
    const double vars = static_cast<double>(cols.size());
    for (std::size_t i = 0; i < I; ++i)
        for (std::size_t j = i + 1; j < I; ++j) {
            double s = 0.0;
            for (std::size_t v = 0; v < cols.size(); ++v) {
                if (nominal[v])
                    s += cols[v]->labels[i] == cols[v]->labels[j] ? 0.0 : 1.0;
                else
                    s += std::abs(cols[v]->numeric[i] - cols[v]->numeric[j]) / range[v];
            }
            d.at(i, j) = d.at(j, i) = s / vars;
        }
    return d;
}

double pam_cost(const DissimilarityMatrix& d, const std::vector<std::size_t>& medoids) {
    double total = 0.0;
    for (std::size_t i = 0; i < d.n; ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t m : medoids) best = std::min(best, d.at(i, m));
        total += best;
    }
    return total;
}

namespace {

// Nearest and second-nearest medoid distances per point; the SWAP deltas
// need both.
void nearest_two(const DissimilarityMatrix& d, const std::vector<std::size_t>& medoids,
                 std::vector<std::size_t>& near, std::vector<double>& dn,
                 std::vector<double>& ds) {
    const std::size_t I = d.n;
    near.assign(I, medoids.front());
    dn.assign(I, std::numeric_limits<double>::infinity());
    ds.assign(I, std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < I; ++i)
        for (std::size_t m : medoids) {
            const double v = d.at(i, m);
            if (v < dn[i]) {
                ds[i] = dn[i];
                dn[i] = v;
                near[i] = m;
            } else if (v < ds[i]) {
                ds[i] = v;
            }
        }
}

} // namespace

std::vector<std::size_t> pam_build(const DissimilarityMatrix& d, std::size_t k) {
    const std::size_t I = d.n;
    if (k < 1 || k > I)
        throw BadK("pam: k must lie in [1, " + std::to_string(I) + "]");
    if (k == I) {
        std::vector<std::size_t> all(I);
        for (std::size_t i = 0; i < I; ++i) all[i] = i;
        return all;
    }

    // Start from the most central point, then repeatedly add the point
    // with the largest total cost reduction.
    std::vector<std::size_t> medoids;
    std::size_t first = 0;
    double best_total = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < I; ++i) {
        double t = 0.0;
        for (std::size_t j = 0; j < I; ++j) t += d.at(i, j);
        if (t < best_total) {
            best_total = t;
            first = i;
        }
    }
    medoids.push_back(first);
    std::vector<double> dn(I);
    for (std::size_t i = 0; i < I; ++i) dn[i] = d.at(i, first);

    while (medoids.size() < k) {
        std::size_t best_c = I;
        double best_gain = -1.0;
        for (std::size_t c = 0; c < I; ++c) {
            if (std::find(medoids.begin(), medoids.end(), c) != medoids.end()) continue;
            double gain = 0.0;
            for (std::size_t j = 0; j < I; ++j)
                if (d.at(j, c) < dn[j]) gain += dn[j] - d.at(j, c);
            if (gain > best_gain) {
                best_gain = gain;
                best_c = c;
            }
        }
        medoids.push_back(best_c);
        for (std::size_t j = 0; j < I; ++j) dn[j] = std::min(dn[j], d.at(j, best_c));
    }
    return medoids;
}

PamResult pam_full(const DissimilarityMatrix& d, std::size_t k, std::uint64_t /*seed*/) {
    const std::size_t I = d.n;
    std::vector<std::size_t> medoids = pam_build(d, k);

    PamResult out;
    out.build_cost = pam_cost(d, medoids);

    if (k != I && k >= 1) {
        // SWAP: apply the single best improving (medoid, candidate) swap,
        // recompute, repeat until nothing improves.
        std::vector<bool> is_medoid(I, false);
        for (std::size_t m : medoids) is_medoid[m] = true;
        std::vector<std::size_t> near;
        std::vector<double> dnear, dsecond;
        for (;;) {
            nearest_two(d, medoids, near, dnear, dsecond);
            double best_delta = -1e-12;
            std::size_t best_m = I, best_h = I;
            for (std::size_t mi = 0; mi < medoids.size(); ++mi) {
                const std::size_t m = medoids[mi];
                for (std::size_t h = 0; h < I; ++h) {
                    if (is_medoid[h]) continue;
                    double delta = 0.0;
                    for (std::size_t j = 0; j < I; ++j) {
                        if (j == h) {
                            delta += std::min(d.at(j, h), near[j] == m ? dsecond[j] : dnear[j]) -
                                     dnear[j];
                        } else if (near[j] == m) {
                            delta += std::min(d.at(j, h), dsecond[j]) - dnear[j];
                        } else if (d.at(j, h) < dnear[j]) {
                            delta += d.at(j, h) - dnear[j];
                        }
                    }
                    if (delta < best_delta) {
                        best_delta = delta;
                        best_m = mi;
                        best_h = h;
                    }
                }
            }
            if (best_m == I) break;
            is_medoid[medoids[best_m]] = false;
            is_medoid[best_h] = true;
            medoids[best_m] = best_h;
        }
    }

    // Cluster ids follow ascending medoid index; points join their nearest
    // medoid, ties to the lowest index.
    std::sort(medoids.begin(), medoids.end());
    out.cost = pam_cost(d, medoids);
    out.medoids = medoids;
    out.partition.k = static_cast<int>(k);
    out.partition.labels.assign(I, 0);
    if (k == I) {
        for (std::size_t i = 0; i < I; ++i)
            out.partition.labels[i] = static_cast<int>(i) + 1;
        return out;
    }
    for (std::size_t i = 0; i < I; ++i) {
        std::size_t best = 0;
        double bd = std::numeric_limits<double>::infinity();
        for (std::size_t m = 0; m < medoids.size(); ++m)
            if (d.at(i, medoids[m]) < bd) {
                bd = d.at(i, medoids[m]);
                best = m;
            }
        out.partition.labels[i] = static_cast<int>(best) + 1;
    }
    return out;
}

Partition pam(const DissimilarityMatrix& d, std::size_t k, std::uint64_t seed) {
    return pam_full(d, k, seed).partition;
}

} // namespace mixclust::baselines
