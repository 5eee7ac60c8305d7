#include "mixclust/simgen.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "mixclust/baselines.hpp"
#include "mixclust/coding.hpp"
#include "mixclust/correspondence.hpp"
#include "mixclust/eval.hpp"
#include "mixclust/ward.hpp"

namespace mixclust::simgen {

std::string to_string(Density d) {
    switch (d) {
        case Density::equal: return "equal";
        case Density::one10: return "one10";
        case Density::one60: return "one60";
    }
    return "?";
}

Density density_from_string(const std::string& s) {
    if (s == "equal") return Density::equal;
    if (s == "one10") return Density::one10;
    if (s == "one60") return Density::one60;
    throw InputError("unknown density rule '" + s + "'");
}

std::string to_string(Method m) {
    switch (m) {
        case Method::mixed_hierarchical_b: return "mixed-hierarchical-B";
        case Method::mixed_hierarchical_t: return "mixed-hierarchical-T";
        case Method::gower_pam: return "gower-pam";
    }
    return "?";
}

Method method_from_string(const std::string& s) {
    if (s == "mixed-hierarchical-B" || s == "b") return Method::mixed_hierarchical_b;
    if (s == "mixed-hierarchical-T" || s == "t") return Method::mixed_hierarchical_t;
    if (s == "gower-pam" || s == "gower") return Method::gower_pam;
    throw InputError("unknown method '" + s + "'");
}

// --------------------------------------------------------------------------
// Normal quantile: Acklam's rational approximation polished with one
// Halley step against erfc, which lands within a few ulps.
// --------------------------------------------------------------------------

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw BadOmega("normal_quantile: p must lie in (0, 1)");

    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double dd[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                2.445134137142996e+00, 3.754408661907416e+00};

    const double plow = 0.02425, phigh = 1.0 - plow;
    double x;
    if (p < plow) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((dd[0] * q + dd[1]) * q + dd[2]) * q + dd[3]) * q + 1.0);
    } else if (p <= phigh) {
        const double q = p - 0.5, r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((dd[0] * q + dd[1]) * q + dd[2]) * q + dd[3]) * q + 1.0);
    }

    const double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
    const double u = e * std::sqrt(2.0 * M_PI) * std::exp(0.5 * x * x);
    return x - u / (1.0 + 0.5 * x * u);
}

double overlap_to_separation(double omega, double sigma) {
    if (!(omega > 0.0 && omega < 1.0))
        throw BadOmega("overlap_to_separation: omega must lie in (0, 1)");
    if (!(sigma > 0.0)) throw BadOmega("overlap_to_separation: sigma must be positive");
    return -2.0 * sigma * normal_quantile(0.5 * omega);
}

std::vector<std::size_t> cluster_sizes(std::size_t n, std::size_t k, Density density) {
    if (k < 1 || n < k) throw InfeasibleDesign("cluster_sizes: need n >= k >= 1");

    auto split_evenly = [](std::size_t total, std::size_t parts) {
        std::vector<std::size_t> s(parts, total / parts);
        for (std::size_t i = 0; i < total % parts; ++i) ++s[i]; // earliest get the extras
        return s;
    };

    if (density == Density::equal || k == 1) return split_evenly(n, k);

    const double frac = density == Density::one10 ? 0.10 : 0.60;
    const std::size_t first =
        static_cast<std::size_t>(std::lround(frac * static_cast<double>(n)));
    if (first < 1 || n - first < k - 1)
        throw InfeasibleDesign("cluster_sizes: density rule leaves an empty cluster");
    std::vector<std::size_t> rest = split_evenly(n - first, k - 1);
    std::vector<std::size_t> sizes{first};
    sizes.insert(sizes.end(), rest.begin(), rest.end());
    return sizes;
}

std::vector<long> quantile_discretize(const std::vector<double>& column,
                                      std::size_t categories) {
    if (categories < 2) throw InfeasibleDesign("quantile_discretize: need >= 2 categories");
    const std::size_t n = column.size();
    if (n < categories)
        throw InfeasibleDesign("quantile_discretize: fewer values than categories");

    std::vector<double> sorted(column);
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> cuts;
    for (std::size_t j = 1; j < categories; ++j) {
        // 100*j/c % cut point as the ceil(n*j/c)-th order statistic.
        const std::size_t pos = (n * j + categories - 1) / categories;
        cuts.push_back(sorted[pos - 1]);
    }

    std::vector<long> out;
    out.reserve(n);
    for (double v : column) {
        long cat = 1;
        for (double cut : cuts)
            if (v > cut) ++cat;
        out.push_back(cat);
    }
    return out;
}

namespace {

// K orthonormal directions in R^dims from seeded Gaussians + Gram-Schmidt.
std::vector<std::vector<double>> orthonormal_directions(std::size_t k, std::size_t dims,
                                                        std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<std::vector<double>> dirs;
    while (dirs.size() < k) {
        std::vector<double> v(dims);
        for (double& x : v) x = gauss(rng);
        for (const auto& u : dirs) {
            double dot = 0.0;
            for (std::size_t j = 0; j < dims; ++j) dot += v[j] * u[j];
            for (std::size_t j = 0; j < dims; ++j) v[j] -= dot * u[j];
        }
        double norm = 0.0;
        for (double x : v) norm += x * x;
        norm = std::sqrt(norm);
        if (norm < 1e-8) continue; // essentially impossible; redraw
        for (double& x : v) x /= norm;
        dirs.push_back(std::move(v));
    }
    return dirs;
}

} // namespace

SimDataset generate(const SimDesign& design) {
    if (design.k < 2) throw InfeasibleDesign("generate: need at least two clusters");
    if (design.dims < design.k)
        throw InfeasibleDesign("generate: need dims >= k for the simplex placement");
    const std::vector<std::size_t> sizes = cluster_sizes(design.n, design.k, design.density);
    const double delta = overlap_to_separation(design.omega, 1.0);

    std::mt19937_64 rng(design.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    // Centers delta/sqrt(2) along orthonormal directions sit pairwise at
    // exactly delta, a regular simplex in a random K-subspace, so the
    // separation spreads over all coordinates no matter which columns get
    // discretized later.
    const auto dirs = orthonormal_directions(design.k, design.dims, rng);
    const double scale = delta / std::sqrt(2.0);

    std::vector<std::vector<double>> raw(design.dims, std::vector<double>(design.n));
    Partition truth;
    truth.k = static_cast<int>(design.k);
    truth.labels.reserve(design.n);
    std::size_t row = 0;
    for (std::size_t g = 0; g < design.k; ++g) {
        for (std::size_t s = 0; s < sizes[g]; ++s, ++row) {
            truth.labels.push_back(static_cast<int>(g) + 1);
            for (std::size_t d = 0; d < design.dims; ++d)
                raw[d][row] = scale * dirs[g][d] + gauss(rng);
        }
    }

    const std::size_t n_cat = static_cast<std::size_t>(
        std::lround(design.cat_fraction * static_cast<double>(design.dims)));

    SimDataset out;
    out.design = design;
    out.truth = std::move(truth);
    out.separation = delta;
    for (std::size_t d = 0; d < design.dims; ++d) {
        Column col;
        ColumnSpec spec;
        if (d < n_cat) {
            col.name = "cat" + std::to_string(d + 1);
            const std::vector<long> levels = quantile_discretize(raw[d], design.cat_levels);
            if (design.discretized_as_ordinal) {
                spec.kind = ColumnKind::ordinal;
                spec.levels = static_cast<int>(design.cat_levels);
                col.numeric.reserve(design.n);
                for (long l : levels) col.numeric.push_back(static_cast<double>(l));
            } else {
                spec.kind = ColumnKind::nominal;
                col.labels.reserve(design.n);
                for (long l : levels) col.labels.push_back(std::to_string(l));
            }
        } else {
            col.name = "num" + std::to_string(d - n_cat + 1);
            spec.kind = ColumnKind::continuous;
            col.numeric = std::move(raw[d]);
        }
        spec.name = col.name;
        out.schema.columns.push_back(spec);
        out.table.columns.push_back(std::move(col));
    }
    return out;
}

Partition run_method(Method method, const SimDataset& data, int n_categories) {
    const std::size_t k = data.design.k;
    switch (method) {
        case Method::mixed_hierarchical_b: {
            auto coded = coding::build_coded_matrix(data.table, data.schema,
                                                    coding::CodingMethod::barycentric,
                                                    n_categories);
            auto view = correspondence::correspondence_view(coded);
            return ward::cut(ward::ward_cluster(view), k);
        }
        case Method::mixed_hierarchical_t: {
            auto coded = coding::build_coded_matrix(data.table, data.schema,
                                                    coding::CodingMethod::triangular,
                                                    n_categories);
            auto view = correspondence::correspondence_view(coded);
            return ward::cut(ward::ward_cluster(view), k);
        }
        case Method::gower_pam: {
            auto d = baselines::gower(data.table, data.schema);
            return baselines::pam(d, k, data.design.seed);
        }
    }
    throw InputError("run_method: unknown method");
}

std::uint64_t derive_seed(std::uint64_t master, std::size_t scenario, std::size_t replicate) {
    std::seed_seq seq{static_cast<std::uint32_t>(master & 0xffffffffu),
                      static_cast<std::uint32_t>(master >> 32),
                      static_cast<std::uint32_t>(scenario),
                      static_cast<std::uint32_t>(replicate)};
    std::uint32_t words[2];
    seq.generate(words, words + 2);
    return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

std::vector<GridRow> run_grid(const std::vector<SimDesign>& designs,
                              const std::vector<Method>& methods,
                              const GridOptions& options) {
    std::vector<GridRow> rows;
    rows.reserve(designs.size() * options.replicates * methods.size());
    for (std::size_t s = 0; s < designs.size(); ++s) {
        for (std::size_t r = 0; r < options.replicates; ++r) {
            SimDesign design = designs[s];
            design.seed = derive_seed(options.master_seed, s, r);
            const SimDataset data = generate(design);
            for (Method m : methods) {
                GridRow row;
                row.design = design;
                row.scenario = s;
                row.replicate = r;
                row.method = m;
                row.ari = eval::ari(run_method(m, data, options.n_categories), data.truth);
                rows.push_back(row);
            }
        }
    }
    return rows;
}

} // namespace mixclust::simgen
