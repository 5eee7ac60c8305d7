#include "mixclust/coding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

namespace mixclust::coding {

namespace {

constexpr double kFloorGuard = 1e-9; // relative guard on boundary divisions
constexpr double kTwoThirds = 2.0 / 3.0;

double bound_at(long m, int n, int i) {
    // B_i = 1/2 + i*m/n. i*m is exact as a double for any realistic m,
    // so the division is correctly rounded and exact-boundary levels
    // compare equal (see locate_level).
    return 0.5 + (static_cast<double>(i) * static_cast<double>(m)) / static_cast<double>(n);
}

// Rightward cascade: `mass` sits on the right bound of interval
// `slot` - 1 (1-based slots). Each step deposits 2/3 into the next slot
// and passes 1/3 on; the last slot absorbs the remainder. The subtraction
// form keeps the cascade mass-conserving to the last ulp.
void cascade_right(std::vector<double>& x, int first_slot, double mass) {
    const int n = static_cast<int>(x.size());
    for (int slot = first_slot; slot <= n - 1; ++slot) {
        const double dep = kTwoThirds * mass;
        x[slot - 1] += dep;
        mass -= dep;
    }
    x[n - 1] += mass;
}

void cascade_left(std::vector<double>& x, int first_slot, double mass) {
    for (int slot = first_slot; slot >= 2; --slot) {
        const double dep = kTwoThirds * mass;
        x[slot - 1] += dep;
        mass -= dep;
    }
    x[0] += mass;
}

double population_sd(const std::vector<double>& column, double mean) {
    double ss = 0.0;
    for (double v : column) ss += (v - mean) * (v - mean);
    return std::sqrt(ss / static_cast<double>(column.size()));
}

} // namespace

// --------------------------------------------------------------------------
// Step 1
// --------------------------------------------------------------------------

long OrdinalScale::level_of(double x) const {
    const double t = (x - mu) / d0 * (1.0 + kFloorGuard);
    long level = static_cast<long>(std::floor(t)) + 1;
    if (level < 1) level = 1;
    if (level > points) level = points;
    return level;
}

Discretized discretize(const std::vector<double>& column) {
    if (column.size() < 2)
        throw EmptyColumn("discretize: need at least two values");
    for (double v : column)
        if (std::isnan(v))
            throw MissingValue("discretize: NaN in column");

    std::vector<double> distinct(column);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() < 2)
        throw ConstantColumn(
            "discretize: column is constant, no interval width d0 exists; "
            "exclude the column from the analysis");

    double d0 = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < distinct.size(); ++i)
        d0 = std::min(d0, distinct[i] - distinct[i - 1]);

    OrdinalScale scale;
    scale.mu = distinct.front();
    scale.max_value = distinct.back();
    scale.d0 = d0;
    // m = [ratio] + 1 with the same guarded floor as level_of. At an exact
    // integer ratio r this yields m = r + 1, which keeps (M-mu)/m < d0 and
    // keeps the top two distinct values in different intervals.
    const double ratio = (scale.max_value - scale.mu) / d0;
    scale.points = static_cast<long>(std::floor(ratio * (1.0 + kFloorGuard))) + 1;

    Discretized out;
    out.scale = scale;
    out.levels.reserve(column.size());
    for (double v : column) out.levels.push_back(scale.level_of(v));
    return out;
}

std::pair<double, double> decode_ordinal(long level, const OrdinalScale& scale) {
    if (level < 1 || level > scale.points)
        throw LevelOutOfRange("decode_ordinal: level " + std::to_string(level) +
                              " outside [1, " + std::to_string(scale.points) + "]");
    const double lo = scale.mu + static_cast<double>(level - 1) * scale.d0;
    return {lo, lo + scale.d0};
}

// --------------------------------------------------------------------------
// Step 2
// --------------------------------------------------------------------------

LevelPosition locate_level(long l, long m, int n) {
    const double s = static_cast<double>(l);
    for (int i = 1; i <= n - 1; ++i)
        if (s == bound_at(m, n, i)) return {true, i};
    for (int i = 0; i < n; ++i)
        if (bound_at(m, n, i) < s && s < bound_at(m, n, i + 1)) return {false, i};
    throw NumericError("locate_level: level does not fall in (1/2, m + 1/2)");
}

std::vector<double> barycentric_tuple_values(long l, long m, int n) {
    if (n < 2) throw BadTupleWidth("barycentric_tuple: need n >= 2");
    if (m < 1) throw LevelOutOfRange("barycentric_tuple: need m >= 1");
    if (l < 1 || l > m)
        throw LevelOutOfRange("barycentric_tuple: level " + std::to_string(l) +
                              " outside [1, " + std::to_string(m) + "]");

    // Levels above the center are the mirror image of levels below it;
    // computing through the reflection makes the reversal symmetry exact.
    if (2 * l > m + 1) {
        std::vector<double> x = barycentric_tuple_values(m + 1 - l, m, n);
        std::reverse(x.begin(), x.end());
        return x;
    }

    std::vector<double> x(static_cast<std::size_t>(n), 0.0);
    const LevelPosition pos = locate_level(l, m, n);

    if (pos.on_bound) {
        // l coincides with interior bound B_q: the unit mass splits evenly
        // and cascades away from the bound in both directions.
        cascade_right(x, pos.index + 1, 0.5);
        cascade_left(x, pos.index, 0.5);
        return x;
    }

    const int p = pos.index; // 0-based interval, 1-based slot p+1
    const double lo = bound_at(m, n, p);
    const double hi = bound_at(m, n, p + 1);
    // The self-mirrored scale center sits exactly on its interval midpoint;
    // pinning the split at 1/2 keeps its tuple a bitwise palindrome.
    const double m1 = 2 * l == m + 1
                          ? 0.5
                          : (hi - static_cast<double>(l)) / (hi - lo); // mass at lo
    const double m2 = 1.0 - m1;                                        // mass at hi

    if (p == 0) {
        // First interval: the left-bound mass belongs wholly to slot 1 and
        // the first rightward deposit lands there too.
        const double dep = kTwoThirds * m2;
        x[0] = m1 + dep;
        cascade_right(x, 2, m2 - dep);
    } else {
        // Middle interval: the two midpoint deposits total exactly 2/3
        // (the slot's share is 2/3 of m1 plus 2/3 of m2).
        x[p] = kTwoThirds;
        cascade_right(x, p + 2, m2 - kTwoThirds * m2);
        cascade_left(x, p, m1 - kTwoThirds * m1);
    }
    // After the mirror reduction the last interval is unreachable: l in the
    // top interval would force 2l > m + 1.
    return x;
}

BarycentricTuple barycentric_tuple(long l, long m, int n) {
    BarycentricTuple t;
    t.values = barycentric_tuple_values(l, m, n);
    t.source_level = l;
    t.scale_points = m;
    return t;
}

namespace {

bool tuple_matches(const std::vector<double>& a, const std::vector<double>& b, double tol) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::abs(a[i] - b[i]) > tol) return false;
    return true;
}

} // namespace

long decode_tuple(const std::vector<double>& values, long m) {
    const int n = static_cast<int>(values.size());
    if (n < 2) throw BadTupleWidth("decode_tuple: need n >= 2");
    if (m < 1) throw LevelOutOfRange("decode_tuple: need m >= 1");

    constexpr double kTol = 1e-9;
    const double w = static_cast<double>(m) / static_cast<double>(n);

    std::set<long> candidates;
    auto propose = [&](double l_est) {
        const long l = std::lround(l_est);
        if (l >= 1 && l <= m) candidates.insert(l);
    };

    // First/last interval inversions of the dominant-element formula.
    propose(0.5 + 3.0 * (1.0 - values.front()) * w);
    propose(static_cast<double>(m) + 0.5 - 3.0 * (1.0 - values.back()) * w);

    // Middle interval: the slot after the 2/3 peak carries (2/9)m2
    // (or (1/3)m2 when it is the terminal slot); symmetric on the left.
    const int peak = static_cast<int>(std::max_element(values.begin(), values.end()) -
                                      values.begin()); // 0-based slot p
    if (peak >= 1 && peak <= n - 2) {
        const int p = peak;
        if (p + 1 <= n - 2) propose(0.5 + (static_cast<double>(p) + 4.5 * values[p + 1]) * w);
        else propose(0.5 + (static_cast<double>(p) + 3.0 * values[p + 1]) * w);
        if (p - 1 >= 1) propose(0.5 + (static_cast<double>(p) + 1.0 - 4.5 * values[p - 1]) * w);
        else propose(0.5 + (static_cast<double>(p) + 1.0 - 3.0 * values[p - 1]) * w);
    }

    // Exact-boundary levels produce flat two-sided tuples the formulas
    // above miss; each interior bound contributes one candidate.
    for (int q = 1; q <= n - 1; ++q) propose(bound_at(m, n, q));

    for (long l : candidates)
        if (tuple_matches(barycentric_tuple_values(l, m, n), values, kTol)) return l;

    // Nearest-tuple scan; bounded so absurd m cannot stall the caller.
    if (m <= 200000) {
        long best = 0;
        double best_gap = std::numeric_limits<double>::infinity();
        for (long l = 1; l <= m; ++l) {
            const std::vector<double> t = barycentric_tuple_values(l, m, n);
            double gap = 0.0;
            for (int j = 0; j < n; ++j) gap = std::max(gap, std::abs(t[j] - values[j]));
            if (gap < best_gap) {
                best_gap = gap;
                best = l;
            }
        }
        if (best_gap <= kTol) return best;
    }
    throw NoPreimage("decode_tuple: tuple matches no level of the scale");
}

Matrix encode_ordinal(const std::vector<long>& levels, long m, int n) {
    Matrix block(levels.size(), static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < levels.size(); ++i) {
        const std::vector<double> t = barycentric_tuple_values(levels[i], m, n);
        for (int j = 0; j < n; ++j) block(i, j) = t[j];
    }
    return block;
}

NominalBlock encode_nominal(const std::vector<std::string>& column) {
    if (column.empty()) throw EmptyColumn("encode_nominal: empty column");

    NominalBlock out;
    std::vector<std::size_t> index(column.size());
    for (std::size_t i = 0; i < column.size(); ++i) {
        auto it = std::find(out.categories.begin(), out.categories.end(), column[i]);
        if (it == out.categories.end()) {
            out.categories.push_back(column[i]);
            index[i] = out.categories.size() - 1;
        } else {
            index[i] = static_cast<std::size_t>(it - out.categories.begin());
        }
    }
    out.zero_variance = out.categories.size() == 1;
    out.block = Matrix(column.size(), out.categories.size());
    for (std::size_t i = 0; i < column.size(); ++i) out.block(i, index[i]) = 1.0;
    return out;
}

std::array<double, 3> triangular_tuple(double x, double h1, double h2, double h3) {
    if (!(h1 < h2 && h2 < h3))
        throw DegenerateHinges("triangular_tuple: hinges must be strictly increasing");
    if (x < h1 || x > h3)
        throw OutOfHingeRange("triangular_tuple: value outside hinge range");
    if (x <= h2) {
        const double t = (x - h1) / (h2 - h1);
        return {1.0 - t, t, 0.0};
    }
    const double t = (x - h2) / (h3 - h2);
    return {0.0, 1.0 - t, t};
}

Matrix escofier_pair(const std::vector<double>& column) {
    if (column.empty()) throw EmptyColumn("escofier_pair: empty column");
    const double mean =
        std::accumulate(column.begin(), column.end(), 0.0) / static_cast<double>(column.size());
    const double sd = population_sd(column, mean);
    if (sd == 0.0)
        throw ConstantColumn("escofier_pair: zero-variance column cannot be standardized");

    Matrix block(column.size(), 2);
    for (std::size_t i = 0; i < column.size(); ++i) {
        const double z = (column[i] - mean) / sd;
        block(i, 0) = 0.5 * (1.0 + z);
        block(i, 1) = 0.5 * (1.0 - z);
    }
    return block;
}

// --------------------------------------------------------------------------
// Whole-table coding
// --------------------------------------------------------------------------

std::string to_string(CodingMethod m) {
    switch (m) {
        case CodingMethod::barycentric: return "barycentric";
        case CodingMethod::triangular: return "triangular";
        case CodingMethod::escofier: return "escofier";
    }
    return "?";
}

CodingMethod coding_method_from_string(const std::string& s) {
    if (s == "barycentric") return CodingMethod::barycentric;
    if (s == "triangular") return CodingMethod::triangular;
    if (s == "escofier") return CodingMethod::escofier;
    throw InputError("unknown coding method '" + s + "'");
}

namespace {

void check_no_missing(const Column& col, const std::string& name) {
    if (col.is_text()) {
        for (std::size_t i = 0; i < col.labels.size(); ++i)
            if (col.labels[i].empty())
                throw MissingValue("missing value at row " + std::to_string(i + 1) +
                                   ", column '" + name + "'");
    } else {
        for (std::size_t i = 0; i < col.numeric.size(); ++i)
            if (std::isnan(col.numeric[i]))
                throw MissingValue("missing value at row " + std::to_string(i + 1) +
                                   ", column '" + name + "'");
    }
}

std::vector<long> ordinal_levels(const Column& col, const ColumnSpec& spec) {
    if (spec.levels < 2)
        throw SchemaMismatch("ordinal column '" + spec.name +
                             "' needs levels >= 2 in the schema");
    std::vector<long> out;
    out.reserve(col.numeric.size());
    for (std::size_t i = 0; i < col.numeric.size(); ++i) {
        const double v = col.numeric[i];
        const long l = std::lround(v);
        if (static_cast<double>(l) != v)
            throw LevelOutOfRange("ordinal column '" + spec.name + "' row " +
                                  std::to_string(i + 1) + ": value is not an integer level");
        if (l < 1 || l > spec.levels)
            throw LevelOutOfRange("ordinal column '" + spec.name + "' row " +
                                  std::to_string(i + 1) + ": level " + std::to_string(l) +
                                  " outside [1, " + std::to_string(spec.levels) + "]");
        out.push_back(l);
    }
    return out;
}

std::vector<std::string> stringify_levels(const std::vector<long>& levels) {
    std::vector<std::string> out;
    out.reserve(levels.size());
    for (long l : levels) out.push_back(std::to_string(l));
    return out;
}

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

struct PendingBlock {
    Matrix block;
    std::vector<std::string> labels;
    ColumnCoding coding;
};

} // namespace

CodedMatrix build_coded_matrix(const Table& data, const VariableSchema& schema,
                               CodingMethod method, int default_categories) {
    if (data.columns.empty()) throw SchemaMismatch("empty table");
    if (schema.columns.size() != data.columns.size())
        throw SchemaMismatch("schema describes " + std::to_string(schema.columns.size()) +
                             " columns, table has " + std::to_string(data.columns.size()));
    for (const auto& col : data.columns)
        if (!schema.find(col.name))
            throw SchemaMismatch("schema has no entry for column '" + col.name + "'");
    if (default_categories < 2)
        throw BadTupleWidth("default n_categories must be >= 2");

    const std::size_t n_rows = data.n_rows();
    std::vector<PendingBlock> pending;
    pending.reserve(data.columns.size());

    for (const auto& col : data.columns) {
        if (col.size() != n_rows)
            throw SchemaMismatch("ragged table: column '" + col.name + "'");
        check_no_missing(col, col.name);
        const ColumnSpec& spec = *schema.find(col.name);
        if (spec.kind == ColumnKind::nominal && col.labels.size() != n_rows)
            throw SchemaMismatch("column '" + col.name +
                                 "' is numeric but the schema says nominal");
        if (spec.kind != ColumnKind::nominal && col.numeric.size() != n_rows)
            throw SchemaMismatch("column '" + col.name +
                                 "' is text but the schema says " + mixclust::to_string(spec.kind));

        PendingBlock pb;
        pb.coding.name = col.name;
        pb.coding.kind = spec.kind;
        pb.coding.method = method;
        const int n_cat = spec.n_categories > 0 ? spec.n_categories : default_categories;

        const bool dummy_coded =
            spec.kind == ColumnKind::nominal ||
            (spec.kind == ColumnKind::ordinal && method != CodingMethod::barycentric);

        if (dummy_coded) {
            // Triangular/escofier schemes have no ordinal treatment; rating
            // scales fall back to plain dummies there.
            std::vector<std::string> cats =
                spec.kind == ColumnKind::nominal
                    ? col.labels
                    : stringify_levels(ordinal_levels(col, spec));
            NominalBlock nb = encode_nominal(cats);
            pb.block = std::move(nb.block);
            pb.coding.categories = std::move(nb.categories);
            pb.coding.tuple_width = static_cast<int>(pb.coding.categories.size());
            for (const auto& c : pb.coding.categories) pb.labels.push_back(col.name + "_" + c);
        } else if (spec.kind == ColumnKind::ordinal) {
            const std::vector<long> levels = ordinal_levels(col, spec);
            pb.block = encode_ordinal(levels, spec.levels, n_cat);
            pb.coding.scale_points = spec.levels;
            pb.coding.tuple_width = n_cat;
        } else {
            switch (method) {
                case CodingMethod::barycentric: {
                    Discretized d = discretize(col.numeric);
                    pb.block = encode_ordinal(d.levels, d.scale.points, n_cat);
                    pb.coding.scale = d.scale;
                    pb.coding.scale_points = d.scale.points;
                    pb.coding.tuple_width = n_cat;
                    break;
                }
                case CodingMethod::triangular: {
                    const double lo = *std::min_element(col.numeric.begin(), col.numeric.end());
                    const double hi = *std::max_element(col.numeric.begin(), col.numeric.end());
                    const double mid = median_of(col.numeric);
                    pb.block = Matrix(n_rows, 3);
                    for (std::size_t i = 0; i < n_rows; ++i) {
                        const auto t = triangular_tuple(col.numeric[i], lo, mid, hi);
                        for (int j = 0; j < 3; ++j) pb.block(i, j) = t[j];
                    }
                    pb.coding.hinges = {lo, mid, hi};
                    pb.coding.tuple_width = 3;
                    break;
                }
                case CodingMethod::escofier: {
                    pb.block = escofier_pair(col.numeric);
                    const double mean = std::accumulate(col.numeric.begin(), col.numeric.end(),
                                                        0.0) /
                                        static_cast<double>(n_rows);
                    pb.coding.mean = mean;
                    pb.coding.sd = population_sd(col.numeric, mean);
                    pb.coding.tuple_width = 2;
                    pb.labels = {col.name + "_plus", col.name + "_minus"};
                    break;
                }
            }
        }
        if (pb.labels.empty())
            for (int j = 1; j <= pb.coding.tuple_width; ++j)
                pb.labels.push_back(col.name + "_" + std::to_string(j));
        pending.push_back(std::move(pb));
    }

    std::size_t total_cols = 0;
    for (const auto& pb : pending) total_cols += pb.block.cols();

    CodedMatrix out;
    out.values = Matrix(n_rows, total_cols);
    out.variable_count = pending.size();
    std::size_t offset = 0;
    for (auto& pb : pending) {
        const std::size_t w = pb.block.cols();
        for (std::size_t i = 0; i < n_rows; ++i)
            for (std::size_t j = 0; j < w; ++j) {
                const double v = pb.block(i, j);
                out.values(i, offset + j) = v;
                if (v < 0.0) out.has_negative_entries = true;
            }
        out.blocks.push_back({pb.coding.name, offset, w});
        out.column_labels.insert(out.column_labels.end(), pb.labels.begin(), pb.labels.end());
        out.codings.push_back(std::move(pb.coding));
        offset += w;
    }

    // Every block contributes exactly 1 per row, so rows sum to the
    // variable count; a violation here is an implementation bug.
    for (std::size_t i = 0; i < n_rows; ++i) {
        const double s = out.values.row_sum(i);
        if (std::abs(s - static_cast<double>(out.variable_count)) > 1e-9)
            throw NumericError("coded row " + std::to_string(i + 1) +
                               " sums to " + std::to_string(s) + " instead of the variable count");
    }
    return out;
}

} // namespace mixclust::coding
