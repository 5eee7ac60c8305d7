#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "mixclust/errors.hpp"
#include "mixclust/matrix.hpp"
#include "mixclust/table.hpp"

namespace mixclust::coding {

// ---------------------------------------------------------------------------
// Step 1: continuous column -> m-point ordinal scale.
//
// d0 is the smallest gap between successive distinct observed values; the
// observed range [mu, max] splits into m half-open intervals of width d0
// (the last interval is closed at the top) and each value maps to the
// 1-based index of the interval containing it.
// ---------------------------------------------------------------------------

struct OrdinalScale {
    double mu = 0.0;        // column minimum
    double max_value = 0.0; // column maximum
    double d0 = 0.0;        // smallest gap between successive distinct values
    long points = 0;        // m, the number of scale points

    // T(x): interval index of x, clamped to [1, m]. The (1 + 1e-9) factor
    // keeps values that sit mathematically on an interval boundary from
    // falling one interval low after float subtraction noise.
    long level_of(double x) const;
};

struct Discretized {
    std::vector<long> levels;
    OrdinalScale scale;
};

Discretized discretize(const std::vector<double>& column);

// Inverse of Step 1: level l maps back to [mu + (l-1)d0, mu + l*d0).
std::pair<double, double> decode_ordinal(long level, const OrdinalScale& scale);

// ---------------------------------------------------------------------------
// Step 2: level l of an m-point scale -> n-tuple summing to 1.
//
// The interval (1/2, m + 1/2) splits into n equal parts with bounds
// B_i = 1/2 + i*m/n. A unit mass at l is split barycentrically between the
// bounds of the part containing l and then cascades outward: at every bound
// crossing, 2/3 of the arriving mass settles on the midpoint of the interval
// just crossed (that interval's tuple slot) and 1/3 travels on; the terminal
// slots absorb whatever reaches the outermost bounds.
// ---------------------------------------------------------------------------

struct BarycentricTuple {
    std::vector<double> values; // n entries, nonnegative, summing to 1
    long source_level = 0;      // l
    long scale_points = 0;      // m
};

// Position of level l relative to the n-interval split of (1/2, m + 1/2):
// either strictly inside interval `index` (0-based) or exactly on interior
// bound B_index. Exact-bound detection is reliable because for |i*m| below
// 2^53 the double B_i = 0.5 + (i*m)/n equals l precisely when the rational
// equality 2*i*m == (2l-1)*n holds.
struct LevelPosition {
    bool on_bound = false;
    int index = 0;
};

LevelPosition locate_level(long l, long m, int n);

std::vector<double> barycentric_tuple_values(long l, long m, int n);
BarycentricTuple barycentric_tuple(long l, long m, int n);

// Recovers l from a tuple produced for an m-point scale (n = values.size()).
// Inverts the dominant-element formula of the matching interval case and
// verifies by re-encoding; falls back to a scan over l = 1..m.
long decode_tuple(const std::vector<double>& values, long m);

// Row-wise barycentric coding of known levels (Likert scales skip Step 1).
Matrix encode_ordinal(const std::vector<long>& levels, long m, int n);

struct NominalBlock {
    Matrix block;                        // 0/1, one column per category
    std::vector<std::string> categories; // first-appearance order
    bool zero_variance = false;          // single observed category
};

NominalBlock encode_nominal(const std::vector<std::string>& column);

// Triangular membership over three hinge points (baseline coding).
std::array<double, 3> triangular_tuple(double x, double h1, double h2, double h3);

// Escofier bipolar coding of a standardized value: ((1+z)/2, (1-z)/2).
// Rows sum to 1 but entries go negative for |z| > 1.
Matrix escofier_pair(const std::vector<double>& column);

// ---------------------------------------------------------------------------
// Whole-table coding.
// ---------------------------------------------------------------------------

enum class CodingMethod { barycentric, triangular, escofier };

std::string to_string(CodingMethod m);
CodingMethod coding_method_from_string(const std::string& s);

// How one variable was coded; everything needed to decode or re-encode.
struct ColumnCoding {
    std::string name;
    ColumnKind kind = ColumnKind::continuous;
    CodingMethod method = CodingMethod::barycentric;
    int tuple_width = 0;                   // columns occupied by this variable
    OrdinalScale scale;                    // continuous + barycentric
    long scale_points = 0;                 // m used in Step 2 (ordinal or continuous)
    std::vector<std::string> categories;   // dummy-coded blocks
    std::array<double, 3> hinges{};        // triangular
    double mean = 0.0, sd = 0.0;           // escofier standardization
};

struct ColumnBlock {
    std::string variable;
    std::size_t offset = 0;
    std::size_t width = 0;
};

struct CodedMatrix {
    Matrix values;                         // I x J
    std::vector<ColumnBlock> blocks;       // one per source variable, contiguous
    std::vector<std::string> column_labels;
    std::vector<ColumnCoding> codings;
    std::size_t variable_count = 0;
    bool has_negative_entries = false;     // escofier blocks may dip below zero
};

CodedMatrix build_coded_matrix(const Table& data, const VariableSchema& schema,
                               CodingMethod method, int default_categories = 3);

} // namespace mixclust::coding
