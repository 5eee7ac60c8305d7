#pragma once

#include <cstddef>
#include <vector>

#include "mixclust/coding.hpp"
#include "mixclust/errors.hpp"
#include "mixclust/matrix.hpp"

namespace mixclust::correspondence {

// Correspondence-analysis geometry over a nonnegative matrix Z: relative
// frequencies P, row/column masses and row profiles. The chi-square
// distance between rows acts on the profiles with weights 1/c_j.
struct CorrespondenceView {
    Matrix P;                     // Z / grand total
    std::vector<double> row_mass; // r_i = sum_j p_ij
    std::vector<double> col_mass; // c_j = sum_i p_ij
    Matrix profiles;              // a_i = row i of P divided by r_i

    std::size_t n_rows() const { return P.rows(); }
    std::size_t n_cols() const { return P.cols(); }
};

CorrespondenceView correspondence_view(const Matrix& Z);
CorrespondenceView correspondence_view(const coding::CodedMatrix& Z);

// Squared chi-square distance between two profile vectors under column
// masses c: sum_j (a_j - b_j)^2 / c_j.
double chi2_distance_sq(const std::vector<double>& a, const std::vector<double>& b,
                        const std::vector<double>& col_mass);
double chi2_distance_sq(std::size_t i, std::size_t j, const CorrespondenceView& view);
double chi2_distance(std::size_t i, std::size_t j, const CorrespondenceView& view);

// Full I x I distance matrix; computed through the same per-pair path, so
// lazy and materialized values are identical by construction.
Matrix chi2_distance_matrix(const CorrespondenceView& view);

// Total inertia, sum_ij (p_ij - r_i c_j)^2 / (r_i c_j). Also evaluated as
// the mass-weighted squared distance of profiles to the centroid; the two
// routes must agree to 1e-10 relative.
double total_inertia(const CorrespondenceView& view);

// Drops all-zero columns from a coded matrix (labels and block bookkeeping
// included); returns how many columns went away.
std::size_t prune_empty_columns(coding::CodedMatrix& coded);

} // namespace mixclust::correspondence
